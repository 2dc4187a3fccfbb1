#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <cgn/cli.hpp>

using cgn::cli::run;
using cgn::json;

namespace {

struct Case {
    std::vector<std::string> args;
    int code;
};

} // namespace

TEST(Cli, ExitCodeMatrix)
{
    const std::vector<Case> cases{
        {{"dist", "--sharp", "eps", "0"}, 0},
        {{"dist", "--omega", "0.2", "0.7"}, 0},
        {{"dist", "--fermat", "eps^(-1)", "0"}, 3},
        {{"dist", "--sharp", "O(eps^2)", "0"}, 4},
        {{"dist", "eps", "0"}, 2},
        {{"dist", "--sharp", "eps +", "0"}, 2},
        {{"valuation", "5*eps^(-2) + eps"}, 0},
        {{"valuation", "O(eps^3)"}, 4},
        {{"abs", "-3*eps + eps^2"}, 0},
        {{"abs", "O(eps)"}, 4},
        {{"abs", "1 || -1", "--max", "-1 || 1"}, 0},
        {{"order", "eps", "eps^(1/2)"}, 0},
        {{"order", "O(eps^40)", "0"}, 4},
        {{"order", "1 || -1", "-1 || 1"}, 0},
        {{"invert", "2*eps"}, 0},
        {{"invert", "1 || 0"}, 3},
        {{"decompose", "3 + 2*eps^(1/2)"}, 0},
        {{"decompose", "eps^(-1)"}, 3},
        {{"decompose", "--fermat", "2 + 3*t^(1/2)"}, 0},
        {{"eval", "--f", "x^2", "--x", "3 + eps"}, 0},
        {{"eval", "--f", "x/eps", "--x", "0.01", "--eps", "0.5"}, 0},
        {{"eval", "--f", "log(x)", "--U", "(0,inf)", "--x", "-1 + eps"}, 3},
        {{"eval", "--f", "tan(x)", "--x", "0"}, 2},
        {{"fr", "--f", "sin(x)", "--U", "(-10,10)", "--x", "0", "--h", "eps"}, 0},
        {{"fr", "--f", "log(x)", "--U", "(0,inf)", "--x", "1 + eps", "--h", "-2"}, 3},
        {{"thicken", "--U", "(0,1)", "--x", "0.25", "--h", "0.5"}, 0},
        {{"thicken", "--U", "(0,1", "--x", "0.25", "--h", "0.5"}, 2},
        {{"probe", "--f", "x/eps"}, 0},
        {{"probe", "--f", "0"}, 0},
        {{"demo", "nope"}, 2},
        {{"--Q", "0", "valuation", "eps"}, 2},
        {{}, 2},
        {{"frobnicate"}, 2},
    };
    for (const auto& c : cases) {
        auto r = run(c.args);
        std::string joined;
        for (const auto& a : c.args)
            joined += a + " ";
        EXPECT_EQ(r.exit_code, c.code) << joined << "\nout: " << r.out << "\nerr: " << r.err;
        if (c.code != 0) {
            EXPECT_FALSE(r.err.empty()) << joined;
        }
    }
}

TEST(Cli, SpecExamples)
{
    auto d = run({"dist", "--sharp", "eps", "0"});
    EXPECT_NEAR(std::stod(d.out), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(std::stod(d.out), 0.367879441, 1e-9);

    auto f = run({"fr", "--f", "sin(x)", "--U", "(-10,10)", "--x", "0", "--h", "eps"});
    EXPECT_EQ(f.out.rfind("1 - (1/6)*eps^2 + (1/120)*eps^4 - (1/5040)*eps^6", 0), 0u) << f.out;
    EXPECT_NE(f.out.find("O(eps^40)"), std::string::npos);
    EXPECT_NE(f.out.find("verified"), std::string::npos);

    auto c = run({"demo", "conv-ex", "--kmax", "100"});
    ASSERT_EQ(c.exit_code, 0) << c.err;
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < c.out.size()) {
        std::size_t end = c.out.find('\n', start);
        lines.push_back(c.out.substr(start, end - start));
        start = end + 1;
    }
    ASSERT_EQ(lines.size(), 101u);
    EXPECT_EQ(lines[0], "k,d_omega_x,d_s_u,u_x,oracle_gap");
    for (int k = 1; k <= 100; ++k) {
        std::string row = lines[static_cast<std::size_t>(k)];
        std::size_t a = row.find(','), b = row.find(',', a + 1), e = row.find(',', b + 1);
        EXPECT_EQ(std::stoi(row.substr(0, a)), k);
        EXPECT_EQ(std::stod(row.substr(a + 1, b - a - 1)), 1.0 / k);
        EXPECT_NEAR(std::stod(row.substr(b + 1, e - b - 1)), std::exp(1.0), 1e-12);
    }
}

TEST(Cli, NegativeLiteralsAreNotOptions)
{
    auto r = run({"order", "-eps", "eps"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out, "LE\n");
    auto a = run({"abs", "-5"});
    EXPECT_EQ(a.out, "5\n");
}

TEST(Cli, JsonEnvelope)
{
    auto r = run({"--format", "json", "--seed", "9", "--Q", "20", "invert", "eps + eps^2"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["command"], "invert");
    EXPECT_EQ(j["config"]["Q"], 20);
    EXPECT_EQ(j["config"]["seed"], 9);
    EXPECT_TRUE(j["config"]["tolerances"].contains("coefficient"));
    EXPECT_EQ(j["inputs"]["x"], "eps + eps^2");
    EXPECT_NE(j["result"].get<std::string>().find("O(eps^20)"), std::string::npos);
    EXPECT_TRUE(j["diagnostics"].is_array());

    auto e = run({"--format", "json", "invert", "1 || 0"});
    EXPECT_EQ(e.exit_code, 3);
    json je = json::parse(e.out);
    EXPECT_TRUE(je["result"].is_null());
    EXPECT_EQ(je["diagnostics"].size(), 1u);
}

TEST(Cli, PlainOutputParsesBack)
{
    auto r = run({"invert", "2*eps"});
    ASSERT_EQ(r.exit_code, 0);
    std::string s = r.out.substr(0, r.out.size() - 1);
    EXPECT_EQ(cgn::parse_gennum(s), cgn::GenNum::eps(cgn::Rational(-1), 0.5));
}

TEST(Cli, DemosAreByteStable)
{
    for (const char* name : {"discreteness", "sphere", "ball-convert", "probe-demo", "conv-ex"}) {
        auto a = run({"--seed", "77", "demo", name});
        auto b = run({"--seed", "77", "demo", name});
        EXPECT_EQ(a.exit_code, 0) << name << "\n" << a.err;
        EXPECT_EQ(a.out, b.out) << name;
        EXPECT_FALSE(a.out.empty());
        auto j = run({"--seed", "77", "--format", "json", "demo", name});
        EXPECT_EQ(json::parse(j.out)["config"]["seed"], 77);
    }
    auto c = run({"--seed", "78", "demo", "discreteness"});
    EXPECT_NE(c.out, run({"--seed", "77", "demo", "discreteness"}).out);
}

TEST(Cli, FrCorpusDemoIsByteStable)
{
    auto a = run({"--seed", "5", "demo", "fr-corpus"});
    auto b = run({"--seed", "5", "demo", "fr-corpus"});
    EXPECT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}
