#include <cmath>

#include <gtest/gtest.h>

#include <cgn/cgn.hpp>

using namespace cgn;

namespace {

GenNum g(const char* text) { return parse_gennum(text); }
GenNum e(const Rational& q, double c = 1.0) { return GenNum::eps(q, c); }

BallSpec gabs_ball(const GenNum& center, const GenNum& rho)
{
    BallSpec b;
    b.kind = BallKind::gabs;
    b.center = center;
    b.gabs_radius = rho;
    return b;
}

BallSpec real_ball(BallKind kind, const GenNum& center, double r)
{
    BallSpec b;
    b.kind = kind;
    b.center = center;
    b.radius = r;
    return b;
}

} // namespace

TEST(BallContains, SpecExamples)
{
    EXPECT_TRUE(ball_contains(gabs_ball(GenNum(0.0), e(2)), e(3)).holds());
    EXPECT_TRUE(ball_contains(real_ball(BallKind::sharp, GenNum(0.0), 0.5), e(1)).holds());
    EXPECT_TRUE(ball_contains(gabs_ball(GenNum(1.0), g("2 + eps")), GenNum(3.0)).holds());
}

TEST(BallContains, BoundaryAndErrors)
{
    // |3 - 1| = 2 is not < 2
    EXPECT_EQ(ball_contains(gabs_ball(GenNum(1.0), GenNum(2.0)), GenNum(3.0)).truth, Decision::no);
    EXPECT_EQ(ball_contains(real_ball(BallKind::sharp, GenNum(0.0), std::exp(-1.0)), e(1)).truth, Decision::no);
    EXPECT_THROW(ball_contains(gabs_ball(GenNum(0.0), g("1 || 0")), GenNum(0.0)), NotInvertible);
    EXPECT_THROW(ball_contains(gabs_ball(GenNum(0.0), GenNum(-1.0)), GenNum(0.0)), DomainError);
    EXPECT_TRUE(ball_contains(real_ball(BallKind::fermat, GenNum(1.0), 0.1), g("1 + eps")).holds());
    EXPECT_THROW(ball_contains(real_ball(BallKind::omega, GenNum(1.0), 0.1), e(-1)), NotNearStandard);
}

TEST(BallConvert, SpecExamples)
{
    GabsCertificate c = sharp_to_gabs(0.5);
    EXPECT_NEAR(c.q, -std::log(0.25) + 1.0, 1e-15);
    EXPECT_NEAR(c.q, 2.386294361, 1e-9);
    EXPECT_TRUE(Rational(static_cast<std::int64_t>(std::ceil(c.q))) == c.exponent);
    SharpCertificate s = gabs_to_sharp(e(3));
    EXPECT_EQ(s.q, Rational(3));
    EXPECT_NEAR(s.r, std::exp(-4.0), 1e-15);
    EXPECT_NEAR(sharp_to_gabs(2.0).q, 1.0, 1e-15);
    EXPECT_THROW(gabs_to_sharp(g("1 || 0")), NotInvertible);
    EXPECT_THROW(sharp_to_gabs(0.0), DomainError);
}

TEST(BallConvert, CertificatesHoldOnMembers)
{
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        GenNum center = random_gennum(rng);
        double r = rng.uniform(0.01, 3.0);
        GabsCertificate c = sharp_to_gabs(r);
        for (int k = 0; k < 50; ++k) {
            GenNum z = center + detail::random_below_monomial(rng, c.exponent);
            ASSERT_TRUE(gabs_ball_contains(center, c.rho, z).holds());
            EXPECT_TRUE(ball_contains(real_ball(BallKind::sharp, center, r), z).holds());
        }
    }
}

TEST(SphereOpenness, SpecExamples)
{
    GenNum center = g("1 + eps");
    GenNum y = center + e(2);
    SphereWitness w = sphere_openness_witness(center, std::exp(-2.0), y);
    EXPECT_EQ(w.q, Rational(3));
    GenNum z = y + e(3, 0.5);
    SphereCheck c = sphere_check(center, y, w, z);
    EXPECT_TRUE(c.in_ball.holds());
    EXPECT_TRUE(c.on_sphere);
    EXPECT_NEAR(gn_sharp_dist(center, z).value(), std::exp(-2.0), 1e-15);

    GenNum y1 = center + e(1);
    SphereWitness w1 = sphere_openness_witness(center, std::exp(-1.0), y1);
    EXPECT_TRUE(sphere_check(center, y1, w1, y1 + e(5)).on_sphere);
    EXPECT_TRUE(sphere_check(center, y1, w1, y1).on_sphere);

    EXPECT_THROW(sphere_openness_witness(center, 0.5, y), DomainError);
}

TEST(Indicator, SpecExamples)
{
    EXPECT_EQ(indicator_infinitesimal(e(Rational(1, 2))), 1);
    EXPECT_EQ(indicator_infinitesimal(g("3 + eps")), 0);
    EXPECT_EQ(indicator_infinitesimal(GenNum(0.0)), 1);
    EXPECT_THROW(indicator_infinitesimal(g("O(eps^0)")), UnknownSign);
}

TEST(Indicator, ContinuityWithEpsRadius)
{
    Rng rng(23);
    std::vector<Rational> exps{Rational(1, 2), Rational(1), Rational(2)};
    for (int i = 0; i < 300; ++i) {
        GenNum x0 = rng.chance(0.5) ? GenNum(random_infinitesimal(rng, exps))
                                    : random_near_standard(rng, rng.uniform(-2, 2), exps);
        GenNum x = x0 + detail::random_below_monomial(rng, Rational(2));
        if (gabs_ball_contains(x0, e(1), x).holds()) {
            EXPECT_EQ(indicator_infinitesimal(x), indicator_infinitesimal(x0));
        }
    }
}

TEST(ClassifySequence, SpecExamples)
{
    SequenceSpec s1{[](int k) { return GenNum(1.0 / k); }, GenNum(0.0), 20, "1/k"};
    VerdictReport r1 = classify_sequence(s1);
    ASSERT_EQ(r1.rows.size(), 20u);
    for (int k = 1; k <= 20; ++k) {
        const json& row = r1.rows[static_cast<std::size_t>(k - 1)];
        EXPECT_DOUBLE_EQ(row["d_omega"].get<double>(), 1.0 / k);
        EXPECT_EQ(row["d_s"].get<double>(), 1.0);
    }
    EXPECT_EQ(r1.summary["d_s"]["trend"], "constant");

    SequenceSpec s2{[](int k) { return GenNum::eps(Rational(k)); }, GenNum(0.0), 10, "eps^k"};
    VerdictReport r2 = classify_sequence(s2);
    for (int k = 1; k <= 10; ++k)
        EXPECT_NEAR(r2.rows[static_cast<std::size_t>(k - 1)]["d_s"].get<double>(), std::exp(-k), 1e-15);
    EXPECT_EQ(r2.summary["d_s"]["trend"], "nonincreasing");

    SequenceSpec s3{[](int) { return GenNum(2.5); }, GenNum(2.5), 5, "const"};
    VerdictReport r3 = classify_sequence(s3);
    for (const auto& row : r3.rows) {
        EXPECT_EQ(row["d_s"].get<double>(), 0.0);
        EXPECT_EQ(row["d_F"].get<double>(), 0.0);
        EXPECT_EQ(row["d_omega"].get<double>(), 0.0);
    }
}

TEST(ClassifySequence, RowErrorsDoNotStopTheTable)
{
    SequenceSpec s{[](int k) { return k == 2 ? GenNum::eps(Rational(-1)) : GenNum(1.0); }, GenNum(1.0), 3, ""};
    VerdictReport r = classify_sequence(s);
    EXPECT_EQ(r.rows.size(), 3u);
    EXPECT_FALSE(r.diagnostics.empty());
    EXPECT_FALSE(r.rows[1].contains("d_F"));
}

TEST(RealTrace, SpecExamples)
{
    RealTrace a = real_trace_of_gabs_ball(1.0, GenNum(0.3));
    EXPECT_EQ(a.kind, RealTrace::interval);
    EXPECT_FALSE(a.closed);
    EXPECT_TRUE(a.contains(0.71));
    EXPECT_FALSE(a.contains(1.3));

    RealTrace b = real_trace_of_gabs_ball(1.0, e(1));
    EXPECT_EQ(b.kind, RealTrace::singleton);
    EXPECT_EQ(b.to_string(), "{1}");

    RealTrace c = real_trace_of_gabs_ball(1.0, g("2 + eps"));
    EXPECT_TRUE(c.closed);
    EXPECT_EQ(c.to_string(), "[-1,3]");
    EXPECT_TRUE(c.contains(3.0));
    EXPECT_TRUE(c.contains(-1.0));

    RealTrace d = real_trace_of_gabs_ball(0.0, g("2 - eps"));
    EXPECT_FALSE(d.closed);
    EXPECT_EQ(real_trace_of_gabs_ball(0.0, e(-1)).kind, RealTrace::line);
}

TEST(RealTrace, AgreesWithGabsMembership)
{
    Rng rng(29);
    for (int i = 0; i < 200; ++i) {
        GenNum rho = detail::random_positive_invertible(rng);
        double center = rng.uniform(-2, 2);
        RealTrace t = real_trace_of_gabs_ball(center, rho);
        for (double s : {center, center + 0.5, center - 1.0, center + 2.0, std::nextafter(center, 10.0)}) {
            Decision d = gabs_ball_contains(GenNum(center), rho, GenNum(s));
            ASSERT_NE(d.truth, Decision::unknown);
            EXPECT_EQ(t.contains(s), d.holds()) << rho.to_string() << " s=" << s;
        }
    }
}

TEST(TopologyChain, OmegaStrictnessWitness)
{
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        double R = rng.uniform(0.05, 0.95);
        // e^-s > R for s < -log R
        Rational s = random_exponent(rng, Rational(0), Rational(1, 20), 20);
        GenNum x = random_near_standard(rng, rng.uniform(-1, 1), {Rational(1), Rational(2)});
        GenNum y = x + GenNum::eps(s);
        EXPECT_EQ(gn_metric(MetricKind::fermat, x, y), 0.0);
        double dw = gn_metric(MetricKind::omega, x, y);
        EXPECT_NEAR(dw, std::exp(-to_double(s)), 1e-15);
        EXPECT_GT(dw, R);
    }
}

TEST(TopologyChain, SharpBallInsideOmegaBall)
{
    Rng rng(37);
    std::vector<Rational> exps{Rational(1, 2), Rational(1), Rational(3, 2), Rational(3)};
    for (int i = 0; i < 500; ++i) {
        double r = rng.uniform(0.01, 0.99);
        GenNum x = random_near_standard(rng, rng.uniform(-1, 1), exps, 2);
        GenNum y = x + GenNum(random_infinitesimal(rng, exps));
        if (gn_sharp_dist(x, y).value() < r) {
            EXPECT_LT(gn_metric(MetricKind::omega, x, y), r);
        }
    }
}
