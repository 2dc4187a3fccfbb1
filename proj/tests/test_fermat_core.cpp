#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <cgn/cgn.hpp>

using namespace cgn;

namespace {

LittleOhPoly t(const Rational& e, double c = 1.0) { return LittleOhPoly::monomial(c, e); }

const Rational half(1, 2);

} // namespace

TEST(FrNormalize, DropsLittleOhTerms)
{
    LittleOhPoly p = fr_normalize({{Rational(0), 2.0}, {Rational(13, 10), 1.0}, {Rational(7, 10), 4.0}});
    EXPECT_EQ(p, LittleOhPoly(2.0) + t(Rational(7, 10), 4.0));
    ASSERT_EQ(p.terms().size(), 2u);
}

TEST(FrNormalize, CancelsAndKeepsExponentOne)
{
    EXPECT_TRUE(fr_normalize({{half, 3.0}, {half, -3.0}}).is_zero());
    LittleOhPoly p = fr_normalize({{half, 1.0}, {Rational(1), 1.0}});
    ASSERT_EQ(p.terms().size(), 2u);
    EXPECT_EQ(p.terms()[1].exponent, Rational(1));
}

TEST(FrNormalize, RejectsNegativeExponent)
{
    EXPECT_THROW(fr_normalize({{Rational(-1, 2), 1.0}}), DomainError);
}

TEST(FrRingOp, SpecExamples)
{
    EXPECT_TRUE(fr_ring_op(RingOp::mul, t(Rational(3, 5)), t(Rational(3, 5))).is_zero());
    LittleOhPoly a = LittleOhPoly(1.0) + t(half);
    EXPECT_EQ(fr_ring_op(RingOp::mul, a, a), LittleOhPoly(1.0) + t(half, 2.0) + t(Rational(1)));
    EXPECT_EQ(fr_ring_op(RingOp::add, LittleOhPoly(2.0) + t(Rational(1)), LittleOhPoly(-2.0)), t(Rational(1)));
}

TEST(FrLeq, SpecExamples)
{
    EXPECT_TRUE(fr_leq(t(Rational(1)), t(half)));
    EXPECT_TRUE(fr_leq(LittleOhPoly(0.0), t(half) - t(Rational(1))));
    EXPECT_FALSE(fr_leq(t(half), LittleOhPoly(0.0)));
}

TEST(FrIsFirstOrder, SpecExamples)
{
    EXPECT_TRUE(fr_is_first_order(t(Rational(3, 5))));
    EXPECT_FALSE(fr_is_first_order(t(half)));
    EXPECT_TRUE(fr_is_first_order(t(Rational(7, 10)) + t(Rational(1))));
    EXPECT_TRUE(fr_is_first_order(LittleOhPoly()));
}

TEST(FrExtend, SpecExamples)
{
    EXPECT_EQ(fr_extend(parse_expr("exp(x)"), t(Rational(3, 5))), LittleOhPoly(1.0) + t(Rational(3, 5)));
    LittleOhPoly s = fr_extend(parse_expr("sin(x)"), LittleOhPoly(std::numbers::pi / 2) + t(half));
    EXPECT_EQ(s, LittleOhPoly(1.0) + t(Rational(1), -0.5));
    LittleOhPoly sq = fr_extend(parse_expr("x^2"), LittleOhPoly(3.0) + t(Rational(7, 10)));
    EXPECT_EQ(sq, LittleOhPoly(9.0) + t(Rational(7, 10), 6.0));
}

TEST(FrExtend, NilpotencyCutoffKeepsPowersUpToOneOverAmin)
{
    // delta = t^(1/3): delta, delta^2, delta^3 survive, delta^4 = t^(4/3) vanishes
    LittleOhPoly e = fr_extend(parse_expr("exp(x)"), t(Rational(1, 3)));
    LittleOhPoly expected = fr_normalize(
        {{Rational(0), 1.0}, {Rational(1, 3), 1.0}, {Rational(2, 3), 0.5}, {Rational(1), 1.0 / 6.0}});
    EXPECT_EQ(e, expected);
}

TEST(FrExtend, DomainErrors)
{
    EXPECT_THROW(fr_extend(parse_expr("log(x)"), LittleOhPoly(-1.0) + t(half)), DomainError);
    EXPECT_THROW(fr_extend(parse_expr("x/eps"), LittleOhPoly(1.0)), DomainError);
}

TEST(FrDecompose, SpecExamples)
{
    auto [s1, d1] = fr_decompose(LittleOhPoly(2.0) + t(half, 3.0));
    EXPECT_EQ(s1, 2.0);
    EXPECT_EQ(d1, t(half, 3.0));
    auto [s2, d2] = fr_decompose(t(Rational(1)));
    EXPECT_EQ(s2, 0.0);
    EXPECT_EQ(d2, t(Rational(1)));
    auto [s3, d3] = fr_decompose(LittleOhPoly());
    EXPECT_EQ(s3, 0.0);
    EXPECT_TRUE(d3.is_zero());
}

class FermatProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(FermatProperties, RingAxioms)
{
    Rng rng(GetParam());
    for (int i = 0; i < 200; ++i) {
        LittleOhPoly a = random_fermat(rng, rng.uniform(-2, 2)), b = random_fermat(rng, rng.uniform(-2, 2)),
                     c = random_fermat(rng, rng.uniform(-2, 2));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST_P(FermatProperties, OrderIsTotalAndCompatible)
{
    Rng rng(GetParam() + 1);
    for (int i = 0; i < 200; ++i) {
        LittleOhPoly a = random_fermat(rng, rng.pick(std::vector<double>{-1, 0, 1})),
                     b = random_fermat(rng, rng.pick(std::vector<double>{-1, 0, 1})),
                     c = random_fermat(rng, rng.uniform(-2, 2));
        EXPECT_TRUE(fr_leq(a, b) || fr_leq(b, a));
        if (fr_leq(a, b)) {
            EXPECT_TRUE(fr_leq(a + c, b + c));
        }
        LittleOhPoly zero;
        if (fr_leq(zero, a) && fr_leq(zero, b)) {
            EXPECT_TRUE(fr_leq(zero, a * b));
        }
    }
}

TEST_P(FermatProperties, NilpotencyCharacterizesFirstOrder)
{
    Rng rng(GetParam() + 2);
    for (int i = 0; i < 300; ++i) {
        LittleOhPoly h = random_fermat(rng, 0.0);
        EXPECT_EQ(fr_is_first_order(h), (h * h).is_zero()) << h.to_string();
    }
}

TEST_P(FermatProperties, TangentIdentity)
{
    Rng rng(GetParam() + 3);
    const char* corpus[] = {"sin(x)", "cos(x)", "exp(x)", "x^3 - 2*x", "sqrt(x + 5)", "log(x + 4)",
                            "1/(1 + x^2)", "exp(sin(x))"};
    for (int i = 0; i < 100; ++i) {
        Expr f = parse_expr(rng.pick(std::vector<const char*>(std::begin(corpus), std::end(corpus))));
        double st = rng.uniform(-1.5, 1.5);
        LittleOhPoly x = random_fermat(rng, st);
        LittleOhPoly h = random_first_order(rng);
        LittleOhPoly fp = fr_extend(derivative(f, 1), x);
        EXPECT_EQ(fr_extend(f, x + h), fr_extend(f, x) + fp * h) << f.to_string() << " x=" << x.to_string();
        // at a standard point the slope is the ordinary derivative
        double slope = eval_real(derivative(f, 1), 0.5, st);
        EXPECT_EQ(fr_extend(f, LittleOhPoly(st) + h), fr_extend(f, LittleOhPoly(st)) + slope * h);
    }
}

TEST_P(FermatProperties, ExtensionRespectsComposition)
{
    Rng rng(GetParam() + 4);
    for (int i = 0; i < 100; ++i) {
        LittleOhPoly x = random_fermat(rng, rng.uniform(-1, 1));
        LittleOhPoly inner = fr_extend(parse_expr("sin(x)"), x);
        LittleOhPoly composed = fr_extend(parse_expr("exp(sin(x))"), x);
        EXPECT_EQ(composed, fr_extend(parse_expr("exp(x)"), inner));
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, FermatProperties, ::testing::Values(1u, 7u, 2024u));
