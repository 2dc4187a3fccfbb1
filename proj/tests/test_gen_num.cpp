#include <cmath>

#include <gtest/gtest.h>

#include <cgn/cgn.hpp>

using namespace cgn;

namespace {

GenNum g(const char* text) { return parse_gennum(text); }
GenNum e(const Rational& q, double c = 1.0) { return GenNum::eps(q, c); }

} // namespace

TEST(GnRingOp, SpecExamples)
{
    EXPECT_EQ(gn_ring_op(RingOp::mul, e(1), e(1)), e(2));
    GenNum zd = gn_ring_op(RingOp::mul, g("1 || 0"), g("0 || 1"));
    EXPECT_TRUE(zd.is_zero());
    EXPECT_EQ(gn_ring_op(RingOp::add, g("3 + eps"), GenNum(-3.0)), e(1));
}

TEST(GnRingOp, BranchRefinementUsesLcm)
{
    GenNum a = g("1 || 2"), b = g("10 || 20 || 30");
    GenNum s = a + b;
    ASSERT_EQ(s.branch_count(), 6u);
    double expected[] = {11, 22, 31, 12, 21, 32};
    for (std::size_t i = 0; i < 6; ++i)
        EXPECT_DOUBLE_EQ(s.branch(i).coefficient(Rational(0)), expected[i]);
}

TEST(GnRingOp, RepeatedBranchesCollapse)
{
    EXPECT_EQ(g("1 + eps || 1 + eps").branch_count(), 1u);
    EXPECT_EQ(g("1 || 2 || 1 || 2").branch_count(), 2u);
}

TEST(GnValuation, SpecExamples)
{
    EXPECT_EQ(gn_valuation(g("5*eps^(-2) + eps")).value(), Order(-2));
    EXPECT_TRUE(gn_valuation(GenNum(0.0)).value().is_infinite());
    EXPECT_EQ(gn_valuation(g("eps || eps^3")).value(), Order(1));
}

TEST(GnValuation, EmptyBranchWithTailIsALowerBound)
{
    Valuation v = gn_valuation(g("O(eps^3)"));
    EXPECT_FALSE(v.exact());
    EXPECT_EQ(v.lower, Order(3));
    EXPECT_THROW(v.value(), UnknownSign);
}

TEST(GnSharpDist, SpecExamples)
{
    EXPECT_EQ(gn_sharp_dist(GenNum(0.3), GenNum(0.7)).value(), 1.0);
    EXPECT_NEAR(gn_sharp_dist(e(2), GenNum(0.0)).value(), std::exp(-2.0), 1e-15);
    GenNum x(0.0), y = g("eps + eps^2"), z = e(1);
    EXPECT_NEAR(gn_sharp_dist(x, y).value(), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(gn_sharp_dist(y, z).value(), std::exp(-2.0), 1e-15);
    EXPECT_NEAR(gn_sharp_dist(x, z).value(), std::max(std::exp(-1.0), std::exp(-2.0)), 1e-15);
    EXPECT_EQ(gn_sharp_dist(y, y).value(), 0.0);
}

TEST(GnSharpDist, HiddenValuationGivesInterval)
{
    SharpDistance d = gn_sharp_dist(g("O(eps^2)"), GenNum(0.0));
    EXPECT_FALSE(d.exact());
    EXPECT_EQ(d.lower, 0.0);
    EXPECT_NEAR(d.upper, std::exp(-2.0), 1e-15);
}

TEST(GnOrderCompare, SpecExamples)
{
    EXPECT_EQ(gn_order_compare(e(1), e(Rational(1, 2))).kind, CompareVerdict::LE);
    EXPECT_EQ(gn_order_compare(g("1 || -1"), g("-1 || 1")).kind, CompareVerdict::INCOMPARABLE);
    CompareVerdict u = gn_order_compare(g("O(eps^40)"), GenNum(0.0));
    EXPECT_EQ(u.kind, CompareVerdict::UNKNOWN);
    EXPECT_EQ(u.order, Order(40));
    EXPECT_EQ(gn_order_compare(g("2 + eps"), g("2 + eps")).kind, CompareVerdict::EQ);
    EXPECT_EQ(gn_order_compare(GenNum(3.0), g("2 + eps")).kind, CompareVerdict::GE);
}

TEST(GnAbsMinMax, SpecExamples)
{
    EXPECT_EQ(gn_abs_min_max(AbsKind::abs, g("-3*eps + eps^2")), g("3*eps - eps^2"));
    EXPECT_EQ(gn_abs_min_max(AbsKind::abs, GenNum(-5.0)), GenNum(5.0));
    EXPECT_EQ(gn_abs_min_max(AbsKind::max, g("1 || -1"), g("-1 || 1")), GenNum(1.0));
    EXPECT_EQ(gn_abs_min_max(AbsKind::min, g("1 || -1"), g("-1 || 1")), GenNum(-1.0));
    EXPECT_THROW(gn_abs(g("O(eps)")), UnknownSign);
}

TEST(GnInvert, SpecExamples)
{
    GenNum i = gn_invert(e(1, 2.0));
    EXPECT_EQ(i, e(-1, 0.5));
    EXPECT_TRUE(i.is_exact());

    Config cfg;
    GenNum inv = gn_invert(g("eps + eps^2"), cfg);
    // geometric series: coefficient of eps^k is (-1)^(k+1) for k >= -1
    const EpsSeries& b = inv.branch(0);
    for (int k = -1; k < 39; ++k)
        EXPECT_DOUBLE_EQ(b.coefficient(Rational(k)), (k + 1) % 2 == 0 ? 1.0 : -1.0) << k;
    EXPECT_EQ(b.tail(), Order(cfg.tail_order));

    EXPECT_THROW(gn_invert(g("1 || 0")), NotInvertible);
    EXPECT_THROW(gn_invert(g("O(eps^2)")), NotInvertible);
}

TEST(GnInvert, ProductWithInverseIsOneBelowTail)
{
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        GenNum x = random_gennum(rng, 3);
        if (!gn_invertible(x).holds())
            continue;
        GenNum p = x * gn_invert(x);
        for (std::size_t k = 0; k < p.branch_count(); ++k)
            EXPECT_TRUE(agree_below_tail(p.branch(k), EpsSeries(1.0), 1e-10)) << x.to_string();
    }
}

TEST(GnNearStandard, SpecExamples)
{
    NearStandard ns = gn_near_standard_decompose(g("3 + 2*eps^(1/2) + eps^2"));
    EXPECT_EQ(ns.standard, 3.0);
    EXPECT_EQ(ns.delta, g("2*eps^(1/2) + eps^2"));
    EXPECT_THROW(gn_near_standard_decompose(e(-1)), NotNearStandard);
    EXPECT_THROW(gn_near_standard_decompose(g("3 + eps || 4 + eps")), NotNearStandard);
}

TEST(GnMetric, SpecExamples)
{
    EXPECT_DOUBLE_EQ(gn_metric(MetricKind::omega, GenNum(0.2), GenNum(0.7)), 0.5);
    GenNum x = g("1 + eps"), y = x + e(Rational(1, 2));
    EXPECT_EQ(gn_metric(MetricKind::fermat, x, y), 0.0);
    EXPECT_NEAR(gn_metric(MetricKind::omega, x, y), std::exp(-0.5), 1e-15);
    EXPECT_NEAR(gn_metric(MetricKind::omega, g("3 + eps"), g("3 + eps^2")), std::exp(-1.0), 1e-15);
    EXPECT_THROW(gn_metric(MetricKind::fermat, e(-1), GenNum(0.0)), NotNearStandard);
}

TEST(GnMetric, FermatIsOnlyAPseudometric)
{
    GenNum x(2.0);
    EXPECT_EQ(gn_metric(MetricKind::fermat, x, x + e(1)), 0.0);
    EXPECT_NE(x, x + e(1));
}

TEST(GnInMonad, SpecExamples)
{
    EXPECT_TRUE(gn_in_monad(e(Rational(1, 2)), GenNum(0.0)).holds());
    EXPECT_TRUE(gn_in_monad(g("3 + eps"), GenNum(3.0)).holds());
    EXPECT_EQ(gn_in_monad(g("1 + eps"), GenNum(0.0)).truth, Decision::no);
    EXPECT_EQ(gn_in_monad(g("O(eps^0)"), GenNum(0.0)).truth, Decision::unknown);
}

TEST(GnIntervalContains, SpecExamples)
{
    GenNum a = g("1 || -1"), b(2.0), x(1.0);
    EXPECT_TRUE(gn_interval_contains(IntervalKind::order, a, b, x).holds());
    EXPECT_EQ(gn_interval_contains(IntervalKind::invertible_endpoints, a, b, x).truth, Decision::no);
    EXPECT_TRUE(gn_interval_contains(IntervalKind::order, GenNum(0.0), GenNum(1.0), e(1)).holds());
}

TEST(GnNorm, SpecExamples)
{
    EXPECT_EQ(gn_norm(GenVector{e(1, 3.0), e(1, 4.0)}), e(1, 5.0));
    GenNum n = gn_norm(GenVector{GenNum(1.0), e(1)});
    EXPECT_NEAR(n.branch(0).coefficient(Rational(0)), 1.0, 1e-15);
    EXPECT_NEAR(n.branch(0).coefficient(Rational(2)), 0.5, 1e-15);
    EXPECT_NEAR(n.branch(0).coefficient(Rational(4)), -0.125, 1e-15);
    EXPECT_NEAR(n.branch(0).coefficient(Rational(6)), 0.0625, 1e-15);
    EXPECT_TRUE(gn_norm(GenVector{GenNum(0.0), GenNum(0.0)}).is_zero());
    EXPECT_THROW(gn_norm(GenVector{g("O(eps)")}), UnknownSign);
}

class GenNumProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(GenNumProperties, UltrametricWithKrullSharpening)
{
    Rng rng(GetParam());
    for (int i = 0; i < 1000; ++i) {
        GenNum x = random_gennum(rng), y = random_gennum(rng), z = random_gennum(rng);
        double dxy = gn_sharp_dist(x, y).value(), dyz = gn_sharp_dist(y, z).value();
        double dxz = gn_sharp_dist(x, z).value();
        EXPECT_LE(dxz, std::max(dxy, dyz));
        if (dxy != dyz) {
            EXPECT_EQ(dxz, std::max(dxy, dyz));
        }
    }
}

TEST_P(GenNumProperties, ValuationLaws)
{
    Rng rng(GetParam() + 1);
    for (int i = 0; i < 1000; ++i) {
        GenNum u = random_gennum(rng), w = random_gennum(rng);
        Order vu = gn_valuation(u).value(), vw = gn_valuation(w).value();
        Order vprod = gn_valuation(u * w).value();
        Order vsum = gn_valuation(u + w).value();
        if (vu.is_finite() && vw.is_finite()) {
            Order bound(vu.value() + vw.value());
            EXPECT_FALSE(vprod < bound);
            if (u.branch_count() == 1 && w.branch_count() == 1) {
                EXPECT_EQ(vprod, bound);
            }
        }
        EXPECT_FALSE(vsum < min_order(vu, vw));
        EXPECT_EQ(gn_valuation(u - w).value(), gn_valuation(w - u).value());
        double lambda = rng.pick(std::vector<double>{-3.0, 0.5, 2.0, -0.25});
        EXPECT_EQ(gn_sharp_dist(lambda * u, GenNum(0.0)).value(), gn_sharp_dist(u, GenNum(0.0)).value());
    }
}

TEST_P(GenNumProperties, DecompositionIsometry)
{
    Rng rng(GetParam() + 2);
    std::vector<Rational> exps{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
    for (int i = 0; i < 300; ++i) {
        GenNum x = random_near_standard(rng, rng.uniform(-2, 2), exps, 2);
        GenNum y = random_near_standard(rng, rng.uniform(-2, 2), exps, 2);
        NearStandard nx = gn_near_standard_decompose(x), ny = gn_near_standard_decompose(y);
        double recomputed = std::abs(nx.standard - ny.standard) + gn_sharp_dist(nx.delta, ny.delta).value();
        EXPECT_EQ(gn_metric(MetricKind::omega, x, y), recomputed);
        EXPECT_EQ(x, GenNum(nx.standard) + nx.delta);
    }
}

TEST_P(GenNumProperties, InfinitesimalsAreClosed)
{
    // x_m = x + eps^m with x infinitesimal: v(x_m - x) = m grows without bound, and
    // the limit x is in the monad of 0 like every x_m.
    Rng rng(GetParam() + 3);
    std::vector<Rational> exps{Rational(1, 3), Rational(1), Rational(5, 2)};
    for (int i = 0; i < 50; ++i) {
        GenNum x(random_infinitesimal(rng, exps));
        for (int m = 1; m <= 30; ++m) {
            GenNum xm = x + e(m);
            EXPECT_TRUE(gn_in_monad(xm, GenNum(0.0)).holds());
            EXPECT_EQ(gn_valuation(xm - x).value(), Order(m));
        }
        EXPECT_TRUE(gn_in_monad(x, GenNum(0.0)).holds());
    }
}

TEST_P(GenNumProperties, IntervalIntersection)
{
    Rng rng(GetParam() + 4);
    SeriesShape shape;
    shape.min_numerator = 0;
    shape.max_numerator = 2;
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        GenNum a = random_gennum(rng, 2, shape), b = random_gennum(rng, 2, shape);
        GenNum c = random_gennum(rng, 2, shape), d = random_gennum(rng, 2, shape);
        GenNum x = random_gennum(rng, 2, shape);
        GenNum lo, hi;
        try {
            lo = gn_min_max(AbsKind::max, a, c);
            hi = gn_min_max(AbsKind::min, b, d);
        } catch (const UnknownSign&) {
            continue;
        }
        for (IntervalKind kind : {IntervalKind::order, IntervalKind::invertible_endpoints}) {
            Decision inner = gn_interval_contains(kind, lo, hi, x);
            Decision both = gn_interval_contains(kind, a, b, x) && gn_interval_contains(kind, c, d, x);
            if (inner.truth == Decision::unknown || both.truth == Decision::unknown)
                continue;
            ++checked;
            if (inner.holds()) {
                EXPECT_TRUE(both.holds());
            }
            if (kind == IntervalKind::invertible_endpoints) {
                EXPECT_EQ(inner.holds(), both.holds())
                    << a.to_string() << " ; " << b.to_string() << " ; " << c.to_string() << " ; "
                    << d.to_string() << " ; " << x.to_string();
            }
        }
    }
    EXPECT_GT(checked, 1000);
}

INSTANTIATE_TEST_SUITE_P(Seeds, GenNumProperties, ::testing::Values(11u, 12u));
