#pragma once

// Branched generalized numbers. A GenNum with k branches is the net whose value
// at eps_j = 2^-j is branch (j mod k) evaluated at eps_j. Binary operations
// refine both operands to the lcm of their branch counts.

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "elementary.hpp"
#include "errors.hpp"
#include "series.hpp"

namespace cgn {

class GenNum {
public:
    GenNum() : branches_{EpsSeries{}} {}
    explicit GenNum(double r) : branches_{EpsSeries(r)} {}
    explicit GenNum(EpsSeries s) : branches_{std::move(s)} {}
    explicit GenNum(std::vector<EpsSeries> branches) : branches_(std::move(branches))
    {
        if (branches_.empty())
            throw std::invalid_argument("GenNum needs at least one branch");
        collapse();
    }

    /// c * eps^q on every branch.
    static GenNum eps(const Rational& q, double c = 1.0) { return GenNum(EpsSeries::monomial(c, q)); }

    std::size_t branch_count() const { return branches_.size(); }
    const std::vector<EpsSeries>& branches() const { return branches_; }
    const EpsSeries& branch(std::size_t i) const { return branches_[i % branches_.size()]; }

    /// The branches repeated out to `k`, a multiple of the branch count.
    std::vector<EpsSeries> refined(std::size_t k) const
    {
        std::vector<EpsSeries> out;
        out.reserve(k);
        for (std::size_t i = 0; i < k; ++i)
            out.push_back(branch(i));
        return out;
    }

    /// Representative value at eps_j = 2^-j (known terms only).
    double evaluate(int j) const
    {
        return branch(static_cast<std::size_t>(j)).evaluate(std::ldexp(1.0, -j));
    }

    bool is_zero() const
    {
        for (const auto& b : branches_)
            if (!b.is_zero())
                return false;
        return true;
    }

    bool is_exact() const
    {
        for (const auto& b : branches_)
            if (!b.is_exact())
                return false;
        return true;
    }

    /// Every branch has a known leading term.
    bool is_invertible() const
    {
        for (const auto& b : branches_)
            if (!b.has_leading())
                return false;
        return true;
    }

    template <class F>
    GenNum map(F&& f) const
    {
        std::vector<EpsSeries> out;
        out.reserve(branches_.size());
        for (const auto& b : branches_)
            out.push_back(f(b));
        return GenNum(std::move(out));
    }

    template <class F>
    static GenNum zip(const GenNum& x, const GenNum& y, F&& f)
    {
        std::size_t k = static_cast<std::size_t>(
            std::lcm(static_cast<std::int64_t>(x.branch_count()), static_cast<std::int64_t>(y.branch_count())));
        std::vector<EpsSeries> out;
        out.reserve(k);
        for (std::size_t i = 0; i < k; ++i)
            out.push_back(f(x.branch(i), y.branch(i)));
        return GenNum(std::move(out));
    }

    GenNum truncated(const Order& q) const
    {
        return map([&](const EpsSeries& s) { return s.truncated(q); });
    }

    GenNum operator-() const
    {
        return map([](const EpsSeries& s) { return -s; });
    }
    friend GenNum operator+(const GenNum& a, const GenNum& b)
    {
        return zip(a, b, [](const EpsSeries& u, const EpsSeries& v) { return u + v; });
    }
    friend GenNum operator-(const GenNum& a, const GenNum& b)
    {
        return zip(a, b, [](const EpsSeries& u, const EpsSeries& v) { return u - v; });
    }
    friend GenNum operator*(const GenNum& a, const GenNum& b)
    {
        return zip(a, b, [](const EpsSeries& u, const EpsSeries& v) { return u * v; });
    }
    friend GenNum operator*(double c, const GenNum& a)
    {
        return a.map([c](const EpsSeries& s) { return c * s; });
    }

    friend bool operator==(const GenNum& a, const GenNum& b)
    {
        std::size_t k = static_cast<std::size_t>(
            std::lcm(static_cast<std::int64_t>(a.branch_count()), static_cast<std::int64_t>(b.branch_count())));
        for (std::size_t i = 0; i < k; ++i)
            if (!(a.branch(i) == b.branch(i)))
                return false;
        return true;
    }

    std::string to_string() const
    {
        std::string out;
        for (std::size_t i = 0; i < branches_.size(); ++i) {
            if (i)
                out += " || ";
            out += branches_[i].to_string();
        }
        return out;
    }

private:
    // shortest period d of the branch list (d divides k)
    void collapse()
    {
        std::size_t k = branches_.size();
        for (std::size_t d = 1; d < k; ++d) {
            if (k % d)
                continue;
            bool periodic = true;
            for (std::size_t i = d; i < k && periodic; ++i)
                periodic = branches_[i] == branches_[i % d];
            if (periodic) {
                branches_.resize(d);
                return;
            }
        }
    }

    std::vector<EpsSeries> branches_;
};

using GenVector = std::vector<GenNum>;

inline GenNum gn_ring_op(RingOp op, const GenNum& x, const GenNum& y)
{
    switch (op) {
    case RingOp::add: return x + y;
    case RingOp::sub: return x - y;
    case RingOp::mul: return x * y;
    }
    return {};
}

/// Valuation, possibly only bracketed: an empty branch O(eps^T) has v >= T.
struct Valuation {
    Order lower;
    Order upper;

    bool exact() const { return lower == upper; }
    const Order& value() const
    {
        if (!exact())
            throw UnknownSign("valuation", lower);
        return lower;
    }
};

inline Valuation branch_valuation(const EpsSeries& s)
{
    if (s.has_leading())
        return {Order(s.leading().exponent), Order(s.leading().exponent)};
    return {s.tail(), Order::infinity()};
}

inline Valuation gn_valuation(const GenNum& x)
{
    Valuation v{Order::infinity(), Order::infinity()};
    for (const auto& b : x.branches()) {
        Valuation w = branch_valuation(b);
        v.lower = min_order(v.lower, w.lower);
        v.upper = min_order(v.upper, w.upper);
    }
    return v;
}

/// Valuation of the Euclidean norm: the least component valuation.
inline Valuation gn_valuation(const GenVector& x)
{
    Valuation v{Order::infinity(), Order::infinity()};
    for (const auto& c : x) {
        Valuation w = gn_valuation(c);
        v.lower = min_order(v.lower, w.lower);
        v.upper = min_order(v.upper, w.upper);
    }
    return v;
}

inline double exp_neg(const Order& v)
{
    return v.is_infinite() ? 0.0 : std::exp(-v.to_double());
}

/// d_s = exp(-v(x - y)); an interval when the valuation is only bracketed.
struct SharpDistance {
    double lower;
    double upper;
    Valuation valuation;

    bool exact() const { return valuation.exact(); }
    double value() const
    {
        if (!exact())
            throw UnknownSign("sharp distance", valuation.lower);
        return upper;
    }
};

inline SharpDistance sharp_from_valuation(const Valuation& v)
{
    return {exp_neg(v.upper), exp_neg(v.lower), v};
}

inline SharpDistance gn_sharp_dist(const GenNum& x, const GenNum& y)
{
    return sharp_from_valuation(gn_valuation(x - y));
}

inline SharpDistance gn_sharp_dist(const GenVector& x, const GenVector& y)
{
    if (x.size() != y.size())
        throw DomainError("dimension mismatch");
    GenVector d;
    for (std::size_t i = 0; i < x.size(); ++i)
        d.push_back(x[i] - y[i]);
    return sharp_from_valuation(gn_valuation(d));
}

struct CompareVerdict {
    enum Kind { LE, GE, EQ, INCOMPARABLE, UNKNOWN };
    Kind kind;
    Order order = Order::infinity(); ///< blocking tail for UNKNOWN

    friend bool operator==(const CompareVerdict&, const CompareVerdict&) = default;
};

inline std::string to_string(const CompareVerdict& v)
{
    switch (v.kind) {
    case CompareVerdict::LE: return "LE";
    case CompareVerdict::GE: return "GE";
    case CompareVerdict::EQ: return "EQ";
    case CompareVerdict::INCOMPARABLE: return "INCOMPARABLE";
    case CompareVerdict::UNKNOWN: return "UNKNOWN(" + to_string(v.order) + ")";
    }
    return "?";
}

inline CompareVerdict gn_order_compare(const GenNum& x, const GenNum& y)
{
    GenNum d = y - x;
    bool less = false, greater = false;
    Order blocking = Order::infinity();
    bool unknown = false;
    for (const auto& b : d.branches()) {
        SeriesSign s = b.sign();
        switch (s.kind) {
        case SeriesSign::positive: less = true; break;
        case SeriesSign::negative: greater = true; break;
        case SeriesSign::zero: break;
        case SeriesSign::unknown:
            unknown = true;
            blocking = min_order(blocking, s.blocking);
            break;
        }
    }
    if (less && greater)
        return {CompareVerdict::INCOMPARABLE};
    if (unknown)
        return {CompareVerdict::UNKNOWN, blocking};
    if (less)
        return {CompareVerdict::LE};
    if (greater)
        return {CompareVerdict::GE};
    return {CompareVerdict::EQ};
}

/// Three-valued answer to a yes/no question, with the blocking tail when undecided.
struct Decision {
    enum Truth { no, yes, unknown };
    Truth truth;
    Order blocking = Order::infinity();

    bool holds() const { return truth == yes; }
    friend bool operator==(const Decision&, const Decision&) = default;
};

inline std::string to_string(const Decision& d)
{
    switch (d.truth) {
    case Decision::no: return "no";
    case Decision::yes: return "yes";
    case Decision::unknown: return "unknown(" + to_string(d.blocking) + ")";
    }
    return "?";
}

inline Decision operator&&(const Decision& a, const Decision& b)
{
    if (a.truth == Decision::no || b.truth == Decision::no)
        return {Decision::no};
    if (a.truth == Decision::unknown || b.truth == Decision::unknown)
        return {Decision::unknown, min_order(a.blocking, b.blocking)};
    return {Decision::yes};
}

inline bool leq(const CompareVerdict& v)
{
    return v.kind == CompareVerdict::LE || v.kind == CompareVerdict::EQ;
}

/// x <= y as a decision.
inline Decision gn_leq(const GenNum& x, const GenNum& y)
{
    CompareVerdict v = gn_order_compare(x, y);
    if (v.kind == CompareVerdict::UNKNOWN)
        return {Decision::unknown, v.order};
    return {leq(v) ? Decision::yes : Decision::no};
}

/// x < y in the strict sense: y - x positive and invertible on every branch.
inline Decision gn_strictly_less(const GenNum& x, const GenNum& y)
{
    GenNum d = y - x;
    Decision out{Decision::yes};
    for (const auto& b : d.branches()) {
        SeriesSign s = b.sign();
        if (s.kind == SeriesSign::negative || s.kind == SeriesSign::zero)
            return {Decision::no};
        if (s.kind == SeriesSign::unknown)
            out = out && Decision{Decision::unknown, s.blocking};
    }
    return out;
}

enum class AbsKind { abs, min, max };

inline GenNum gn_abs(const GenNum& x)
{
    return x.map([](const EpsSeries& s) {
        SeriesSign sg = s.sign();
        if (sg.kind == SeriesSign::unknown)
            throw UnknownSign("sign of a branch", sg.blocking);
        return sg.kind == SeriesSign::negative ? -s : s;
    });
}

inline GenNum gn_min_max(AbsKind kind, const GenNum& x, const GenNum& y)
{
    return GenNum::zip(x, y, [kind](const EpsSeries& a, const EpsSeries& b) {
        SeriesSign sg = (b - a).sign();
        if (sg.kind == SeriesSign::unknown)
            throw UnknownSign("order of a branch", sg.blocking);
        bool a_smaller = sg.kind != SeriesSign::negative;
        return (kind == AbsKind::min) == a_smaller ? a : b;
    });
}

inline GenNum gn_abs_min_max(AbsKind kind, const GenNum& x, const std::optional<GenNum>& y = std::nullopt)
{
    if (kind == AbsKind::abs) {
        if (y)
            throw std::invalid_argument("abs takes one argument");
        return gn_abs(x);
    }
    if (!y)
        throw std::invalid_argument("min/max take two arguments");
    return gn_min_max(kind, x, *y);
}

inline GenNum gn_invert(const GenNum& x, const Config& cfg = {})
{
    return x.map([&](const EpsSeries& s) {
        if (s.is_zero())
            throw NotInvertible("a branch is zero (zero divisor)");
        if (!s.has_leading())
            throw NotInvertible("leading term of a branch is hidden behind O(eps^" + to_string(s.tail()) + ")");
        return invert(s, cfg);
    });
}

/// Invertibility as a decision: a zero branch says no, a tail-only branch is undecided.
inline Decision gn_invertible(const GenNum& x)
{
    Decision out{Decision::yes};
    for (const auto& b : x.branches()) {
        if (b.is_zero())
            return {Decision::no};
        if (!b.has_leading())
            out = out && Decision{Decision::unknown, b.tail()};
    }
    return out;
}

struct NearStandard {
    double standard;
    GenNum delta;
};

inline NearStandard gn_near_standard_decompose(const GenNum& x)
{
    std::optional<double> st;
    for (const auto& b : x.branches()) {
        if (b.has_leading() && b.leading().exponent < Rational(0))
            throw NotNearStandard("term of negative order " + to_string(b.leading().exponent));
        if (!(Order(Rational(0)) < b.tail()))
            throw UnknownSign("standard part", b.tail());
        double c = b.coefficient(Rational(0));
        if (st && !detail::coefficients_close(*st, c, coefficient_tolerance))
            throw NotNearStandard("branches have different limits");
        if (!st)
            st = c;
    }
    double s = *st;
    return {s, x - GenNum(s)};
}

inline bool gn_is_near_standard(const GenNum& x)
{
    try {
        gn_near_standard_decompose(x);
        return true;
    } catch (const Error&) {
        return false;
    }
}

inline double gn_standard_part(const GenNum& x)
{
    return gn_near_standard_decompose(x).standard;
}

enum class MetricKind { fermat, omega };

inline double gn_metric(MetricKind kind, const GenNum& x, const GenNum& y)
{
    NearStandard a = gn_near_standard_decompose(x);
    NearStandard b = gn_near_standard_decompose(y);
    double d = std::abs(a.standard - b.standard);
    if (kind == MetricKind::omega)
        d += gn_sharp_dist(a.delta, b.delta).value();
    return d;
}

inline double gn_metric(MetricKind kind, const GenVector& x, const GenVector& y)
{
    if (x.size() != y.size())
        throw DomainError("dimension mismatch");
    double sq = 0.0;
    GenVector dx, dy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        NearStandard a = gn_near_standard_decompose(x[i]);
        NearStandard b = gn_near_standard_decompose(y[i]);
        sq += (a.standard - b.standard) * (a.standard - b.standard);
        dx.push_back(a.delta);
        dy.push_back(b.delta);
    }
    double d = std::sqrt(sq);
    if (kind == MetricKind::omega)
        d += gn_sharp_dist(dx, dy).value();
    return d;
}

/// x - center is infinitesimal on every branch.
inline Decision gn_in_monad(const GenNum& x, const GenNum& center)
{
    GenNum d = x - center;
    Decision out{Decision::yes};
    for (const auto& b : d.branches()) {
        if (b.has_leading() && !(Rational(0) < b.leading().exponent))
            return {Decision::no};
        if (!b.has_leading() && b.tail().is_finite() && !(Rational(0) < b.tail().value()))
            out = out && Decision{Decision::unknown, b.tail()};
    }
    return out;
}

inline Decision gn_in_monad(const GenVector& x, const GenVector& center)
{
    if (x.size() != center.size())
        throw DomainError("dimension mismatch");
    Decision out{Decision::yes};
    for (std::size_t i = 0; i < x.size(); ++i)
        out = out && gn_in_monad(x[i], center[i]);
    return out;
}

enum class IntervalKind { order, invertible_endpoints };

inline Decision gn_interval_contains(IntervalKind kind, const GenNum& a, const GenNum& b, const GenNum& x)
{
    Decision d = gn_leq(a, x) && gn_leq(x, b);
    if (kind == IntervalKind::invertible_endpoints)
        d = d && gn_invertible(a - x) && gn_invertible(b - x);
    return d;
}

/// Euclidean norm: square root of the sum of squares, branchwise about the leading term.
inline GenNum gn_norm(const GenVector& x, const Config& cfg = {})
{
    GenNum sum;
    for (const auto& c : x)
        sum = sum + c * c;
    return sum.map([&](const EpsSeries& s) {
        if (s.is_zero())
            return s;
        if (!s.has_leading())
            throw UnknownSign("sign under the square root", s.tail());
        return power(s, Rational(1, 2), cfg);
    });
}

inline GenNum gn_norm(const GenNum& x, const Config& cfg = {})
{
    return gn_norm(GenVector{x}, cfg);
}

} // namespace cgn
