#pragma once

// Seeded generators for randomized suites. Uniform variates are derived from the
// raw mt19937_64 stream so sequences are identical across standard libraries.

#include <cstdint>
#include <random>
#include <vector>

#include "fermat.hpp"
#include "gen_num.hpp"
#include "series.hpp"

namespace cgn {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0,1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * unit(); }

    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi)
    {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    bool chance(double p) { return unit() < p; }

    template <class T>
    const T& pick(const std::vector<T>& v)
    {
        return v[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(v.size()) - 1))];
    }

private:
    std::mt19937_64 engine_;
};

/// Shape of random series: exponents p/q on a grid, coefficients from a small
/// set (so that cancellations and ties occur) or continuous.
struct SeriesShape {
    std::int64_t min_numerator = -4;
    std::int64_t max_numerator = 8;
    std::vector<std::int64_t> denominators{1, 2};
    int max_terms = 3;
    bool discrete_coefficients = true;
};

inline double random_coefficient(Rng& rng, bool discrete)
{
    static const std::vector<double> pool{1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 3.0, -1.5};
    if (discrete)
        return rng.pick(pool);
    double m = rng.uniform(0.1, 3.0);
    return rng.chance(0.5) ? m : -m;
}

inline EpsSeries random_series(Rng& rng, const SeriesShape& shape = {})
{
    int n = static_cast<int>(rng.integer(1, shape.max_terms));
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
        std::int64_t q = rng.pick(shape.denominators);
        std::int64_t p = rng.integer(shape.min_numerator * q, shape.max_numerator * q);
        terms.push_back({Rational(p, q), random_coefficient(rng, shape.discrete_coefficients)});
    }
    return EpsSeries(std::move(terms));
}

inline GenNum random_gennum(Rng& rng, int max_branches = 2, const SeriesShape& shape = {})
{
    auto k = static_cast<std::size_t>(rng.integer(1, max_branches));
    std::vector<EpsSeries> b;
    for (std::size_t i = 0; i < k; ++i)
        b.push_back(random_series(rng, shape));
    return GenNum(std::move(b));
}

/// Series with all exponents strictly positive.
inline EpsSeries random_infinitesimal(Rng& rng, const std::vector<Rational>& exponents, int max_terms = 3,
                                      bool discrete = false)
{
    int n = static_cast<int>(rng.integer(1, max_terms));
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i)
        terms.push_back({rng.pick(exponents), random_coefficient(rng, discrete)});
    return EpsSeries(std::move(terms));
}

/// st + infinitesimal, on one or two branches sharing the standard part.
inline GenNum random_near_standard(Rng& rng, double st, const std::vector<Rational>& exponents,
                                   int max_branches = 1)
{
    auto k = static_cast<std::size_t>(rng.integer(1, max_branches));
    std::vector<EpsSeries> b;
    for (std::size_t i = 0; i < k; ++i)
        b.push_back(EpsSeries(st) + random_infinitesimal(rng, exponents));
    return GenNum(std::move(b));
}

/// Exponent p/q in (lo, hi] with q <= max_den.
inline Rational random_exponent(Rng& rng, const Rational& lo, const Rational& hi, std::int64_t max_den = 10)
{
    for (;;) {
        std::int64_t q = rng.integer(1, max_den);
        std::int64_t p = rng.integer(floor_of(lo * Rational(q)), ceil_of(hi * Rational(q)));
        Rational e(p, q);
        if (lo < e && e <= hi)
            return e;
    }
}

inline LittleOhPoly random_fermat(Rng& rng, double st, int max_terms = 3)
{
    std::vector<Term> terms{{Rational(0), st}};
    int n = static_cast<int>(rng.integer(0, max_terms));
    for (int i = 0; i < n; ++i)
        terms.push_back({random_exponent(rng, Rational(0), Rational(1)), random_coefficient(rng, false)});
    return fr_normalize(std::move(terms));
}

/// Random element of D: every exponent in (1/2, 1].
inline LittleOhPoly random_first_order(Rng& rng, int max_terms = 3)
{
    std::vector<Term> terms;
    int n = static_cast<int>(rng.integer(1, max_terms));
    for (int i = 0; i < n; ++i)
        terms.push_back({random_exponent(rng, Rational(1, 2), Rational(1)), random_coefficient(rng, false)});
    return fr_normalize(std::move(terms));
}

} // namespace cgn
