#pragma once

#include "rational.hpp"

namespace cgn {

/// Relative tolerance under which a summed coefficient counts as cancelled, and
/// under which two coefficients compare equal.
inline constexpr double coefficient_tolerance = 1e-12;

/// Working configuration. Passed explicitly to every operation that truncates,
/// estimates or integrates; never global.
struct Config {
    /// Tail order Q: truncated expansions stop at O(eps^Q).
    Rational tail_order{40};
    /// Probe witnesses need a coefficient above this magnitude.
    double witness_threshold = 1e-10;
    /// Sup-norm samples below this are treated as underflowed.
    double negligible_threshold = 1e-300;
    double quadrature_tolerance = 1e-12;
    int quadrature_max_depth = 30;
    /// Margin inside which a fitted valuation cannot decide a seminorm ball.
    double fit_margin = 0.05;
};

} // namespace cgn
