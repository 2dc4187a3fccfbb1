#pragma once

// Exact rational exponents and the extended order type (rationals plus +inf)
// used for valuations and tail markers.

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace cgn {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r)
{
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::int64_t floor_of(const Rational& r)
{
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0)
        --q;
    return q;
}

inline std::int64_t ceil_of(const Rational& r)
{
    return -floor_of(-r);
}

inline bool is_integer(const Rational& r)
{
    return r.denominator() == 1;
}

/// "p" or "p/q".
inline std::string to_string(const Rational& r)
{
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1)
        s += "/" + std::to_string(r.denominator());
    return s;
}

/// Rational or +infinity. Valuations of zero and tails of exact series are infinite.
class Order {
public:
    constexpr Order() = default;
    Order(const Rational& r) : finite_(true), value_(r) {}
    Order(std::int64_t n) : finite_(true), value_(n) {}

    static Order infinity() { return Order{}; }

    bool is_infinite() const { return !finite_; }
    bool is_finite() const { return finite_; }

    const Rational& value() const
    {
        if (!finite_)
            throw std::logic_error("Order::value on infinity");
        return value_;
    }

    double to_double() const
    {
        return finite_ ? cgn::to_double(value_) : std::numeric_limits<double>::infinity();
    }

    friend bool operator==(const Order& a, const Order& b)
    {
        if (a.finite_ != b.finite_)
            return false;
        return !a.finite_ || a.value_ == b.value_;
    }

    friend std::strong_ordering operator<=>(const Order& a, const Order& b)
    {
        if (!a.finite_ || !b.finite_) {
            if (a.finite_ == b.finite_)
                return std::strong_ordering::equal;
            return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (a.value_ < b.value_)
            return std::strong_ordering::less;
        if (b.value_ < a.value_)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend Order operator+(const Order& a, const Order& b)
    {
        if (!a.finite_ || !b.finite_)
            return infinity();
        return Order{a.value_ + b.value_};
    }

    friend Order operator-(const Order& a, const Rational& b)
    {
        if (!a.finite_)
            return infinity();
        return Order{a.value_ - b};
    }

private:
    bool finite_ = false;
    Rational value_{0};
};

inline Order min_order(const Order& a, const Order& b)
{
    return b < a ? b : a;
}

inline std::string to_string(const Order& o)
{
    return o.is_infinite() ? std::string("inf") : to_string(o.value());
}

inline std::ostream& operator<<(std::ostream& os, const Order& o)
{
    return os << to_string(o);
}

inline std::int64_t lcm(std::int64_t a, std::int64_t b)
{
    return std::lcm(a, b);
}

} // namespace cgn
