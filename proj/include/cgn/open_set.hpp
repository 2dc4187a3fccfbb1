#pragma once

// Finite unions of open intervals of the real line with rational or infinite endpoints.

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace cgn {

struct Endpoint {
    enum Kind { neg_inf, finite, pos_inf };
    Kind kind = finite;
    Rational value{0};

    static Endpoint minus_infinity() { return {neg_inf, Rational(0)}; }
    static Endpoint plus_infinity() { return {pos_inf, Rational(0)}; }
    static Endpoint at(const Rational& r) { return {finite, r}; }

    double to_double() const
    {
        switch (kind) {
        case neg_inf: return -std::numeric_limits<double>::infinity();
        case pos_inf: return std::numeric_limits<double>::infinity();
        default: return cgn::to_double(value);
        }
    }

    std::string to_string() const
    {
        switch (kind) {
        case neg_inf: return "-inf";
        case pos_inf: return "inf";
        default: return cgn::to_string(value);
        }
    }

    friend bool operator==(const Endpoint& a, const Endpoint& b)
    {
        return a.kind == b.kind && (a.kind != finite || a.value == b.value);
    }

    friend bool operator<(const Endpoint& a, const Endpoint& b)
    {
        if (a.kind != b.kind)
            return a.kind < b.kind;
        return a.kind == finite && a.value < b.value;
    }
};

struct OpenInterval {
    Endpoint lo, hi;

    double lower() const { return lo.to_double(); }
    double upper() const { return hi.to_double(); }
    bool contains(double x) const { return lower() < x && x < upper(); }
    std::string to_string() const { return "(" + lo.to_string() + "," + hi.to_string() + ")"; }

    friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Closed bounded interval, used for compact sets K.
struct ClosedInterval {
    double lo, hi;
};

class OpenSet1D {
public:
    /// Intervals are sorted and overlapping ones merged; empty or degenerate ones are rejected.
    explicit OpenSet1D(std::vector<OpenInterval> parts)
    {
        if (parts.empty())
            throw DomainError("open set needs at least one interval");
        for (const auto& p : parts) {
            if (!(p.lo < p.hi) || p.lo.kind == Endpoint::pos_inf || p.hi.kind == Endpoint::neg_inf)
                throw DomainError("degenerate interval " + p.to_string());
        }
        std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
        for (const auto& p : parts) {
            if (!parts_.empty() && p.lo < parts_.back().hi) {
                if (parts_.back().hi < p.hi)
                    parts_.back().hi = p.hi;
            } else {
                parts_.push_back(p);
            }
        }
    }

    static OpenSet1D real_line() { return OpenSet1D({{Endpoint::minus_infinity(), Endpoint::plus_infinity()}}); }
    static OpenSet1D interval(const Endpoint& a, const Endpoint& b) { return OpenSet1D({{a, b}}); }
    static OpenSet1D interval(const Rational& a, const Rational& b)
    {
        return interval(Endpoint::at(a), Endpoint::at(b));
    }

    const std::vector<OpenInterval>& intervals() const { return parts_; }

    bool contains(double x) const
    {
        for (const auto& p : parts_)
            if (p.contains(x))
                return true;
        return false;
    }

    /// The interval containing the closed segment [min(a,b), max(a,b)], if any.
    const OpenInterval* component_of_segment(double a, double b) const
    {
        double lo = std::min(a, b), hi = std::max(a, b);
        for (const auto& p : parts_)
            if (p.contains(lo) && p.contains(hi))
                return &p;
        return nullptr;
    }

    /// Distance from the closed segment to the complement (infinite for the whole line).
    double distance_to_complement(double a, double b) const
    {
        const OpenInterval* p = component_of_segment(a, b);
        if (!p)
            return 0.0;
        return std::min(std::min(a, b) - p->lower(), p->upper() - std::max(a, b));
    }

    std::string to_string() const
    {
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i)
            out += (i ? " u " : "") + parts_[i].to_string();
        return out;
    }

    friend bool operator==(const OpenSet1D&, const OpenSet1D&) = default;

private:
    std::vector<OpenInterval> parts_;
};

} // namespace cgn
