#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "plift/rational.hpp"

namespace plift {

/// Closed interval with exact rational endpoints, lo <= hi.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() : lo(0), hi(0) {}
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw Error("interval endpoints out of order");
    }
    static Interval point(Rational v) {
        Interval i;
        i.lo = v;
        i.hi = std::move(v);
        return i;
    }

    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    bool contains(Rational const& v) const { return lo <= v && v <= hi; }
    bool contains(Interval const& o) const { return lo <= o.lo && o.hi <= hi; }

    bool operator==(Interval const& o) const = default;
};

inline Interval operator+(Interval const& a, Interval const& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

inline Interval operator-(Interval const& a, Interval const& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

inline Interval operator*(Interval const& a, Interval const& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline Interval scale(Interval const& a, Rational const& c) {
    if (c >= 0) return {a.lo * c, a.hi * c};
    return {a.hi * c, a.lo * c};
}

/// a^k with the usual sign analysis for even exponents.
inline Interval pow(Interval const& a, unsigned k) {
    if (k == 0) return Interval::point(1);
    if (k == 1) return a;
    Rational plo = rat_pow(a.lo, k);
    Rational phi = rat_pow(a.hi, k);
    if (k % 2 == 1) return {plo, phi};
    // even power: minimum is 0 if the interval straddles 0
    if (a.lo >= 0) return {plo, phi};
    if (a.hi <= 0) return {phi, plo};
    return {Rational(0), std::max(plo, phi)};
}

inline Interval hull(Interval const& a, Interval const& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline std::optional<Interval> intersect(Interval const& a, Interval const& b) {
    Rational lo = std::max(a.lo, b.lo);
    Rational hi = std::min(a.hi, b.hi);
    if (lo > hi) return std::nullopt;
    return Interval{lo, hi};
}

/// i ∩ [0,1]; empty optional when disjoint. Transition probabilities live here.
inline std::optional<Interval> clamp_unit(Interval const& i) {
    return intersect(i, Interval{Rational(0), Rational(1)});
}

inline std::string to_string(Interval const& i) {
    return "[" + rational_to_string(i.lo) + ", " + rational_to_string(i.hi) + "]";
}

}  // namespace plift
