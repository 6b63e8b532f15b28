#pragma once

#include <vector>

#include "plift/interval.hpp"
#include "plift/polynomial.hpp"

namespace plift {

/// Per-parameter interval box, sorted by parameter id.
class Box {
  public:
    Box() = default;
    explicit Box(std::vector<std::pair<ParamId, Interval>> entries);

    void set(ParamId p, Interval i);
    Interval const& at(ParamId p) const;  // throws when absent
    bool has(ParamId p) const;
    std::vector<std::pair<ParamId, Interval>> const& entries() const { return entries_; }

  private:
    std::vector<std::pair<ParamId, Interval>> entries_;
};

/// Plain interval-arithmetic evaluation of the factorized representation:
/// per-factor ranges (exact for multi-affine factors) combined with interval
/// products. A guaranteed enclosure, not tight.
Interval ia_eval(Polynomial const& f, Box const& b);

/// Sound enclosure of the range of f over b, tightened as far as the
/// structure of f allows:
///  - constants and point boxes are exact,
///  - polynomials affine in every variable are solved exactly at box
///    vertices (coordinate-wise for linear ones),
///  - univariate polynomials get exact rational extrema where the critical
///    points are rational, verified by a derivative-driven branch-and-bound,
///  - everything else falls back to branch-and-bound over sub-boxes with
///    interval evaluation and mean-value forms, within a fixed budget.
Interval bound_box(Polynomial const& f, Box const& b, Rational const& tol);

namespace detail {
/// Exact range of a multi-affine expanded polynomial by vertex enumeration.
Interval multiaffine_vertex_range(Expanded const& e, Box const& b);
/// Rational roots of a univariate expanded polynomial inside an interval.
std::vector<Rational> rational_roots_in(Expanded const& e, ParamId p, Interval const& range);
}  // namespace detail

}  // namespace plift
