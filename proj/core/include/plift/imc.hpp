#pragma once

#include <span>
#include <vector>

#include "plift/model.hpp"

namespace plift {

class InfeasibleRowError : public Error {
  public:
    InfeasibleRowError() : Error("row admits no probability distribution") {}
};

class NonUniqueFixpointError : public Error {
  public:
    NonUniqueFixpointError()
        : Error("iMC has end components outside good/bad; eliminate them first") {}
};

enum class Opt { Min, Max };

/// States with no path to a good state over edges with positive upper bound;
/// their reachability value is zero under min and max alike.
std::vector<bool> zero_states(IMC const& imc);

/// Maximal end components not intersecting good or the zero set, plus the
/// remaining states.
struct MecPartition {
    std::vector<std::vector<StateIdx>> mecs;  // disjoint, each sorted
    std::vector<StateIdx> residual;
};

MecPartition find_mecs(IMC const& imc);

/// Collapses every MEC into a single state with [0,1] transitions to each
/// collapsed successor and an additional [0,1] exit to a bad sink; the
/// result has a unique Bellman fixpoint and the same reachability interval.
IMC eliminate_ecs(IMC const& imc);

/// Optimal value of the inner linear program
///   opt { sum_i a_i * values_i  |  bounds_i.first <= a_i <= bounds_i.second,
///         sum_i a_i = 1 }
/// by the greedy order-based construction: start at the lower bounds and
/// spend the remaining mass on successors in value order, capping at the
/// upper bounds. Exact for exact T.
template <typename T>
T inner_opt(std::span<T const> values, std::span<std::pair<T, T> const> bounds, Opt opt) {
    if (values.size() != bounds.size()) throw Error("inner_opt size mismatch");
    T deficit(1);
    for (auto const& [lo, hi] : bounds) deficit -= lo;
    if constexpr (std::is_floating_point_v<T>) {
        if (deficit < T(-1e-9)) throw InfeasibleRowError();
        if (deficit < T(0)) deficit = T(0);
    } else {
        if (deficit < T(0)) throw InfeasibleRowError();
    }
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return opt == Opt::Max ? values[a] > values[b] : values[a] < values[b];
    });
    T objective(0);
    for (std::size_t i : order) {
        T weight = bounds[i].first;
        T cap = bounds[i].second - bounds[i].first;
        T grab = deficit < cap ? deficit : cap;
        weight += grab;
        deficit -= grab;
        objective += weight * values[i];
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (deficit > T(1e-9)) throw InfeasibleRowError();
    } else {
        if (deficit > T(0)) throw InfeasibleRowError();
    }
    return objective;
}

/// One robust Bellman operator over an iMC, set up once per analysis.
/// Updates run in place in state order (Gauss-Seidel).
class BellmanOperator {
  public:
    BellmanOperator(IMC const& imc, Opt opt);

    std::vector<double> initial() const;
    /// One sweep; returns the sup-norm change.
    double sweep(std::vector<double>& x) const;
    std::vector<bool> const& bad() const { return bad_; }

  private:
    struct Row {
        std::vector<StateIdx> targets;
        std::vector<std::pair<double, double>> bounds;
    };
    std::vector<Row> rows_;
    std::vector<double> fixed_;     // NaN = free
    std::vector<bool> bad_;
    Opt opt_;
};

struct ValueVector {
    std::vector<double> values;
    double residual = 0;       // sup-norm change of the final sweep
    std::uint64_t sweeps = 0;
};

/// Robust value iteration from the target indicator. Requires all MECs to be
/// inside good/bad (run eliminate_ecs first); throws NonUniqueFixpointError
/// otherwise. Values converge from below; callers widen threshold
/// comparisons by the precision.
ValueVector robust_vi(IMC const& imc, Opt opt, double precision);

/// [min, max] reachability from the initial state after EC elimination,
/// outward-widened by the VI precision and clamped to [0,1].
Interval reachability_interval(IMC const& imc, double precision);

struct ReachStats {
    std::uint64_t sweeps = 0;
};

Interval reachability_interval(IMC const& imc, double precision, ReachStats& stats);

}  // namespace plift
