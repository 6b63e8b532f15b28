#pragma once

#include <cstdint>
#include <vector>

#include "plift/bounds.hpp"
#include "plift/interval.hpp"
#include "plift/polynomial.hpp"

namespace plift {

struct PMC;
struct ParamDecl;
using Assignment = std::map<ParamId, Rational>;

class PointRegionError : public Error {
  public:
    PointRegionError() : Error("region has no splittable coordinate") {}
};

/// Hyper-rectangle of parameter values; discrete coordinates carry
/// integer-endpoint intervals interpreted as lattice sets.
struct Region {
    std::vector<std::pair<ParamId, bool>> params;  // (id, discrete), model order
    std::vector<Interval> bounds;                  // aligned with params

    void add(ParamId p, bool discrete, Interval iv);
    Interval const& interval_of(ParamId p) const;

    /// Number of lattice points of a discrete coordinate.
    static Integer lattice_size(Interval const& iv) { return numerator(iv.hi - iv.lo) + 1; }

    bool splittable(std::size_t coord) const;
    bool is_point() const;

    /// Continuous relaxation used for range bounding.
    Box box() const;

    std::string to_string() const;
};

enum class SplitKind { RoundRobin, WidthHeuristic };

struct SplitStrategy {
    SplitKind kind = SplitKind::RoundRobin;
    /// Per-coordinate weights for WidthHeuristic (syntactic occurrence
    /// counts of each parameter in the model).
    std::vector<double> weights;
};

/// Splits the region along up to k coordinates: continuous coordinates
/// bisect at the midpoint (children share the boundary), discrete ones split
/// their lattice. RoundRobin starts at `offset` into the coordinate list so
/// successive refinement depths rotate through the parameters.
std::vector<Region> split(Region const& r, SplitStrategy const& strategy, unsigned k,
                          std::size_t offset = 0);

/// Up to n well-defined instantiations drawn uniformly from the region
/// (lattice-uniform on discrete coordinates), rejecting draws where the
/// model is not well defined. Deterministic under the seed; may return fewer
/// than n when wd(R) is thin.
std::vector<Assignment> sample(Region const& r, PMC const& pmc, std::size_t n, std::uint64_t seed);

/// Occurrence counts for WidthHeuristic splitting.
std::vector<double> occurrence_weights(Region const& r, PMC const& pmc);

}  // namespace plift
