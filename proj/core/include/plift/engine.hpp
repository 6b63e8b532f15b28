#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plift/bigstep.hpp"
#include "plift/imc.hpp"
#include "plift/model.hpp"
#include "plift/parse.hpp"
#include "plift/region.hpp"

namespace plift {

struct EngineOptions {
    bool bigstep = true;
    SplitKind split = SplitKind::RoundRobin;
    unsigned split_arity = 4;
    double precision = 1e-6;
    std::uint64_t max_regions = 4'000'000;
    double timeout_s = 0;  // 0 = no limit
    std::size_t samples_per_region = 5;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

struct VerifyStats {
    std::uint64_t regions_checked = 0;
    std::uint64_t regions_proven = 0;
    std::uint64_t vacuous_regions = 0;
    std::size_t max_depth = 0;
    std::vector<std::uint64_t> depth_histogram;
    std::uint64_t vi_sweeps = 0;
    double elapsed_s = 0;
    std::string vi_style = "gauss-seidel";
    bool bigstep_enabled = false;
    BigStepStats bigstep;
};

struct Verdict {
    enum class Kind { AllSat, AllViolate, Refuted, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<Assignment> witness;       // well-defined counterexample
    std::optional<Rational> witness_value;   // its exact reachability
    std::string unknown_reason;
    VerifyStats stats;
};

enum class RegionCheck { Sat, Violate, Undecided };

struct RegionResult {
    RegionCheck kind = RegionCheck::Undecided;
    double lo = 0.0;
    double hi = 1.0;
    bool vacuous = false;
};

/// Record of one decided region, for --dump-regions style reporting.
struct RegionRecord {
    Region region;
    std::size_t depth = 0;
    double lo = 0.0;
    double hi = 1.0;
    std::string status;  // sat | sat-vacuous | violate | violate-vacuous | refuted | split
};

using RegionSink = std::function<void(RegionRecord const&)>;

/// States carrying the property's target label.
std::vector<StateIdx> resolve_target(PMC const& pmc, std::string const& label);

/// Exact reachability of the instantiated model from its initial state.
Rational oracle_value(PMC const& pmc, std::vector<StateIdx> const& good, Assignment const& u);

bool satisfies(Property const& prop, Rational const& value);

/// Three-way verdict for a single region: the reachability interval of the
/// EC-eliminated interval substitution, compared against the threshold with
/// the VI precision folded into the estimate. An infeasible initial state
/// means the region holds no well-defined instantiation at all and is
/// vacuously satisfying.
RegionResult check_region(PMC const& pmc, Region const& region, Property const& prop,
                          EngineOptions const& opts);

/// The abstraction-refinement loop: optional big-step transformation, then a
/// breadth-first region queue. Satisfied regions retire; violating regions
/// refute the query once a sampled well-defined witness is confirmed by the
/// exact oracle (and retire vacuously when none exists); undecided regions
/// are sampled for quick refutation and then split. Deterministic under a
/// fixed seed with a single worker.
Verdict verify(PMC const& pmc, Region const& region, Property const& prop,
               EngineOptions const& opts, RegionSink const& sink = nullptr);

/// The scaling family: a root state branching with one parameter per branch
/// plus the residual 1 - sum, every branch i reaching the target with
/// probability 1/i. The first branch hits the target directly.
PMC gen_dn(unsigned n);

}  // namespace plift
