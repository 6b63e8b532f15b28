#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "plift/model.hpp"

namespace plift {

/// gamma(s, p): states reachable from s via constant-only transitions
/// (including s itself) that carry at least one transition mentioning p.
class GammaMap {
  public:
    explicit GammaMap(std::size_t n_states) : gamma_(n_states) {}

    std::vector<StateIdx> const& of(StateIdx s, ParamId p) const;
    void set(StateIdx s, ParamId p, std::vector<StateIdx> states);

  private:
    std::vector<std::map<ParamId, std::vector<StateIdx>>> gamma_;
};

GammaMap compute_gamma(PMC const& pmc);

/// Acyclic single-parameter fragment rooted in `root`: internal states keep
/// their transitions (all univariate in the parameter), exits absorb.
struct SubPMC {
    StateIdx root = 0;
    ParamId p = 0;
    std::vector<StateIdx> internal;  // topological order, root first
    std::vector<StateIdx> exits;     // sorted

    bool degenerate() const { return internal.size() <= 1; }
};

using CandidateKey = std::pair<StateIdx, ParamId>;

/// First unvisited (state, parameter) pair in stack order whose gamma entry
/// shows more than one occurrence of the parameter behind constant
/// transitions (two carriers, or one carrier with a successor that leads to
/// the parameter again).
std::optional<CandidateKey> select_candidate(PMC const& pmc, GammaMap const& gamma,
                                             std::vector<StateIdx> const& stack,
                                             std::set<CandidateKey> const& visited);

bool candidate_condition(PMC const& pmc, GammaMap const& gamma, StateIdx s, ParamId p);

/// DFS extraction per the sub-pMC conditions; a state is demoted to exit the
/// moment internalizing it would close a cycle.
SubPMC extract_sub_pmc(PMC const& pmc, StateIdx root, ParamId p);

/// Replaces the root's outgoing transitions by the aggregated reachability
/// polynomials to the exits of the sub-pMC, computed by the topological
/// dynamic program on the factorized representation.
PMC shortcut(PMC const& pmc, SubPMC const& sub);

/// One grouping opportunity at a state: a shared factorized monomial with at
/// least two strictly positive carriers.
struct GroupingData {
    PowerProduct monomial;
    std::vector<std::pair<StateIdx, Rational>> carriers;  // coeff > 0 each
};

std::optional<GroupingData> find_grouping(PMC const& pmc, StateIdx s);

/// Routes the grouped transitions through a fresh state with constant branch
/// probabilities c_i / c.
PMC group(PMC const& pmc, StateIdx s, GroupingData const& data, std::string const& fresh_name);

struct BigStepStats {
    std::uint64_t iterations = 0;
    std::uint64_t shortcuts = 0;
    std::uint64_t groupings = 0;
    std::size_t states_before = 0;
    std::size_t states_after = 0;
};

/// Fixpoint of {select candidate -> shortcut -> repeated grouping}. The
/// output has the same parameters and well-defined instantiations and its
/// interval substitution is at least as tight on every region.
PMC big_step(PMC const& pmc, BigStepStats* stats = nullptr);

}  // namespace plift
