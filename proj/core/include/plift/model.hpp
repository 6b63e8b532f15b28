#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "plift/bounds.hpp"
#include "plift/interval.hpp"
#include "plift/polynomial.hpp"
#include "plift/region.hpp"

namespace plift {

using StateIdx = std::uint32_t;

struct ParamDecl {
    ParamId id;
    bool discrete = false;

    bool operator==(ParamDecl const&) const = default;
};

/// Parametric Markov chain. Transition rows are sparse and sorted by target;
/// absent entries are zero. Rows need not sum to one symbolically:
/// well-definedness is a property of each instantiation.
struct PMC {
    std::vector<std::string> state_names;
    std::unordered_map<std::string, StateIdx> state_index;
    std::vector<ParamDecl> params;
    StateIdx init = 0;
    std::vector<std::vector<std::pair<StateIdx, Polynomial>>> rows;
    std::vector<StateIdx> targets;  // sorted

    std::size_t n_states() const { return state_names.size(); }
    StateIdx add_state(std::string name);
    std::optional<StateIdx> state(std::string const& name) const;
    void set_transition(StateIdx from, StateIdx to, Polynomial f);
    Polynomial const* transition(StateIdx from, StateIdx to) const;
    bool is_target(StateIdx s) const;
    std::optional<ParamDecl> param(ParamId p) const;

    /// Drops states unreachable from init (returns number removed).
    std::size_t prune_unreachable();
};

struct MC {
    std::vector<std::string> state_names;
    StateIdx init = 0;
    std::vector<std::vector<std::pair<StateIdx, Rational>>> rows;
    std::vector<StateIdx> good;  // sorted

    std::size_t n_states() const { return state_names.size(); }
};

/// Interval Markov chain. `infeasible` flags states whose clamped row cannot
/// carry any probability distribution; no well-defined instantiation of the
/// originating pMC exists in that case.
struct IMC {
    std::vector<std::string> state_names;
    StateIdx init = 0;
    std::vector<std::vector<std::pair<StateIdx, Interval>>> rows;
    std::vector<StateIdx> good;  // sorted
    std::vector<bool> infeasible;

    std::size_t n_states() const { return state_names.size(); }
    std::optional<StateIdx> state(std::string const& name) const;
    Interval const* transition(StateIdx from, StateIdx to) const;
    bool is_good(StateIdx s) const;
};

struct NotWellDefined {
    StateIdx state;
};

using InstantiateResult = std::variant<MC, NotWellDefined>;

/// Evaluates every transition at u. Yields an MC when all entries land in
/// [0,1] and every row sums to exactly one; otherwise reports the first
/// violating state. u must assign every model parameter (integers for
/// discrete ones).
InstantiateResult instantiate(PMC const& pmc, Assignment const& u);

bool is_well_defined(PMC const& pmc, Assignment const& u);

/// Exact reachability probabilities Pr(s ~> good) per state: states that
/// cannot reach the target are zero by graph analysis, the rest solve the
/// linear system with rational Gaussian elimination.
std::vector<Rational> mc_reach(MC const& mc, std::vector<StateIdx> const& good);

/// The interval substitution of the pMC in the region: each transition
/// polynomial is replaced by a clamped enclosure of its range over the
/// region's box. Every well-defined instantiation in the region induces an
/// MC of the result.
IMC interval_substitute(PMC const& pmc, Region const& region, Rational const& tol);

/// Substitutes a subset of the parameters, keeping the rest symbolic.
PMC partial_instantiate(PMC const& pmc, Assignment const& partial);

}  // namespace plift
