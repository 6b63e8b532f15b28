#include "plift/bigstep.hpp"

#include <algorithm>
#include <deque>

namespace plift {

std::vector<StateIdx> const& GammaMap::of(StateIdx s, ParamId p) const {
    static std::vector<StateIdx> const empty;
    auto const& per_state = gamma_.at(s);
    auto it = per_state.find(p);
    return it == per_state.end() ? empty : it->second;
}

void GammaMap::set(StateIdx s, ParamId p, std::vector<StateIdx> states) {
    if (states.empty()) return;
    gamma_.at(s)[p] = std::move(states);
}

GammaMap compute_gamma(PMC const& pmc) {
    std::size_t n = pmc.n_states();
    std::vector<std::vector<StateIdx>> const_adj(n);
    std::vector<std::vector<bool>> carries(pmc.params.size(), std::vector<bool>(n, false));
    for (StateIdx s = 0; s < n; ++s) {
        for (auto const& [t, f] : pmc.rows[s]) {
            if (f.is_constant()) const_adj[s].push_back(t);
            for (std::size_t pi = 0; pi < pmc.params.size(); ++pi)
                if (f.mentions(pmc.params[pi].id)) carries[pi][s] = true;
        }
    }
    GammaMap gamma(n);
    for (StateIdx s = 0; s < n; ++s) {
        std::vector<bool> seen(n, false);
        std::deque<StateIdx> work{s};
        seen[s] = true;
        std::vector<StateIdx> reach{s};
        while (!work.empty()) {
            StateIdx v = work.front();
            work.pop_front();
            for (StateIdx t : const_adj[v])
                if (!seen[t]) {
                    seen[t] = true;
                    reach.push_back(t);
                    work.push_back(t);
                }
        }
        std::sort(reach.begin(), reach.end());
        for (std::size_t pi = 0; pi < pmc.params.size(); ++pi) {
            std::vector<StateIdx> hit;
            for (StateIdx v : reach)
                if (carries[pi][v]) hit.push_back(v);
            gamma.set(s, pmc.params[pi].id, std::move(hit));
        }
    }
    return gamma;
}

bool candidate_condition(PMC const& pmc, GammaMap const& gamma, StateIdx s, ParamId p) {
    auto const& g = gamma.of(s, p);
    if (g.size() >= 2) return true;
    if (g.size() != 1) return false;
    StateIdx carrier = g[0];
    for (auto const& [t, f] : pmc.rows[carrier]) {
        if (t == carrier) continue;
        if (!gamma.of(t, p).empty()) return true;
    }
    return false;
}

std::optional<CandidateKey> select_candidate(PMC const& pmc, GammaMap const& gamma,
                                             std::vector<StateIdx> const& stack,
                                             std::set<CandidateKey> const& visited) {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        for (auto const& d : pmc.params) {
            CandidateKey key{*it, d.id};
            if (visited.count(key)) continue;
            if (candidate_condition(pmc, gamma, *it, d.id)) return key;
        }
    }
    return std::nullopt;
}

namespace {

bool univariate_row(PMC const& pmc, StateIdx s, ParamId p) {
    for (auto const& [t, f] : pmc.rows[s])
        for (ParamId q : f.params())
            if (q != p) return false;
    return true;
}

bool carries_param(PMC const& pmc, StateIdx s, ParamId p) {
    for (auto const& [t, f] : pmc.rows[s])
        if (f.mentions(p)) return true;
    return false;
}

std::vector<StateIdx> topo_order(PMC const& pmc, std::vector<bool> const& internal,
                                 StateIdx root) {
    // Kahn over the internal subgraph
    std::size_t n = pmc.n_states();
    std::vector<int> indeg(n, 0);
    for (StateIdx s = 0; s < n; ++s) {
        if (!internal[s]) continue;
        for (auto const& [t, f] : pmc.rows[s])
            if (internal[t]) ++indeg[t];
    }
    std::deque<StateIdx> ready;
    for (StateIdx s = 0; s < n; ++s)
        if (internal[s] && indeg[s] == 0) ready.push_back(s);
    std::vector<StateIdx> order;
    while (!ready.empty()) {
        StateIdx s = ready.front();
        ready.pop_front();
        order.push_back(s);
        for (auto const& [t, f] : pmc.rows[s])
            if (internal[t] && --indeg[t] == 0) ready.push_back(t);
    }
    auto rit = std::find(order.begin(), order.end(), root);
    if (rit != order.begin() && rit != order.end()) std::iter_swap(order.begin(), rit);
    return order;
}

}  // namespace

SubPMC extract_sub_pmc(PMC const& pmc, StateIdx root, ParamId p) {
    GammaMap gamma = compute_gamma(pmc);
    std::size_t n = pmc.n_states();

    auto static_ok = [&](StateIdx s) {
        if (pmc.transition(s, s)) return false;  // self-loop closes a cycle
        if (!univariate_row(pmc, s, p)) return false;
        return !gamma.of(s, p).empty() || carries_param(pmc, s, p);
    };

    SubPMC sub;
    sub.root = root;
    sub.p = p;
    if (!static_ok(root)) {
        sub.internal = {root};
        for (auto const& [t, f] : pmc.rows[root]) sub.exits.push_back(t);
        std::sort(sub.exits.begin(), sub.exits.end());
        return sub;
    }

    enum class Mark { Unknown, Internal, Exit };
    std::vector<Mark> mark(n, Mark::Unknown);
    std::vector<bool> on_stack(n, false);

    // iterative DFS; a state with an edge back into the current path is
    // demoted to exit so the internal graph stays acyclic
    struct Frame {
        StateIdx s;
        std::size_t edge;
    };
    mark[root] = Mark::Internal;
    on_stack[root] = true;
    std::vector<Frame> call{{root, 0}};
    while (!call.empty()) {
        auto& [s, edge] = call.back();
        auto const& row = pmc.rows[s];
        if (edge >= row.size()) {
            on_stack[s] = false;
            call.pop_back();
            continue;
        }
        StateIdx t = row[edge++].first;
        if (on_stack[t]) {
            // internalizing s would close a cycle
            if (s != root) {
                mark[s] = Mark::Exit;
                on_stack[s] = false;
                call.pop_back();
            }
            continue;
        }
        if (mark[t] != Mark::Unknown) continue;
        if (static_ok(t)) {
            mark[t] = Mark::Internal;
            on_stack[t] = true;
            call.push_back({t, 0});
        } else {
            mark[t] = Mark::Exit;
        }
    }

    // keep only internal states still reachable from the root through
    // internal states, then collect the exit frontier
    std::vector<bool> internal(n, false);
    std::deque<StateIdx> work{root};
    internal[root] = true;
    while (!work.empty()) {
        StateIdx s = work.front();
        work.pop_front();
        for (auto const& [t, f] : pmc.rows[s])
            if (mark[t] == Mark::Internal && !internal[t]) {
                internal[t] = true;
                work.push_back(t);
            }
    }
    for (StateIdx s = 0; s < n; ++s)
        if (internal[s])
            for (auto const& [t, f] : pmc.rows[s])
                if (!internal[t] &&
                    std::find(sub.exits.begin(), sub.exits.end(), t) == sub.exits.end())
                    sub.exits.push_back(t);
    std::sort(sub.exits.begin(), sub.exits.end());
    sub.internal = topo_order(pmc, internal, root);
    return sub;
}

PMC shortcut(PMC const& pmc, SubPMC const& sub) {
    PMC out = pmc;
    if (sub.degenerate()) return out;
    std::map<StateIdx, Polynomial> reach_internal;
    std::map<StateIdx, Polynomial> reach_exit;
    reach_internal[sub.root] = Polynomial::constant(1);
    std::vector<bool> internal(pmc.n_states(), false);
    for (StateIdx s : sub.internal) internal[s] = true;
    for (StateIdx s : sub.internal) {
        Polynomial const& acc = reach_internal[s];
        for (auto const& [t, f] : pmc.rows[s]) {
            Polynomial contribution = f * acc;
            auto& slot = internal[t] ? reach_internal[t] : reach_exit[t];
            slot = slot + contribution;
        }
    }
    std::vector<std::pair<StateIdx, Polynomial>> row;
    for (auto& [t, f] : reach_exit)
        if (!f.is_zero()) row.emplace_back(t, std::move(f));
    out.rows[sub.root] = std::move(row);
    return out;
}

std::optional<GroupingData> find_grouping(PMC const& pmc, StateIdx s) {
    auto const& row = pmc.rows[s];
    if (row.size() < 2) return std::nullopt;
    std::vector<Polynomial> fs;
    fs.reserve(row.size());
    for (auto const& [t, f] : row) fs.push_back(f);
    for (auto const& monomial : common_factor_candidates(fs)) {
        GroupingData data;
        data.monomial = monomial;
        bool mixed_sign = false;
        for (auto const& [t, f] : row)
            for (auto const& term : f.terms())
                if (term.powers == monomial) {
                    if (term.coeff > 0) {
                        data.carriers.emplace_back(t, term.coeff);
                    } else {
                        mixed_sign = true;
                    }
                }
        // branch probabilities c_i / c must be probabilities
        if (mixed_sign || data.carriers.size() < 2) continue;
        return data;
    }
    return std::nullopt;
}

PMC group(PMC const& pmc, StateIdx s, GroupingData const& data, std::string const& fresh_name) {
    if (data.carriers.size() < 2) throw Error("grouping needs at least two carriers");
    PMC out = pmc;
    StateIdx fresh = out.add_state(fresh_name);
    Rational total(0);
    for (auto const& [t, c] : data.carriers) total += c;
    Polynomial shared = Polynomial::single_term(Rational(1), data.monomial);
    for (auto const& [t, c] : data.carriers) {
        Polynomial const* old = out.transition(s, t);
        if (!old) throw Error("grouping carrier lost its transition");
        out.set_transition(s, t, add_scaled(*old, shared, -c));
        out.set_transition(fresh, t, Polynomial::constant(c / total));
    }
    out.set_transition(s, fresh, shared.scaled(total));
    return out;
}

namespace {

std::size_t reachable_count(PMC const& pmc) {
    std::vector<bool> seen(pmc.n_states(), false);
    std::deque<StateIdx> work{pmc.init};
    seen[pmc.init] = true;
    std::size_t count = 1;
    while (!work.empty()) {
        StateIdx s = work.front();
        work.pop_front();
        for (auto const& [t, f] : pmc.rows[s])
            if (!seen[t]) {
                seen[t] = true;
                ++count;
                work.push_back(t);
            }
    }
    return count;
}

std::vector<StateIdx> initial_stack(PMC const& pmc) {
    // reverse postorder from the initial state; popping from the back walks
    // the model in topological order where one exists
    std::vector<StateIdx> post;
    std::vector<bool> seen(pmc.n_states(), false);
    struct Frame {
        StateIdx s;
        std::size_t edge;
    };
    std::vector<Frame> call{{pmc.init, 0}};
    seen[pmc.init] = true;
    while (!call.empty()) {
        auto& [s, edge] = call.back();
        if (edge >= pmc.rows[s].size()) {
            post.push_back(s);
            call.pop_back();
            continue;
        }
        StateIdx t = pmc.rows[s][edge++].first;
        if (!seen[t]) {
            seen[t] = true;
            call.push_back({t, 0});
        }
    }
    return post;  // back() == init == top of stack
}

}  // namespace

PMC big_step(PMC const& pmc, BigStepStats* stats) {
    BigStepStats local;
    BigStepStats& st = stats ? *stats : local;
    st.states_before = pmc.n_states();

    PMC work = pmc;
    std::vector<StateIdx> stack = initial_stack(work);
    std::set<CandidateKey> visited;
    GammaMap gamma = compute_gamma(work);
    std::size_t reachable = reachable_count(work);
    std::uint64_t fresh_counter = 0;
    std::uint64_t const iteration_guard =
        (pmc.n_states() + 16) * std::max<std::uint64_t>(1, pmc.params.size()) * 64 + 1024;

    while (!stack.empty()) {
        if (++st.iterations > iteration_guard) throw Error("transformation failed to terminate");
        StateIdx s = stack.back();
        std::optional<ParamId> next;
        for (auto const& d : work.params)
            if (!visited.count({s, d.id})) {
                next = d.id;
                break;
            }
        if (!next) {
            stack.pop_back();
            continue;
        }
        ParamId p = *next;
        visited.insert({s, p});
        if (!candidate_condition(work, gamma, s, p)) continue;

        SubPMC sub = extract_sub_pmc(work, s, p);
        if (sub.degenerate()) continue;
        PMC replaced = shortcut(work, sub);
        std::size_t now_reachable = reachable_count(replaced);
        if (now_reachable >= reachable) continue;  // no progress: skip this pair

        work = std::move(replaced);
        reachable = now_reachable;
        ++st.shortcuts;
        while (auto grouping = find_grouping(work, s)) {
            std::string name;
            do {
                name = "_g" + std::to_string(fresh_counter++);
            } while (work.state(name));
            work = group(work, s, *grouping, name);
            stack.push_back(*work.state(name));
            ++st.groupings;
            ++reachable;
        }
        gamma = compute_gamma(work);
    }

    work.prune_unreachable();
    st.states_after = work.n_states();
    return work;
}

}  // namespace plift
