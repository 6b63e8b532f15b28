#include "plift/model.hpp"

#include <algorithm>
#include <deque>

namespace plift {

StateIdx PMC::add_state(std::string name) {
    if (state_index.count(name)) throw Error("duplicate state " + name);
    StateIdx idx = static_cast<StateIdx>(state_names.size());
    state_index.emplace(name, idx);
    state_names.push_back(std::move(name));
    rows.emplace_back();
    return idx;
}

std::optional<StateIdx> PMC::state(std::string const& name) const {
    auto it = state_index.find(name);
    if (it == state_index.end()) return std::nullopt;
    return it->second;
}

void PMC::set_transition(StateIdx from, StateIdx to, Polynomial f) {
    auto& row = rows.at(from);
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](auto const& e, StateIdx t) { return e.first < t; });
    if (f.is_zero()) {
        if (it != row.end() && it->first == to) row.erase(it);
        return;
    }
    if (it != row.end() && it->first == to) {
        it->second = std::move(f);
    } else {
        row.insert(it, {to, std::move(f)});
    }
}

Polynomial const* PMC::transition(StateIdx from, StateIdx to) const {
    auto const& row = rows.at(from);
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](auto const& e, StateIdx t) { return e.first < t; });
    if (it == row.end() || it->first != to) return nullptr;
    return &it->second;
}

bool PMC::is_target(StateIdx s) const {
    return std::binary_search(targets.begin(), targets.end(), s);
}

std::optional<ParamDecl> PMC::param(ParamId p) const {
    for (auto const& d : params)
        if (d.id == p) return d;
    return std::nullopt;
}

std::size_t PMC::prune_unreachable() {
    std::vector<bool> seen(n_states(), false);
    std::deque<StateIdx> work{init};
    seen[init] = true;
    while (!work.empty()) {
        StateIdx s = work.front();
        work.pop_front();
        for (auto const& [t, f] : rows[s])
            if (!seen[t]) {
                seen[t] = true;
                work.push_back(t);
            }
    }
    std::size_t removed = std::count(seen.begin(), seen.end(), false);
    if (removed == 0) return 0;

    std::vector<StateIdx> remap(n_states(), 0);
    PMC out;
    out.params = params;
    for (StateIdx s = 0; s < n_states(); ++s)
        if (seen[s]) remap[s] = out.add_state(state_names[s]);
    out.init = remap[init];
    for (StateIdx s = 0; s < n_states(); ++s) {
        if (!seen[s]) continue;
        for (auto const& [t, f] : rows[s]) out.rows[remap[s]].emplace_back(remap[t], f);
    }
    for (StateIdx t : targets)
        if (seen[t]) out.targets.push_back(remap[t]);
    std::sort(out.targets.begin(), out.targets.end());
    *this = std::move(out);
    return removed;
}

std::optional<StateIdx> IMC::state(std::string const& name) const {
    for (StateIdx s = 0; s < state_names.size(); ++s)
        if (state_names[s] == name) return s;
    return std::nullopt;
}

Interval const* IMC::transition(StateIdx from, StateIdx to) const {
    for (auto const& [t, iv] : rows.at(from))
        if (t == to) return &iv;
    return nullptr;
}

bool IMC::is_good(StateIdx s) const {
    return std::binary_search(good.begin(), good.end(), s);
}

InstantiateResult instantiate(PMC const& pmc, Assignment const& u) {
    for (auto const& d : pmc.params) {
        auto it = u.find(d.id);
        if (it == u.end()) throw Error("instantiation misses parameter " + param_name(d.id));
        if (d.discrete && !is_integer(it->second))
            throw Error("non-integer value for discrete parameter " + param_name(d.id));
    }
    MC mc;
    mc.state_names = pmc.state_names;
    mc.init = pmc.init;
    mc.good = pmc.targets;
    mc.rows.resize(pmc.n_states());
    for (StateIdx s = 0; s < pmc.n_states(); ++s) {
        Rational sum(0);
        for (auto const& [t, f] : pmc.rows[s]) {
            Rational v = f.eval(u);
            if (v < 0 || v > 1) return NotWellDefined{s};
            sum += v;
            if (v != 0) mc.rows[s].emplace_back(t, std::move(v));
        }
        if (sum != 1) return NotWellDefined{s};
    }
    return mc;
}

bool is_well_defined(PMC const& pmc, Assignment const& u) {
    return std::holds_alternative<MC>(instantiate(pmc, u));
}

std::vector<Rational> mc_reach(MC const& mc, std::vector<StateIdx> const& good) {
    std::size_t n = mc.n_states();
    std::vector<bool> is_good(n, false);
    for (StateIdx g : good) is_good[g] = true;

    // backward reachability: states with a path into the target set
    std::vector<std::vector<StateIdx>> preds(n);
    for (StateIdx s = 0; s < n; ++s)
        for (auto const& [t, v] : mc.rows[s]) preds[t].push_back(s);
    std::vector<bool> reaches(n, false);
    std::deque<StateIdx> work;
    for (StateIdx g : good) {
        reaches[g] = true;
        work.push_back(g);
    }
    while (!work.empty()) {
        StateIdx s = work.front();
        work.pop_front();
        for (StateIdx p : preds[s])
            if (!reaches[p]) {
                reaches[p] = true;
                work.push_back(p);
            }
    }

    std::vector<Rational> x(n, Rational(0));
    for (StateIdx g : good) x[g] = 1;

    std::vector<StateIdx> unknown;
    for (StateIdx s = 0; s < n; ++s)
        if (reaches[s] && !is_good[s]) unknown.push_back(s);
    if (unknown.empty()) return x;

    std::vector<std::size_t> pos(n, SIZE_MAX);
    for (std::size_t i = 0; i < unknown.size(); ++i) pos[unknown[i]] = i;

    // (I - P) restricted to the unknown states, rhs = mass into known-1 states
    std::size_t m = unknown.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        a[i][pos[unknown[i]]] += 1;
        for (auto const& [t, v] : mc.rows[unknown[i]]) {
            if (is_good[t]) {
                a[i][m] += v;
            } else if (pos[t] != SIZE_MAX) {
                a[i][pos[t]] -= v;
            }
        }
    }
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) throw Error("singular reachability system");
        std::swap(a[col], a[piv]);
        Rational d = a[col][col];
        for (std::size_t j = col; j <= m; ++j) a[col][j] /= d;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (std::size_t j = col; j <= m; ++j) a[i][j] -= f * a[col][j];
        }
    }
    for (std::size_t i = 0; i < m; ++i) x[unknown[i]] = a[i][m];
    return x;
}

IMC interval_substitute(PMC const& pmc, Region const& region, Rational const& tol) {
    for (auto const& d : pmc.params) region.interval_of(d.id);  // validates coverage
    Box box = region.box();
    IMC imc;
    imc.state_names = pmc.state_names;
    imc.init = pmc.init;
    imc.good = pmc.targets;
    imc.rows.resize(pmc.n_states());
    imc.infeasible.assign(pmc.n_states(), false);
    for (StateIdx s = 0; s < pmc.n_states(); ++s) {
        Rational lo_sum(0), hi_sum(0);
        bool dead_entry = false;
        for (auto const& [t, f] : pmc.rows[s]) {
            Interval enclosure = f.is_constant() ? Interval::point(f.constant_value())
                                                 : bound_box(f, box, tol);
            auto clamped = clamp_unit(enclosure);
            if (!clamped) {
                // the transition cannot carry a probability anywhere in the
                // region: no instantiation makes this row a distribution
                dead_entry = true;
                continue;
            }
            if (clamped->hi == 0) continue;  // structurally absent
            lo_sum += clamped->lo;
            hi_sum += clamped->hi;
            imc.rows[s].emplace_back(t, std::move(*clamped));
        }
        if (dead_entry || lo_sum > 1 || hi_sum < 1) imc.infeasible[s] = true;
    }
    return imc;
}

PMC partial_instantiate(PMC const& pmc, Assignment const& partial) {
    PMC out;
    out.state_names = pmc.state_names;
    out.state_index = pmc.state_index;
    out.init = pmc.init;
    out.targets = pmc.targets;
    for (auto const& d : pmc.params)
        if (!partial.count(d.id)) out.params.push_back(d);
    out.rows.resize(pmc.n_states());
    for (StateIdx s = 0; s < pmc.n_states(); ++s)
        for (auto const& [t, f] : pmc.rows[s]) {
            Polynomial g = f.substitute(partial);
            if (!g.is_zero()) out.rows[s].emplace_back(t, std::move(g));
        }
    return out;
}

}  // namespace plift
