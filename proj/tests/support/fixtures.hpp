#pragma once

// Shared fixtures and independent oracles for the test suites. Everything in
// here stays deliberately brute-force so it cannot share a failure mode with
// the implementation under test.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "plift/builtin.hpp"
#include "plift/engine.hpp"
#include "plift/imc.hpp"
#include "plift/model.hpp"
#include "plift/parse.hpp"

namespace plift::testing {

inline PMC load(std::string const& name) {
    auto text = builtin_model(name);
    if (!text) throw Error("unknown builtin model " + name);
    return parse_model(*text);
}

inline Region region_of(PMC const& pmc, std::string const& text) {
    return parse_region(text, pmc);
}

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

inline Rational random_rational(std::mt19937_64& rng, Rational lo = Rational(0),
                                Rational hi = Rational(1)) {
    std::uint64_t k = rng() % 1025;
    return lo + (hi - lo) * Rational(k, 1024);
}

// ---------------------------------------------------------------------------
// Inner LP oracle: enumerate the vertices of {lo <= a <= hi, sum a = 1}.
// Every vertex has at most one fractional coordinate.

template <typename T>
std::vector<std::vector<T>> row_polytope_vertices(std::vector<std::pair<T, T>> const& bounds) {
    std::size_t n = bounds.size();
    std::vector<std::vector<T>> vertices;
    for (std::size_t frac = 0; frac < n; ++frac) {
        for (std::size_t mask = 0; mask < (std::size_t(1) << (n - 1)); ++mask) {
            std::vector<T> a(n);
            T sum(0);
            std::size_t bit = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == frac) continue;
                a[i] = (mask >> bit) & 1 ? bounds[i].second : bounds[i].first;
                sum += a[i];
                ++bit;
            }
            T rest = T(1) - sum;
            if (rest < bounds[frac].first || rest > bounds[frac].second) continue;
            a[frac] = rest;
            if (std::find(vertices.begin(), vertices.end(), a) == vertices.end())
                vertices.push_back(std::move(a));
        }
    }
    return vertices;
}

template <typename T>
T lp_vertex_opt(std::vector<T> const& values, std::vector<std::pair<T, T>> const& bounds,
                Opt opt) {
    auto vertices = row_polytope_vertices(bounds);
    if (vertices.empty()) throw Error("oracle: infeasible row");
    bool first = true;
    T best(0);
    for (auto const& a : vertices) {
        T v(0);
        for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * values[i];
        if (first || (opt == Opt::Max ? v > best : v < best)) best = v;
        first = false;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Reachability cross-checks

inline std::vector<double> power_iteration_reach(MC const& mc, std::vector<StateIdx> const& good,
                                                 std::size_t max_steps = 1000000) {
    std::size_t n = mc.n_states();
    std::vector<bool> is_good(n, false);
    for (StateIdx g : good) is_good[g] = true;
    std::vector<double> x(n, 0.0), next(n, 0.0);
    for (StateIdx g : good) x[g] = 1.0;
    for (std::size_t step = 0; step < max_steps; ++step) {
        double change = 0.0;
        for (StateIdx s = 0; s < n; ++s) {
            if (is_good[s]) {
                next[s] = 1.0;
                continue;
            }
            double acc = 0.0;
            for (auto const& [t, v] : mc.rows[s]) acc += to_double(v) * x[t];
            change = std::max(change, std::abs(acc - x[s]));
            next[s] = acc;
        }
        x.swap(next);
        if (change < 1e-13) break;
    }
    return x;
}

/// Exact reachability interval of a small acyclic iMC by enumerating one
/// vertex distribution per state (reachability is linear in each row when no
/// state repeats along a path).
inline Interval vertex_policy_reach_interval(IMC const& imc) {
    std::size_t n = imc.n_states();
    std::vector<std::vector<std::vector<Rational>>> row_choices(n);
    std::vector<std::vector<StateIdx>> row_targets(n);
    for (StateIdx s = 0; s < n; ++s) {
        if (imc.rows[s].empty()) {
            row_choices[s] = {{}};
            continue;
        }
        std::vector<std::pair<Rational, Rational>> bounds;
        for (auto const& [t, iv] : imc.rows[s]) {
            row_targets[s].push_back(t);
            bounds.emplace_back(iv.lo, iv.hi);
        }
        row_choices[s] = row_polytope_vertices(bounds);
        if (row_choices[s].empty()) throw Error("oracle: infeasible row");
    }
    std::size_t combos = 1;
    for (StateIdx s = 0; s < n; ++s) {
        combos *= row_choices[s].size();
        if (combos > 2000000) throw Error("oracle: too many vertex policies");
    }
    Rational lo, hi;
    bool first = true;
    for (std::size_t combo = 0; combo < combos; ++combo) {
        MC mc;
        mc.state_names = imc.state_names;
        mc.init = imc.init;
        mc.good = imc.good;
        mc.rows.resize(n);
        std::size_t rest = combo;
        for (StateIdx s = 0; s < n; ++s) {
            std::size_t pick = rest % row_choices[s].size();
            rest /= row_choices[s].size();
            auto const& a = row_choices[s][pick];
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != 0) mc.rows[s].emplace_back(row_targets[s][i], a[i]);
        }
        Rational v = mc_reach(mc, imc.good)[mc.init];
        if (first || v < lo) lo = v;
        if (first || v > hi) hi = v;
        first = false;
    }
    return Interval{lo, hi};
}

/// Brute-force maximal end components by subset enumeration (small iMCs).
inline std::vector<std::vector<StateIdx>> brute_force_mecs(IMC const& imc) {
    std::size_t n = imc.n_states();
    if (n > 16) throw Error("oracle: iMC too large for subset enumeration");
    std::vector<bool> zero = zero_states(imc);
    auto is_ec = [&](std::vector<StateIdx> const& set) {
        for (StateIdx s : set) {
            if (imc.is_good(s) || zero[s]) return false;
            Rational inner_hi(0);
            for (auto const& [t, iv] : imc.rows[s]) {
                if (std::find(set.begin(), set.end(), t) != set.end()) {
                    inner_hi += iv.hi;
                } else if (iv.lo > 0) {
                    return false;
                }
            }
            if (inner_hi < 1) return false;
        }
        // strong connectivity over the possibly-positive edges inside the set
        for (StateIdx from : set) {
            std::set<StateIdx> seen{from};
            std::vector<StateIdx> work{from};
            while (!work.empty()) {
                StateIdx s = work.back();
                work.pop_back();
                for (auto const& [t, iv] : imc.rows[s])
                    if (iv.hi > 0 && std::find(set.begin(), set.end(), t) != set.end() &&
                        seen.insert(t).second)
                        work.push_back(t);
            }
            if (seen.size() != set.size()) return false;
        }
        return true;
    };
    std::vector<std::vector<StateIdx>> ecs;
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<StateIdx> set;
        for (StateIdx s = 0; s < n; ++s)
            if ((mask >> s) & 1) set.push_back(s);
        if (is_ec(set)) ecs.push_back(std::move(set));
    }
    std::vector<std::vector<StateIdx>> maximal;
    for (auto const& e : ecs) {
        bool contained = false;
        for (auto const& f : ecs)
            if (e != f && std::includes(f.begin(), f.end(), e.begin(), e.end())) contained = true;
        if (!contained) maximal.push_back(e);
    }
    return maximal;
}

// ---------------------------------------------------------------------------
// Randomized small pMCs with symbolic row sums of one

inline Polynomial one_minus(ParamId p) {
    Expanded e = Expanded::constant(1);
    e -= Expanded::parameter(p);
    return Polynomial::from_expanded_as_factor(e);
}

inline PMC random_pmc(std::mt19937_64& rng) {
    PMC pmc;
    std::size_t inner = 2 + rng() % 9;  // plus good and bad: at most 12 states
    std::size_t n_params = 1 + rng() % 3;
    std::vector<ParamId> ps;
    for (std::size_t i = 0; i < n_params; ++i) {
        ParamId id = param_id("rp" + std::to_string(i));
        ps.push_back(id);
        pmc.params.push_back({id, false});
    }
    for (std::size_t i = 0; i < inner; ++i) pmc.add_state("n" + std::to_string(i));
    StateIdx good = pmc.add_state("good");
    StateIdx bad = pmc.add_state("bad");
    pmc.init = 0;
    pmc.targets = {good};
    pmc.set_transition(good, good, Polynomial::constant(1));
    pmc.set_transition(bad, bad, Polynomial::constant(1));

    auto forward = [&](StateIdx s) -> StateIdx {
        // successor strictly later in the order, possibly a sink
        std::size_t span = inner - s + 1;
        std::size_t o = rng() % (span + 1);
        StateIdx t = s + 1 + static_cast<StateIdx>(o);
        if (t >= inner) t = (rng() % 2) ? good : bad;
        return t;
    };
    auto pick2 = [&](StateIdx s, StateIdx& a, StateIdx& b) {
        a = forward(s);
        do {
            b = forward(s);
        } while (b == a);
    };

    for (StateIdx s = 0; s < inner; ++s) {
        ParamId p = ps[rng() % ps.size()];
        ParamId q = ps[rng() % ps.size()];
        StateIdx a, b;
        pick2(s, a, b);
        std::size_t successors_available = (inner - s - 1) + 2;
        std::size_t pattern = rng() % 5;
        if ((pattern == 2 || pattern == 4) && successors_available < 3) pattern = 0;
        switch (pattern) {
            case 0: {  // p / 1-p
                pmc.set_transition(s, a, Polynomial::parameter(p));
                pmc.set_transition(s, b, one_minus(p));
                break;
            }
            case 1: {  // constants
                Rational c(1 + static_cast<long>(rng() % 3), 4);
                pmc.set_transition(s, a, Polynomial::constant(c));
                pmc.set_transition(s, b, Polynomial::constant(1 - c));
                break;
            }
            case 2: {  // p*q / p*(1-q) / 1-p: nonlinear row
                StateIdx c;
                do {
                    c = forward(s);
                } while (c == a || c == b);
                Polynomial pp = Polynomial::parameter(p);
                pmc.set_transition(s, a, pp * Polynomial::parameter(q));
                pmc.set_transition(s, b, pp * one_minus(q));
                pmc.set_transition(s, c, one_minus(p));
                break;
            }
            case 3: {  // back edge when possible: p back, 1-p forward
                if (s == 0) {
                    pmc.set_transition(s, a, Polynomial::constant(1));
                    break;
                }
                StateIdx back = static_cast<StateIdx>(rng() % s);
                pmc.set_transition(s, back, Polynomial::parameter(p));
                pmc.set_transition(s, a, one_minus(p));
                break;
            }
            default: {  // two-parameter simplex row (not well defined everywhere)
                if (ps.size() < 2) {
                    pmc.set_transition(s, a, Polynomial::constant(1));
                    break;
                }
                StateIdx c;
                do {
                    c = forward(s);
                } while (c == a || c == b);
                Expanded rest = Expanded::constant(1);
                rest -= Expanded::parameter(ps[0]);
                rest -= Expanded::parameter(ps[1]);
                pmc.set_transition(s, a, Polynomial::parameter(ps[0]));
                pmc.set_transition(s, b, Polynomial::parameter(ps[1]));
                pmc.set_transition(s, c, Polynomial::from_expanded_as_factor(rest));
                break;
            }
        }
    }
    return pmc;
}

inline Region random_region(std::mt19937_64& rng, PMC const& pmc) {
    Region r;
    for (auto const& d : pmc.params) {
        Rational lo = random_rational(rng, Rational(0), Rational(1, 2));
        Rational w = random_rational(rng, Rational(1, 8), Rational(1, 2));
        Rational hi = lo + w;
        if (hi > 1) hi = 1;
        r.add(d.id, d.discrete, Interval{lo, hi});
    }
    return r;
}

// ---------------------------------------------------------------------------
// First-occurrence parameter sequences along simple paths

inline std::set<std::vector<ParamId>> path_label_sequences(PMC const& pmc) {
    std::set<std::vector<ParamId>> out;
    struct Frame {
        StateIdx s;
        std::vector<ParamId> labels;
        std::vector<bool> visited;
    };
    std::vector<Frame> work;
    work.push_back({pmc.init, {}, std::vector<bool>(pmc.n_states(), false)});
    work.back().visited[pmc.init] = true;
    while (!work.empty()) {
        Frame f = std::move(work.back());
        work.pop_back();
        out.insert(f.labels);
        for (auto const& [t, poly] : pmc.rows[f.s]) {
            if (f.visited[t]) continue;
            Frame next = f;
            next.s = t;
            next.visited[t] = true;
            for (ParamId p : poly.params())
                if (std::find(next.labels.begin(), next.labels.end(), p) == next.labels.end())
                    next.labels.push_back(p);
            work.push_back(std::move(next));
        }
    }
    return out;
}

inline bool is_subsequence(std::vector<ParamId> const& needle, std::vector<ParamId> const& hay) {
    std::size_t i = 0;
    for (ParamId p : hay)
        if (i < needle.size() && needle[i] == p) ++i;
    return i == needle.size();
}

}  // namespace plift::testing
