#include "plift/imc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace plift {

std::vector<bool> zero_states(IMC const& imc) {
    std::size_t n = imc.n_states();
    std::vector<std::vector<StateIdx>> preds(n);
    for (StateIdx s = 0; s < n; ++s)
        for (auto const& [t, iv] : imc.rows[s])
            if (iv.hi > 0) preds[t].push_back(s);
    std::vector<bool> reaches(n, false);
    std::deque<StateIdx> work;
    for (StateIdx g : imc.good) {
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
    std::vector<bool> zero(n);
    for (StateIdx s = 0; s < n; ++s) zero[s] = !reaches[s];
    return zero;
}

namespace {

/// Iterative Tarjan over an adjacency restricted to a candidate mask.
std::vector<std::vector<StateIdx>> sccs(std::vector<std::vector<StateIdx>> const& adj,
                                        std::vector<bool> const& in) {
    std::size_t n = adj.size();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<StateIdx> stack;
    std::vector<std::vector<StateIdx>> components;
    int next = 0;

    struct Frame {
        StateIdx v;
        std::size_t edge;
    };
    for (StateIdx start = 0; start < n; ++start) {
        if (!in[start] || index[start] != -1) continue;
        std::vector<Frame> call{{start, 0}};
        index[start] = low[start] = next++;
        stack.push_back(start);
        on_stack[start] = true;
        while (!call.empty()) {
            auto& [v, edge] = call.back();
            if (edge < adj[v].size()) {
                StateIdx w = adj[v][edge++];
                if (!in[w]) continue;
                if (index[w] == -1) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    std::vector<StateIdx> comp;
                    for (;;) {
                        StateIdx w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    components.push_back(std::move(comp));
                }
                StateIdx child = v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[child]);
            }
        }
    }
    return components;
}

}  // namespace

MecPartition find_mecs(IMC const& imc) {
    std::size_t n = imc.n_states();
    std::vector<bool> zero = zero_states(imc);
    std::vector<bool> cand(n, true);
    for (StateIdx s = 0; s < n; ++s)
        if (zero[s] || imc.is_good(s)) cand[s] = false;

    std::vector<std::vector<StateIdx>> adj(n);
    for (StateIdx s = 0; s < n; ++s)
        for (auto const& [t, iv] : imc.rows[s])
            if (iv.hi > 0) adj[s].push_back(t);

    std::vector<std::vector<StateIdx>> comps;
    bool changed = true;
    while (changed) {
        changed = false;
        comps = sccs(adj, cand);
        for (auto const& comp : comps) {
            for (StateIdx s : comp) {
                // a state can stay iff its probability mass can remain fully
                // inside the component: all exit lower bounds are zero and
                // the internal upper bounds can absorb the whole mass
                bool stay = true;
                Rational inner_hi(0);
                for (auto const& [t, iv] : imc.rows[s]) {
                    if (std::binary_search(comp.begin(), comp.end(), t)) {
                        inner_hi += iv.hi;
                    } else if (iv.lo > 0) {
                        stay = false;
                        break;
                    }
                }
                if (stay && inner_hi < 1) stay = false;
                if (!stay) {
                    cand[s] = false;
                    changed = true;
                }
            }
        }
    }

    MecPartition part;
    for (auto& comp : comps) {
        std::vector<StateIdx> alive;
        for (StateIdx s : comp)
            if (cand[s]) alive.push_back(s);
        if (alive.size() == comp.size() && !comp.empty()) part.mecs.push_back(std::move(comp));
    }
    std::vector<bool> in_mec(n, false);
    for (auto const& mec : part.mecs)
        for (StateIdx s : mec) in_mec[s] = true;
    for (StateIdx s = 0; s < n; ++s)
        if (!in_mec[s]) part.residual.push_back(s);
    return part;
}

IMC eliminate_ecs(IMC const& imc) {
    std::size_t n = imc.n_states();
    MecPartition part = find_mecs(imc);
    if (part.mecs.empty()) return imc;

    std::vector<bool> zero = zero_states(imc);
    // representative per state: the lowest-indexed member of its MEC
    std::vector<StateIdx> rep(n);
    std::vector<bool> is_rep_of_mec(n, false);
    for (StateIdx s = 0; s < n; ++s) rep[s] = s;
    for (auto const& mec : part.mecs) {
        StateIdx r = mec.front();
        is_rep_of_mec[r] = true;
        for (StateIdx s : mec) rep[s] = r;
    }

    IMC out;
    std::vector<StateIdx> remap(n, 0);
    std::vector<bool> emitted(n, false);
    for (StateIdx s = 0; s < n; ++s) {
        if (rep[s] != s) continue;
        remap[s] = static_cast<StateIdx>(out.state_names.size());
        out.state_names.push_back(imc.state_names[s]);
        emitted[s] = true;
    }
    for (StateIdx s = 0; s < n; ++s) remap[s] = remap[rep[s]];
    out.init = remap[imc.init];
    out.rows.resize(out.state_names.size());
    out.infeasible.assign(out.state_names.size(), false);
    for (StateIdx g : imc.good) out.good.push_back(remap[g]);
    std::sort(out.good.begin(), out.good.end());
    out.good.erase(std::unique(out.good.begin(), out.good.end()), out.good.end());

    // a bad sink for the "stay forever" exit of each collapsed component
    std::optional<StateIdx> bad_sink;
    for (StateIdx s = 0; s < n; ++s)
        if (zero[s] && rep[s] == s && !is_rep_of_mec[s]) {
            bad_sink = remap[s];
            break;
        }
    if (!bad_sink) {
        std::string name = "_bad";
        while (std::find(out.state_names.begin(), out.state_names.end(), name) !=
               out.state_names.end())
            name += "_";
        bad_sink = static_cast<StateIdx>(out.state_names.size());
        out.state_names.push_back(std::move(name));
        out.rows.emplace_back();
        out.infeasible.push_back(false);
        out.rows[*bad_sink].emplace_back(*bad_sink, Interval::point(1));
    }

    auto push_interval = [](std::vector<std::pair<StateIdx, Interval>>& row, StateIdx t,
                            Interval iv) {
        for (auto& [u, existing] : row)
            if (u == t) {
                // several original targets merged into one state: the masses add
                existing = existing + iv;
                return;
            }
        row.emplace_back(t, std::move(iv));
    };

    for (StateIdx s = 0; s < n; ++s) {
        if (rep[s] != s) continue;
        StateIdx ns = remap[s];
        if (is_rep_of_mec[s]) {
            auto const& mec = *std::find_if(part.mecs.begin(), part.mecs.end(),
                                            [&](auto const& m) { return m.front() == s; });
            std::vector<StateIdx> succs;
            for (StateIdx m : mec)
                for (auto const& [t, iv] : imc.rows[m]) {
                    if (iv.hi == 0) continue;
                    StateIdx nt = remap[t];
                    if (nt == ns) continue;
                    if (std::find(succs.begin(), succs.end(), nt) == succs.end())
                        succs.push_back(nt);
                }
            for (StateIdx nt : succs)
                out.rows[ns].emplace_back(nt, Interval{Rational(0), Rational(1)});
            if (std::find(succs.begin(), succs.end(), *bad_sink) == succs.end())
                out.rows[ns].emplace_back(*bad_sink, Interval{Rational(0), Rational(1)});
        } else {
            out.infeasible[ns] = s < imc.infeasible.size() && imc.infeasible[s];
            for (auto const& [t, iv] : imc.rows[s]) {
                auto c = clamp_unit(iv);
                if (!c) {
                    out.infeasible[ns] = true;
                    continue;
                }
                push_interval(out.rows[ns], remap[t], *c);
            }
            for (auto& [t, iv] : out.rows[ns]) {
                auto c = clamp_unit(iv);
                if (c) {
                    iv = *c;
                } else {
                    out.infeasible[ns] = true;
                    iv = Interval::point(1);
                }
            }
        }
        std::sort(out.rows[ns].begin(), out.rows[ns].end(),
                  [](auto const& a, auto const& b) { return a.first < b.first; });
    }
    return out;
}

BellmanOperator::BellmanOperator(IMC const& imc, Opt opt) : opt_(opt) {
    std::size_t n = imc.n_states();
    bad_ = zero_states(imc);
    fixed_.assign(n, std::numeric_limits<double>::quiet_NaN());
    rows_.resize(n);
    for (StateIdx s = 0; s < n; ++s) {
        if (imc.is_good(s)) {
            fixed_[s] = 1.0;
        } else if (bad_[s]) {
            fixed_[s] = 0.0;
        } else if (s < imc.infeasible.size() && imc.infeasible[s]) {
            // no instantiation realizes this row; keep it from constraining
            // the estimate in either direction
            fixed_[s] = opt == Opt::Max ? 0.0 : 1.0;
        } else {
            auto& row = rows_[s];
            for (auto const& [t, iv] : imc.rows[s]) {
                row.targets.push_back(t);
                row.bounds.emplace_back(to_double(iv.lo), to_double(iv.hi));
            }
        }
    }
}

std::vector<double> BellmanOperator::initial() const {
    std::vector<double> x(fixed_.size(), 0.0);
    for (std::size_t s = 0; s < fixed_.size(); ++s)
        if (!std::isnan(fixed_[s])) x[s] = fixed_[s];
    return x;
}

double BellmanOperator::sweep(std::vector<double>& x) const {
    double change = 0.0;
    std::vector<double> vals;
    for (std::size_t s = 0; s < rows_.size(); ++s) {
        if (!std::isnan(fixed_[s])) continue;
        auto const& row = rows_[s];
        vals.clear();
        for (StateIdx t : row.targets) vals.push_back(x[t]);
        double nv = inner_opt<double>(vals, row.bounds, opt_);
        change = std::max(change, std::abs(nv - x[s]));
        x[s] = nv;
    }
    return change;
}

ValueVector robust_vi(IMC const& imc, Opt opt, double precision) {
    if (!find_mecs(imc).mecs.empty()) throw NonUniqueFixpointError();
    BellmanOperator op(imc, opt);
    ValueVector out;
    out.values = op.initial();
    constexpr std::uint64_t kMaxSweeps = 2'000'000;
    for (;;) {
        double change = op.sweep(out.values);
        ++out.sweeps;
        out.residual = change;
        if (change < precision || out.sweeps >= kMaxSweeps) break;
    }
    return out;
}

Interval reachability_interval(IMC const& imc, double precision, ReachStats& stats) {
    IMC reduced = eliminate_ecs(imc);
    ValueVector lo = robust_vi(reduced, Opt::Min, precision);
    ValueVector hi = robust_vi(reduced, Opt::Max, precision);
    stats.sweeps += lo.sweeps + hi.sweeps;
    double a = std::max(0.0, lo.values[reduced.init] - precision);
    double b = std::min(1.0, hi.values[reduced.init] + precision);
    return Interval{rational_from_double(a), rational_from_double(b)};
}

Interval reachability_interval(IMC const& imc, double precision) {
    ReachStats stats;
    return reachability_interval(imc, precision, stats);
}

}  // namespace plift
