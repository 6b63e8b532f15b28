#include "plift/engine.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <future>

namespace plift {

std::vector<StateIdx> resolve_target(PMC const& pmc, std::string const& label) {
    std::vector<StateIdx> out;
    for (StateIdx s = 0; s < pmc.n_states(); ++s)
        if (pmc.state_names[s] == label) out.push_back(s);
    if (out.empty()) throw Error("no state carries the target label \"" + label + "\"");
    return out;
}

Rational oracle_value(PMC const& pmc, std::vector<StateIdx> const& good, Assignment const& u) {
    auto inst = instantiate(pmc, u);
    if (std::holds_alternative<NotWellDefined>(inst))
        throw Error("oracle called on a not-well-defined instantiation");
    MC const& mc = std::get<MC>(inst);
    return mc_reach(mc, good)[mc.init];
}

bool satisfies(Property const& prop, Rational const& value) {
    switch (prop.op) {
        case Property::Op::Lt: return value < prop.threshold;
        case Property::Op::Le: return value <= prop.threshold;
        case Property::Op::Ge: return value >= prop.threshold;
        case Property::Op::Gt: return value > prop.threshold;
    }
    return false;
}

namespace {

RegionResult classify(Property const& prop, Interval const& estimate) {
    double a = to_double(estimate.lo);
    double b = to_double(estimate.hi);
    double lambda = to_double(prop.threshold);
    RegionResult res;
    res.lo = a;
    res.hi = b;
    bool sat = false, violate = false;
    switch (prop.op) {
        case Property::Op::Lt: sat = b < lambda, violate = a >= lambda; break;
        case Property::Op::Le: sat = b <= lambda, violate = a > lambda; break;
        case Property::Op::Ge: sat = a >= lambda, violate = b < lambda; break;
        case Property::Op::Gt: sat = a > lambda, violate = b <= lambda; break;
    }
    res.kind = sat ? RegionCheck::Sat : violate ? RegionCheck::Violate : RegionCheck::Undecided;
    return res;
}

RegionResult check_one(PMC const& pmc, Region const& region, Property const& prop,
                       EngineOptions const& opts, ReachStats& reach_stats) {
    IMC imc = interval_substitute(pmc, region, rational_from_double(opts.precision));
    if (imc.infeasible[imc.init]) {
        // no instantiation in the region induces a Markov chain
        RegionResult res;
        res.kind = RegionCheck::Sat;
        res.vacuous = true;
        res.lo = 0.0;
        res.hi = 1.0;
        return res;
    }
    Interval estimate = reachability_interval(imc, opts.precision, reach_stats);
    return classify(prop, estimate);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct QueueEntry {
    Region region;
    std::size_t depth = 0;
    std::uint64_t index = 0;
};

}  // namespace

RegionResult check_region(PMC const& pmc, Region const& region, Property const& prop,
                          EngineOptions const& opts) {
    PMC work = pmc;
    work.targets = resolve_target(pmc, prop.target_label);
    ReachStats ignored;
    return check_one(work, region, prop, opts, ignored);
}

Verdict verify(PMC const& pmc, Region const& region, Property const& prop,
               EngineOptions const& opts, RegionSink const& sink) {
    auto started = std::chrono::steady_clock::now();
    Verdict verdict;
    VerifyStats& stats = verdict.stats;
    stats.bigstep_enabled = opts.bigstep;

    PMC original = pmc;
    original.targets = resolve_target(pmc, prop.target_label);
    for (auto const& d : original.params) region.interval_of(d.id);

    PMC model = opts.bigstep ? big_step(original, &stats.bigstep) : original;

    SplitStrategy strategy;
    strategy.kind = opts.split;
    if (opts.split == SplitKind::WidthHeuristic)
        strategy.weights = occurrence_weights(region, model);

    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };
    auto finish = [&](Verdict::Kind kind) {
        verdict.kind = kind;
        stats.elapsed_s = elapsed();
        return verdict;
    };
    auto note_depth = [&](std::size_t depth) {
        stats.max_depth = std::max(stats.max_depth, depth);
        if (stats.depth_histogram.size() <= depth) stats.depth_histogram.resize(depth + 1, 0);
        ++stats.depth_histogram[depth];
    };
    auto record = [&](QueueEntry const& e, RegionResult const& res, std::string status) {
        if (sink) sink({e.region, e.depth, res.lo, res.hi, std::move(status)});
    };

    std::deque<QueueEntry> queue;
    queue.push_back({region, 0, 0});
    std::uint64_t region_counter = 1;
    bool coincidence = false;
    std::string tightest;

    while (!queue.empty()) {
        if (stats.regions_checked >= opts.max_regions) {
            verdict.unknown_reason = "region budget exhausted";
            return finish(Verdict::Kind::Unknown);
        }
        if (opts.timeout_s > 0 && elapsed() > opts.timeout_s) {
            verdict.unknown_reason = "time budget exhausted";
            return finish(Verdict::Kind::Unknown);
        }

        std::size_t wave = std::max<unsigned>(1, opts.workers);
        wave = std::min(wave, queue.size());
        std::vector<QueueEntry> entries(queue.begin(), queue.begin() + wave);
        queue.erase(queue.begin(), queue.begin() + wave);

        std::vector<RegionResult> results(entries.size());
        std::vector<ReachStats> reach(entries.size());
        if (entries.size() > 1) {
            std::vector<std::future<void>> futures;
            for (std::size_t i = 0; i < entries.size(); ++i)
                futures.push_back(std::async(std::launch::async, [&, i] {
                    results[i] = check_one(model, entries[i].region, prop, opts, reach[i]);
                }));
            for (auto& f : futures) f.get();
        } else {
            results[0] = check_one(model, entries[0].region, prop, opts, reach[0]);
        }

        for (std::size_t i = 0; i < entries.size(); ++i) {
            QueueEntry const& entry = entries[i];
            RegionResult const& res = results[i];
            ++stats.regions_checked;
            stats.vi_sweeps += reach[i].sweeps;
            note_depth(entry.depth);

            if (res.kind == RegionCheck::Sat) {
                ++stats.regions_proven;
                if (res.vacuous) ++stats.vacuous_regions;
                record(entry, res, res.vacuous ? "sat-vacuous" : "sat");
                continue;
            }

            std::uint64_t sample_seed = mix_seed(opts.seed, entry.index);
            if (res.kind == RegionCheck::Violate) {
                auto points =
                    sample(entry.region, original, std::max<std::size_t>(1, opts.samples_per_region),
                           sample_seed);
                if (points.empty()) {
                    // the whole estimate violates, but no well-defined point
                    // was found: nothing in this region constrains the query
                    ++stats.vacuous_regions;
                    record(entry, res, "violate-vacuous");
                    continue;
                }
                Rational value = oracle_value(original, original.targets, points.front());
                if (satisfies(prop, value))
                    throw Error("violating region produced a satisfying witness");
                record(entry, res, "refuted");
                verdict.witness = points.front();
                verdict.witness_value = value;
                return finish(entry.depth == 0 ? Verdict::Kind::AllViolate
                                               : Verdict::Kind::Refuted);
            }

            // undecided: sample for a quick refutation, then split
            auto points = sample(entry.region, original, opts.samples_per_region, sample_seed);
            bool refuted = false;
            for (auto const& u : points) {
                Rational value = oracle_value(original, original.targets, u);
                if (!satisfies(prop, value)) {
                    record(entry, res, "refuted");
                    verdict.witness = u;
                    verdict.witness_value = value;
                    refuted = true;
                    break;
                }
            }
            if (refuted) return finish(Verdict::Kind::Refuted);

            try {
                auto children =
                    split(entry.region, strategy, opts.split_arity, entry.depth * opts.split_arity);
                record(entry, res, "split");
                for (auto& child : children)
                    queue.push_back({std::move(child), entry.depth + 1, region_counter++});
            } catch (PointRegionError const&) {
                // estimate straddles the threshold at a point region: the
                // optimum coincides with the threshold up to VI precision
                coincidence = true;
                tightest = "[" + std::to_string(res.lo) + ", " + std::to_string(res.hi) + "]";
                record(entry, res, "threshold-coincidence");
            }
        }
    }

    if (coincidence) {
        verdict.unknown_reason = "threshold coincides with the optimum within " + tightest;
        return finish(Verdict::Kind::Unknown);
    }
    return finish(Verdict::Kind::AllSat);
}

PMC gen_dn(unsigned n) {
    if (n < 2) throw Error("the branching family needs n >= 2");
    PMC pmc;
    for (unsigned i = 1; i < n; ++i) pmc.params.push_back({param_id("p" + std::to_string(i)), false});
    StateIdx s0 = pmc.add_state("s0");
    std::vector<StateIdx> branch(n + 1, 0);
    for (unsigned i = 2; i <= n; ++i) branch[i] = pmc.add_state("s" + std::to_string(i));
    StateIdx good = pmc.add_state("good");
    StateIdx bad = pmc.add_state("bad");
    pmc.init = s0;
    pmc.targets = {good};

    // branch 1 reaches the target with probability one and is folded away
    pmc.set_transition(s0, good, Polynomial::parameter(pmc.params[0].id));
    for (unsigned i = 2; i < n; ++i)
        pmc.set_transition(s0, branch[i], Polynomial::parameter(pmc.params[i - 1].id));
    Expanded residual = Expanded::constant(1);
    for (auto const& d : pmc.params) residual -= Expanded::parameter(d.id);
    pmc.set_transition(s0, branch[n], Polynomial::from_expanded_as_factor(residual));
    for (unsigned i = 2; i <= n; ++i) {
        pmc.set_transition(branch[i], good, Polynomial::constant(Rational(1, i)));
        pmc.set_transition(branch[i], bad, Polynomial::constant(Rational(i - 1, i)));
    }
    pmc.set_transition(good, good, Polynomial::constant(1));
    pmc.set_transition(bad, bad, Polynomial::constant(1));
    return pmc;
}

}  // namespace plift
