#include "plift/region.hpp"

#include <algorithm>
#include <random>

#include "plift/model.hpp"

namespace plift {

void Region::add(ParamId p, bool discrete, Interval iv) {
    if (discrete && (!is_integer(iv.lo) || !is_integer(iv.hi)))
        throw Error("discrete parameter " + param_name(p) + " needs integer bounds");
    params.emplace_back(p, discrete);
    bounds.push_back(std::move(iv));
}

Interval const& Region::interval_of(ParamId p) const {
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i].first == p) return bounds[i];
    throw Error("region has no bounds for parameter " + param_name(p));
}

bool Region::splittable(std::size_t coord) const {
    auto const& [p, discrete] = params[coord];
    if (discrete) return lattice_size(bounds[coord]) >= 2;
    return bounds[coord].width() > 0;
}

bool Region::is_point() const {
    for (std::size_t i = 0; i < params.size(); ++i)
        if (splittable(i)) return false;
    return true;
}

Box Region::box() const {
    Box b;
    for (std::size_t i = 0; i < params.size(); ++i) b.set(params[i].first, bounds[i]);
    return b;
}

std::string Region::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) s += ", ";
        s += rational_to_string(bounds[i].lo) + " <= " + param_name(params[i].first) +
             " <= " + rational_to_string(bounds[i].hi);
    }
    return s;
}

std::vector<Region> split(Region const& r, SplitStrategy const& strategy, unsigned k,
                          std::size_t offset) {
    if (k < 1) throw Error("split arity must be positive");
    std::vector<std::size_t> splittable;
    for (std::size_t i = 0; i < r.params.size(); ++i)
        if (r.splittable(i)) splittable.push_back(i);
    if (splittable.empty()) throw PointRegionError();

    std::vector<std::size_t> chosen;
    if (strategy.kind == SplitKind::RoundRobin) {
        for (std::size_t j = 0; j < splittable.size() && chosen.size() < k; ++j)
            chosen.push_back(splittable[(offset + j) % splittable.size()]);
    } else {
        chosen = splittable;
        std::stable_sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
            double wa = to_double(r.bounds[a].width()) *
                        (a < strategy.weights.size() ? strategy.weights[a] : 1.0);
            double wb = to_double(r.bounds[b].width()) *
                        (b < strategy.weights.size() ? strategy.weights[b] : 1.0);
            return wa > wb;
        });
        if (chosen.size() > k) chosen.resize(k);
    }
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

    std::vector<Region> out{r};
    for (std::size_t coord : chosen) {
        std::vector<Region> next;
        for (auto const& reg : out) {
            Interval const& iv = reg.bounds[coord];
            Region lo = reg, hi = reg;
            if (reg.params[coord].second) {
                // split the lattice into two integer ranges
                Rational mid = iv.lo + Rational((numerator(iv.hi - iv.lo) - 1) / 2);
                lo.bounds[coord] = Interval{iv.lo, mid};
                hi.bounds[coord] = Interval{mid + 1, iv.hi};
            } else {
                Rational mid = (iv.lo + iv.hi) / 2;
                lo.bounds[coord] = Interval{iv.lo, mid};
                hi.bounds[coord] = Interval{mid, iv.hi};
            }
            next.push_back(std::move(lo));
            next.push_back(std::move(hi));
        }
        out = std::move(next);
    }
    return out;
}

namespace {

// top 30 bits of the generator output: portable uniform draw on a fixed grid
constexpr std::uint64_t kGrid = (1u << 30) - 1;

Rational draw_rational(std::mt19937_64& rng, Interval const& iv) {
    std::uint64_t k = rng() >> 34;
    return iv.lo + (iv.hi - iv.lo) * Rational(k, kGrid);
}

Rational draw_lattice(std::mt19937_64& rng, Interval const& iv) {
    Integer size = Region::lattice_size(iv);
    std::uint64_t n = size.convert_to<std::uint64_t>();
    return iv.lo + Rational(rng() % n);
}

}  // namespace

std::vector<Assignment> sample(Region const& r, PMC const& pmc, std::size_t n,
                               std::uint64_t seed) {
    if (n < 1) throw Error("sample count must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Assignment> out;
    std::size_t attempts = std::max<std::size_t>(100, 20 * n);
    for (std::size_t a = 0; a < attempts && out.size() < n; ++a) {
        Assignment u;
        for (std::size_t i = 0; i < r.params.size(); ++i) {
            auto const& [p, discrete] = r.params[i];
            u[p] = discrete ? draw_lattice(rng, r.bounds[i]) : draw_rational(rng, r.bounds[i]);
        }
        if (is_well_defined(pmc, u)) out.push_back(std::move(u));
    }
    return out;
}

std::vector<double> occurrence_weights(Region const& r, PMC const& pmc) {
    std::vector<double> w(r.params.size(), 0.0);
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        ParamId p = r.params[i].first;
        for (auto const& row : pmc.rows)
            for (auto const& [t, f] : row)
                if (f.mentions(p)) w[i] += 1.0;
    }
    return w;
}

}  // namespace plift
