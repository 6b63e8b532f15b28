#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace plift;
using namespace plift::testing;

namespace {

Assignment chain_point(Rational p, Rational q) {
    return Assignment{{param_id("p"), std::move(p)}, {param_id("q"), std::move(q)}};
}

}  // namespace

TEST_CASE("instantiation yields the expected Markov chain") {
    PMC chain = load("chain");
    auto inst = instantiate(chain, chain_point(rat(2, 5), rat(7, 10)));
    REQUIRE(std::holds_alternative<MC>(inst));
    MC const& mc = std::get<MC>(inst);
    auto at = [&](char const* a, char const* b) {
        for (auto const& [t, v] : mc.rows[*chain.state(a)])
            if (t == *chain.state(b)) return v;
        return Rational(0);
    };
    CHECK(at("s0", "s1") == rat(2, 5));
    CHECK(at("s1", "s2") == rat(3, 5));
    CHECK(at("s2", "good") == rat(7, 10));
    for (auto const& row : mc.rows) {
        Rational sum(0);
        for (auto const& [t, v] : row) sum += v;
        CHECK(sum == 1);
    }
}

TEST_CASE("instantiation flags the first violating state") {
    PMC dn = gen_dn(5);
    Assignment u;
    for (auto const& d : dn.params) u[d.id] = rat(9, 10);
    auto inst = instantiate(dn, u);
    REQUIRE(std::holds_alternative<NotWellDefined>(inst));
    CHECK(std::get<NotWellDefined>(inst).state == *dn.state("s0"));
}

TEST_CASE("a parameterless model instantiates to itself") {
    PMC pmc = parse_model("states a good\ninit a\ntarget good\n"
                          "trans a good : 1/2\ntrans a a : 1/2\ntrans good good : 1\n");
    auto inst = instantiate(pmc, {});
    REQUIRE(std::holds_alternative<MC>(inst));
    CHECK(std::get<MC>(inst).rows[0].size() == 2);
}

TEST_CASE("exact reachability") {
    PMC chain = load("chain");

    auto mc1 = std::get<MC>(instantiate(chain, chain_point(rat(2, 5), rat(7, 10))));
    CHECK(mc_reach(mc1, mc1.good)[mc1.init] == rat(21, 125));

    auto mc2 = std::get<MC>(instantiate(chain, chain_point(rat(1, 2), rat(7, 10))));
    CHECK(mc_reach(mc2, mc2.good)[mc2.init] == rat(7, 40));

    // the target itself has probability one
    CHECK(mc_reach(mc1, mc1.good)[*chain.state("good")] == 1);
    MC from_good = mc1;
    from_good.init = *chain.state("good");
    CHECK(mc_reach(from_good, from_good.good)[from_good.init] == 1);
}

TEST_CASE("exact reachability on cyclic models") {
    // two states bouncing: reach = (1-p) + p * reach', reach' = p + (1-p) * reach
    PMC loop = load("roundtrip");
    auto mc = std::get<MC>(instantiate(loop, Assignment{{param_id("p"), rat(1, 3)}}));
    CHECK(mc_reach(mc, mc.good)[mc.init] == 1);

    PMC stay = load("stayloop");
    auto mc2 = std::get<MC>(instantiate(stay, Assignment{{param_id("p"), rat(1, 4)}}));
    // reach = p from s1 after escaping the self-loop with certainty
    CHECK(mc_reach(mc2, mc2.good)[mc2.init] == rat(1, 4));
}

TEST_CASE("reachability agrees with power iteration") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 10; ++i) {
        PMC pmc = random_pmc(rng);
        Region region;
        for (auto const& d : pmc.params) region.add(d.id, d.discrete, Interval{rat(0), rat(1)});
        auto points = sample(region, pmc, 3, rng());
        for (auto const& u : points) {
            MC mc = std::get<MC>(instantiate(pmc, u));
            auto exact = mc_reach(mc, mc.good);
            auto approx = power_iteration_reach(mc, mc.good);
            for (StateIdx s = 0; s < mc.n_states(); ++s)
                CHECK(std::abs(to_double(exact[s]) - approx[s]) < 1e-9);
        }
    }
}

TEST_CASE("interval substitution reproduces the per-transition enclosures") {
    PMC chain = load("chain");
    Region region = region_of(chain, "0.3 <= p <= 0.6, 0.6 <= q <= 0.7");
    IMC imc = interval_substitute(chain, region, rat(1, 1000000));
    auto at = [&](char const* a, char const* b) {
        return *imc.transition(*chain.state(a), *chain.state(b));
    };
    CHECK(at("s0", "s1") == Interval{rat(3, 10), rat(3, 5)});
    CHECK(at("s1", "s2") == Interval{rat(2, 5), rat(7, 10)});
    CHECK(at("s2", "good") == Interval{rat(3, 5), rat(7, 10)});
    CHECK(at("s0", "bad") == Interval{rat(2, 5), rat(7, 10)});
    for (StateIdx s = 0; s < imc.n_states(); ++s) CHECK(!imc.infeasible[s]);

    PMC merged = load("chain-merged");
    IMC imc2 = interval_substitute(merged, region_of(merged, "0.3<=p<=0.6, 0.6<=q<=0.7"),
                                   rat(1, 1000000));
    CHECK(*imc2.transition(*merged.state("s0"), *merged.state("s2")) ==
          Interval{rat(21, 100), rat(1, 4)});
    CHECK(*imc2.transition(*merged.state("s2"), *merged.state("good")) ==
          Interval{rat(3, 5), rat(7, 10)});
}

TEST_CASE("a parameterless model substitutes to point intervals") {
    PMC pmc = parse_model("states a good\ninit a\ntarget good\n"
                          "trans a good : 2/5\ntrans a a : 3/5\ntrans good good : 1\n");
    Region region;
    IMC imc = interval_substitute(pmc, region, rat(1, 1000000));
    for (auto const& row : imc.rows)
        for (auto const& [t, iv] : row) CHECK(iv.is_point());
}

TEST_CASE("sampled instantiations land inside the substituted intervals") {
    std::mt19937_64 rng(41);
    std::vector<std::pair<PMC, std::string>> cases;
    cases.emplace_back(load("chain"), "0.3<=p<=0.6, 0.6<=q<=0.7");
    cases.emplace_back(load("chain-merged"), "0.3<=p<=0.6, 0.6<=q<=0.7");
    cases.emplace_back(load("commute"), "0<=pbike<=1");
    cases.emplace_back(gen_dn(6), "0<=p1<=1/3, 0<=p2<=1/3, 0<=p3<=1/3, 0<=p4<=1/3, 0<=p5<=1/3");
    for (auto const& [pmc, rtext] : cases) {
        Region region = region_of(pmc, rtext);
        IMC imc = interval_substitute(pmc, region, rat(1, 1000000));
        auto points = sample(region, pmc, 200, rng());
        CHECK(!points.empty());
        for (auto const& u : points) {
            MC mc = std::get<MC>(instantiate(pmc, u));
            for (StateIdx s = 0; s < mc.n_states(); ++s) {
                Rational covered(0);
                for (auto const& [t, v] : mc.rows[s]) {
                    Interval const* iv = imc.transition(s, t);
                    REQUIRE(iv != nullptr);
                    CHECK(iv->contains(v));
                    covered += v;
                }
                CHECK(covered == 1);
            }
        }
    }
}

TEST_CASE("infeasible rows are detected") {
    // a transition forced above one: no instantiation is a distribution
    PMC pmc = parse_model("params p\nstates a b good\ninit a\ntarget good\n"
                          "trans a b : 1 + p\ntrans b good : 1\ntrans good good : 1\n");
    Region region = region_of(pmc, "1/4 <= p <= 1/2");
    IMC imc = interval_substitute(pmc, region, rat(1, 1000000));
    CHECK(imc.infeasible[*pmc.state("a")]);
}

TEST_CASE("partial instantiation keeps remaining parameters symbolic") {
    PMC commute = load("commute-family");
    PMC member = partial_instantiate(commute, Assignment{{param_id("pbike"), rat(1)}});
    CHECK(member.params.empty());
    auto inst = instantiate(member, {});
    REQUIRE(std::holds_alternative<MC>(inst));
    MC mc = std::get<MC>(inst);
    CHECK(mc_reach(mc, mc.good)[mc.init] == rat(1, 2));
}
