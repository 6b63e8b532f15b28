#include "plift/builtin.hpp"

#include <array>
#include <utility>

namespace plift {

namespace {

// three-hop chain where the first parameter occurs twice along the path
constexpr char const* kChain = R"(params p q
states s0 s1 s2 good bad
init s0
target good
trans s0 s1 : p
trans s0 bad : 1 - p
trans s1 s2 : 1 - p
trans s1 bad : p
trans s2 good : q
trans s2 bad : 1 - q
trans good good : 1
trans bad bad : 1
)";

// the chain after merging the two p-steps into one transition
constexpr char const* kChainMerged = R"(params p q
states s0 s2 good bad
init s0
target good
trans s0 s2 : p * (1 - p)
trans s0 bad : 1 - p * (1 - p)
trans s2 good : q
trans s2 bad : 1 - q
trans good good : 1
trans bad bad : 1
)";

// randomized commute choice made after observing the wind
constexpr char const* kCommute = R"(params pbike
states wake tail head bus1 bus2 good bad
init wake
target good
trans wake tail : 1/2
trans wake head : 1/2
trans tail good : pbike
trans tail bus1 : 1 - pbike
trans head bad : pbike
trans head bus2 : 1 - pbike
trans bus1 good : 2/5
trans bus1 bad : 3/5
trans bus2 good : 2/5
trans bus2 bad : 3/5
trans good good : 1
trans bad bad : 1
)";

// same commute model with the randomized choice moved up front
constexpr char const* kCommuteGrouped = R"(params pbike
states wake bus bike good bad
init wake
target good
trans wake bike : pbike
trans wake bus : 1 - pbike
trans bike good : 1/2
trans bike bad : 1/2
trans bus good : 2/5
trans bus bad : 3/5
trans good good : 1
trans bad bad : 1
)";

// commute family member selection as a discrete 0/1 parameter
constexpr char const* kCommuteFamily = R"(dparams pbike
states wake tail head bus1 bus2 good bad
init wake
target good
trans wake tail : 1/2
trans wake head : 1/2
trans tail good : pbike
trans tail bus1 : 1 - pbike
trans head bad : pbike
trans head bus2 : 1 - pbike
trans bus1 good : 2/5
trans bus1 bad : 3/5
trans bus2 good : 2/5
trans bus2 bad : 3/5
trans good good : 1
trans bad bad : 1
)";

// two states bouncing until they exit; every instantiation reaches the
// target with probability one, while the [0,1] box admits an end component
constexpr char const* kRoundtrip = R"(params p
states s0 s1 good
init s0
target good
trans s0 s1 : p
trans s0 good : 1 - p
trans s1 s0 : 1 - p
trans s1 good : p
trans good good : 1
)";

// self-loop whose exit probability vanishes at p = 1
constexpr char const* kStayloop = R"(params p
states s0 s1 good bad
init s0
target good
trans s0 s0 : p
trans s0 s1 : 1 - p
trans s1 good : p
trans s1 bad : 1 - p
trans good good : 1
trans bad bad : 1
)";

// two-level pMC; order-b is the same chain with the parameter order swapped
constexpr char const* kOrderA = R"(params p q
states s0 s1 s2 good bad
init s0
target good
trans s0 s1 : p
trans s0 s2 : 1 - p
trans s1 good : q
trans s1 bad : 1 - q
trans s2 good : 1 - q
trans s2 bad : q
trans good good : 1
trans bad bad : 1
)";

constexpr char const* kOrderB = R"(params p q
states s0 s1 s2 good bad
init s0
target good
trans s0 s1 : q
trans s0 s2 : 1 - q
trans s1 good : p
trans s1 bad : 1 - p
trans s2 good : 1 - p
trans s2 bad : p
trans good good : 1
trans bad bad : 1
)";

// five parallel relays sharing a success parameter per layer; exercises
// repeated shortcutting and grouping of the same parameter
constexpr char const* kRelay = R"(params p0 p1 p2
states s0 t1 t2 t3 t4 t5 u2 u3 u4 u5 w3 w4 w5 good bad
init s0
target good
trans s0 t1 : 1/5
trans s0 t2 : 1/5
trans s0 t3 : 1/5
trans s0 t4 : 1/5
trans s0 t5 : 1/5
trans t1 good : p0
trans t1 bad : 1 - p0
trans t2 bad : p0
trans t2 u2 : 1 - p0
trans t3 bad : p0
trans t3 u3 : 1 - p0
trans t4 bad : p0
trans t4 u4 : 1 - p0
trans t5 bad : p0
trans t5 u5 : 1 - p0
trans u2 good : p1
trans u2 bad : 1 - p1
trans u3 bad : p1
trans u3 w3 : 1 - p1
trans u4 bad : p1
trans u4 w4 : 1 - p1
trans u5 bad : p1
trans u5 w5 : 1 - p1
trans w3 good : p2
trans w3 bad : 1 - p2
trans w4 bad : p2
trans w4 good : 1 - p2
trans w5 bad : p2
trans w5 good : 1 - p2
trans good good : 1
trans bad bad : 1
)";

constexpr std::array<std::pair<char const*, char const*>, 10> kModels{{
    {"chain", kChain},
    {"chain-merged", kChainMerged},
    {"commute", kCommute},
    {"commute-grouped", kCommuteGrouped},
    {"commute-family", kCommuteFamily},
    {"roundtrip", kRoundtrip},
    {"stayloop", kStayloop},
    {"order-a", kOrderA},
    {"order-b", kOrderB},
    {"relay", kRelay},
}};

}  // namespace

std::optional<std::string> builtin_model(std::string const& name) {
    for (auto const& [key, text] : kModels)
        if (name == key) return std::string(text);
    return std::nullopt;
}

std::vector<std::string> builtin_model_names() {
    std::vector<std::string> names;
    for (auto const& [key, text] : kModels) names.emplace_back(key);
    return names;
}

}  // namespace plift
