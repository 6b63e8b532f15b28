#pragma once

#include <string>
#include <string_view>

#include "plift/model.hpp"
#include "plift/region.hpp"

namespace plift {

class ParseError : public Error {
  public:
    ParseError(std::size_t line, std::size_t col, std::string const& msg)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    std::size_t line;
    std::size_t col;
};

struct Property {
    enum class Op { Lt, Le, Ge, Gt };
    Op op = Op::Lt;
    Rational threshold;
    std::string target_label;
};

/// Line-oriented pMC model format:
///   params p q          continuous parameters
///   dparams k           discrete parameters
///   states s0 s1 good bad
///   init s0
///   target good
///   trans s0 s1 : p
///   trans s0 bad : 1 - p
/// `#` starts a comment; unlisted transitions are zero. Expressions use
/// rational literals (3/5, 0.6 exact), parameters, + - * ^ and parentheses.
/// A parenthesized sum is kept as one base factor of the factorized
/// representation, as is a whole transition written as a plain sum of
/// parameter monomials.
PMC parse_model(std::string_view text);

/// iMC mirror of the model format with `trans s0 s1 : [3/10, 3/5]` entries
/// (a bare rational is a point interval) and no parameter lines.
IMC parse_imc(std::string_view text);

/// Comma-separated bounds, one per model parameter:
///   0.3 <= p <= 0.6, k in {0,1}
/// Discrete parameters take integer bounds or a contiguous membership set.
Region parse_region(std::string_view text, PMC const& pmc);

/// P<0.2 [F "good"]  /  P>=0.01 [F "good"]
Property parse_property(std::string_view text);

/// Exact rational from a decimal or fraction literal ("0.6" -> 3/5).
Rational parse_rational(std::string_view text);

Polynomial parse_expression(std::string_view text, PMC const& pmc);

std::string serialize_model(PMC const& pmc);
std::string serialize_imc(IMC const& imc);
std::string polynomial_to_string(Polynomial const& f);
std::string property_to_string(Property const& prop);

}  // namespace plift
