#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plift/rational.hpp"

namespace plift {

/// Parameters are interned process-wide; ids are dense and stable.
using ParamId = std::uint32_t;

ParamId param_id(std::string const& name);
std::string const& param_name(ParamId id);
bool param_exists(std::string const& name);

using Assignment = std::map<ParamId, Rational>;

/// Exponent vector of one expanded monomial, sorted by parameter id.
using Monomial = std::vector<std::pair<ParamId, std::uint32_t>>;

/// A polynomial in fully expanded monomial form. This is the canonical
/// representation used for factor identity, range bounding and calculus.
class Expanded {
  public:
    using Map = std::map<Monomial, Rational>;

    Expanded() = default;
    static Expanded constant(Rational c);
    static Expanded parameter(ParamId p);

    Map const& monomials() const { return mono_; }
    bool is_zero() const { return mono_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()

    void add_monomial(Monomial m, Rational c);

    Expanded& operator+=(Expanded const& o);
    Expanded& operator-=(Expanded const& o);
    Expanded operator*(Expanded const& o) const;
    Expanded scaled(Rational const& c) const;
    Expanded pow(unsigned k) const;

    Expanded derivative(ParamId p) const;
    Expanded substitute(Assignment const& partial) const;
    Rational eval(Assignment const& u) const;

    std::vector<ParamId> params() const;
    bool mentions(ParamId p) const;
    std::uint32_t degree_in(ParamId p) const;
    std::uint32_t total_degree() const;
    /// Every parameter has degree <= 1 (extrema at box vertices).
    bool is_multi_affine() const;
    /// Multi-affine and each monomial mentions at most one parameter.
    bool is_linear() const;

    auto operator<=>(Expanded const& o) const = default;

  private:
    Map mono_;
};

/// Interned identifier of a base factor. Two factors are equal iff their
/// expanded forms are identical; interning makes that a pointer comparison.
using FactorId = std::uint32_t;

FactorId intern_factor(Expanded e);       // e must be non-constant
Expanded const& factor_expr(FactorId f);
/// Factor that is a bare parameter, if it is one.
std::optional<ParamId> factor_as_param(FactorId f);

/// Product of factor powers, sorted by factor id; the "monomial" of the
/// factorized representation.
using PowerProduct = std::vector<std::pair<FactorId, std::uint32_t>>;

struct Term {
    Rational coeff;
    PowerProduct powers;  // empty = constant term

    bool operator==(Term const& o) const = default;
};

/// Multivariate polynomial stored as a sum of factorized monomials
/// (coefficient times powers of shared interned base factors). The term list
/// is sorted by power product and never holds zero coefficients; an empty
/// list is the zero polynomial.
class Polynomial {
  public:
    Polynomial() = default;

    static Polynomial zero() { return {}; }
    static Polynomial constant(Rational c);
    static Polynomial parameter(ParamId p);
    static Polynomial from_factor(FactorId f, unsigned exp = 1);
    static Polynomial single_term(Rational coeff, PowerProduct powers);
    /// Wraps a non-constant expanded form as a single interned factor;
    /// constants fall back to Polynomial::constant.
    static Polynomial from_expanded_as_factor(Expanded const& e);

    std::vector<Term> const& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // 0 for zero polynomial

    Polynomial operator+(Polynomial const& o) const;
    Polynomial operator-(Polynomial const& o) const;
    Polynomial operator*(Polynomial const& o) const;
    Polynomial scaled(Rational const& c) const;
    Polynomial pow(unsigned k) const;

    /// Exact value at u; throws Error naming the first unassigned parameter.
    Rational eval(Assignment const& u) const;

    /// Formal partial derivative. The product rule runs across factor powers,
    /// so surviving factors keep their identity.
    Polynomial derivative(ParamId p) const;

    /// Substitutes a subset of the parameters; factors that stay non-constant
    /// are re-interned on their substituted expanded form.
    Polynomial substitute(Assignment const& partial) const;

    std::vector<ParamId> params() const;
    bool mentions(ParamId p) const;

    Expanded expand() const;
    /// Semantic zero test (on the expanded form).
    bool expands_to_zero() const { return expand().is_zero(); }

    bool operator==(Polynomial const& o) const = default;

  private:
    void insert_term(Rational coeff, PowerProduct powers);
    std::vector<Term> terms_;

    friend Polynomial add_scaled(Polynomial const& f, Polynomial const& g, Rational const& c);
};

/// f + c*g with term merging (used by the grouping round trip).
Polynomial add_scaled(Polynomial const& f, Polynomial const& g, Rational const& c);

/// Result of factoring a shared monomial out of a family of polynomials:
/// fs[i] = residuals[i] + coeffs[i] * f, where f is a single-term polynomial
/// with coefficient one.
struct CommonFactor {
    Polynomial f;
    std::vector<Rational> coeffs;
    std::vector<Polynomial> residuals;
};

/// All power products carried (with nonzero coefficient) by at least two of
/// the inputs, best candidate first: largest total degree, then most
/// carriers, then lexicographically smallest power product.
std::vector<PowerProduct> common_factor_candidates(std::span<Polynomial const> fs);

/// Extracts the best candidate per the order above; empty when no monomial
/// occurs in two or more inputs. Detection is syntactic on the factorized
/// representation.
std::optional<CommonFactor> common_factor(std::span<Polynomial const> fs);

/// Factors the given power product out of every input.
CommonFactor factor_out(std::span<Polynomial const> fs, PowerProduct const& m);

}  // namespace plift
