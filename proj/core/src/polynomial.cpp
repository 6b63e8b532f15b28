#include "plift/polynomial.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace plift {

namespace {

struct ParamRegistry {
    std::mutex mtx;
    std::unordered_map<std::string, ParamId> by_name;
    std::vector<std::string> names;
};

ParamRegistry& params_reg() {
    static ParamRegistry reg;
    return reg;
}

struct FactorRegistry {
    std::mutex mtx;
    std::map<Expanded, FactorId> by_expr;
    std::vector<Expanded const*> exprs;  // stable pointers into by_expr keys
};

FactorRegistry& factors_reg() {
    static FactorRegistry reg;
    return reg;
}

}  // namespace

ParamId param_id(std::string const& name) {
    auto& reg = params_reg();
    std::lock_guard lock(reg.mtx);
    auto it = reg.by_name.find(name);
    if (it != reg.by_name.end()) return it->second;
    ParamId id = static_cast<ParamId>(reg.names.size());
    reg.names.push_back(name);
    reg.by_name.emplace(name, id);
    return id;
}

bool param_exists(std::string const& name) {
    auto& reg = params_reg();
    std::lock_guard lock(reg.mtx);
    return reg.by_name.count(name) > 0;
}

std::string const& param_name(ParamId id) {
    auto& reg = params_reg();
    std::lock_guard lock(reg.mtx);
    return reg.names.at(id);
}

FactorId intern_factor(Expanded e) {
    if (e.is_constant()) throw Error("cannot intern a constant as a factor");
    auto& reg = factors_reg();
    std::lock_guard lock(reg.mtx);
    auto it = reg.by_expr.find(e);
    if (it != reg.by_expr.end()) return it->second;
    FactorId id = static_cast<FactorId>(reg.exprs.size());
    auto [pos, _] = reg.by_expr.emplace(std::move(e), id);
    reg.exprs.push_back(&pos->first);
    return id;
}

Expanded const& factor_expr(FactorId f) {
    auto& reg = factors_reg();
    std::lock_guard lock(reg.mtx);
    return *reg.exprs.at(f);
}

std::optional<ParamId> factor_as_param(FactorId f) {
    Expanded const& e = factor_expr(f);
    if (e.monomials().size() != 1) return std::nullopt;
    auto const& [mono, coeff] = *e.monomials().begin();
    if (coeff != 1 || mono.size() != 1 || mono[0].second != 1) return std::nullopt;
    return mono[0].first;
}

// ---------------------------------------------------------------------------
// Expanded form

Expanded Expanded::constant(Rational c) {
    Expanded e;
    if (c != 0) e.mono_.emplace(Monomial{}, std::move(c));
    return e;
}

Expanded Expanded::parameter(ParamId p) {
    Expanded e;
    e.mono_.emplace(Monomial{{p, 1}}, Rational(1));
    return e;
}

bool Expanded::is_constant() const {
    return mono_.empty() || (mono_.size() == 1 && mono_.begin()->first.empty());
}

Rational Expanded::constant_value() const {
    if (mono_.empty()) return Rational(0);
    return mono_.begin()->second;
}

void Expanded::add_monomial(Monomial m, Rational c) {
    if (c == 0) return;
    auto it = mono_.find(m);
    if (it == mono_.end()) {
        mono_.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second == 0) mono_.erase(it);
    }
}

Expanded& Expanded::operator+=(Expanded const& o) {
    for (auto const& [m, c] : o.mono_) add_monomial(m, c);
    return *this;
}

Expanded& Expanded::operator-=(Expanded const& o) {
    for (auto const& [m, c] : o.mono_) add_monomial(m, -c);
    return *this;
}

namespace {

Monomial mono_mul(Monomial const& a, Monomial const& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            r.push_back(a[i++]);
        } else {
            r.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

}  // namespace

Expanded Expanded::operator*(Expanded const& o) const {
    Expanded r;
    for (auto const& [ma, ca] : mono_)
        for (auto const& [mb, cb] : o.mono_) r.add_monomial(mono_mul(ma, mb), ca * cb);
    return r;
}

Expanded Expanded::scaled(Rational const& c) const {
    Expanded r;
    if (c == 0) return r;
    for (auto const& [m, k] : mono_) r.mono_.emplace(m, k * c);
    return r;
}

Expanded Expanded::pow(unsigned k) const {
    Expanded r = Expanded::constant(1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

Expanded Expanded::derivative(ParamId p) const {
    Expanded r;
    for (auto const& [m, c] : mono_) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i].first != p) continue;
            Monomial d = m;
            Rational coeff = c * d[i].second;
            if (d[i].second == 1) {
                d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                d[i].second -= 1;
            }
            r.add_monomial(std::move(d), std::move(coeff));
            break;
        }
    }
    return r;
}

Expanded Expanded::substitute(Assignment const& partial) const {
    Expanded r;
    for (auto const& [m, c] : mono_) {
        Rational coeff = c;
        Monomial rest;
        for (auto const& [p, e] : m) {
            auto it = partial.find(p);
            if (it == partial.end()) {
                rest.emplace_back(p, e);
            } else {
                coeff *= rat_pow(it->second, e);
            }
        }
        r.add_monomial(std::move(rest), std::move(coeff));
    }
    return r;
}

Rational Expanded::eval(Assignment const& u) const {
    Rational acc(0);
    for (auto const& [m, c] : mono_) {
        Rational v = c;
        for (auto const& [p, e] : m) {
            auto it = u.find(p);
            if (it == u.end()) throw Error("no value assigned to parameter " + param_name(p));
            v *= rat_pow(it->second, e);
        }
        acc += v;
    }
    return acc;
}

std::vector<ParamId> Expanded::params() const {
    std::vector<ParamId> r;
    for (auto const& [m, c] : mono_)
        for (auto const& [p, e] : m)
            if (std::find(r.begin(), r.end(), p) == r.end()) r.push_back(p);
    std::sort(r.begin(), r.end());
    return r;
}

bool Expanded::mentions(ParamId p) const {
    for (auto const& [m, c] : mono_)
        for (auto const& [q, e] : m)
            if (q == p) return true;
    return false;
}

std::uint32_t Expanded::degree_in(ParamId p) const {
    std::uint32_t d = 0;
    for (auto const& [m, c] : mono_)
        for (auto const& [q, e] : m)
            if (q == p) d = std::max(d, e);
    return d;
}

std::uint32_t Expanded::total_degree() const {
    std::uint32_t d = 0;
    for (auto const& [m, c] : mono_) {
        std::uint32_t t = 0;
        for (auto const& [q, e] : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

bool Expanded::is_multi_affine() const {
    for (auto const& [m, c] : mono_)
        for (auto const& [q, e] : m)
            if (e > 1) return false;
    return true;
}

bool Expanded::is_linear() const {
    for (auto const& [m, c] : mono_) {
        if (m.size() > 1) return false;
        if (m.size() == 1 && m[0].second > 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Factorized polynomials

Polynomial Polynomial::constant(Rational c) {
    Polynomial f;
    if (c != 0) f.terms_.push_back({std::move(c), {}});
    return f;
}

Polynomial Polynomial::parameter(ParamId p) {
    FactorId f = intern_factor(Expanded::parameter(p));
    return from_factor(f);
}

Polynomial Polynomial::from_factor(FactorId f, unsigned exp) {
    Polynomial r;
    if (exp == 0) return constant(1);
    r.terms_.push_back({Rational(1), {{f, exp}}});
    return r;
}

Polynomial Polynomial::single_term(Rational coeff, PowerProduct powers) {
    Polynomial r;
    if (coeff != 0) r.terms_.push_back({std::move(coeff), std::move(powers)});
    return r;
}

Polynomial Polynomial::from_expanded_as_factor(Expanded const& e) {
    if (e.is_constant()) return constant(e.constant_value());
    return from_factor(intern_factor(e));
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].powers.empty());
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw Error("polynomial is not constant");
    return terms_[0].coeff;
}

void Polynomial::insert_term(Rational coeff, PowerProduct powers) {
    if (coeff == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), powers,
                               [](Term const& t, PowerProduct const& p) { return t.powers < p; });
    if (it != terms_.end() && it->powers == powers) {
        it->coeff += coeff;
        if (it->coeff == 0) terms_.erase(it);
    } else {
        terms_.insert(it, Term{std::move(coeff), std::move(powers)});
    }
}

Polynomial Polynomial::operator+(Polynomial const& o) const {
    Polynomial r = *this;
    for (auto const& t : o.terms_) r.insert_term(t.coeff, t.powers);
    return r;
}

Polynomial Polynomial::operator-(Polynomial const& o) const {
    Polynomial r = *this;
    for (auto const& t : o.terms_) r.insert_term(-t.coeff, t.powers);
    return r;
}

Polynomial add_scaled(Polynomial const& f, Polynomial const& g, Rational const& c) {
    Polynomial r = f;
    if (c == 0) return r;
    for (auto const& t : g.terms_) r.insert_term(t.coeff * c, t.powers);
    return r;
}

namespace {

PowerProduct pp_mul(PowerProduct const& a, PowerProduct const& b) {
    PowerProduct r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            r.push_back(a[i++]);
        } else {
            r.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

}  // namespace

Polynomial Polynomial::operator*(Polynomial const& o) const {
    Polynomial r;
    for (auto const& ta : terms_)
        for (auto const& tb : o.terms_) r.insert_term(ta.coeff * tb.coeff, pp_mul(ta.powers, tb.powers));
    return r;
}

Polynomial Polynomial::scaled(Rational const& c) const {
    Polynomial r;
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (auto const& t : terms_) r.terms_.push_back({t.coeff * c, t.powers});
    return r;
}

Polynomial Polynomial::pow(unsigned k) const {
    if (k == 0) return constant(1);
    // a single-term base exponentiates in place
    if (terms_.size() == 1) {
        PowerProduct p = terms_[0].powers;
        for (auto& [f, e] : p) e *= k;
        return single_term(rat_pow(terms_[0].coeff, k),
                           std::move(p));
    }
    Polynomial r = constant(1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

Rational Polynomial::eval(Assignment const& u) const {
    Rational acc(0);
    for (auto const& t : terms_) {
        Rational v = t.coeff;
        for (auto const& [f, e] : t.powers)
            v *= rat_pow(factor_expr(f).eval(u), e);
        acc += v;
    }
    return acc;
}

Polynomial Polynomial::derivative(ParamId p) const {
    Polynomial r;
    for (auto const& t : terms_) {
        for (std::size_t i = 0; i < t.powers.size(); ++i) {
            auto const& [fid, exp] = t.powers[i];
            Expanded d = factor_expr(fid).derivative(p);
            if (d.is_zero()) continue;
            Rational coeff = t.coeff * exp;
            PowerProduct rest;
            rest.reserve(t.powers.size());
            for (std::size_t j = 0; j < t.powers.size(); ++j) {
                if (j == i) {
                    if (exp > 1) rest.emplace_back(fid, exp - 1);
                } else {
                    rest.push_back(t.powers[j]);
                }
            }
            if (d.is_constant()) {
                r.insert_term(coeff * d.constant_value(), std::move(rest));
            } else {
                FactorId df = intern_factor(std::move(d));
                r.insert_term(std::move(coeff), pp_mul(rest, {{df, 1}}));
            }
        }
    }
    return r;
}

Polynomial Polynomial::substitute(Assignment const& partial) const {
    Polynomial r;
    for (auto const& t : terms_) {
        Rational coeff = t.coeff;
        PowerProduct rest;
        bool dead = false;
        for (auto const& [fid, exp] : t.powers) {
            Expanded const& e = factor_expr(fid);
            bool touched = false;
            for (auto const& [p, v] : partial)
                if (e.mentions(p)) {
                    touched = true;
                    break;
                }
            if (!touched) {
                rest.emplace_back(fid, exp);
                continue;
            }
            Expanded s = e.substitute(partial);
            if (s.is_constant()) {
                Rational cv = s.constant_value();
                if (cv == 0) {
                    dead = true;
                    break;
                }
                coeff *= rat_pow(cv, exp);
            } else {
                rest.emplace_back(intern_factor(std::move(s)), exp);
            }
        }
        if (dead) continue;
        std::sort(rest.begin(), rest.end());
        r.insert_term(std::move(coeff), std::move(rest));
    }
    return r;
}

std::vector<ParamId> Polynomial::params() const {
    std::vector<ParamId> r;
    for (auto const& t : terms_)
        for (auto const& [f, e] : t.powers)
            for (ParamId p : factor_expr(f).params())
                if (std::find(r.begin(), r.end(), p) == r.end()) r.push_back(p);
    std::sort(r.begin(), r.end());
    return r;
}

bool Polynomial::mentions(ParamId p) const {
    for (auto const& t : terms_)
        for (auto const& [f, e] : t.powers)
            if (factor_expr(f).mentions(p)) return true;
    return false;
}

Expanded Polynomial::expand() const {
    Expanded r;
    for (auto const& t : terms_) {
        Expanded v = Expanded::constant(t.coeff);
        for (auto const& [f, e] : t.powers) v = v * factor_expr(f).pow(e);
        r += v;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Common factors

namespace {

std::uint32_t pp_total_degree(PowerProduct const& p) {
    std::uint32_t d = 0;
    for (auto const& [f, e] : p) d += e * factor_expr(f).total_degree();
    return d;
}

}  // namespace

std::vector<PowerProduct> common_factor_candidates(std::span<Polynomial const> fs) {
    std::map<PowerProduct, std::size_t> carriers;
    for (auto const& f : fs)
        for (auto const& t : f.terms())
            if (!t.powers.empty()) carriers[t.powers] += 1;
    std::vector<PowerProduct> out;
    for (auto const& [pp, n] : carriers)
        if (n >= 2) out.push_back(pp);
    std::sort(out.begin(), out.end(), [&](PowerProduct const& a, PowerProduct const& b) {
        auto da = pp_total_degree(a), db = pp_total_degree(b);
        if (da != db) return da > db;
        auto ca = carriers.at(a), cb = carriers.at(b);
        if (ca != cb) return ca > cb;
        return a < b;
    });
    return out;
}

CommonFactor factor_out(std::span<Polynomial const> fs, PowerProduct const& m) {
    CommonFactor r;
    r.f = Polynomial::single_term(Rational(1), m);
    for (auto const& f : fs) {
        Rational c(0);
        for (auto const& t : f.terms())
            if (t.powers == m) {
                c = t.coeff;
                break;
            }
        r.residuals.push_back(add_scaled(f, r.f, -c));
        r.coeffs.push_back(std::move(c));
    }
    return r;
}

std::optional<CommonFactor> common_factor(std::span<Polynomial const> fs) {
    if (fs.size() < 2) throw Error("common_factor needs at least two polynomials");
    auto cands = common_factor_candidates(fs);
    if (cands.empty()) return std::nullopt;
    return factor_out(fs, cands.front());
}

}  // namespace plift
