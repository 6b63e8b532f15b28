#include "plift/parse.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace plift {

namespace {

// ---------------------------------------------------------------------------
// Expression scanning

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
    std::size_t col;
};

class Lexer {
  public:
    Lexer(std::string_view s, std::size_t line, std::size_t col0)
        : s_(s), line_(line), col0_(col0) {
        advance();
    }

    Token const& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }
    [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(line_, col0_ + tok_.col, msg);
    }

  private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        tok_.col = pos_ + 1;
        if (pos_ >= s_.size()) {
            tok_ = {Token::Kind::End, "", pos_ + 1};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
                ++pos_;
            // a '/' directly gluing two integer literals is a fraction
            std::size_t save = pos_;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                std::size_t den = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
                if (den == pos_) pos_ = save;
            }
            tok_ = {Token::Kind::Number, std::string(s_.substr(start, pos_ - start)), start + 1};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Kind::Ident, std::string(s_.substr(start, pos_ - start)), start + 1};
            return;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Kind::Plus; break;
            case '-': k = Token::Kind::Minus; break;
            case '*': k = Token::Kind::Star; break;
            case '^': k = Token::Kind::Caret; break;
            case '(': k = Token::Kind::LParen; break;
            case ')': k = Token::Kind::RParen; break;
            default:
                throw ParseError(line_, col0_ + pos_ + 1,
                                 std::string("unexpected character '") + c + "'");
        }
        tok_ = {k, std::string(1, c), pos_ + 1};
        ++pos_;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t col0_;
    Token tok_{Token::Kind::End, "", 0};
};

Rational rational_from_token(std::string const& text, std::size_t line, std::size_t col) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw ParseError(line, col, "zero denominator");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(Integer(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty()) throw ParseError(line, col, "malformed number '" + text + "'");
    Integer num(digits);
    Integer den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(num, den);
}

class ExprParser {
  public:
    ExprParser(std::string_view s, PMC const& pmc, std::size_t line, std::size_t col0)
        : lex_(s, line, col0), pmc_(pmc), line_(line) {}

    Polynomial parse() {
        Polynomial f = sum();
        if (lex_.peek().kind != Token::Kind::End) lex_.fail("trailing input in expression");
        return finalize(std::move(f));
    }

  private:
    /// A sum written purely over parameter monomials denotes one base factor.
    Polynomial finalize(Polynomial f) const {
        if (f.is_constant() || f.terms().size() <= 1) return f;
        for (auto const& t : f.terms())
            for (auto const& [fid, exp] : t.powers)
                if (!factor_as_param(fid)) return f;
        return Polynomial::from_expanded_as_factor(f.expand());
    }

    Polynomial sum() {
        Polynomial acc = product();
        for (;;) {
            auto k = lex_.peek().kind;
            if (k == Token::Kind::Plus) {
                lex_.take();
                acc = acc + product();
            } else if (k == Token::Kind::Minus) {
                lex_.take();
                acc = acc - product();
            } else {
                return acc;
            }
        }
    }

    Polynomial product() {
        Polynomial acc = unary();
        while (lex_.peek().kind == Token::Kind::Star) {
            lex_.take();
            acc = acc * unary();
        }
        return acc;
    }

    Polynomial unary() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            return unary().scaled(Rational(-1));
        }
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (lex_.peek().kind != Token::Kind::Caret) return base;
        Token caret = lex_.take();
        Token e = lex_.take();
        if (e.kind != Token::Kind::Number || e.text.find('.') != std::string::npos ||
            e.text.find('/') != std::string::npos)
            throw ParseError(line_, e.col, "exponent must be a nonnegative integer");
        unsigned long exp = std::stoul(e.text);
        if (exp > 64) throw ParseError(line_, e.col, "exponent too large");
        return base.pow(static_cast<unsigned>(exp));
    }

    Polynomial atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::Number:
                return Polynomial::constant(rational_from_token(t.text, line_, t.col));
            case Token::Kind::Ident: {
                if (!param_exists(t.text) || !pmc_.param(param_id(t.text)))
                    throw ParseError(line_, t.col, "unknown parameter '" + t.text + "'");
                return Polynomial::parameter(param_id(t.text));
            }
            case Token::Kind::LParen: {
                Polynomial inner = sum();
                Token close = lex_.take();
                if (close.kind != Token::Kind::RParen)
                    throw ParseError(line_, close.col, "expected ')'");
                // a parenthesized sum is an atomic base factor
                if (!inner.is_constant() && inner.terms().size() > 1)
                    return Polynomial::from_expanded_as_factor(inner.expand());
                return inner;
            }
            default:
                throw ParseError(line_, t.col, "expected a number, parameter or '('");
        }
    }

    Lexer lex_;
    PMC const& pmc_;
    std::size_t line_;
};

// ---------------------------------------------------------------------------
// Line-oriented model files

struct Line {
    std::size_t number;
    std::string text;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        std::size_t lead = 0;
        while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
        line.erase(0, lead);
        if (!line.empty()) lines.push_back({number, std::move(line)});
        ++number;
        start = end + 1;
    }
    return lines;
}

std::vector<std::string> words(std::string const& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(std::move(w));
    return out;
}

bool valid_name(std::string const& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

struct TransLine {
    std::size_t number;
    std::string from, to, expr;
    std::size_t expr_col;
};

template <typename Model>
struct Skeleton {
    Model model;
    std::vector<TransLine> trans;
};

/// Shared first pass: declarations and raw transition lines.
Skeleton<PMC> scan_model(std::string_view text, bool allow_params) {
    Skeleton<PMC> sk;
    PMC& pmc = sk.model;
    bool init_seen = false;
    std::vector<std::string> target_names;
    for (auto const& [number, line] : split_lines(text)) {
        auto ws = words(line);
        auto const& kw = ws[0];
        if (kw == "params" || kw == "dparams") {
            if (!allow_params) throw ParseError(number, 1, "parameter line in interval model");
            for (std::size_t i = 1; i < ws.size(); ++i) {
                if (!valid_name(ws[i])) throw ParseError(number, 1, "bad parameter name " + ws[i]);
                ParamId id = param_id(ws[i]);
                if (pmc.param(id)) throw ParseError(number, 1, "duplicate parameter " + ws[i]);
                pmc.params.push_back({id, kw == "dparams"});
            }
        } else if (kw == "states") {
            for (std::size_t i = 1; i < ws.size(); ++i) {
                if (!valid_name(ws[i])) throw ParseError(number, 1, "bad state name " + ws[i]);
                if (pmc.state(ws[i])) throw ParseError(number, 1, "duplicate state " + ws[i]);
                pmc.add_state(ws[i]);
            }
        } else if (kw == "init") {
            if (ws.size() != 2) throw ParseError(number, 1, "init takes one state");
            if (init_seen) throw ParseError(number, 1, "duplicate init line");
            init_seen = true;
            auto s = pmc.state(ws[1]);
            if (!s) throw ParseError(number, 1, "unknown state " + ws[1]);
            pmc.init = *s;
        } else if (kw == "target") {
            if (ws.size() < 2) throw ParseError(number, 1, "target needs at least one label");
            for (std::size_t i = 1; i < ws.size(); ++i) target_names.push_back(ws[i]);
        } else if (kw == "trans") {
            auto colon = line.find(':');
            if (colon == std::string::npos) throw ParseError(number, 1, "trans line misses ':'");
            auto head = words(line.substr(0, colon));
            if (head.size() != 3) throw ParseError(number, 1, "trans needs 'trans FROM TO : expr'");
            sk.trans.push_back({number, head[1], head[2], line.substr(colon + 1), colon + 2});
        } else {
            throw ParseError(number, 1, "unknown directive '" + kw + "'");
        }
    }
    if (pmc.n_states() == 0) throw ParseError(1, 1, "model declares no states");
    if (!init_seen) throw ParseError(1, 1, "model misses an init line");
    if (target_names.empty()) throw ParseError(1, 1, "model misses a target line");
    for (auto const& name : target_names) {
        auto s = pmc.state(name);
        if (!s) throw ParseError(1, 1, "unknown target state " + name);
        pmc.targets.push_back(*s);
    }
    std::sort(pmc.targets.begin(), pmc.targets.end());
    pmc.targets.erase(std::unique(pmc.targets.begin(), pmc.targets.end()), pmc.targets.end());
    return sk;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    std::size_t lead = 0;
    while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
    s.erase(0, lead);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '/';
        }))
        throw ParseError(1, 1, "malformed rational '" + std::string(text) + "'");
    Rational r = rational_from_token(s, 1, 1);
    return neg ? -r : r;
}

Polynomial parse_expression(std::string_view text, PMC const& pmc) {
    return ExprParser(text, pmc, 1, 0).parse();
}

PMC parse_model(std::string_view text) {
    auto sk = scan_model(text, true);
    PMC& pmc = sk.model;
    for (auto const& tl : sk.trans) {
        auto from = pmc.state(tl.from);
        if (!from) throw ParseError(tl.number, 1, "unknown state " + tl.from);
        auto to = pmc.state(tl.to);
        if (!to) throw ParseError(tl.number, 1, "unknown state " + tl.to);
        if (pmc.transition(*from, *to))
            throw ParseError(tl.number, 1, "duplicate transition " + tl.from + " -> " + tl.to);
        Polynomial f = ExprParser(tl.expr, pmc, tl.number, tl.expr_col - 1).parse();
        if (f.is_zero()) continue;
        pmc.set_transition(*from, *to, std::move(f));
    }
    return pmc;
}

IMC parse_imc(std::string_view text) {
    auto sk = scan_model(text, false);
    IMC imc;
    imc.state_names = sk.model.state_names;
    imc.init = sk.model.init;
    imc.good = sk.model.targets;
    imc.rows.resize(imc.n_states());
    imc.infeasible.assign(imc.n_states(), false);
    for (auto const& tl : sk.trans) {
        auto from = sk.model.state(tl.from);
        if (!from) throw ParseError(tl.number, 1, "unknown state " + tl.from);
        auto to = sk.model.state(tl.to);
        if (!to) throw ParseError(tl.number, 1, "unknown state " + tl.to);
        if (imc.transition(*from, *to))
            throw ParseError(tl.number, 1, "duplicate transition " + tl.from + " -> " + tl.to);
        std::string body = tl.expr;
        std::size_t lead = 0;
        while (lead < body.size() && std::isspace(static_cast<unsigned char>(body[lead]))) ++lead;
        body.erase(0, lead);
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back())))
            body.pop_back();
        Interval iv;
        try {
            if (!body.empty() && body.front() == '[') {
                if (body.back() != ']') throw ParseError(tl.number, tl.expr_col, "expected ']'");
                auto comma = body.find(',');
                if (comma == std::string::npos)
                    throw ParseError(tl.number, tl.expr_col, "interval misses ','");
                iv = Interval{parse_rational(body.substr(1, comma - 1)),
                              parse_rational(body.substr(comma + 1, body.size() - comma - 2))};
            } else {
                iv = Interval::point(parse_rational(body));
            }
        } catch (ParseError const& e) {
            throw ParseError(tl.number, tl.expr_col, e.what());
        }
        if (iv.lo < 0 || iv.hi > 1)
            throw ParseError(tl.number, tl.expr_col, "interval outside [0,1]");
        if (iv.hi == 0) continue;
        imc.rows[*from].emplace_back(*to, std::move(iv));
    }
    for (auto& row : imc.rows)
        std::sort(row.begin(), row.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
    for (StateIdx s = 0; s < imc.n_states(); ++s) {
        Rational lo(0), hi(0);
        for (auto const& [t, iv] : imc.rows[s]) {
            lo += iv.lo;
            hi += iv.hi;
        }
        if (lo > 1 || hi < 1) imc.infeasible[s] = true;
    }
    return imc;
}

Region parse_region(std::string_view text, PMC const& pmc) {
    Region region;
    // clauses are comma-separated, except commas inside {...}
    std::vector<std::string> clauses;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (c == ',' && depth == 0) {
            clauses.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    clauses.push_back(cur);

    auto trim = [](std::string s) {
        std::size_t lead = 0;
        while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
        s.erase(0, lead);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        return s;
    };
    auto lookup = [&](std::string const& name) {
        if (!valid_name(name) || !param_exists(name) || !pmc.param(param_id(name)))
            throw ParseError(1, 1, "region names unknown parameter '" + name + "'");
        return param_id(name);
    };

    std::vector<std::pair<ParamId, Interval>> parsed;
    for (auto const& raw : clauses) {
        std::string clause = trim(raw);
        if (clause.empty()) continue;
        ParamId p;
        Interval iv;
        if (auto le1 = clause.find("<="); le1 != std::string::npos) {
            auto le2 = clause.find("<=", le1 + 2);
            if (le2 == std::string::npos)
                throw ParseError(1, 1, "bad region clause '" + clause + "'");
            p = lookup(trim(clause.substr(le1 + 2, le2 - le1 - 2)));
            Rational lo = parse_rational(clause.substr(0, le1));
            Rational hi = parse_rational(clause.substr(le2 + 2));
            if (lo > hi) throw ParseError(1, 1, "empty bounds for " + param_name(p));
            iv = Interval{std::move(lo), std::move(hi)};
        } else if (auto brace = clause.find('{'); brace != std::string::npos) {
            // IDENT in {a, b, ...}
            if (clause.back() != '}') throw ParseError(1, 1, "membership needs a {..} set");
            auto in_pos = clause.rfind("in", brace);
            if (in_pos == std::string::npos)
                throw ParseError(1, 1, "bad region clause '" + clause + "'");
            p = lookup(trim(clause.substr(0, in_pos)));
            std::string set = clause.substr(brace + 1, clause.size() - brace - 2);
            std::vector<Rational> elems;
            std::size_t start = 0;
            while (start <= set.size()) {
                auto end = set.find(',', start);
                if (end == std::string::npos) end = set.size();
                elems.push_back(parse_rational(set.substr(start, end - start)));
                start = end + 1;
            }
            std::sort(elems.begin(), elems.end());
            for (std::size_t i = 0; i < elems.size(); ++i) {
                if (!is_integer(elems[i]))
                    throw ParseError(1, 1, "membership set must hold integers");
                if (i > 0 && elems[i] != elems[i - 1] + 1)
                    throw ParseError(1, 1, "membership set must be a contiguous integer range");
            }
            iv = Interval{elems.front(), elems.back()};
        } else {
            throw ParseError(1, 1, "bad region clause '" + clause + "'");
        }
        for (auto const& [q, _] : parsed)
            if (q == p) throw ParseError(1, 1, "duplicate bounds for " + param_name(p));
        parsed.emplace_back(p, std::move(iv));
    }

    for (auto const& d : pmc.params) {
        auto it = std::find_if(parsed.begin(), parsed.end(),
                               [&](auto const& e) { return e.first == d.id; });
        if (it == parsed.end())
            throw ParseError(1, 1, "region misses parameter " + param_name(d.id));
        region.add(d.id, d.discrete, it->second);
    }
    return region;
}

Property parse_property(std::string_view text) {
    std::string s(text);
    auto fail = [&](std::string const& msg) -> ParseError { return ParseError(1, 1, msg); };
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    if (i >= s.size() || s[i] != 'P') throw fail("property must start with P");
    ++i;
    skip_ws();
    Property prop;
    if (s.compare(i, 2, "<=") == 0) {
        prop.op = Property::Op::Le;
        i += 2;
    } else if (s.compare(i, 2, ">=") == 0) {
        prop.op = Property::Op::Ge;
        i += 2;
    } else if (i < s.size() && s[i] == '<') {
        prop.op = Property::Op::Lt;
        ++i;
    } else if (i < s.size() && s[i] == '>') {
        prop.op = Property::Op::Gt;
        ++i;
    } else {
        throw fail("expected one of < <= >= >");
    }
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '[') ++i;
    prop.threshold = parse_rational(s.substr(start, i - start));
    if (prop.threshold < 0 || prop.threshold > 1) throw fail("threshold must lie in [0,1]");
    skip_ws();
    if (i >= s.size() || s[i] != '[') throw fail("expected [F \"label\"]");
    ++i;
    skip_ws();
    if (i >= s.size() || s[i] != 'F') throw fail("expected reachability operator F");
    ++i;
    skip_ws();
    if (i >= s.size() || s[i] != '"') throw fail("target label must be quoted");
    ++i;
    start = i;
    while (i < s.size() && s[i] != '"') ++i;
    if (i >= s.size()) throw fail("unterminated target label");
    prop.target_label = s.substr(start, i - start);
    ++i;
    skip_ws();
    if (i >= s.size() || s[i] != ']') throw fail("expected ']'");
    ++i;
    skip_ws();
    if (i != s.size()) throw fail("trailing input after property");
    if (prop.target_label.empty()) throw fail("empty target label");
    return prop;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string monomial_body(Monomial const& m) {
    std::string s;
    for (auto const& [p, e] : m) {
        if (!s.empty()) s += " * ";
        s += param_name(p);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string expanded_to_string(Expanded const& e) {
    if (e.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto const& [m, c] : e.monomials()) {
        Rational ac = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string body = monomial_body(m);
        if (body.empty()) {
            s += rational_to_string(ac);
        } else if (ac == 1) {
            s += body;
        } else {
            s += rational_to_string(ac) + " * " + body;
        }
    }
    return s;
}

std::string factor_to_string(FactorId f) {
    if (auto p = factor_as_param(f)) return param_name(*p);
    return "(" + expanded_to_string(factor_expr(f)) + ")";
}

std::string term_body(Term const& t) {
    std::string s;
    Rational ac = t.coeff < 0 ? Rational(-t.coeff) : t.coeff;
    if (ac != 1 || t.powers.empty()) s += rational_to_string(ac);
    for (auto const& [f, e] : t.powers) {
        if (!s.empty()) s += " * ";
        s += factor_to_string(f);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

}  // namespace

std::string polynomial_to_string(Polynomial const& f) {
    if (f.is_zero()) return "0";
    // a single unit factor prints as its defining sum; it re-interns on parse
    if (f.terms().size() == 1) {
        auto const& t = f.terms()[0];
        if (t.coeff == 1 && t.powers.size() == 1 && t.powers[0].second == 1 &&
            !factor_as_param(t.powers[0].first))
            return expanded_to_string(factor_expr(t.powers[0].first));
    }
    std::string s;
    bool first = true;
    for (auto const& t : f.terms()) {
        if (first) {
            if (t.coeff < 0) s += "-";
        } else {
            s += t.coeff < 0 ? " - " : " + ";
        }
        first = false;
        s += term_body(t);
    }
    return s;
}

namespace {

template <typename RowEntry, typename Render>
std::string serialize_common(std::vector<std::string> const& names, StateIdx init,
                             std::vector<StateIdx> const& targets,
                             std::vector<std::vector<RowEntry>> const& rows,
                             std::string const& param_lines, Render&& render) {
    std::string out = param_lines;
    out += "states";
    for (auto const& n : names) out += " " + n;
    out += "\ninit " + names[init] + "\ntarget";
    for (StateIdx t : targets) out += " " + names[t];
    out += "\n";
    for (StateIdx s = 0; s < rows.size(); ++s)
        for (auto const& [t, val] : rows[s])
            out += "trans " + names[s] + " " + names[t] + " : " + render(val) + "\n";
    return out;
}

}  // namespace

std::string serialize_model(PMC const& pmc) {
    std::string params, dparams;
    for (auto const& d : pmc.params)
        (d.discrete ? dparams : params) += " " + param_name(d.id);
    std::string header;
    if (!params.empty()) header += "params" + params + "\n";
    if (!dparams.empty()) header += "dparams" + dparams + "\n";
    return serialize_common(pmc.state_names, pmc.init, pmc.targets, pmc.rows, header,
                            [](Polynomial const& f) { return polynomial_to_string(f); });
}

std::string serialize_imc(IMC const& imc) {
    return serialize_common(imc.state_names, imc.init, imc.good, imc.rows, "",
                            [](Interval const& iv) { return to_string(iv); });
}

std::string property_to_string(Property const& prop) {
    std::string op;
    switch (prop.op) {
        case Property::Op::Lt: op = "<"; break;
        case Property::Op::Le: op = "<="; break;
        case Property::Op::Ge: op = ">="; break;
        case Property::Op::Gt: op = ">"; break;
    }
    return "P" + op + rational_to_string(prop.threshold) + " [F \"" + prop.target_label + "\"]";
}

}  // namespace plift
