#include "plift/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace plift {

Box::Box(std::vector<std::pair<ParamId, Interval>> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](auto const& a, auto const& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].first == entries_[i - 1].first) throw Error("duplicate box entry");
}

void Box::set(ParamId p, Interval i) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](auto const& e, ParamId q) { return e.first < q; });
    if (it != entries_.end() && it->first == p) {
        it->second = std::move(i);
    } else {
        entries_.insert(it, {p, std::move(i)});
    }
}

bool Box::has(ParamId p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](auto const& e, ParamId q) { return e.first < q; });
    return it != entries_.end() && it->first == p;
}

Interval const& Box::at(ParamId p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](auto const& e, ParamId q) { return e.first < q; });
    if (it == entries_.end() || it->first != p)
        throw Error("box has no interval for parameter " + param_name(p));
    return it->second;
}

namespace {

constexpr std::size_t kVertexEnumLimit = 12;   // 2^12 exact evaluations at most
constexpr int kExactBudget = 256;              // sub-boxes spent proving exact hulls
constexpr int kTolBudget = 256;                // sub-boxes spent reaching tol

Interval ia_expanded(Expanded const& e, Box const& b) {
    Interval acc = Interval::point(0);
    for (auto const& [m, c] : e.monomials()) {
        Interval v = Interval::point(1);
        for (auto const& [p, k] : m) v = v * pow(b.at(p), k);
        acc = acc + scale(v, c);
    }
    return acc;
}

/// Exact range of a linear polynomial: each coordinate contributes
/// independently through the sign of its coefficient.
Interval linear_range(Expanded const& e, Box const& b) {
    Rational lo(0), hi(0);
    for (auto const& [m, c] : e.monomials()) {
        if (m.empty()) {
            lo += c;
            hi += c;
            continue;
        }
        Interval const& x = b.at(m[0].first);
        if (c >= 0) {
            lo += c * x.lo;
            hi += c * x.hi;
        } else {
            lo += c * x.hi;
            hi += c * x.lo;
        }
    }
    return {lo, hi};
}

Interval range_of_expanded(Expanded const& e, Box const& b) {
    if (e.is_constant()) return Interval::point(e.constant_value());
    if (e.is_linear()) return linear_range(e, b);
    auto vars = e.params();
    if (e.is_multi_affine() && vars.size() <= kVertexEnumLimit)
        return detail::multiaffine_vertex_range(e, b);
    return ia_expanded(e, b);
}

}  // namespace

namespace detail {

Interval multiaffine_vertex_range(Expanded const& e, Box const& b) {
    auto vars = e.params();
    std::size_t n = vars.size();
    Assignment u;
    Rational lo, hi;
    bool first = true;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) {
            Interval const& iv = b.at(vars[i]);
            u[vars[i]] = (mask >> i) & 1 ? iv.hi : iv.lo;
        }
        Rational v = e.eval(u);
        if (first || v < lo) lo = v;
        if (first || v > hi) hi = v;
        first = false;
    }
    return {lo, hi};
}

namespace {

std::vector<Rational> dense_coeffs(Expanded const& e, ParamId p) {
    std::vector<Rational> c(e.degree_in(p) + 1, Rational(0));
    for (auto const& [m, k] : e.monomials()) {
        std::uint32_t d = m.empty() ? 0 : m[0].second;
        c[d] += k;
    }
    return c;
}

Rational eval_dense(std::vector<Rational> const& c, Rational const& x) {
    Rational acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

double eval_dense_d(std::vector<double> const& c, double x) {
    double acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

std::optional<Rational> exact_sqrt(Rational const& r) {
    if (r < 0) return std::nullopt;
    Integer n = numerator(r), d = denominator(r);
    Integer sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

/// Rationalizes a numeric root candidate with continued-fraction convergents
/// and keeps it only when it is an exact root.
std::optional<Rational> rationalize_root(double x, std::vector<Rational> const& coeffs) {
    if (!std::isfinite(x)) return std::nullopt;
    double a = x;
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 40; ++it) {
        double fl = std::floor(a);
        if (fl > 9e17 || fl < -9e17) break;
        Integer ai = static_cast<long long>(fl);
        Integer p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > Integer(1000000000)) break;
        Rational cand(p2, q2);
        if (eval_dense(coeffs, cand) == 0) return cand;
        p0 = p1, q0 = q1, p1 = p2, q1 = q2;
        double rem = a - fl;
        if (rem < 1e-12) break;
        a = 1.0 / rem;
    }
    return std::nullopt;
}

}  // namespace

std::vector<Rational> rational_roots_in(Expanded const& e, ParamId p, Interval const& range) {
    std::vector<Rational> roots;
    auto push = [&](Rational r) {
        if (!range.contains(r)) return;
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(std::move(r));
    };
    std::vector<Rational> c = dense_coeffs(e, p);
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() <= 1) return roots;  // constant: no isolated roots
    if (c.size() == 2) {
        push(-c[0] / c[1]);
        return roots;
    }
    if (c.size() == 3) {
        Rational disc = c[1] * c[1] - 4 * c[2] * c[0];
        if (auto s = exact_sqrt(disc)) {
            push((-c[1] + *s) / (2 * c[2]));
            push((-c[1] - *s) / (2 * c[2]));
        }
        return roots;
    }
    // higher degree: numeric sign-change isolation, then exact verification
    std::vector<double> cd(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) cd[i] = to_double(c[i]);
    double lo = to_double(range.lo), hi = to_double(range.hi);
    int const kGrid = 256;
    double prev_x = lo, prev_v = eval_dense_d(cd, lo);
    for (int i = 1; i <= kGrid; ++i) {
        double x = lo + (hi - lo) * i / kGrid;
        double v = eval_dense_d(cd, x);
        if (prev_v == 0 || (prev_v < 0) != (v < 0)) {
            double a = prev_x, b = x;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b);
                double vm = eval_dense_d(cd, m);
                if (vm == 0) {
                    a = b = m;
                    break;
                }
                if ((vm < 0) == (prev_v < 0)) a = m;
                else b = m;
            }
            if (auto r = rationalize_root(0.5 * (a + b), c)) push(std::move(*r));
        }
        prev_x = x;
        prev_v = v;
    }
    return roots;
}

}  // namespace detail

Interval ia_eval(Polynomial const& f, Box const& b) {
    Interval acc = Interval::point(0);
    for (auto const& t : f.terms()) {
        Interval v = Interval::point(1);
        for (auto const& [fid, exp] : t.powers) v = v * pow(range_of_expanded(factor_expr(fid), b), exp);
        acc = acc + scale(v, t.coeff);
    }
    return acc;
}

namespace {

struct UnivariateForms {
    Polynomial const& f;
    ParamId p;
    Expanded const& e;   // expanded f
    Expanded d1;         // first derivative
    Expanded d2;         // second derivative
    std::vector<Rational> const& candidates;

    Rational value(Rational const& x) const {
        Assignment u{{p, x}};
        return e.eval(u);
    }

    Interval enclosure(Interval const& J, Polynomial const& fact) const {
        Box jb;
        jb.set(p, J);
        Interval best = ia_eval(fact, jb);
        if (auto t = intersect(best, ia_expanded(e, jb))) best = *t;

        Interval d1r = ia_expanded(d1, jb);
        // monotone slice: range is spanned by the endpoint values
        if (d1r.lo >= 0 || d1r.hi <= 0) {
            Rational va = value(J.lo), vb = value(J.hi);
            return {std::min(va, vb), std::max(va, vb)};
        }
        // mean-value form around the midpoint
        Rational mid = (J.lo + J.hi) / 2;
        Interval mv = Interval::point(value(mid)) + d1r * Interval{J.lo - mid, J.hi - mid};
        if (auto t = intersect(best, mv)) best = *t;
        // second-order form around an interior candidate, exact at flat extrema
        for (auto const& cnd : candidates) {
            if (!J.contains(cnd)) continue;
            Assignment u{{p, cnd}};
            Interval dev{J.lo - cnd, J.hi - cnd};
            Interval t2 = Interval::point(value(cnd)) + scale(Interval::point(d1.eval(u)), 1) * dev +
                          scale(ia_expanded(d2, jb) * pow(dev, 2), Rational(1, 2));
            if (auto t = intersect(best, t2)) best = *t;
        }
        return best;
    }
};

Interval univariate_bound(Polynomial const& f, Expanded const& e, ParamId p, Interval const& I,
                          Rational const& tol) {
    Expanded d1 = e.derivative(p);
    Expanded d2 = d1.derivative(p);
    std::vector<Rational> candidates = detail::rational_roots_in(d1, p, I);
    candidates.push_back(I.lo);
    if (!I.is_point()) candidates.push_back(I.hi);

    UnivariateForms forms{f, p, e, std::move(d1), std::move(d2), candidates};

    bool first = true;
    Interval achieved = Interval::point(0);
    for (auto const& c : candidates) {
        Rational v = forms.value(c);
        achieved = first ? Interval::point(v) : hull(achieved, Interval::point(v));
        first = false;
    }

    Interval relaxed{achieved.lo - tol / 2, achieved.hi + tol / 2};
    std::deque<Interval> open{I};
    std::optional<Interval> extra;
    int exact_budget = kExactBudget, tol_budget = kTolBudget;
    bool exact_phase = true;
    while (!open.empty()) {
        Interval J = open.front();
        open.pop_front();
        Interval encl = forms.enclosure(J, f);
        if (achieved.contains(encl)) continue;
        if (!exact_phase && relaxed.contains(encl)) {
            extra = extra ? hull(*extra, encl) : encl;
            continue;
        }
        int& budget = exact_phase ? exact_budget : tol_budget;
        if (budget <= 0) {
            if (exact_phase) {
                exact_phase = false;
                open.push_front(J);
                continue;
            }
            // out of budget: accept the remaining enclosures as they stand
            extra = extra ? hull(*extra, encl) : encl;
            for (auto const& K : open) {
                Interval ke = forms.enclosure(K, f);
                extra = hull(*extra, ke);
            }
            break;
        }
        --budget;
        Rational mid = (J.lo + J.hi) / 2;
        open.push_back({J.lo, mid});
        open.push_back({mid, J.hi});
    }
    return extra ? hull(achieved, *extra) : achieved;
}

Interval multivariate_bound(Polynomial const& f, Expanded const& e, Box const& b,
                            std::vector<ParamId> const& vars, Rational const& tol) {
    std::vector<Expanded> grads;
    grads.reserve(vars.size());
    for (ParamId p : vars) grads.push_back(e.derivative(p));

    auto value_at = [&](std::vector<Rational> const& pt) {
        Assignment u;
        for (std::size_t i = 0; i < vars.size(); ++i) u[vars[i]] = pt[i];
        return e.eval(u);
    };
    auto center_of = [&](std::vector<Interval> const& bx) {
        std::vector<Rational> c(bx.size());
        for (std::size_t i = 0; i < bx.size(); ++i) c[i] = (bx[i].lo + bx[i].hi) / 2;
        return c;
    };
    auto enclosure = [&](std::vector<Interval> const& bx) {
        Box jb;
        for (std::size_t i = 0; i < vars.size(); ++i) jb.set(vars[i], bx[i]);
        Interval best = ia_eval(f, jb);
        if (auto t = intersect(best, ia_expanded(e, jb))) best = *t;
        auto c = center_of(bx);
        Interval mv = Interval::point(value_at(c));
        for (std::size_t i = 0; i < vars.size(); ++i)
            mv = mv + ia_expanded(grads[i], jb) * Interval{bx[i].lo - c[i], bx[i].hi - c[i]};
        if (auto t = intersect(best, mv)) best = *t;
        return best;
    };

    std::vector<Interval> root;
    root.reserve(vars.size());
    for (ParamId p : vars) root.push_back(b.at(p));

    // achieved hull from a few exact evaluations, grown at sub-box centers
    Interval achieved = Interval::point(value_at(center_of(root)));
    std::size_t probe_dims = std::min<std::size_t>(vars.size(), 4);
    for (std::size_t mask = 0; mask < (std::size_t(1) << probe_dims); ++mask) {
        std::vector<Rational> pt(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (i < probe_dims)
                pt[i] = (mask >> i) & 1 ? root[i].hi : root[i].lo;
            else
                pt[i] = (root[i].lo + root[i].hi) / 2;
        }
        achieved = hull(achieved, Interval::point(value_at(pt)));
    }

    std::deque<std::vector<Interval>> open{root};
    std::optional<Interval> result;
    int budget = kExactBudget;
    while (!open.empty()) {
        auto bx = open.front();
        open.pop_front();
        Interval encl = enclosure(bx);
        Interval relaxed{achieved.lo - tol / 2, achieved.hi + tol / 2};
        if (relaxed.contains(encl)) {
            result = result ? hull(*result, encl) : encl;
            continue;
        }
        if (budget <= 0) {
            result = result ? hull(*result, encl) : encl;
            continue;
        }
        --budget;
        // bisect the widest coordinate
        std::size_t wi = 0;
        for (std::size_t i = 1; i < bx.size(); ++i)
            if (bx[i].width() > bx[wi].width()) wi = i;
        if (bx[wi].is_point()) {
            result = result ? hull(*result, encl) : encl;
            continue;
        }
        achieved = hull(achieved, Interval::point(value_at(center_of(bx))));
        Rational mid = (bx[wi].lo + bx[wi].hi) / 2;
        auto left = bx, right = bx;
        left[wi] = Interval{bx[wi].lo, mid};
        right[wi] = Interval{mid, bx[wi].hi};
        open.push_back(std::move(left));
        open.push_back(std::move(right));
    }
    if (!result) return achieved;
    return hull(achieved, *result);
}

}  // namespace

Interval bound_box(Polynomial const& f, Box const& b, Rational const& tol) {
    if (tol <= 0) throw Error("bound_box tolerance must be positive");
    // collapse point coordinates first; this makes collapsed discrete
    // parameters exact again
    Assignment points;
    for (ParamId p : f.params()) {
        Interval const& iv = b.at(p);
        if (iv.is_point()) points[p] = iv.lo;
    }
    Polynomial g = points.empty() ? f : f.substitute(points);
    if (g.is_constant()) return Interval::point(g.constant_value());

    Expanded e = g.expand();
    if (e.is_constant()) return Interval::point(e.constant_value());
    if (e.is_linear()) return linear_range(e, b);
    auto vars = e.params();
    if (e.is_multi_affine() && vars.size() <= kVertexEnumLimit)
        return detail::multiaffine_vertex_range(e, b);
    if (vars.size() == 1) return univariate_bound(g, e, vars[0], b.at(vars[0]), tol);
    return multivariate_bound(g, e, b, vars, tol);
}

}  // namespace plift
