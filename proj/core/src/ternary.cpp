#include "qfac/ternary.hpp"

#include <algorithm>
#include <map>

namespace qfac {

std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g) {
    if (g.is_zero()) throw field_error("division by the zero polynomial");
    if (f.is_zero()) return MultiPoly(f.field(), f.nvars(), 0);
    if (f.nvars() != g.nvars() || f.degree() < g.degree()) return std::nullopt;
    const Field& fld = f.field();
    std::size_t qdeg = (std::size_t)(f.degree() - g.degree());
    auto qmons = monomial_basis(f.nvars(), qdeg);
    auto fmons = monomial_basis(f.nvars(), (std::size_t)f.degree());
    std::map<ExpVec, std::size_t, GrlexLess> row_of;
    for (std::size_t i = 0; i < fmons.size(); ++i) row_of.emplace(fmons[i], i);
    ExactMatrix m(fld, fmons.size(), qmons.size());
    for (std::size_t j = 0; j < qmons.size(); ++j)
        for (const auto& [eg, cg] : g.terms()) {
            ExpVec e(f.nvars());
            for (std::size_t t = 0; t < f.nvars(); ++t)
                e[t] = (std::uint16_t)(qmons[j][t] + eg[t]);
            std::size_t i = row_of.at(e);
            m.set(i, j, m.at(i, j) + cg);
        }
    std::vector<FieldScalar> b(fmons.size(), FieldScalar::zero(fld));
    for (std::size_t i = 0; i < fmons.size(); ++i) b[i] = f.coeff(fmons[i]);
    auto sol = solve_linear(m, b);
    if (!sol) return std::nullopt;
    MultiPoly q(fld, f.nvars(), (long)qdeg);
    for (std::size_t j = 0; j < qmons.size(); ++j) q.add_term(qmons[j], (*sol)[j]);
    if (!(g * q == f)) return std::nullopt;
    return q;
}

namespace {

MultiPoly normalize_leading(const MultiPoly& f) {
    // leading coefficient (grlex-largest term) scaled to 1
    FieldScalar lead = f.terms().rbegin()->second;
    return f.scaled(lead.inverse());
}

// roots of f restricted to the coordinate line {x_omit = 0}, as points of the
// ternary P^2 (coordinates filled with 0 at x_omit); all_zero set when the
// restriction vanishes identically
struct LineRoots {
    bool all_zero = false;
    bool complete = true;
    std::vector<std::vector<FieldScalar>> points;
};

LineRoots roots_on_coordinate_line(const MultiPoly& f, std::size_t omit) {
    LineRoots out;
    const Field& fld = f.field();
    std::size_t a = (omit == 0) ? 1 : 0;
    std::size_t b = (omit == 2) ? 1 : 2;
    // binary restriction g(u, v) = f with x_omit = 0, (x_a, x_b) = (u, v)
    std::vector<FieldScalar> coef((std::size_t)f.degree() + 1, FieldScalar::zero(fld));
    for (const auto& [e, c] : f.terms()) {
        if (e[omit] != 0) continue;
        coef[e[a]] += c; // exponent of u; v exponent is determined
    }
    bool nonzero = false;
    for (const auto& c : coef)
        if (!c.is_zero()) nonzero = true;
    if (!nonzero) {
        out.all_zero = true;
        return out;
    }
    auto push = [&](const FieldScalar& u, const FieldScalar& v) {
        std::vector<FieldScalar> pt(3, FieldScalar::zero(fld));
        pt[a] = u;
        pt[b] = v;
        out.points.push_back(std::move(pt));
    };
    // root at v = 0 (pure u direction): needs top coefficient zero
    if (coef.back().is_zero()) push(FieldScalar::one(fld), FieldScalar::zero(fld));
    // affine roots u = t, v = 1: poly sum coef[i] t^i
    if (fld.is_finite()) {
        for (std::uint32_t t = 0; t < fld.q(); ++t) {
            FieldScalar tv = FieldScalar::finite(fld, t);
            FieldScalar acc = FieldScalar::zero(fld);
            for (std::size_t i = coef.size(); i-- > 0;) acc = acc * tv + coef[i];
            if (acc.is_zero()) push(tv, FieldScalar::one(fld));
        }
    } else {
        // rational roots num/den with num | coef[0]', den | coef[top]' after
        // clearing denominators; height-limited trial division
        mpz_class common_den(1);
        for (const auto& c : coef) {
            if (c.is_zero()) continue;
            mpz_class d = c.rat().get_den();
            common_den = common_den / gcd(common_den, d) * d;
        }
        std::vector<mpz_class> ic;
        for (const auto& c : coef)
            ic.push_back(c.is_zero() ? mpz_class(0)
                                     : mpz_class(c.rat().get_num() * (common_den / c.rat().get_den())));
        std::size_t lo = 0, hi = ic.size() - 1;
        while (lo < ic.size() && ic[lo] == 0) ++lo;
        while (hi > 0 && ic[hi] == 0) --hi;
        if (lo > 0) push(FieldScalar::zero(fld), FieldScalar::one(fld)); // root t = 0
        if (lo >= hi && ic[hi] != 0 && lo == hi) {
            // monomial restriction: only roots are the coordinate directions
            return out;
        }
        auto divisors_bounded = [](mpz_class n, bool& ok) {
            std::vector<mpz_class> divs;
            if (n < 0) n = -n;
            const unsigned long bound = 1000000ul;
            std::vector<std::pair<mpz_class, unsigned>> fac;
            mpz_class m = n;
            for (unsigned long d = 2; d <= bound && m > 1; ++d) {
                if (mpz_class(m % d) != 0) continue;
                unsigned e = 0;
                while (mpz_class(m % d) == 0) { m /= d; ++e; }
                fac.emplace_back(d, e);
            }
            if (m > 1) {
                if (m > bound * (unsigned long)bound) { ok = false; }
                fac.emplace_back(m, 1);
            }
            divs.push_back(1);
            for (const auto& [pr, e] : fac) {
                std::size_t sz = divs.size();
                mpz_class pk(1);
                for (unsigned i = 1; i <= e; ++i) {
                    pk *= pr;
                    for (std::size_t s = 0; s < sz; ++s) divs.push_back(divs[s] * pk);
                }
            }
            return divs;
        };
        bool ok = true;
        auto nd = divisors_bounded(ic[lo], ok);
        auto dd = divisors_bounded(ic[hi], ok);
        if (!ok) out.complete = false;
        for (const auto& nu : nd)
            for (const auto& de : dd)
                for (int sign = -1; sign <= 1; sign += 2) {
                    mpq_class t(sign * nu, de);
                    t.canonicalize();
                    FieldScalar tv = FieldScalar::rational(t);
                    FieldScalar acc = FieldScalar::zero(fld);
                    for (std::size_t i = coef.size(); i-- > 0;) acc = acc * tv + coef[i];
                    if (acc.is_zero()) push(tv, FieldScalar::one(fld));
                }
    }
    return out;
}

MultiPoly line_through(const Field& fld, const std::vector<FieldScalar>& p,
                       const std::vector<FieldScalar>& q) {
    // cross product gives the coefficients of the line through two points
    std::vector<FieldScalar> c{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2],
                               p[0] * q[1] - p[1] * q[0]};
    MultiPoly l(fld, 3, 1);
    for (std::size_t i = 0; i < 3; ++i) {
        ExpVec e(3, 0);
        e[i] = 1;
        l.add_term(e, c[i]);
    }
    return l;
}

} // namespace

LinearFactorSearch linear_factors_ternary(const MultiPoly& f) {
    if (f.nvars() != 3) throw field_error("linear_factors_ternary needs 3 variables");
    if (f.is_zero()) throw field_error("linear factors of the zero polynomial");
    LinearFactorSearch out;
    const Field& fld = f.field();

    MultiPoly rest = f;
    // Each round extracts candidates from the current cofactor; any linear
    // factor not lying on a coordinate line meets two coordinate lines in
    // distinct root points, so joins of root pairs cover it.  Factors hidden
    // behind identically-vanishing restrictions surface in later rounds.
    while (rest.degree() >= 1) {
        if (rest.degree() == 1) {
            out.factors.push_back(normalize_leading(rest));
            break;
        }
        std::vector<MultiPoly> candidates;
        auto add_candidate = [&](const MultiPoly& l) {
            if (l.is_zero()) return;
            MultiPoly n = normalize_leading(l);
            for (const auto& c : candidates)
                if (c == n) return;
            candidates.push_back(n);
        };
        for (std::size_t i = 0; i < 3; ++i) add_candidate(MultiPoly::variable(fld, 3, i));
        LineRoots roots[3];
        for (std::size_t omit = 0; omit < 3; ++omit) {
            roots[omit] = roots_on_coordinate_line(rest, omit);
            if (!roots[omit].complete) out.complete = false;
        }
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) {
                if (roots[i].all_zero || roots[j].all_zero) continue;
                for (const auto& p : roots[i].points)
                    for (const auto& q : roots[j].points)
                        // coincident points give the zero form, which is skipped
                        add_candidate(line_through(fld, p, q));
            }
        bool found = false;
        for (const auto& l : candidates) {
            for (;;) {
                auto q = exact_divide(rest, l);
                if (!q) break;
                out.factors.push_back(l);
                rest = *q;
                found = true;
                if (rest.degree() == 0) break;
            }
            if (rest.degree() == 0) break;
        }
        if (!found) break;
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const MultiPoly& a, const MultiPoly& b) {
                  return GrlexLess{}(a.terms().begin()->first, b.terms().begin()->first);
              });
    return out;
}

namespace {

// binary scaled square root on forms using only variables va < vb of a
// 3-variable polynomial (all other exponents zero)
std::optional<MultiPoly> scaled_square_root_binary(const MultiPoly& g, std::size_t va,
                                                   std::size_t vb) {
    const Field& fld = g.field();
    if (g.is_zero()) return MultiPoly(fld, g.nvars(), 0);
    std::size_t deg = (std::size_t)g.degree();
    if (deg % 2 != 0) return std::nullopt;
    // coefficients by va-exponent: term va^e vb^{deg-e} has coefficient c[e]
    std::vector<FieldScalar> c(deg + 1, FieldScalar::zero(fld));
    for (const auto& [e, k] : g.terms()) c[e[va]] += k;
    std::size_t lo = 0;
    while (lo <= deg && c[lo].is_zero()) ++lo;
    std::size_t hi = deg;
    while (hi > 0 && c[hi].is_zero()) --hi;
    // g = va^lo vb^{deg-hi} h with both end coefficients of h nonzero
    if (lo % 2 != 0) return std::nullopt;         // odd power of va
    if ((deg - hi) % 2 != 0) return std::nullopt; // odd power of vb
    if ((hi - lo) % 2 != 0) return std::nullopt;
    std::size_t m = (hi - lo) / 2;
    FieldScalar gamma = c[hi];
    std::vector<FieldScalar> r(m + 1, FieldScalar::zero(fld)); // root coeffs, r[0] = 1
    r[0] = FieldScalar::one(fld);
    FieldScalar two(fld, 2);
    for (std::size_t j = 1; j <= m; ++j) {
        FieldScalar acc = FieldScalar::zero(fld);
        for (std::size_t t = 1; t < j; ++t) acc += r[t] * r[j - t];
        // c[hi - j]/gamma = 2 r[j] + acc
        r[j] = (c[hi - j] / gamma - acc) / two;
    }
    // candidate root = va^{lo/2} vb^{(deg-hi)/2} sum_j r[j] va^{m-j} vb^{j}
    MultiPoly root(fld, g.nvars(), (long)(deg / 2));
    for (std::size_t j = 0; j <= m; ++j) {
        if (r[j].is_zero()) continue;
        ExpVec e(g.nvars(), 0);
        e[va] = (std::uint16_t)(m - j + lo / 2);
        e[vb] = (std::uint16_t)(j + (deg - hi) / 2);
        root.add_term(e, r[j]);
    }
    if ((root * root).scaled(gamma) == g) return normalize_leading(root);
    return std::nullopt;
}

} // namespace

std::optional<MultiPoly> scaled_square_root(const MultiPoly& f) {
    if (f.is_zero()) return MultiPoly(f.field(), f.nvars(), 0);
    if (f.degree() % 2 != 0) return std::nullopt;
    if (f.nvars() != 3) throw field_error("scaled_square_root implemented for 3 variables");
    const Field& fld = f.field();
    FieldScalar two(fld, 2);
    // layers by x0-exponent
    auto layers = f.coefficients_in(0);
    long dx = (long)layers.size() - 1;
    while (dx >= 0 && layers[(std::size_t)dx].is_zero()) --dx;
    if (dx < 0) return std::nullopt;
    if (dx % 2 != 0) return std::nullopt;
    if (dx == 0) {
        auto r = scaled_square_root_binary(f, 1, 2);
        return r;
    }
    // c = x0^{dx/2} + lower x0-degrees; gamma = layers[dx] (a scalar layer only
    // if dx == deg; in general layers[dx] must itself be gamma * (form)^2 ...
    // for the quartic cases below dx is 2 or 4)
    if (f.degree() == 4 && dx == 4) {
        FieldScalar gamma = layers[4].coeff(ExpVec(3, 0));
        if (gamma.is_zero()) return std::nullopt;
        MultiPoly c1 = layers[3].scaled((two * gamma).inverse()); // binary linear
        MultiPoly c2 = (layers[2].scaled(gamma.inverse()) - c1 * c1).scaled(two.inverse());
        // verify layers 1 and 0
        if (!((c1 * c2).scaled(two) == layers[1].scaled(gamma.inverse()))) return std::nullopt;
        if (!(c2 * c2 == layers[0].scaled(gamma.inverse()))) return std::nullopt;
        // assemble c = x0^2 + c1 x0 + c2
        MultiPoly x0 = MultiPoly::variable(fld, 3, 0);
        MultiPoly c = x0 * x0 + x0 * c1 + c2;
        return normalize_leading(c);
    }
    if (f.degree() == 4 && dx == 2) {
        // f = gamma (c1 x0 + c2)^2, c1 linear, c2 quadratic in (x1, x2)
        auto c1opt = scaled_square_root_binary(layers[2], 1, 2);
        if (!c1opt) return std::nullopt;
        MultiPoly c1 = *c1opt; // normalized; gamma = lead of layers[2]
        FieldScalar gamma = layers[2].terms().rbegin()->second;
        MultiPoly c2(fld, 3, 2);
        if (!layers[1].is_zero()) {
            auto div = exact_divide(layers[1].scaled((two * gamma).inverse()), c1);
            if (!div) return std::nullopt;
            c2 = *div;
        }
        if (!((c2 * c2).scaled(gamma) == layers[0])) return std::nullopt;
        MultiPoly x0 = MultiPoly::variable(fld, 3, 0);
        MultiPoly c = x0 * c1 + c2;
        return normalize_leading(c);
    }
    // other degrees are not needed by the plane-section classifier
    return std::nullopt;
}

MultiPoly squarefree_part_ternary_quartic(const MultiPoly& f) {
    if (f.nvars() != 3 || f.degree() != 4 || f.is_zero())
        throw field_error("squarefree part needs a nonzero ternary quartic");
    if (!f.field().is_finite())
        throw field_error("squarefree part over QQ is handled by the classifier");
    LinearFactorSearch lf = linear_factors_ternary(f);
    MultiPoly rest = f;
    std::vector<MultiPoly> distinct;
    for (const auto& l : lf.factors) {
        rest = *exact_divide(rest, l);
        bool seen = false;
        for (const auto& d : distinct)
            if (d == l) seen = true;
        if (!seen) distinct.push_back(l);
    }
    MultiPoly sf = MultiPoly::constant(f.field(), 3, FieldScalar::one(f.field()));
    for (const auto& d : distinct) sf = sf * d;
    if (rest.degree() == 4) {
        auto c = scaled_square_root(rest);
        sf = sf * (c ? *c : rest);
    } else if (rest.degree() > 0) {
        // degree 2 or 3 without linear factors over the base field: squarefree
        sf = sf * rest;
    }
    return normalize_leading(sf);
}

} // namespace qfac
