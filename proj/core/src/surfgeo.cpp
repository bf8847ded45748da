#include "qfac/surfgeo.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace qfac {

long long pair_classes(unsigned r, const RuledClass& c1, const RuledClass& c2) {
    if (c1.r != r || c2.r != r) throw field_error("pair_classes: Hirzebruch index mismatch");
    return -(long long)r * c1.a * c2.a + c1.a * c2.b + c2.a * c1.b;
}

RuledClass canonical_class(unsigned r) {
    return RuledClass{r, -2, -((long long)r + 2)};
}

long long h0_ruled(unsigned r, const RuledClass& c) {
    if (c.a < 0) return 0;
    long long total = 0;
    for (long long i = 0; i <= c.a; ++i) {
        long long t = c.b - i * (long long)r + 1;
        if (t > 0) total += t;
    }
    return total;
}

BeseInvariants bese_invariants(unsigned r, const RuledClass& d) {
    if (d.a <= 0 || d.b <= 0) throw field_error("bese_invariants requires a, b > 0");
    RuledClass k = canonical_class(r);
    RuledClass dk{r, d.a - k.a, d.b - k.b};
    long long rho = h0_ruled(r, dk) - 1;
    long long d2 = pair_classes(r, d, d);
    long long dkpair = pair_classes(r, d, k);
    long long num = d2 - 3 * dkpair + 16;
    if (num % 2 != 0) throw field_error("bese_invariants: non-integer h (invalid class)");
    return BeseInvariants{rho, rho - num / 2, d2};
}

long long condition_iii_bound(unsigned r, const RuledClass& d, const RuledClass& c) {
    if (c.a == 0 && c.b == 0) throw field_error("condition (iii) excludes the zero class");
    RuledClass k = canonical_class(r);
    RuledClass rest{r, d.a - k.a - c.a, d.b - k.b - c.b};
    return pair_classes(r, c, rest) - 2;
}

ClassRange condition_iii_range(unsigned r, const RuledClass& d) {
    return ClassRange{d.a + 2, (d.b + 2 + (long long)r) / 2};
}

namespace {

std::vector<FieldScalar> normalize_cox(unsigned r, std::vector<FieldScalar> pt) {
    if (pt.size() != 4) throw field_error("Cox coordinates must have 4 entries");
    bool tzero = pt[0].is_zero() && pt[1].is_zero();
    bool zzero = pt[2].is_zero() && pt[3].is_zero();
    if (tzero || zzero) throw field_error("Cox coordinates in the irrelevant locus");
    // lambda scaling: t -> lambda t, z0 -> lambda^r z0
    FieldScalar lambda = (!pt[0].is_zero() ? pt[0] : pt[1]).inverse();
    pt[0] *= lambda;
    pt[1] *= lambda;
    pt[2] *= lambda.pow(r);
    // mu scaling: (z0, z1) -> mu (z0, z1)
    FieldScalar mu = (!pt[2].is_zero() ? pt[2] : pt[3]).inverse();
    pt[2] *= mu;
    pt[3] *= mu;
    return pt;
}

} // namespace

BeseInstance::BeseInstance(unsigned r_, RuledClass d_, std::vector<std::vector<FieldScalar>> pts)
    : r(r_), d(d_), points(std::move(pts)) {
    if (r != 0 && r != 2)
        throw field_error("points with exact coordinates are supported on F_0 and F_2 only");
    if (d.r != r) throw field_error("class/surface index mismatch");
    if (d.a <= 0 || d.b <= 0) throw field_error("BeseInstance requires a, b > 0");
    for (auto& p : points) p = normalize_cox(r, std::move(p));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j])
                throw field_error("duplicate points on the surface (indices " +
                                  std::to_string(j) + ", " + std::to_string(i) + ")");
}

std::vector<ExpVec> ruled_monomials(unsigned r, long long x, long long y) {
    std::vector<ExpVec> out;
    if (x < 0 || y < 0) return out;
    for (long long i = 0; i <= x; ++i) {
        long long rem = y - (long long)r * i; // t-degree for z0^i z1^(x-i)
        if (rem < 0) continue;
        for (long long m = 0; m <= rem; ++m) {
            ExpVec e(4, 0);
            e[0] = (std::uint16_t)m;         // t0
            e[1] = (std::uint16_t)(rem - m); // t1
            e[2] = (std::uint16_t)i;         // z0
            e[3] = (std::uint16_t)(x - i);   // z1
            out.push_back(std::move(e));
        }
    }
    return out;
}

FieldScalar eval_cox_monomial(const ExpVec& e, const std::vector<FieldScalar>& pt) {
    const Field& f = pt.front().field();
    FieldScalar v = FieldScalar::one(f);
    for (std::size_t i = 0; i < 4; ++i) {
        if (e[i] == 0) continue;
        if (pt[i].is_zero()) return FieldScalar::zero(f);
        v *= pt[i].pow(e[i]);
    }
    return v;
}

namespace {

template <typename F>
void for_each_subset(std::size_t n, std::size_t size, F&& fn) {
    if (size > n) return;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
        if (!fn(idx)) return;
        std::size_t i = size;
        bool advanced = false;
        while (i-- > 0) {
            if (idx[i] + (size - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

} // namespace

BeseCheckReport bese_check(const BeseInstance& inst) {
    BeseCheckReport rep;
    rep.invariants = bese_invariants(inst.r, inst.d);
    long long n = (long long)inst.points.size();

    // (i) N <= floor((rho - 4) / 3)
    long long rho4 = rep.invariants.rho - 4;
    long long bound_i = rho4 >= 0 ? rho4 / 3 : -((2 - rho4) / 3); // floor for negatives
    if (n > bound_i) {
        rep.pass = false;
        rep.violations.push_back(BeseViolation{"i", RuledClass{inst.r, 0, 0}, bound_i, {}});
    }
    // (ii) D^2 >= 7 + 4h
    if (rep.invariants.d2 < 7 + 4 * rep.invariants.h) {
        rep.pass = false;
        rep.violations.push_back(
            BeseViolation{"ii", RuledClass{inst.r, 0, 0}, 7 + 4 * rep.invariants.h, {}});
    }
    // (iii) over the theorem range
    const Field* fld = nullptr;
    if (!inst.points.empty()) fld = &inst.points.front().front().field();
    ClassRange range = condition_iii_range(inst.r, inst.d);
    for (long long x = 0; x <= range.xmax; ++x) {
        for (long long y = 0; y <= range.ymax; ++y) {
            if (x == 0 && y == 0) continue;
            RuledClass c{inst.r, x, y};
            long long bound = condition_iii_bound(inst.r, inst.d, c);
            auto mons = ruled_monomials(inst.r, x, y);
            if (mons.empty()) continue; // no curve of this class exists
            if (bound < 0) {
                rep.pass = false;
                rep.violations.push_back(BeseViolation{"iii", c, bound, {}});
                continue;
            }
            if (bound + 1 > n || !fld) continue;
            std::size_t sz = (std::size_t)bound + 1;
            for_each_subset(inst.points.size(), sz, [&](const std::vector<std::size_t>& sub) {
                ExactMatrix ev(*fld, sz, mons.size());
                for (std::size_t i = 0; i < sz; ++i)
                    for (std::size_t j = 0; j < mons.size(); ++j)
                        ev.set(i, j, eval_cox_monomial(mons[j], inst.points[sub[i]]));
                if (rank(ev) < mons.size()) {
                    rep.pass = false;
                    rep.violations.push_back(BeseViolation{"iii", c, bound, sub});
                    return false; // first violating subset for this class
                }
                return true;
            });
        }
    }
    return rep;
}

std::string BeseCheckReport::to_json() const {
    nlohmann::json j;
    j["pass"] = pass;
    j["rho"] = invariants.rho;
    j["h"] = invariants.h;
    j["D2"] = invariants.d2;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& v : violations) {
        nlohmann::json e;
        e["condition"] = v.condition;
        e["class"] = {v.cls.a, v.cls.b};
        e["bound"] = v.bound;
        if (!v.violating_subset.empty()) e["violating_subset"] = v.violating_subset;
        entries.push_back(e);
    }
    j["violations"] = entries;
    return j.dump();
}

SeparatingDivisorReport separating_divisor_on_quadric(const MultiPoly& quadric,
                                                      const std::vector<ProjPoint>& pts,
                                                      const ProjPoint& q) {
    SeparatingDivisorReport rep;
    if (quadric.nvars() != 4 || quadric.degree() != 2)
        throw field_error("separating divisor needs a quadric form in 4 variables");
    const Field& f = quadric.field();
    for (const auto& p : pts)
        if (!quadric.eval(p.coords()).is_zero())
            throw field_error("point " + p.to_string() + " is not on the quadric");
    if (!quadric.eval(q.coords()).is_zero())
        throw field_error("point " + q.to_string() + " is not on the quadric");
    for (const auto& p : pts)
        if (p == q) throw field_error("q coincides with one of the points");

    PointConfig cfg(f, 3, std::vector<ProjPoint>(pts.begin(), pts.end()));
    SubspaceMax l = max_in_subspace(cfg, 1);
    rep.line_with_4 = l.count >= 4;
    SubspaceMax pl = max_in_subspace(cfg, 2);
    rep.conic_with_7 = pl.count >= 7;
    std::vector<std::size_t> all(pts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    rep.twisted_cubic_all = twisted_cubic_test(cfg, all).verdict;
    rep.hypotheses_hold =
        !rep.line_with_4 && !rep.conic_with_7 && rep.twisted_cubic_all != TriBool::Yes;

    // cone detection via the Gram matrix (char != 2)
    ExactMatrix gram(f, 4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            ExpVec e(4, 0);
            e[i] += 1;
            e[j] += 1;
            FieldScalar c = quadric.coeff(e);
            if (i != j) c = c / FieldScalar(f, 2);
            gram.set(i, j, c);
        }
    std::size_t gr = rank(gram);
    if (gr == 3) {
        rep.quadric_is_cone = true;
        auto ker = kernel_basis(gram);
        ProjPoint vertex(ker.front());
        for (const auto& p : pts)
            if (p == vertex) rep.vertex_among_points = true;
        if (q == vertex) rep.vertex_among_points = true;
    } else if (gr <= 2) {
        rep.note = "quadric is reducible (Gram rank " + std::to_string(gr) + "); ";
        rep.hypotheses_hold = false;
    }

    // cubics through the ten points
    auto mons = monomial_basis(4, 3);
    ExactMatrix ev(f, pts.size(), mons.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& x = pts[i].coords();
        for (std::size_t j = 0; j < mons.size(); ++j) {
            FieldScalar v = FieldScalar::one(f);
            for (std::size_t t = 0; t < 4; ++t) {
                if (mons[j][t] == 0) continue;
                if (x[t].is_zero()) { v = FieldScalar::zero(f); break; }
                v *= x[t].pow(mons[j][t]);
            }
            ev.set(i, j, v);
        }
    }
    auto ker = kernel_basis(ev);
    const auto& xq = q.coords();
    for (const auto& v : ker) {
        FieldScalar val = FieldScalar::zero(f);
        for (std::size_t j = 0; j < mons.size(); ++j) {
            if (v[j].is_zero()) continue;
            FieldScalar m = v[j];
            bool zero = false;
            for (std::size_t t = 0; t < 4; ++t) {
                if (mons[j][t] == 0) continue;
                if (xq[t].is_zero()) { zero = true; break; }
                m *= xq[t].pow(mons[j][t]);
            }
            if (!zero) val += m;
        }
        if (!val.is_zero()) {
            MultiPoly cubic(f, 4, 3);
            for (std::size_t j = 0; j < mons.size(); ++j) cubic.add_term(mons[j], v[j]);
            // sanity: vanishes at every p_i, not at q
            for (const auto& p : pts)
                if (!cubic.eval(p.coords()).is_zero())
                    throw internal_error("separating cubic fails to vanish at a point");
            if (cubic.eval(q.coords()).is_zero())
                throw internal_error("separating cubic vanishes at q after selection");
            rep.cubic = std::move(cubic);
            return rep;
        }
    }
    rep.note += "q is a dependent condition: every cubic through the ten points passes through q";
    if (rep.hypotheses_hold)
        rep.note += " — this contradicts the separating-divisor corollary and is a finding";
    return rep;
}

} // namespace qfac
