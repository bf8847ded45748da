#include "qfac/scan.hpp"

#include <algorithm>

namespace qfac {
namespace scan {

FPoly FPoly::from(const MultiPoly& f) {
    if (!f.field().is_finite()) throw field_error("scan kernels need a finite field");
    if (f.nvars() > kMaxScanVars) throw field_error("too many variables for scan kernels");
    const GFContext& ctx = f.field().ctx();
    FPoly out;
    out.nvars = (std::uint32_t)f.nvars();
    for (const auto& [e, c] : f.terms()) {
        FTerm t{};
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            if (e[i] > 255) throw field_error("exponent too large for scan kernels");
            t.exps[i] = (std::uint8_t)e[i];
        }
        t.logc = ctx.to_log(c.dense());
        out.terms.push_back(t);
    }
    return out;
}

FPoly FPoly::embedded(const MultiPoly& f, const FieldEmbedding& emb) {
    if (f.field() != emb.src()) throw field_error("embedding source mismatch");
    if (f.nvars() > kMaxScanVars) throw field_error("too many variables for scan kernels");
    const GFContext& ctx = emb.dst().ctx();
    FPoly out;
    out.nvars = (std::uint32_t)f.nvars();
    for (const auto& [e, c] : f.terms()) {
        FTerm t{};
        for (std::size_t i = 0; i < f.nvars(); ++i) t.exps[i] = (std::uint8_t)e[i];
        t.logc = ctx.to_log(emb.map(c.dense()));
        if (t.logc == kLogZero) continue; // cannot happen for a real embedding
        out.terms.push_back(t);
    }
    return out;
}

std::vector<FPoly> FPoly::last_var_coefficients() const {
    std::uint32_t last = nvars - 1;
    std::uint8_t maxe = 0;
    for (const auto& t : terms) maxe = std::max(maxe, t.exps[last]);
    std::vector<FPoly> out(maxe + 1);
    for (auto& f : out) f.nvars = last;
    for (const auto& t : terms) {
        FTerm s = t;
        std::uint8_t e = t.exps[last];
        s.exps[last] = 0;
        out[e].terms.push_back(s);
    }
    return out;
}

std::uint32_t eval_log(const GFContext& ctx, const FPoly& f, const std::uint32_t* coords_log) {
    const std::uint32_t qm1 = ctx.q() - 1;
    std::uint32_t acc = kLogZero;
    for (const auto& t : f.terms) {
        std::uint32_t lg = t.logc;
        bool zero = false;
        for (std::uint32_t i = 0; i < f.nvars; ++i) {
            std::uint8_t e = t.exps[i];
            if (e == 0) continue;
            std::uint32_t cl = coords_log[i];
            if (cl == kLogZero) { zero = true; break; }
            lg += (std::uint32_t)e * cl % qm1;
            if (lg >= qm1) lg -= qm1;
        }
        if (zero) continue;
        acc = ctx.ladd(acc, lg);
    }
    return acc;
}

std::uint32_t eval_dense(const GFContext& ctx, const FPoly& f, const std::uint32_t* coords) {
    std::uint32_t logs[kMaxScanVars];
    for (std::uint32_t i = 0; i < f.nvars; ++i) logs[i] = ctx.to_log(coords[i]);
    return ctx.from_log(eval_log(ctx, f, logs));
}

namespace {

// substitute variable `var` with the dense value whose log is vlog
FPoly subst(const GFContext& ctx, const FPoly& f, std::uint32_t var, std::uint32_t vlog) {
    const std::uint32_t qm1 = ctx.q() - 1;
    FPoly out;
    out.nvars = f.nvars;
    out.terms.reserve(f.terms.size());
    for (const auto& t : f.terms) {
        std::uint8_t e = t.exps[var];
        if (e == 0) {
            out.terms.push_back(t);
            continue;
        }
        if (vlog == kLogZero) continue;
        FTerm s = t;
        s.exps[var] = 0;
        s.logc = t.logc + (std::uint32_t)e * vlog % qm1;
        if (s.logc >= qm1) s.logc -= qm1;
        out.terms.push_back(s);
    }
    // merge duplicate exponent patterns (keeps univariate extraction cheap)
    std::sort(out.terms.begin(), out.terms.end(), [](const FTerm& a, const FTerm& b) {
        return a.exps < b.exps;
    });
    FPoly merged;
    merged.nvars = f.nvars;
    for (const auto& t : out.terms) {
        if (!merged.terms.empty() && merged.terms.back().exps == t.exps) {
            merged.terms.back().logc = ctx.ladd(merged.terms.back().logc, t.logc);
        } else {
            merged.terms.push_back(t);
        }
    }
    merged.terms.erase(std::remove_if(merged.terms.begin(), merged.terms.end(),
                                      [](const FTerm& t) { return t.logc == kLogZero; }),
                       merged.terms.end());
    return merged;
}

struct ZeroScan {
    const GFContext& ctx;
    std::uint32_t n; // coordinate count
    std::uint64_t result_cap;
    std::vector<std::vector<std::uint32_t>> results;
    std::vector<std::uint32_t> coords;

    void emit() {
        if (results.size() >= result_cap)
            throw budget_error("projective zero scan result cap exceeded", results.size() + 1);
        results.push_back(coords);
    }

    // vars [first_free, n) remain; all polys already substituted below that
    void rec(const std::vector<FPoly>& polys, std::uint32_t first_free) {
        if (first_free == n) {
            for (const auto& f : polys)
                if (!f.is_zero()) return;
            emit();
            return;
        }
        if (first_free + 1 == n) {
            // univariate in the last variable
            std::vector<std::vector<std::uint32_t>> unis;
            unis.reserve(polys.size());
            for (const auto& f : polys) {
                std::vector<std::uint32_t> c;
                for (const auto& t : f.terms) {
                    std::uint8_t e = t.exps[n - 1];
                    if (c.size() <= e) c.resize(e + 1, kLogZero);
                    c[e] = ctx.ladd(c[e], t.logc);
                }
                while (!c.empty() && c.back() == kLogZero) c.pop_back();
                unis.push_back(std::move(c));
            }
            // scanner: first univariate that is not identically zero
            int scanner = -1;
            for (std::size_t i = 0; i < unis.size(); ++i) {
                bool nz = false;
                for (auto lc : unis[i])
                    if (lc != kLogZero) { nz = true; break; }
                if (nz) { scanner = (int)i; break; }
            }
            auto check_all = [&](std::uint32_t tlog) {
                for (const auto& c : unis) {
                    std::uint32_t acc = kLogZero;
                    for (std::size_t e = c.size(); e-- > 0;) {
                        acc = ctx.lmul(acc, tlog);
                        acc = ctx.ladd(acc, c[e]);
                    }
                    if (acc != kLogZero) return false;
                }
                return true;
            };
            for (std::uint32_t t = 0; t < ctx.q(); ++t) {
                std::uint32_t tlog = ctx.to_log(t);
                if (scanner >= 0) {
                    const auto& c = unis[scanner];
                    std::uint32_t acc = kLogZero;
                    for (std::size_t e = c.size(); e-- > 0;) {
                        acc = ctx.lmul(acc, tlog);
                        acc = ctx.ladd(acc, c[e]);
                    }
                    if (acc != kLogZero) continue;
                }
                if (check_all(tlog)) {
                    coords[n - 1] = t;
                    emit();
                }
            }
            coords[n - 1] = 0;
            return;
        }
        for (std::uint32_t v = 0; v < ctx.q(); ++v) {
            std::uint32_t vlog = ctx.to_log(v);
            std::vector<FPoly> next;
            next.reserve(polys.size());
            for (const auto& f : polys) next.push_back(subst(ctx, f, first_free, vlog));
            coords[first_free] = v;
            rec(next, first_free + 1);
        }
        coords[first_free] = 0;
    }
};

} // namespace

std::vector<std::vector<std::uint32_t>> projective_zeros(const GFContext& ctx,
                                                         const std::vector<FPoly>& polys,
                                                         std::uint64_t point_budget,
                                                         std::uint64_t result_cap) {
    if (polys.empty()) throw field_error("projective_zeros: empty system");
    std::uint32_t n = polys.front().nvars;
    for (const auto& f : polys)
        if (f.nvars != n) throw field_error("projective_zeros: mixed variable counts");
    // |P^{n-1}(q)| = q^{n-1} + ... + 1
    std::uint64_t total = 0, power = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        total += power;
        if (i + 1 < n) {
            if (power > point_budget) { total = point_budget + 1; break; }
            power *= ctx.q();
        }
    }
    if (total > point_budget)
        throw budget_error("projective point enumeration over GF(" + ctx.describe() +
                           ") exceeds budget", total);

    ZeroScan zs{ctx, n, result_cap, {}, std::vector<std::uint32_t>(n, 0)};
    // charts in descending pivot order -> ascending lexicographic points
    for (std::uint32_t chart = n; chart-- > 0;) {
        std::vector<FPoly> cur;
        cur.reserve(polys.size());
        for (const auto& f : polys) {
            FPoly g = f;
            for (std::uint32_t i = 0; i < chart; ++i) g = subst(ctx, g, i, kLogZero);
            g = subst(ctx, g, chart, 0 /* log(1) */);
            cur.push_back(std::move(g));
        }
        std::fill(zs.coords.begin(), zs.coords.end(), 0);
        zs.coords[chart] = 1;
        zs.rec(cur, chart + 1);
    }
    return zs.results;
}

QuadraticRoots solve_quadratic(const GFContext& ctx, std::uint32_t la, std::uint32_t lb,
                               std::uint32_t lc) {
    QuadraticRoots out;
    if (la == kLogZero) {
        if (lb == kLogZero) {
            if (lc == kLogZero) out.all = true;
            return out;
        }
        // t = -c / b
        std::uint32_t t = (lc == kLogZero) ? 0 : ctx.from_log(ctx.lmul(ctx.lneg(lc), ctx.linv(lb)));
        out.dense[out.count++] = t;
        return out;
    }
    std::uint32_t l4 = ctx.to_log(ctx.from_int(4));
    std::uint32_t disc = ctx.lsub(ctx.lmul(lb, lb), ctx.lmul(l4, ctx.lmul(la, lc)));
    std::uint32_t l2a = ctx.lmul(ctx.to_log(ctx.from_int(2)), la);
    if (disc == kLogZero) {
        std::uint32_t t = (lb == kLogZero) ? 0 : ctx.from_log(ctx.lmul(ctx.lneg(lb), ctx.linv(l2a)));
        out.dense[out.count++] = t;
        return out;
    }
    auto s = ctx.lsqrt(disc);
    if (!s) return out;
    std::uint32_t r1 = ctx.ladd(ctx.lneg(lb), *s);
    std::uint32_t r2 = ctx.lsub(ctx.lneg(lb), *s);
    std::uint32_t t1 = (r1 == kLogZero) ? 0 : ctx.from_log(ctx.lmul(r1, ctx.linv(l2a)));
    std::uint32_t t2 = (r2 == kLogZero) ? 0 : ctx.from_log(ctx.lmul(r2, ctx.linv(l2a)));
    out.dense[out.count++] = t1;
    if (t2 != t1) out.dense[out.count++] = t2;
    return out;
}

UnivariateRoots univariate_roots(const GFContext& ctx, const std::vector<std::uint32_t>& logc) {
    UnivariateRoots out;
    bool nz = false;
    for (auto lc : logc)
        if (lc != kLogZero) { nz = true; break; }
    if (!nz) {
        out.all = true;
        return out;
    }
    for (std::uint32_t t = 0; t < ctx.q(); ++t) {
        std::uint32_t tlog = ctx.to_log(t);
        std::uint32_t acc = kLogZero;
        for (std::size_t e = logc.size(); e-- > 0;) {
            acc = ctx.lmul(acc, tlog);
            acc = ctx.ladd(acc, logc[e]);
        }
        if (acc == kLogZero) out.dense.push_back(t);
    }
    return out;
}

std::vector<std::array<std::uint32_t, 4>> p3_quadric_scan(const GFContext& ctx,
                                                          const FPoly& quadric,
                                                          const std::vector<FPoly>& extras,
                                                          std::uint64_t prefix_budget,
                                                          std::uint64_t result_cap) {
    if (quadric.nvars != 4) throw field_error("p3_quadric_scan needs 4 variables");
    for (const auto& f : extras)
        if (f.nvars != 4) throw field_error("p3_quadric_scan needs 4 variables");
    std::uint64_t q = ctx.q();
    std::uint64_t prefixes = q * q + q + 1;
    if (prefixes > prefix_budget)
        throw budget_error("P^3 quadric scan over GF(" + ctx.describe() + ") exceeds budget",
                           prefixes);

    std::vector<FPoly> qc = quadric.last_var_coefficients(); // degree <= 2 in u3
    qc.resize(3);
    for (auto& f : qc) f.nvars = 3;

    std::vector<std::array<std::uint32_t, 4>> results;
    auto push = [&](std::array<std::uint32_t, 4> pt) {
        if (results.size() >= result_cap)
            throw budget_error("P^3 quadric scan result cap exceeded", results.size() + 1);
        results.push_back(pt);
    };

    auto extras_vanish = [&](const std::array<std::uint32_t, 4>& pt) {
        std::uint32_t lg[4];
        for (int i = 0; i < 4; ++i) lg[i] = ctx.to_log(pt[i]);
        for (const auto& f : extras)
            if (eval_log(ctx, f, lg) != kLogZero) return false;
        return true;
    };

    // the single point with zero prefix
    {
        std::array<std::uint32_t, 4> pt{0, 0, 0, 1};
        std::uint32_t lg[4] = {kLogZero, kLogZero, kLogZero, 0};
        if (eval_log(ctx, quadric, lg) == kLogZero && extras_vanish(pt)) push(pt);
    }
    const std::uint32_t qm1 = (std::uint32_t)q - 1;
    // prefixes (u0:u1:u2): fix the chart and u1, then run u2 through the
    // field with the three u3-coefficients reduced to univariate Horner forms
    for (int chart = 2; chart >= 0; --chart) {
        std::uint64_t outer = (chart == 0) ? q : 1;
        for (std::uint64_t a = 0; a < outer; ++a) {
            std::uint32_t u0 = chart == 0 ? 1u : 0u;
            std::uint32_t u1 = chart == 0 ? (std::uint32_t)a : (chart == 1 ? 1u : 0u);
            // substitute u0, u1 into the three coefficient forms; remaining
            // variable is u2 (index 2 of the 3-variable forms)
            std::uint32_t lg01[3] = {ctx.to_log(u0), ctx.to_log(u1), kLogZero};
            // univariate coefficient arrays in u2 (log form), degree <= 2
            std::uint32_t uni[3][3];
            for (int e = 0; e < 3; ++e)
                for (int d = 0; d < 3; ++d) uni[e][d] = kLogZero;
            for (int e = 0; e < 3; ++e)
                for (const auto& t : qc[e].terms) {
                    std::uint32_t lg = t.logc;
                    bool zero = false;
                    for (int i = 0; i < 2; ++i) {
                        std::uint8_t ex = t.exps[i];
                        if (ex == 0) continue;
                        if (lg01[i] == kLogZero) { zero = true; break; }
                        lg += (std::uint32_t)ex * lg01[i] % qm1;
                        if (lg >= qm1) lg -= qm1;
                    }
                    if (zero) continue;
                    uni[e][t.exps[2]] = ctx.ladd(uni[e][t.exps[2]], lg);
                }
            std::uint64_t inner = (chart <= 1) ? q : 1;
            for (std::uint64_t b = 0; b < inner; ++b) {
                std::uint32_t u2 = (chart <= 1) ? (std::uint32_t)b : 1u;
                std::uint32_t u2log = ctx.to_log(u2);
                std::uint32_t coef[3];
                for (int e = 0; e < 3; ++e) {
                    std::uint32_t acc = uni[e][2];
                    acc = ctx.ladd(ctx.lmul(acc, u2log), uni[e][1]);
                    acc = ctx.ladd(ctx.lmul(acc, u2log), uni[e][0]);
                    coef[e] = acc;
                }
                QuadraticRoots roots = solve_quadratic(ctx, coef[2], coef[1], coef[0]);
                if (roots.all) {
                    for (std::uint32_t t = 0; t < q; ++t) {
                        std::array<std::uint32_t, 4> pt{u0, u1, u2, t};
                        if (extras_vanish(pt)) push(pt);
                    }
                } else {
                    if (roots.count == 2 && roots.dense[0] > roots.dense[1])
                        std::swap(roots.dense[0], roots.dense[1]);
                    for (std::uint32_t r = 0; r < roots.count; ++r) {
                        std::array<std::uint32_t, 4> pt{u0, u1, u2, roots.dense[r]};
                        if (extras_vanish(pt)) push(pt);
                    }
                }
            }
        }
    }
    std::sort(results.begin(), results.end());
    return results;
}

} // namespace scan
} // namespace qfac
