#include "qfac/piclattice.hpp"

#include <nlohmann/json.hpp>

namespace qfac {

GramTable GramTable::from_entries(long long hh, long long hf, long long he, long long ff,
                                  long long fe, long long ee) {
    GramTable t;
    t.g[0][0] = hh;
    t.g[0][1] = t.g[1][0] = hf;
    t.g[0][2] = t.g[2][0] = he;
    t.g[1][1] = ff;
    t.g[1][2] = t.g[2][1] = fe;
    t.g[2][2] = ee;
    return t;
}

GramTable printed_gram() { return GramTable::from_entries(4, 0, 2, -2, 1, -2); }
GramTable printed_gram_h2_6() { return GramTable::from_entries(6, 0, 2, -2, 1, -2); }

long long pairing(const LatticeClass& a, const LatticeClass& b, const GramTable& g) {
    long long acc = 0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) acc += a[i] * g.g[i][j] * b[j];
    return acc;
}

ActionMatrix statement_action_matrix() {
    // columns: images of h, f, e
    return ActionMatrix{{{15, 14, 0}, {-8, -7, 0}, {-16, -16, 1}}};
}

LatticeClass apply_action(const ActionMatrix& m, const LatticeClass& v) {
    LatticeClass out;
    for (std::size_t i = 0; i < 3; ++i)
        out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return out;
}

InvolutionAudit audit_involution(const ActionMatrix& m) {
    InvolutionAudit a;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            long long acc = 0;
            for (std::size_t k = 0; k < 3; ++k) acc += m[i][k] * m[k][j];
            a.m_squared[i][j] = acc;
        }
    a.is_involution = true;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (a.m_squared[i][j] != (i == j ? 1 : 0)) a.is_involution = false;
    a.fixes_e = apply_action(m, LatticeClass{{0, 0, 1}}) == LatticeClass{{0, 0, 1}};
    a.fixes_h_minus_f_minus_e =
        apply_action(m, LatticeClass{{1, -1, -1}}) == LatticeClass{{1, -1, -1}};
    return a;
}

QuadraticExpansion expand_quadratic(const LatticeClass& a, const LatticeClass& b,
                                    const GramTable& g) {
    return QuadraticExpansion{pairing(a, a, g), 2 * pairing(a, b, g), pairing(b, b, g)};
}

SolveForM solve_for_m(const LatticeClass& a, const LatticeClass& b, const GramTable& g,
                      long long target, long long window) {
    QuadraticExpansion q = expand_quadratic(a, b, g);
    SolveForM out;
    if (q.c1 == 0 && q.c2 == 0) {
        if (q.c0 == target) {
            out.identically_satisfied = true;
            return out;
        }
        return out;
    }
    for (long long m = -window; m <= window; ++m)
        if (q.c0 + q.c1 * m + q.c2 * m * m == target) out.solutions.push_back(m);
    return out;
}

namespace {

nlohmann::json gram_json(const GramTable& g) {
    return nlohmann::json{{"hh", g.g[0][0]}, {"hf", g.g[0][1]}, {"he", g.g[0][2]},
                          {"ff", g.g[1][1]}, {"fe", g.g[1][2]}, {"ee", g.g[2][2]}};
}

nlohmann::json audit_under(const GramTable& g) {
    nlohmann::json j;
    j["gram"] = gram_json(g);
    // A = 8f - h, B = h - f - e, the classes of the proof's restriction step
    LatticeClass a{{-1, 8, 0}}, b{{1, -1, -1}};
    QuadraticExpansion ex = expand_quadratic(a, b, g);
    j["expansion"] = nlohmann::json{{"c0", ex.c0}, {"c1", ex.c1}, {"c2", ex.c2}};
    for (long long target : {4ll, 6ll}) {
        SolveForM s = solve_for_m(a, b, g, target);
        nlohmann::json sj;
        sj["identically_satisfied"] = s.identically_satisfied;
        sj["solutions"] = s.solutions;
        j["integer_solutions"]["target" + std::to_string(target)] = sj;
    }
    return j;
}

} // namespace

std::string lattice_audit_json(const GramTable& printed, const GramTable& variant) {
    nlohmann::json j = audit_under(printed);
    ActionMatrix m = statement_action_matrix();
    InvolutionAudit ia = audit_involution(m);
    j["action_matrix"] = m;
    j["m_squared"] = ia.m_squared;
    j["is_involution"] = ia.is_involution;
    j["fixes_e"] = ia.fixes_e;
    j["fixes_h_minus_f_minus_e"] = ia.fixes_h_minus_f_minus_e;
    j["paper_printed"] = "-122+8m";
    j["matches_paper_printed"] =
        (audit_under(printed)["expansion"] == nlohmann::json{{"c0", -122}, {"c1", 8}, {"c2", 0}});
    j["alternate_gram_h2_6"] = audit_under(variant);
    j["alternate_gram_h2_6"]["matches_paper_printed"] =
        (audit_under(variant)["expansion"] == nlohmann::json{{"c0", -122}, {"c1", 8}, {"c2", 0}});
    return j.dump(2);
}

std::string lattice_audit_json() { return lattice_audit_json(printed_gram(), printed_gram_h2_6()); }

} // namespace qfac
