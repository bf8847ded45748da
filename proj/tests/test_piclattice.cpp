#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfac/piclattice.hpp"
#include "qfac/rng.hpp"

#include <nlohmann/json.hpp>

using namespace qfac;

namespace {

// independent pairing oracle: plain triple loop over a symmetric table
long long oracle_pair(const LatticeClass& a, const LatticeClass& b, const GramTable& g) {
    long long s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a[i] * b[j] * g.g[i][j];
    return s;
}

} // namespace

TEST_CASE("printed pairing values") {
    GramTable g = printed_gram();
    CHECK(pairing({{1, 0, 0}}, {{1, 0, 0}}, g) == 4);  // h.h
    CHECK(pairing({{0, 1, 0}}, {{0, 0, 1}}, g) == 1);  // f.e
    CHECK(pairing({{1, 0, 0}}, {{0, 1, 0}}, g) == 0);  // h.f
    CHECK(pairing({{0, 0, 1}}, {{0, 0, 1}}, g) == -2); // e.e
    Rng rng(40);
    for (int iter = 0; iter < 50; ++iter) {
        LatticeClass a{{(long long)rng.uniform(9) - 4, (long long)rng.uniform(9) - 4,
                        (long long)rng.uniform(9) - 4}};
        LatticeClass b{{(long long)rng.uniform(9) - 4, (long long)rng.uniform(9) - 4,
                        (long long)rng.uniform(9) - 4}};
        LatticeClass c{{(long long)rng.uniform(9) - 4, (long long)rng.uniform(9) - 4,
                        (long long)rng.uniform(9) - 4}};
        CHECK(pairing(a, b, g) == pairing(b, a, g));
        LatticeClass bc{{b[0] + c[0], b[1] + c[1], b[2] + c[2]}};
        CHECK(pairing(a, bc, g) == pairing(a, b, g) + pairing(a, c, g));
        CHECK(pairing(a, b, g) == oracle_pair(a, b, g));
    }
}

TEST_CASE("stated action matrix") {
    ActionMatrix m = statement_action_matrix();
    LatticeClass h{{1, 0, 0}}, e{{0, 0, 1}}, hfe{{1, -1, -1}};
    CHECK(apply_action(m, h) == LatticeClass{{15, -8, -16}});
    CHECK(apply_action(m, e) == e);
    CHECK(apply_action(m, hfe) == hfe);
    CHECK(apply_action(m, LatticeClass{{0, 1, 0}}) == LatticeClass{{14, -7, -16}});
}

TEST_CASE("involution audit reports M^2 exactly") {
    InvolutionAudit a = audit_involution(statement_action_matrix());
    CHECK(a.fixes_e);
    CHECK(a.fixes_h_minus_f_minus_e);
    // integer matrix multiplication is its own oracle: M^2 h = 113h - 64f - 128e
    CHECK(a.m_squared[0][0] == 113);
    CHECK(a.m_squared[1][0] == -64);
    CHECK(a.m_squared[2][0] == -128);
    CHECK(a.m_squared[2][2] == 1);
    CHECK(!a.is_involution); // recomputed and reported, not asserted away

    CHECK(audit_involution(ActionMatrix{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}).is_involution);
    CHECK(audit_involution(ActionMatrix{{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}}).is_involution);
}

TEST_CASE("quadratic expansion of the proof classes") {
    GramTable printed = printed_gram();
    LatticeClass a{{-1, 8, 0}};  // 8f - h
    LatticeClass b{{1, -1, -1}}; // h - f - e
    QuadraticExpansion ex = expand_quadratic(a, b, printed);
    CHECK(ex.c0 == -124);
    CHECK(ex.c1 == 12);
    CHECK(ex.c2 == -2);
    // independent oracle: interpolate from direct evaluations at m = 0, 1, -1
    auto direct = [&](long long m, const GramTable& g) {
        LatticeClass s{{a[0] + m * b[0], a[1] + m * b[1], a[2] + m * b[2]}};
        return oracle_pair(s, s, g);
    };
    long long v0 = direct(0, printed), v1 = direct(1, printed), vm1 = direct(-1, printed);
    CHECK(ex.c0 == v0);
    CHECK(ex.c1 == (v1 - vm1) / 2);
    CHECK(ex.c2 == (v1 + vm1 - 2 * v0) / 2);

    // under the h^2 = 6 variant the published -122+8m is exact
    QuadraticExpansion alt = expand_quadratic(a, b, printed_gram_h2_6());
    CHECK(alt.c0 == -122);
    CHECK(alt.c1 == 8);
    CHECK(alt.c2 == 0);

    CHECK(expand_quadratic(a, {{0, 0, 0}}, printed).c1 == 0);
    CHECK(expand_quadratic(a, {{0, 0, 0}}, printed).c2 == 0);
    GramTable id = GramTable::from_entries(1, 0, 0, 1, 0, 1);
    QuadraticExpansion hid = expand_quadratic({{1, 0, 0}}, {{0, 1, 0}}, id);
    CHECK(hid.c0 == 1);
    CHECK(hid.c1 == 0);
    CHECK(hid.c2 == 1);
}

TEST_CASE("solving for m") {
    GramTable id = GramTable::from_entries(1, 0, 0, 1, 0, 1);
    SolveForM s = solve_for_m({{0, 0, 0}}, {{1, 0, 0}}, id, 9);
    CHECK(s.solutions == std::vector<long long>{-3, 3});

    // degenerate quadratic: identically satisfied
    SolveForM t = solve_for_m({{1, 0, 0}}, {{0, 0, 0}}, id, 1);
    CHECK(t.identically_satisfied);
    SolveForM t2 = solve_for_m({{1, 0, 0}}, {{0, 0, 0}}, id, 5);
    CHECK(!t2.identically_satisfied);
    CHECK(t2.solutions.empty());

    LatticeClass a{{-1, 8, 0}}, b{{1, -1, -1}};
    CHECK(solve_for_m(a, b, printed_gram(), 4).solutions.empty());
    CHECK(solve_for_m(a, b, printed_gram(), 6).solutions.empty());
    CHECK(solve_for_m(a, b, printed_gram_h2_6(), 6).solutions ==
          std::vector<long long>{16}); // the published m = 16, reproduced not assumed
    CHECK(solve_for_m(a, b, printed_gram_h2_6(), 4).solutions.empty());
    // substitution check on every reported solution
    for (long long m : solve_for_m(a, b, printed_gram_h2_6(), 6).solutions) {
        LatticeClass s{{a[0] + m * b[0], a[1] + m * b[1], a[2] + m * b[2]}};
        CHECK(oracle_pair(s, s, printed_gram_h2_6()) == 6);
    }
}

TEST_CASE("audit json carries the contract fields") {
    auto j = nlohmann::json::parse(lattice_audit_json());
    CHECK(j["fixes_e"] == true);
    CHECK(j["fixes_h_minus_f_minus_e"] == true);
    CHECK(j["is_involution"] == false);
    CHECK(j["paper_printed"] == "-122+8m");
    CHECK(j["expansion"]["c0"] == -124);
    CHECK(j["alternate_gram_h2_6"]["expansion"]["c0"] == -122);
    CHECK(j["alternate_gram_h2_6"]["integer_solutions"]["target6"]["solutions"] ==
          std::vector<long long>{16});
    CHECK(j.contains("gram"));
    CHECK(j.contains("action_matrix"));
    CHECK(j.contains("m_squared"));
    CHECK(j.contains("integer_solutions"));
}
