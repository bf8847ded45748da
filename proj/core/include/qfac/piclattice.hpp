#ifndef QFAC_PICLATTICE_HPP
#define QFAC_PICLATTICE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qfac {

// Integer divisor class over the ordered basis (h, f, e).
struct LatticeClass {
    std::array<long long, 3> c{0, 0, 0};
    long long& operator[](std::size_t i) { return c[i]; }
    long long operator[](std::size_t i) const { return c[i]; }
    bool operator==(const LatticeClass& o) const { return c == o.c; }
};

// Symmetric 3x3 integer pairing table.
struct GramTable {
    std::array<std::array<long long, 3>, 3> g{};
    static GramTable from_entries(long long hh, long long hf, long long he, long long ff,
                                  long long fe, long long ee);
};

// the intersection numbers printed in the involution-action proof:
// h^2=4, hf=0, he=2, f^2=-2, fe=1, e^2=-2
GramTable printed_gram();
// the variant the same proof uses one line later: h^2=6, rest unchanged
GramTable printed_gram_h2_6();

long long pairing(const LatticeClass& a, const LatticeClass& b, const GramTable& g);

// columns are the stated images of h, f, e:
// h -> 15h-8f-16e, f -> 14h-7f-16e, e -> e
using ActionMatrix = std::array<std::array<long long, 3>, 3>;
ActionMatrix statement_action_matrix();

LatticeClass apply_action(const ActionMatrix& m, const LatticeClass& v);

struct InvolutionAudit {
    ActionMatrix m_squared{};
    bool is_involution = false;
    bool fixes_e = false;
    bool fixes_h_minus_f_minus_e = false;
};
// Computes M^2 and the fixed-class checks.  Descriptive report; the tool
// never asserts that the printed matrix must be an involution.
InvolutionAudit audit_involution(const ActionMatrix& m);

// (A + mB)^2 = c0 + c1 m + c2 m^2 under g
struct QuadraticExpansion {
    long long c0, c1, c2;
};
QuadraticExpansion expand_quadratic(const LatticeClass& a, const LatticeClass& b,
                                    const GramTable& g);

struct SolveForM {
    bool identically_satisfied = false;
    std::vector<long long> solutions; // within the window, ascending
};
// all integers |m| <= window with (A + mB)^2 == target
SolveForM solve_for_m(const LatticeClass& a, const LatticeClass& b, const GramTable& g,
                      long long target, long long window = 1000);

// Full audit of the involution-action statement: the stated matrix, M^2,
// fixed classes, and the expansion of (8f - h + m(h - f - e))^2 under the
// printed Gram values, side by side with the published expansion "-122+8m"
// (reproduced exactly under the h^2=6 variant).  JSON with sorted keys.
std::string lattice_audit_json(const GramTable& printed, const GramTable& variant);
std::string lattice_audit_json(); // default = printed_gram() / printed_gram_h2_6()

} // namespace qfac

#endif
