#ifndef QFAC_SURFGEO_HPP
#define QFAC_SURFGEO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfac/projgeo.hpp"

namespace qfac {

// Divisor class a*s + b*f on the Hirzebruch surface F_r
// (s = exceptional section, s^2 = -r; f = fiber, f^2 = 0, s.f = 1).
struct RuledClass {
    unsigned r = 0;
    long long a = 0;
    long long b = 0;
};

long long pair_classes(unsigned r, const RuledClass& c1, const RuledClass& c2);
RuledClass canonical_class(unsigned r); // -2s - (r+2)f

// number of global sections of a*s + b*f: sum_{i=0..a} max(0, b - i*r + 1)
long long h0_ruled(unsigned r, const RuledClass& c);

struct BeseInvariants {
    long long rho; // dim |D - K|
    long long h;   // rho - (D^2 - 3 D.K + 16)/2
    long long d2;  // D^2
};
BeseInvariants bese_invariants(unsigned r, const RuledClass& d);

// C (D - K - C) - 2
long long condition_iii_bound(unsigned r, const RuledClass& d, const RuledClass& c);

// range of condition (iii): 0 <= x <= a+2, 0 <= y <= floor((b+2+r)/2)
struct ClassRange {
    long long xmax;
    long long ymax;
};
ClassRange condition_iii_range(unsigned r, const RuledClass& d);

// Points on F_0 or F_2 in Cox coordinates (u0,u1,v0,v1):
// F_0: ((u0:u1),(v0:v1)) on P^1 x P^1;
// F_2: (t0,t1;z0,z1) with deg t = f, deg z1 = s, deg z0 = s + 2f.
// Stored as 3-dimensional PointConfig rows of length 4 (normalization of the
// two scaling actions is performed on construction of BeseInstance).
struct BeseInstance {
    unsigned r;
    RuledClass d;            // requires a, b > 0
    std::vector<std::vector<FieldScalar>> points; // Cox coordinate quadruples

    BeseInstance(unsigned r_, RuledClass d_, std::vector<std::vector<FieldScalar>> pts);
};

// monomial exponent quadruples (on u0,u1,v0,v1 resp. t0,t1,z0,z1) spanning
// H^0 of the class (x, y) on F_r
std::vector<ExpVec> ruled_monomials(unsigned r, long long x, long long y);
FieldScalar eval_cox_monomial(const ExpVec& e, const std::vector<FieldScalar>& pt);

struct BeseViolation {
    std::string condition; // "i", "ii" or "iii"
    RuledClass cls;        // for condition iii
    long long bound = 0;
    std::vector<std::size_t> violating_subset;
};

struct BeseCheckReport {
    bool pass = true;
    BeseInvariants invariants{};
    std::vector<BeseViolation> violations;
    // entries as {condition, class: [x, y], bound, violating_subset?}
    std::string to_json() const;
};

// full Theorem-2.1 hypothesis check over the (iii) range
BeseCheckReport bese_check(const BeseInstance& inst);

// Constructive separating divisor on a quadric surface in P^3
// (cubic through p_0..p_9 missing q), with the hypothesis flags reported.
struct SeparatingDivisorReport {
    bool hypotheses_hold = true;
    bool line_with_4 = false;
    bool conic_with_7 = false;
    TriBool twisted_cubic_all = TriBool::No;
    bool quadric_is_cone = false;
    bool vertex_among_points = false; // vertex equals some p_i or q
    std::optional<MultiPoly> cubic;   // empty iff q is a dependent condition
    std::string note;
};

SeparatingDivisorReport separating_divisor_on_quadric(const MultiPoly& quadric,
                                                      const std::vector<ProjPoint>& pts,
                                                      const ProjPoint& q);

} // namespace qfac

#endif
