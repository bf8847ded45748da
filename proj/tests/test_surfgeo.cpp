#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfac/rng.hpp"
#include "qfac/scan.hpp"
#include "qfac/surfgeo.hpp"

using namespace qfac;

TEST_CASE("intersection pairing on F_r") {
    CHECK(pair_classes(0, {0, 3, 3}, {0, 3, 3}) == 18);
    CHECK(pair_classes(2, {2, 2, 5}, {2, 2, 5}) == 12);
    CHECK(pair_classes(2, {2, 3, 6}, {2, 3, 6}) == 18);
    CHECK(pair_classes(7, {7, 0, 1}, {7, 0, 1}) == 0); // f . f
    // symmetry and bilinearity
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        unsigned r = (unsigned)rng.uniform(4);
        RuledClass a{r, (long long)rng.uniform(9) - 4, (long long)rng.uniform(9) - 4};
        RuledClass b{r, (long long)rng.uniform(9) - 4, (long long)rng.uniform(9) - 4};
        RuledClass c{r, (long long)rng.uniform(9) - 4, (long long)rng.uniform(9) - 4};
        CHECK(pair_classes(r, a, b) == pair_classes(r, b, a));
        RuledClass bc{r, b.a + c.a, b.b + c.b};
        CHECK(pair_classes(r, a, bc) == pair_classes(r, a, b) + pair_classes(r, a, c));
    }
}

TEST_CASE("canonical class") {
    RuledClass k0 = canonical_class(0);
    CHECK(k0.a == -2);
    CHECK(k0.b == -2);
    RuledClass k2 = canonical_class(2);
    CHECK(k2.a == -2);
    CHECK(k2.b == -4);
    // adjunction on a fiber: K . f = -2
    for (unsigned r : {0u, 1u, 2u, 3u})
        CHECK(pair_classes(r, canonical_class(r), {r, 0, 1}) == -2);
}

TEST_CASE("section counts") {
    CHECK(h0_ruled(0, {0, 5, 5}) == 36);
    CHECK(h0_ruled(2, {2, 4, 9}) == 30);
    CHECK(h0_ruled(2, {2, 5, 10}) == 36);
    CHECK(h0_ruled(0, {0, -1, 3}) == 0);
    CHECK(h0_ruled(2, {2, 3, 1}) == 2 + 0 + 0 + 0); // i = 0 gives 2, others negative
    // matches the monomial count
    for (unsigned r : {0u, 2u})
        for (long long x = 0; x <= 4; ++x)
            for (long long y = 0; y <= 6; ++y)
                CHECK(h0_ruled(r, {r, x, y}) == (long long)ruled_monomials(r, x, y).size());
}

TEST_CASE("the three reference invariant triples") {
    BeseInvariants a = bese_invariants(0, {0, 3, 3});
    CHECK(a.rho == 35);
    CHECK(a.h == 0);
    CHECK(a.d2 == 18);
    BeseInvariants b = bese_invariants(2, {2, 3, 6});
    CHECK(b.rho == 35);
    CHECK(b.h == 0);
    CHECK(b.d2 == 18);
    BeseInvariants c = bese_invariants(2, {2, 2, 5});
    CHECK(c.rho == 29);
    CHECK(c.h == 0);
    CHECK(c.d2 == 12);
}

TEST_CASE("condition (iii) bounds and reference polynomials") {
    CHECK(condition_iii_bound(0, {0, 3, 3}, {0, 1, 1}) == 6);
    CHECK(condition_iii_bound(2, {2, 3, 6}, {2, 1, 0}) == 0);
    CHECK(condition_iii_bound(2, {2, 2, 5}, {2, 1, 2}) == 5);
    CHECK(condition_iii_bound(0, {0, 3, 3}, {0, 2, 1}) == 9);

    ClassRange r1 = condition_iii_range(0, {0, 3, 3});
    CHECK(r1.xmax == 5);
    CHECK(r1.ymax == 2);
    ClassRange r2 = condition_iii_range(2, {2, 3, 6});
    CHECK(r2.xmax == 5);
    CHECK(r2.ymax == 5);
    ClassRange r3 = condition_iii_range(2, {2, 2, 5});
    CHECK(r3.xmax == 4);
    CHECK(r3.ymax == 4);

    for (long long x = 0; x <= 5; ++x)
        for (long long y = 0; y <= 2; ++y)
            if (x || y)
                CHECK(condition_iii_bound(0, {0, 3, 3}, {0, x, y}) == 5 * x + 5 * y - 2 * x * y - 2);
    for (long long x = 0; x <= 5; ++x)
        for (long long y = 0; y <= 5; ++y)
            if (x || y)
                CHECK(condition_iii_bound(2, {2, 3, 6}, {2, x, y}) ==
                      2 * x * x + 5 * y - 2 * x * y - 2);
    for (long long x = 0; x <= 4; ++x)
        for (long long y = 0; y <= 4; ++y)
            if (x || y)
                CHECK(condition_iii_bound(2, {2, 2, 5}, {2, x, y}) ==
                      2 * x * x + x + 4 * y - 2 * x * y - 2);
}

namespace {

std::vector<FieldScalar> cox(const Field& f, std::initializer_list<long long> v) {
    std::vector<FieldScalar> out;
    for (auto c : v) out.emplace_back(f, c);
    return out;
}

} // namespace

TEST_CASE("bese_check on F_0") {
    Field f = Field::gf(101);
    Rng rng(4);
    // ten pseudorandom points of P^1 x P^1
    std::vector<std::vector<FieldScalar>> pts;
    while (pts.size() < 10) {
        auto p = cox(f, {1, (long long)rng.uniform(101), 1, (long long)rng.uniform(101)});
        bool dup = false;
        for (const auto& o : pts) dup = dup || o == p;
        if (!dup) pts.push_back(p);
    }
    BeseInstance inst(0, {0, 3, 3}, pts);
    BeseCheckReport rep = bese_check(inst);
    CHECK(rep.invariants.rho == 35);
    CHECK(rep.pass); // condition (i): 10 <= floor(31/3) = 10
    // an 11th point breaks condition (i)
    auto pts11 = pts;
    pts11.push_back(cox(f, {1, 100, 0, 1}));
    BeseCheckReport rep11 = bese_check(BeseInstance(0, {0, 3, 3}, pts11));
    CHECK(!rep11.pass);
    REQUIRE(!rep11.violations.empty());
    CHECK(rep11.violations.front().condition == "i");
    CHECK(rep11.violations.front().bound == 10);
}

TEST_CASE("bese_check catches seven points on a (1,1)-curve") {
    Field f = Field::gf(101);
    // the diagonal z = t is a (1,1)-curve: points ((1:t),(1:t))
    std::vector<std::vector<FieldScalar>> pts;
    for (long long t = 0; t < 7; ++t) pts.push_back(cox(f, {1, t, 1, t}));
    pts.push_back(cox(f, {1, 9, 1, 23}));
    pts.push_back(cox(f, {1, 17, 1, 88}));
    pts.push_back(cox(f, {0, 1, 1, 5}));
    BeseCheckReport rep = bese_check(BeseInstance(0, {0, 3, 3}, pts));
    CHECK(!rep.pass);
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.condition == "iii" && v.cls.a == 1 && v.cls.b == 1) {
            found = true;
            CHECK(v.bound == 6);
            CHECK(v.violating_subset.size() == 7);
        }
    CHECK(found);
}

TEST_CASE("bese_check on F_2 with eight points") {
    Field f = Field::gf(101);
    Rng rng(9);
    std::vector<std::vector<FieldScalar>> pts;
    while (pts.size() < 8) {
        // generic points away from the exceptional section (z1 != 0)
        auto p = cox(f, {1, (long long)rng.uniform(101), (long long)rng.uniform(101), 1});
        bool dup = false;
        for (const auto& o : pts) dup = dup || o == p;
        if (!dup) pts.push_back(p);
    }
    BeseCheckReport rep = bese_check(BeseInstance(2, {2, 2, 5}, pts));
    CHECK(rep.invariants.rho == 29);
    CHECK(rep.pass); // condition (i): 8 <= floor(25/3) = 8
    // a point on the exceptional section violates the (1,0) bound 1? bound is
    // 2x^2+x+4y-2xy-2 at (1,0) = 1, so two such points violate
    auto bad = pts;
    bad.pop_back();
    bad.pop_back();
    bad.push_back(cox(f, {1, 3, 1, 0}));
    bad.push_back(cox(f, {1, 4, 1, 0}));
    BeseCheckReport rep2 = bese_check(BeseInstance(2, {2, 2, 5}, bad));
    CHECK(!rep2.pass);
    bool found = false;
    for (const auto& v : rep2.violations)
        if (v.condition == "iii" && v.cls.a == 1 && v.cls.b == 0) found = true;
    CHECK(found);
    // violation entries serialize with the report schema
    std::string j = rep2.to_json();
    CHECK(j.find("\"condition\"") != std::string::npos);
    CHECK(j.find("\"class\"") != std::string::npos);
    CHECK(j.find("\"bound\"") != std::string::npos);
    CHECK(j.find("\"violating_subset\"") != std::string::npos);
}

TEST_CASE("unsupported surfaces are rejected") {
    Field f = Field::gf(11);
    std::vector<std::vector<FieldScalar>> pts{cox(f, {1, 0, 1, 0})};
    CHECK_THROWS_AS(BeseInstance(1, {1, 2, 5}, pts), field_error);
    CHECK_THROWS_AS(BeseInstance(0, {0, 0, 3}, pts), field_error);
    CHECK_THROWS_AS(bese_invariants(0, {0, -1, 2}), field_error);
}

TEST_CASE("separating divisor on a smooth quadric") {
    Field f = Field::gf(101);
    const GFContext& ctx = f.ctx();
    MultiPoly quad = parse_poly("x0*x3 - x1*x2", 4, f);
    auto zeros = scan::projective_zeros(ctx, {scan::FPoly::from(quad)}, 5000000);
    Rng rng(31);
    std::vector<ProjPoint> pts;
    ProjPoint* qpt = nullptr;
    std::vector<ProjPoint> all;
    while (all.size() < 11) {
        auto& z = zeros[rng.uniform(zeros.size())];
        std::vector<FieldScalar> v;
        for (auto c : z) v.push_back(FieldScalar::finite(f, c));
        ProjPoint p(std::move(v));
        bool dup = false;
        for (const auto& o : all) dup = dup || o == p;
        if (!dup) all.push_back(p);
    }
    pts.assign(all.begin(), all.begin() + 10);
    ProjPoint q = all.back();
    SeparatingDivisorReport rep = separating_divisor_on_quadric(quad, pts, q);
    CHECK(rep.hypotheses_hold);
    REQUIRE(rep.cubic);
    for (const auto& p : pts) CHECK(rep.cubic->eval(p.coords()).is_zero());
    CHECK(!rep.cubic->eval(q.coords()).is_zero());

    // duplicate q is rejected
    CHECK_THROWS_AS(separating_divisor_on_quadric(quad, pts, pts[3]), field_error);
    // off-quadric points are rejected
    std::vector<FieldScalar> off{FieldScalar(f, 1), FieldScalar(f, 0), FieldScalar(f, 0),
                                 FieldScalar(f, 1)};
    CHECK_THROWS_AS(separating_divisor_on_quadric(quad, pts, ProjPoint(off)), field_error);
}

TEST_CASE("separating divisor flags degenerate hypotheses") {
    Field f = Field::gf(101);
    MultiPoly quad = parse_poly("x0*x3 - x1*x2", 4, f);
    // seven points on the conic cut by {x3 = 0}: (1 : t : 0 : 0)? those are on
    // the line x2 = x3 = 0; use the plane section x0 = 0 instead: (0 : t : 1 : ...)
    // points (0 : x1 : x2 : x3) on the quadric satisfy x1 x2 = 0
    // take the conic from the plane {x1 = 0}: points (x0 : 0 : x2 : x3), x0 x3 = 0
    // that section is reducible; use a honest conic: plane {x0 = x3} meets the
    // quadric in the conic x3^2 = x1 x2
    std::vector<ProjPoint> pts;
    for (long long t = 1; pts.size() < 7; ++t) {
        // (t^2 : q : 1 : t^2) hmm; parametrize x1 = s^2, x2 = 1, x3 = s, x0 = s
        std::vector<FieldScalar> v{FieldScalar(f, t), FieldScalar(f, t * t % 101),
                                   FieldScalar(f, 1), FieldScalar(f, t)};
        pts.emplace_back(std::move(v));
    }
    for (long long t : {3, 7, 19}) {
        std::vector<FieldScalar> v{FieldScalar(f, 1), FieldScalar(f, t), FieldScalar(f, 0),
                                   FieldScalar(f, 0)};
        pts.emplace_back(std::move(v)); // extra points on the quadric, off the conic
    }
    std::vector<FieldScalar> qv{FieldScalar(f, 1), FieldScalar(f, 55), FieldScalar(f, 0),
                                FieldScalar(f, 0)};
    ProjPoint q(qv);
    ProjPoint q2 = q;
    std::vector<ProjPoint> ten(pts.begin(), pts.begin() + 10);
    SeparatingDivisorReport rep = separating_divisor_on_quadric(quad, ten, q2);
    CHECK(rep.conic_with_7);
    CHECK(!rep.hypotheses_hold);
    // the search is still attempted and reported either way
    CHECK((rep.cubic.has_value() || !rep.note.empty()));
}
