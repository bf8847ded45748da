#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfac/poly.hpp"
#include "qfac/rng.hpp"

using namespace qfac;

namespace {

MultiPoly random_poly(const Field& f, std::size_t nvars, std::size_t d, Rng& rng,
                      std::size_t terms = 6) {
    auto mons = monomial_basis(nvars, d);
    MultiPoly g(f, nvars, (long)d);
    for (std::size_t i = 0; i < terms; ++i) {
        long long c = f.is_finite() ? (long long)rng.uniform(f.p()) : (long long)rng.uniform(19) - 9;
        g.add_term(mons[rng.uniform(mons.size())], FieldScalar(f, c));
    }
    return g;
}

std::vector<FieldScalar> random_point(const Field& f, std::size_t n, Rng& rng) {
    std::vector<FieldScalar> x;
    for (std::size_t i = 0; i < n; ++i) {
        long long c = f.is_finite() ? (long long)rng.uniform(f.p()) : (long long)rng.uniform(15) - 7;
        x.emplace_back(f, c);
    }
    return x;
}

} // namespace

TEST_CASE("parser basics") {
    Field q = Field::rationals();
    MultiPoly f = parse_poly("x0*x1 - x2^2", 5, q);
    CHECK(f.degree() == 2);
    CHECK(f.term_count() == 2);
    CHECK(parse_poly("x0^4", 5, q).degree() == 4);
    CHECK(parse_poly("(x0 + x1)^2 - x0^2 - 2*x0*x1", 3, q) == parse_poly("x1^2", 3, q));
    CHECK(parse_poly("1/2*x0 + 1/2*x0", 2, q) == parse_poly("x0", 2, q));
    CHECK(parse_poly("0", 4, q).is_zero());
}

TEST_CASE("parser rejects non-homogeneous input naming the term") {
    try {
        parse_poly("x0*x1 + x2", 5, Field::rationals());
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("x0*x1") != std::string::npos);
    }
}

TEST_CASE("parser reports positions") {
    try {
        parse_poly("x0 * ", 5, Field::rationals());
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse_poly("x9 + x0", 5, Field::rationals()), parse_error);
    CHECK_THROWS_AS(parse_poly("x0 ) x1", 5, Field::rationals()), parse_error);
}

TEST_CASE("parse and serialize round-trip on canonical form") {
    for (Field f : {Field::rationals(), Field::gf(11)}) {
        Rng rng(24);
        for (int iter = 0; iter < 40; ++iter) {
            MultiPoly g = random_poly(f, 4, 1 + rng.uniform(4), rng);
            if (g.is_zero()) continue;
            std::string s = g.to_string();
            MultiPoly back = parse_poly(s, 4, f);
            CHECK(back == g);
            CHECK(back.to_string() == s);
        }
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    Field f = Field::gf(101);
    Rng rng(17);
    for (int iter = 0; iter < 30; ++iter) {
        MultiPoly a = random_poly(f, 4, 3, rng);
        MultiPoly b = random_poly(f, 4, 3, rng);
        MultiPoly c = random_poly(f, 4, 2, rng);
        auto x = random_point(f, 4, rng);
        CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
        CHECK((a * c).eval(x) == a.eval(x) * c.eval(x));
    }
    MultiPoly xy = parse_poly("x0*x1", 5, f);
    std::vector<FieldScalar> pt{FieldScalar(f, 1), FieldScalar(f, 1), FieldScalar(f, 0),
                                FieldScalar(f, 0), FieldScalar(f, 0)};
    CHECK(xy.eval(pt).is_one());
    CHECK(xy.eval(std::vector<FieldScalar>(5, FieldScalar::zero(f))).is_zero());
}

TEST_CASE("gradient and the Euler identity") {
    Field q = Field::rationals();
    MultiPoly f = parse_poly("x0^2", 3, q);
    auto g = gradient(f);
    CHECK(g[0] == parse_poly("2*x0", 3, q));
    CHECK(g[1].is_zero());

    Rng rng(9);
    for (Field fld : {Field::rationals(), Field::gf(11)}) {
        for (std::size_t d : {2, 3, 4}) {
            MultiPoly h = random_poly(fld, 4, d, rng);
            // sum x_i d_i h == d * h
            MultiPoly acc(fld, 4, (long)d);
            for (std::size_t i = 0; i < 4; ++i)
                acc = acc + MultiPoly::variable(fld, 4, i) * h.partial(i);
            CHECK(acc == h.scaled(FieldScalar(fld, (long long)d)));
        }
    }
}

TEST_CASE("hessian at the standard cone point") {
    Field q = Field::rationals();
    MultiPoly f = parse_poly("x0*x1 + x2*x3", 5, q);
    std::vector<FieldScalar> e4(5, FieldScalar::zero(q));
    e4[4] = FieldScalar::one(q);
    ExactMatrix h = hessian_matrix(f, e4);
    CHECK(rank(h) == 4);
    // x lies in the kernel
    auto hx = h.apply(e4);
    for (const auto& v : hx) CHECK(v.is_zero());

    MultiPoly f2 = parse_poly("(x0*x1)^2", 5, q);
    CHECK(rank(hessian_matrix(f2, e4)) < 4);
}

TEST_CASE("hessian symmetry and the Euler relation for partials") {
    Field f = Field::gf(13);
    Rng rng(31);
    for (int iter = 0; iter < 20; ++iter) {
        MultiPoly g = random_poly(f, 5, 4, rng);
        auto x = random_point(f, 5, rng);
        ExactMatrix h = hessian_matrix(g, x);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) CHECK(h.at(i, j) == h.at(j, i));
        // H x = (deg - 1) grad(x)
        auto hx = h.apply(x);
        FieldScalar degm1(f, (long long)g.degree() - 1);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(hx[i] == g.partial(i).eval(x) * degm1);
    }
}

TEST_CASE("restriction to subspaces") {
    Field q = Field::rationals();
    // x4 restricted to the span of the first four axes vanishes
    std::vector<std::vector<FieldScalar>> cols;
    for (std::size_t j = 0; j < 4; ++j) {
        std::vector<FieldScalar> c(5, FieldScalar::zero(q));
        c[j] = FieldScalar::one(q);
        cols.push_back(c);
    }
    LinearSubspaceParam s = LinearSubspaceParam::from_columns(q, cols);
    CHECK(restrict_to_subspace(parse_poly("x4", 5, q), s).is_zero());
    MultiPoly g = restrict_to_subspace(parse_poly("x0^2 + x3*x4", 5, q), s);
    CHECK(g == parse_poly("x0^2", 4, q));

    // a line through e0: restriction of x0^2 is t0^2 up to scale
    std::vector<std::vector<FieldScalar>> line{{FieldScalar(q, 3), FieldScalar::zero(q),
                                                FieldScalar::zero(q), FieldScalar::zero(q),
                                                FieldScalar::zero(q)}};
    LinearSubspaceParam ls = LinearSubspaceParam::from_columns(q, line);
    MultiPoly r = restrict_to_subspace(parse_poly("x0^2", 5, q), ls);
    CHECK(r.proportional_to(parse_poly("x0^2", 1, q)));

    // rank-deficient parametrizations are rejected
    std::vector<std::vector<FieldScalar>> bad{cols[0], cols[0]};
    CHECK_THROWS_AS(LinearSubspaceParam::from_columns(q, bad), field_error);
}

TEST_CASE("restriction agrees with substitution and composes") {
    Field f = Field::gf(11);
    Rng rng(77);
    for (int iter = 0; iter < 15; ++iter) {
        MultiPoly g = random_poly(f, 5, 4, rng, 10);
        ExactMatrix m(f, 5, 3);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m.set(i, j, FieldScalar(f, (long long)rng.uniform(11)));
        if (rank(m) != 3) continue;
        LinearSubspaceParam s{m};
        MultiPoly r = restrict_to_subspace(g, s);
        for (int t = 0; t < 5; ++t) {
            auto pt = random_point(f, 3, rng);
            auto ambient = s.matrix.apply(pt);
            CHECK(r.eval(pt) == g.eval(ambient));
        }
        // linear in f
        MultiPoly g2 = random_poly(f, 5, 4, rng, 8);
        CHECK(restrict_to_subspace(g + g2, s) == r + restrict_to_subspace(g2, s));
        // functoriality under composition of parametrizations
        ExactMatrix m2(f, 3, 2);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                m2.set(i, j, FieldScalar(f, (long long)rng.uniform(11)));
        if (rank(m2) != 2) continue;
        MultiPoly twice = restrict_to_subspace(r, LinearSubspaceParam{m2});
        MultiPoly once = restrict_to_subspace(g, LinearSubspaceParam{m * m2});
        CHECK(twice == once);
    }
}

TEST_CASE("monomial bases") {
    CHECK(monomial_basis(5, 3).size() == 35);
    CHECK(monomial_basis(4, 3).size() == 20);
    auto b = monomial_basis(2, 1);
    REQUIRE(b.size() == 2);
    // ascending graded-lex: x1 before x0
    CHECK(b[0] == ExpVec{0, 1});
    CHECK(b[1] == ExpVec{1, 0});
    CHECK(binomial(7, 3) == 35);
    for (std::size_t n : {2, 3, 5})
        for (std::size_t d : {0, 1, 2, 4})
            CHECK(monomial_basis(n, d).size() == binomial(n + d - 1, d));
}
