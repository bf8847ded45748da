#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfac/field.hpp"
#include "qfac/rng.hpp"

using namespace qfac;

TEST_CASE("rational scalars are normalized") {
    FieldScalar a = parse_scalar(Field::rationals(), "2/4");
    CHECK(a.rat() == mpq_class(1, 2));
    FieldScalar b = parse_scalar(Field::rationals(), "-6/4");
    CHECK(b.rat().get_den() == 2);
    CHECK(b.rat().get_num() == -3);
    CHECK((a + b).rat() == mpq_class(-1));
}

TEST_CASE("GF(p) basics") {
    Field f = Field::gf(11);
    FieldScalar three(f, 3), seven(f, 7);
    CHECK((three * seven).dense() == 10);
    CHECK((three + seven).dense() == 10);
    CHECK((three - seven).dense() == 7);
    CHECK(three.inverse().dense() == 4); // 3*4 = 12 = 1
    CHECK(parse_scalar(f, "3/4").dense() == 9); // 3 * 4^{-1} = 3*3
    CHECK_THROWS_AS(FieldScalar(f, 0).inverse(), field_error);
}

TEST_CASE("canonical irreducibles") {
    // x^2 + 1 over GF(11) (since -1 is a non-square), x^2 + 2 over GF(13)
    Field f11 = Field::gf(11, 2);
    CHECK(f11.ctx().irreducible() == std::vector<std::uint32_t>{1, 0});
    Field f13 = Field::gf(13, 2);
    CHECK(f13.ctx().irreducible() == std::vector<std::uint32_t>{2, 0});
    CHECK(f11.q() == 121);
    CHECK(f13.q() == 169);
}

TEST_CASE("GF(p^2) arithmetic against the modulus") {
    Field f = Field::gf(11, 2);
    // t has dense encoding 11; t^2 = -1 = 10
    FieldScalar t = FieldScalar::finite(f, 11);
    CHECK((t * t).dense() == 10);
    FieldScalar a = FieldScalar::finite(f, 5 + 11 * 3); // 5 + 3t
    FieldScalar b = FieldScalar::finite(f, 2 + 11 * 7); // 2 + 7t
    // (5+3t)(2+7t) = 10 + 41 t + 21 t^2 = (10 - 21) + 41 t = -11 + 41 t = 0 + 8t
    CHECK((a * b).dense() == 8 * 11);
    CHECK((a * a.inverse()).is_one());
}

TEST_CASE("Frobenius is a field automorphism") {
    for (auto [p, k] : {std::pair<unsigned, unsigned>{11, 2}, {13, 2}, {5, 3}}) {
        Field f = Field::gf(p, k);
        Rng rng(42);
        for (int i = 0; i < 50; ++i) {
            FieldScalar a = FieldScalar::finite(f, (std::uint32_t)rng.uniform(f.q()));
            FieldScalar b = FieldScalar::finite(f, (std::uint32_t)rng.uniform(f.q()));
            CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
            CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
            // p-th power map fixes the prime field
            FieldScalar c(f, (long long)rng.uniform(p));
            CHECK(c.frobenius() == c);
        }
    }
}

TEST_CASE("squares and square roots") {
    Field f = Field::gf(11);
    int squares = 0;
    for (std::uint32_t a = 0; a < 11; ++a) {
        FieldScalar x = FieldScalar::finite(f, a);
        auto s = f.ctx().sqrt(a);
        if (s) {
            ++squares;
            CHECK((FieldScalar::finite(f, *s) * FieldScalar::finite(f, *s)) == x);
        }
        CHECK(f.ctx().is_square(a) == s.has_value());
    }
    CHECK(squares == 6); // 0 and the five quadratic residues
}

TEST_CASE("mixed fields are rejected") {
    FieldScalar a(Field::gf(11), 1), b(Field::gf(13), 1), c(Field::rationals(), 1);
    CHECK_THROWS_AS(a + b, field_error);
    CHECK_THROWS_AS(a * c, field_error);
    CHECK(a != b);
}

TEST_CASE("characteristic 2 and table caps are rejected") {
    CHECK_THROWS_AS(Field::gf(2), field_error);
    CHECK_THROWS_AS(Field::gf(4), field_error); // not prime
    CHECK_THROWS_AS(Field::gf(101, 4), budget_error); // 101^4 over the cap
}

TEST_CASE("embeddings are field homomorphisms") {
    Field small = Field::gf(11, 2), big = Field::gf(11, 4);
    FieldEmbedding emb(small, big);
    Rng rng(7);
    for (int i = 0; i < 40; ++i) {
        FieldScalar a = FieldScalar::finite(small, (std::uint32_t)rng.uniform(small.q()));
        FieldScalar b = FieldScalar::finite(small, (std::uint32_t)rng.uniform(small.q()));
        CHECK(emb.map(a + b) == emb.map(a) + emb.map(b));
        CHECK(emb.map(a * b) == emb.map(a) * emb.map(b));
    }
    CHECK(emb.map(FieldScalar::one(small)).is_one());
    // identity embedding
    FieldEmbedding id(small, small);
    FieldScalar t = FieldScalar::finite(small, 11);
    CHECK(id.map(t) == t);
    CHECK_THROWS_AS(FieldEmbedding(Field::gf(11, 2), Field::gf(11, 3)), field_error);
}

TEST_CASE("log-form kernels agree with dense arithmetic") {
    Field f = Field::gf(13, 2);
    const GFContext& ctx = f.ctx();
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        std::uint32_t a = (std::uint32_t)rng.uniform(ctx.q());
        std::uint32_t b = (std::uint32_t)rng.uniform(ctx.q());
        CHECK(ctx.from_log(ctx.lmul(ctx.to_log(a), ctx.to_log(b))) == ctx.mul(a, b));
        CHECK(ctx.from_log(ctx.ladd(ctx.to_log(a), ctx.to_log(b))) == ctx.add(a, b));
        CHECK(ctx.from_log(ctx.lsub(ctx.to_log(a), ctx.to_log(b))) == ctx.sub(a, b));
    }
}
