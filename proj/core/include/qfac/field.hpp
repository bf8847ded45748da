#ifndef QFAC_FIELD_HPP
#define QFAC_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "qfac/errors.hpp"

namespace qfac {

class Field;

// Table-driven GF(p^k), p an odd prime, q = p^k <= kMaxTableQ.
//
// Elements are encoded densely as sum c_i * p^i with c_i the coefficients of
// the canonical representative modulo the lexicographically least monic
// irreducible polynomial of degree k (coefficient tuples compared from the
// highest power down, i.e. ascending encoded value).
//
// Multiplication runs through discrete logs; addition is digitwise.  The
// log-form API (lmul/ladd on logs, Zech table) is what the exhaustive scan
// kernels use.
class GFContext {
public:
    static constexpr std::uint32_t kLogZero = 0xffffffffu; // log "of zero"
    static constexpr std::uint32_t kMaxTableQ = 1u << 21;

    GFContext(std::uint32_t p, std::uint32_t k);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }
    // Coefficients c0..c_{k-1} of the monic irreducible x^k + sum c_i x^i.
    const std::vector<std::uint32_t>& irreducible() const { return irred_; }

    // --- dense encoded arithmetic ---
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw field_error("division by zero in GF(" + describe() + ")");
        return exp_[q_ - 1 - log_[a]];
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t frobenius(std::uint32_t a) const { return pow(a, p_); }
    bool is_square(std::uint32_t a) const {
        return a == 0 || (log_[a] & 1u) == 0;
    }
    std::optional<std::uint32_t> sqrt(std::uint32_t a) const;
    std::uint32_t from_int(long long v) const;

    // --- log form (for scan kernels) ---
    std::uint32_t to_log(std::uint32_t dense) const { return dense == 0 ? kLogZero : log_[dense]; }
    std::uint32_t from_log(std::uint32_t lg) const { return lg == kLogZero ? 0 : exp_[lg]; }
    std::uint32_t lmul(std::uint32_t la, std::uint32_t lb) const {
        if (la == kLogZero || lb == kLogZero) return kLogZero;
        std::uint32_t s = la + lb;
        if (s >= q_ - 1) s -= q_ - 1;
        return s;
    }
    std::uint32_t linv(std::uint32_t la) const {
        if (la == kLogZero) throw field_error("division by zero");
        return la == 0 ? 0 : q_ - 1 - la;
    }
    std::uint32_t lneg(std::uint32_t la) const { return lmul(la, minus_one_log_); }
    std::uint32_t ladd(std::uint32_t la, std::uint32_t lb) const {
        if (la == kLogZero) return lb;
        if (lb == kLogZero) return la;
        std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
        std::uint32_t z = zech_[d];
        if (z == kLogZero) return kLogZero;
        std::uint32_t s = la + z;
        if (s >= q_ - 1) s -= q_ - 1;
        return s;
    }
    std::uint32_t lsub(std::uint32_t la, std::uint32_t lb) const { return ladd(la, lneg(lb)); }
    // log(sqrt(x)) when it exists
    std::optional<std::uint32_t> lsqrt(std::uint32_t la) const {
        if (la == kLogZero) return la;
        if (la & 1u) return std::nullopt;
        return la / 2;
    }
    std::uint32_t minus_one_log() const { return minus_one_log_; }

    std::string describe() const; // "11" or "11^2"

private:
    std::uint32_t p_, k_, q_;
    std::vector<std::uint32_t> irred_;
    std::vector<std::uint32_t> exp_;  // size 2(q-1): dense value of g^i
    std::vector<std::uint32_t> log_;  // size q: log of dense value; log_[0] unused
    std::vector<std::uint32_t> zech_; // size q-1: log(1 + g^n), kLogZero if zero
    std::uint32_t minus_one_log_;
};

// Field descriptor: the rationals, or a canonical GF(p^k).
// Contexts live in an immortal per-(p, k) registry, so Field is a trivially
// copyable pointer and comparison is pointer comparison.
class Field {
public:
    Field() = default; // rationals
    static Field rationals() { return Field(); }
    static Field gf(std::uint32_t p, std::uint32_t k = 1);

    bool is_rationals() const { return ctx_ == nullptr; }
    bool is_finite() const { return ctx_ != nullptr; }
    const GFContext& ctx() const {
        if (!ctx_) throw field_error("rational field has no GF context");
        return *ctx_;
    }
    std::uint32_t p() const { return ctx().p(); }
    std::uint32_t k() const { return ctx().k(); }
    std::uint32_t q() const { return ctx().q(); }
    std::uint32_t characteristic() const { return ctx_ ? ctx_->p() : 0; }

    bool operator==(const Field& o) const { return ctx_ == o.ctx_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string to_string() const; // "QQ", "GF(11)", "GF(11^2)"

private:
    const GFContext* ctx_ = nullptr;
};

// Exact scalar in a fixed field.  Arithmetic between scalars of different
// fields throws field_error.
class FieldScalar {
public:
    FieldScalar() : field_(), v_(mpq_class(0)) {} // rational zero
    FieldScalar(const Field& f, long long v);
    static FieldScalar rational(mpq_class v);
    static FieldScalar finite(const Field& f, std::uint32_t dense);
    static FieldScalar zero(const Field& f) { return FieldScalar(f, 0); }
    static FieldScalar one(const Field& f) { return FieldScalar(f, 1); }

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    // representation accessors
    const mpq_class& rat() const;
    std::uint32_t dense() const;

    FieldScalar operator+(const FieldScalar& o) const;
    FieldScalar operator-(const FieldScalar& o) const;
    FieldScalar operator*(const FieldScalar& o) const;
    FieldScalar operator/(const FieldScalar& o) const;
    FieldScalar operator-() const;
    FieldScalar& operator+=(const FieldScalar& o) { return *this = *this + o; }
    FieldScalar& operator-=(const FieldScalar& o) { return *this = *this - o; }
    FieldScalar& operator*=(const FieldScalar& o) { return *this = *this * o; }
    FieldScalar& operator/=(const FieldScalar& o) { return *this = *this / o; }
    bool operator==(const FieldScalar& o) const;
    bool operator!=(const FieldScalar& o) const { return !(*this == o); }
    // total order within one field (grlex over digit vectors / mpq compare);
    // used only for canonical point normalization and sorting
    bool operator<(const FieldScalar& o) const;

    FieldScalar inverse() const;
    FieldScalar pow(std::uint64_t e) const;
    FieldScalar frobenius() const; // x -> x^p; identity on QQ

    std::string to_string() const;

private:
    void check_same(const FieldScalar& o) const;
    Field field_;
    std::variant<mpq_class, std::uint32_t> v_;
};

// Parse "a" or "a/b" into a scalar of f (residues mod p for finite fields).
FieldScalar parse_scalar(const Field& f, const std::string& text);

// Embedding GF(p^k) -> GF(p^m) with k | m, sending the source generator to the
// least root of the source irreducible in the target.  Deterministic; cached.
class FieldEmbedding {
public:
    FieldEmbedding(const Field& src, const Field& dst);
    const Field& src() const { return src_; }
    const Field& dst() const { return dst_; }
    std::uint32_t map(std::uint32_t src_dense) const;
    FieldScalar map(const FieldScalar& x) const;

private:
    Field src_, dst_;
    std::uint32_t root_; // image of x (the source generator) in dst
};

} // namespace qfac

#endif
