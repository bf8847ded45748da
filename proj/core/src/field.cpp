#include "qfac/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qfac {

namespace {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; (std::uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// --- univariate arithmetic over Z/p, coefficient vectors low-to-high ---

using UPoly = std::vector<std::uint32_t>;

void utrim(UPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly umulmod(const UPoly& a, const UPoly& b, const UPoly& mod, std::uint32_t p) {
    UPoly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + (std::uint64_t)a[i] * b[j]) % p;
    }
    // mod is monic of degree d
    std::size_t d = mod.size() - 1;
    for (std::size_t i = prod.size(); i-- > d;) {
        std::uint32_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < d; ++j)
            prod[i - d + j] = (prod[i - d + j] + (std::uint64_t)(p - 1) * c % p * mod[j]) % p;
    }
    prod.resize(d);
    utrim(prod);
    return prod;
}

UPoly upowmod(UPoly base, std::uint64_t e, const UPoly& mod, std::uint32_t p) {
    UPoly result{1};
    while (e) {
        if (e & 1) result = umulmod(result, base, mod, p);
        base = umulmod(base, base, mod, p);
        e >>= 1;
    }
    return result;
}

UPoly ugcd(UPoly a, UPoly b, std::uint32_t p) {
    utrim(a); utrim(b);
    while (!b.empty()) {
        // a mod b with b made monic
        std::uint32_t lead_inv = 1;
        {
            std::uint32_t l = b.back(), t = 1, e = p - 2;
            std::uint32_t base = l;
            while (e) { if (e & 1) t = (std::uint64_t)t * base % p; base = (std::uint64_t)base * base % p; e >>= 1; }
            lead_inv = t;
        }
        UPoly r = a;
        while (r.size() >= b.size() && !r.empty()) {
            std::uint32_t c = (std::uint64_t)r.back() * lead_inv % p;
            if (c != 0) {
                std::size_t off = r.size() - b.size();
                for (std::size_t j = 0; j < b.size(); ++j)
                    r[off + j] = (r[off + j] + (std::uint64_t)(p - c) * b[j]) % p;
            }
            r.pop_back();
            utrim(r);
            if (r.size() < b.size()) break;
        }
        a = b;
        b = r;
    }
    return a;
}

std::vector<std::uint32_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back((std::uint32_t)d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back((std::uint32_t)n);
    return out;
}

// Rabin irreducibility test for monic f of degree k over Z/p.
bool is_irreducible(const UPoly& f, std::uint32_t p) {
    std::size_t k = f.size() - 1;
    UPoly x{0, 1};
    // x^(p^k) == x mod f
    UPoly xp = x;
    for (std::size_t i = 0; i < k; ++i) xp = upowmod(xp, p, f, p);
    UPoly diff = xp;
    // diff -= x
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    utrim(diff);
    if (!diff.empty()) return false;
    for (std::uint32_t ell : prime_factors_u64(k)) {
        UPoly xq = x;
        for (std::size_t i = 0; i < k / ell; ++i) xq = upowmod(xq, p, f, p);
        UPoly d = xq;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        utrim(d);
        UPoly g = ugcd(f, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace

GFContext::GFContext(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
    if (!is_prime_u32(p)) throw field_error("GF(p^k): p = " + std::to_string(p) + " is not prime");
    if (p == 2) throw field_error("GF(2^k) is unsupported (characteristic 2)");
    if (k < 1) throw field_error("GF(p^k): k must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxTableQ)
            throw budget_error("GF(p^k) table size exceeds cap", q);
    }
    q_ = (std::uint32_t)q;

    // lexicographically least monic irreducible of degree k
    // (ascending dense encoding of the non-leading coefficients)
    irred_.assign(k, 0);
    if (k == 1) {
        // x itself is fine as a formal modulus; elements are plain residues
    } else {
        bool found = false;
        for (std::uint32_t enc = 0; enc < q_ && !found; ++enc) {
            UPoly f(k + 1, 0);
            std::uint32_t e = enc;
            for (std::uint32_t i = 0; i < k; ++i) { f[i] = e % p; e /= p; }
            f[k] = 1;
            if (is_irreducible(f, p)) {
                for (std::uint32_t i = 0; i < k; ++i) irred_[i] = f[i];
                found = true;
            }
        }
        if (!found) throw internal_error("no irreducible polynomial found"); // unreachable
    }

    // slow encoded multiply used only while building tables
    auto decode = [&](std::uint32_t a) {
        UPoly v(k, 0);
        for (std::uint32_t i = 0; i < k; ++i) { v[i] = a % p; a /= p; }
        return v;
    };
    auto encode = [&](const UPoly& v) {
        std::uint32_t a = 0;
        for (std::uint32_t i = k; i-- > 0;) a = a * p + (i < v.size() ? v[i] : 0);
        return a;
    };
    UPoly modpoly(k + 1, 0);
    for (std::uint32_t i = 0; i < k; ++i) modpoly[i] = irred_[i];
    modpoly[k] = 1;
    auto mul_slow = [&](std::uint32_t a, std::uint32_t b) {
        return encode(umulmod(decode(a), decode(b), modpoly, p));
    };
    auto pow_slow = [&](std::uint32_t a, std::uint64_t e) {
        std::uint32_t r = 1;
        while (e) { if (e & 1) r = mul_slow(r, a); a = mul_slow(a, a); e >>= 1; }
        return r;
    };

    // least primitive element
    auto factors = prime_factors_u64(q_ - 1);
    std::uint32_t g = 0;
    for (std::uint32_t cand = 2; cand < q_; ++cand) {
        bool ok = true;
        for (std::uint32_t ell : factors)
            if (pow_slow(cand, (q_ - 1) / ell) == 1) { ok = false; break; }
        if (ok) { g = cand; break; }
    }
    if (g == 0) throw internal_error("no primitive element found"); // unreachable

    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, kLogZero);
    exp_[0] = 1;
    log_[1] = 0;
    for (std::uint32_t i = 1; i < q_ - 1; ++i) {
        exp_[i] = mul_slow(exp_[i - 1], g);
        log_[exp_[i]] = i;
    }
    for (std::uint32_t i = 0; i < q_ - 1; ++i) exp_[q_ - 1 + i] = exp_[i];

    zech_.assign(q_ - 1, kLogZero);
    for (std::uint32_t n = 0; n < q_ - 1; ++n) {
        std::uint32_t s = add(1, exp_[n]);
        zech_[n] = s == 0 ? kLogZero : log_[s];
    }
    minus_one_log_ = (q_ - 1) / 2;
}

std::uint32_t GFContext::add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        out += s * mult;
        mult *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

std::uint32_t GFContext::neg(std::uint32_t a) const {
    std::uint32_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t d = a % p_;
        out += (d == 0 ? 0 : p_ - d) * mult;
        mult *= p_;
        a /= p_;
    }
    return out;
}

std::uint32_t GFContext::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t GFContext::pow(std::uint32_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    std::uint64_t lg = (std::uint64_t)log_[a] * (e % (q_ - 1)) % (q_ - 1);
    return exp_[(std::uint32_t)lg];
}

std::optional<std::uint32_t> GFContext::sqrt(std::uint32_t a) const {
    if (a == 0) return 0u;
    std::uint32_t lg = log_[a];
    if (lg & 1u) return std::nullopt;
    return exp_[lg / 2];
}

std::uint32_t GFContext::from_int(long long v) const {
    long long r = v % (long long)p_;
    if (r < 0) r += p_;
    return (std::uint32_t)r;
}

std::string GFContext::describe() const {
    return k_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(k_);
}

Field Field::gf(std::uint32_t p, std::uint32_t k) {
    // immortal registry: contexts are built once and never destroyed, so a
    // raw pointer in Field stays valid for the whole program
    static std::mutex mtx;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<const GFContext>>*
        cache = new std::map<std::pair<std::uint32_t, std::uint32_t>,
                             std::unique_ptr<const GFContext>>();
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p, k);
    auto it = cache->find(key);
    if (it == cache->end())
        it = cache->emplace(key, std::make_unique<const GFContext>(p, k)).first;
    Field f;
    f.ctx_ = it->second.get();
    return f;
}

std::string Field::to_string() const {
    return ctx_ ? "GF(" + ctx_->describe() + ")" : "QQ";
}

FieldScalar::FieldScalar(const Field& f, long long v) : field_(f), v_(std::uint32_t(0)) {
    if (f.is_rationals()) {
        v_ = mpq_class((long)v);
    } else {
        v_ = f.ctx().from_int(v);
    }
}

FieldScalar FieldScalar::rational(mpq_class v) {
    FieldScalar s;
    v.canonicalize();
    s.v_ = std::move(v);
    return s;
}

FieldScalar FieldScalar::finite(const Field& f, std::uint32_t dense) {
    if (!f.is_finite()) throw field_error("finite() on rational field");
    if (dense >= f.q()) throw field_error("encoded value out of range");
    FieldScalar s;
    s.field_ = f;
    s.v_ = dense;
    return s;
}

bool FieldScalar::is_zero() const {
    return field_.is_rationals() ? std::get<mpq_class>(v_) == 0 : std::get<std::uint32_t>(v_) == 0;
}

bool FieldScalar::is_one() const {
    return field_.is_rationals() ? std::get<mpq_class>(v_) == 1 : std::get<std::uint32_t>(v_) == 1;
}

const mpq_class& FieldScalar::rat() const {
    if (!field_.is_rationals()) throw field_error("rat() on finite-field scalar");
    return std::get<mpq_class>(v_);
}

std::uint32_t FieldScalar::dense() const {
    if (!field_.is_finite()) throw field_error("dense() on rational scalar");
    return std::get<std::uint32_t>(v_);
}

void FieldScalar::check_same(const FieldScalar& o) const {
    if (field_ != o.field_)
        throw field_error("mixed-field arithmetic: " + field_.to_string() + " vs " + o.field_.to_string());
}

FieldScalar FieldScalar::operator+(const FieldScalar& o) const {
    check_same(o);
    if (field_.is_rationals()) return rational(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_));
    return finite(field_, field_.ctx().add(std::get<std::uint32_t>(v_), std::get<std::uint32_t>(o.v_)));
}

FieldScalar FieldScalar::operator-(const FieldScalar& o) const {
    check_same(o);
    if (field_.is_rationals()) return rational(std::get<mpq_class>(v_) - std::get<mpq_class>(o.v_));
    return finite(field_, field_.ctx().sub(std::get<std::uint32_t>(v_), std::get<std::uint32_t>(o.v_)));
}

FieldScalar FieldScalar::operator*(const FieldScalar& o) const {
    check_same(o);
    if (field_.is_rationals()) return rational(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_));
    return finite(field_, field_.ctx().mul(std::get<std::uint32_t>(v_), std::get<std::uint32_t>(o.v_)));
}

FieldScalar FieldScalar::operator/(const FieldScalar& o) const {
    check_same(o);
    if (o.is_zero()) throw field_error("division by zero");
    if (field_.is_rationals()) return rational(std::get<mpq_class>(v_) / std::get<mpq_class>(o.v_));
    return finite(field_, field_.ctx().mul(std::get<std::uint32_t>(v_), field_.ctx().inv(std::get<std::uint32_t>(o.v_))));
}

FieldScalar FieldScalar::operator-() const {
    if (field_.is_rationals()) return rational(-std::get<mpq_class>(v_));
    return finite(field_, field_.ctx().neg(std::get<std::uint32_t>(v_)));
}

bool FieldScalar::operator==(const FieldScalar& o) const {
    if (field_ != o.field_) return false;
    return field_.is_rationals() ? std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_) : std::get<std::uint32_t>(v_) == std::get<std::uint32_t>(o.v_);
}

bool FieldScalar::operator<(const FieldScalar& o) const {
    check_same(o);
    return field_.is_rationals() ? std::get<mpq_class>(v_) < std::get<mpq_class>(o.v_) : std::get<std::uint32_t>(v_) < std::get<std::uint32_t>(o.v_);
}

FieldScalar FieldScalar::inverse() const {
    if (is_zero()) throw field_error("inverse of zero");
    if (field_.is_rationals()) return rational(1 / std::get<mpq_class>(v_));
    return finite(field_, field_.ctx().inv(std::get<std::uint32_t>(v_)));
}

FieldScalar FieldScalar::pow(std::uint64_t e) const {
    if (field_.is_finite()) return finite(field_, field_.ctx().pow(std::get<std::uint32_t>(v_), e));
    mpq_class r(1);
    mpq_class b = std::get<mpq_class>(v_);
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return rational(r);
}

FieldScalar FieldScalar::frobenius() const {
    if (field_.is_rationals()) return *this;
    return finite(field_, field_.ctx().frobenius(std::get<std::uint32_t>(v_)));
}

std::string FieldScalar::to_string() const {
    if (field_.is_rationals()) return std::get<mpq_class>(v_).get_str();
    if (field_.k() == 1) return std::to_string(std::get<std::uint32_t>(v_));
    // digits of the canonical representative, low to high
    std::string s = "[";
    std::uint32_t a = std::get<std::uint32_t>(v_);
    for (std::uint32_t i = 0; i < field_.k(); ++i) {
        if (i) s += ",";
        s += std::to_string(a % field_.p());
        a /= field_.p();
    }
    return s + "]";
}

FieldScalar parse_scalar(const Field& f, const std::string& text) {
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(text);
            if (f.is_rationals()) return FieldScalar::rational(mpq_class(n));
            mpz_class r = n % f.p();
            if (r < 0) r += f.p();
            return FieldScalar(f, r.get_si());
        }
        mpz_class n(text.substr(0, slash)), d(text.substr(slash + 1));
        if (d == 0) throw field_error("zero denominator in scalar literal");
        if (f.is_rationals()) {
            mpq_class v(n, d);
            v.canonicalize();
            return FieldScalar::rational(v);
        }
        mpz_class rn = n % f.p(); if (rn < 0) rn += f.p();
        mpz_class rd = d % f.p(); if (rd < 0) rd += f.p();
        FieldScalar den(f, rd.get_si());
        if (den.is_zero()) throw field_error("denominator vanishes mod p");
        return FieldScalar(f, rn.get_si()) / den;
    } catch (const std::invalid_argument&) {
        throw field_error("invalid scalar literal: '" + text + "'");
    }
}

FieldEmbedding::FieldEmbedding(const Field& src, const Field& dst) : src_(src), dst_(dst) {
    if (!src.is_finite() || !dst.is_finite() || src.p() != dst.p() || dst.k() % src.k() != 0)
        throw field_error("no embedding " + src.to_string() + " -> " + dst.to_string());
    const GFContext& s = src.ctx();
    const GFContext& d = dst.ctx();
    if (src.k() == 1) {
        root_ = 0; // unused: prime field embeds as residues
        return;
    }
    if (src == dst) {
        root_ = src.p(); // the generator x itself: the identity map
        return;
    }
    // least root in dst of the src modulus
    for (std::uint32_t z = 0; z < d.q(); ++z) {
        std::uint32_t acc = 0;   // sum irred_i z^i + z^k
        std::uint32_t zp = 1;    // z^i
        for (std::uint32_t i = 0; i < s.k(); ++i) {
            acc = d.add(acc, d.mul(d.from_int(s.irreducible()[i]), zp));
            zp = d.mul(zp, z);
        }
        acc = d.add(acc, zp);
        if (acc == 0) { root_ = z; return; }
    }
    throw internal_error("embedding root not found"); // unreachable for k | m
}

std::uint32_t FieldEmbedding::map(std::uint32_t src_dense) const {
    const GFContext& s = src_.ctx();
    const GFContext& d = dst_.ctx();
    if (src_.k() == 1) return d.from_int((long long)src_dense);
    std::uint32_t acc = 0, zp = 1;
    std::uint32_t a = src_dense;
    for (std::uint32_t i = 0; i < s.k(); ++i) {
        acc = d.add(acc, d.mul(d.from_int(a % s.p()), zp));
        zp = d.mul(zp, root_);
        a /= s.p();
    }
    return acc;
}

FieldScalar FieldEmbedding::map(const FieldScalar& x) const {
    if (x.field() != src_) throw field_error("embedding applied to wrong field");
    return FieldScalar::finite(dst_, map(x.dense()));
}

} // namespace qfac
