#include "qfac/poly.hpp"

#include <algorithm>
#include <cctype>

namespace qfac {

bool GrlexLess::operator()(const ExpVec& a, const ExpVec& b) const {
    long da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return a.size() < b.size();
}

MultiPoly::MultiPoly(const Field& f, std::size_t nvars, long degree)
    : field_(f), nvars_(nvars), degree_(degree) {}

MultiPoly MultiPoly::monomial(const Field& f, ExpVec e, const FieldScalar& c) {
    long d = 0;
    for (auto x : e) d += x;
    MultiPoly p(f, e.size(), d);
    p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::variable(const Field& f, std::size_t nvars, std::size_t i) {
    ExpVec e(nvars, 0);
    e[i] = 1;
    return monomial(f, std::move(e), FieldScalar::one(f));
}

MultiPoly MultiPoly::constant(const Field& f, std::size_t nvars, const FieldScalar& c) {
    MultiPoly p(f, nvars, 0);
    p.add_term(ExpVec(nvars, 0), c);
    return p;
}

FieldScalar MultiPoly::coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? FieldScalar::zero(field_) : it->second;
}

void MultiPoly::add_term(const ExpVec& e, const FieldScalar& c) {
    if (e.size() != nvars_) throw field_error("exponent vector of wrong length");
    if (c.field() != field_) throw field_error("coefficient from a different field");
    if (c.is_zero()) return;
    long d = 0;
    for (auto x : e) d += x;
    if (terms_.empty()) degree_ = d;
    if (d != degree_) throw field_error("non-homogeneous term insertion");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw field_error("nvars mismatch in poly add");
    if (!is_zero() && !o.is_zero() && degree_ != o.degree_)
        throw field_error("degree mismatch in homogeneous add");
    MultiPoly r = *this;
    if (r.is_zero() && !o.is_zero()) r.degree_ = o.degree_;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(field_, nvars_, degree_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::scaled(const FieldScalar& c) const {
    MultiPoly r(field_, nvars_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw field_error("nvars mismatch in poly mul");
    MultiPoly r(field_, nvars_, degree_ + o.degree_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            ExpVec e(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = (std::uint16_t)(ea[i] + eb[i]);
            r.add_term(e, ca * cb);
        }
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (nvars_ != o.nvars_ || field_ != o.field_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second != jt->second) return false;
    return true;
}

FieldScalar MultiPoly::eval(const std::vector<FieldScalar>& x) const {
    if (x.size() != nvars_) throw field_error("dimension mismatch in poly eval");
    FieldScalar acc = FieldScalar::zero(field_);
    for (const auto& [e, c] : terms_) {
        FieldScalar t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (x[i].is_zero()) { t = FieldScalar::zero(field_); break; }
            t *= x[i].pow(e[i]);
        }
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::partial(std::size_t i) const {
    MultiPoly r(field_, nvars_, degree_ > 0 ? degree_ - 1 : 0);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        ExpVec d = e;
        d[i] -= 1;
        r.add_term(d, c * FieldScalar(field_, e[i]));
    }
    return r;
}

MultiPoly MultiPoly::extended(std::size_t new_nvars) const {
    if (new_nvars < nvars_) throw field_error("extended() cannot drop variables");
    MultiPoly r(field_, new_nvars, degree_);
    for (const auto& [e, c] : terms_) {
        ExpVec e2(new_nvars, 0);
        std::copy(e.begin(), e.end(), e2.begin());
        r.terms_.emplace(std::move(e2), c);
    }
    return r;
}

bool MultiPoly::proportional_to(const MultiPoly& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    if (terms_.size() != o.terms_.size() || nvars_ != o.nvars_) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    FieldScalar ratio = it->second / jt->second;
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (it->second != jt->second * ratio) return false;
    }
    return true;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t i) const {
    long maxe = 0;
    for (const auto& [e, c] : terms_) maxe = std::max<long>(maxe, e[i]);
    std::vector<MultiPoly> out;
    for (long d = 0; d <= maxe; ++d)
        out.emplace_back(field_, nvars_, degree_ - d);
    for (const auto& [e, c] : terms_) {
        ExpVec stripped = e;
        stripped[i] = 0;
        out[e[i]].add_term(stripped, c);
    }
    return out;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = c.to_string();
        bool neg = !cs.empty() && cs[0] == '-';
        if (out.empty()) {
            if (neg) { out += "-"; cs = cs.substr(1); }
        } else {
            out += neg ? " - " : " + ";
            if (neg) cs = cs.substr(1);
        }
        std::string vars;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += "x" + std::to_string(i);
            if (e[i] > 1) vars += "^" + std::to_string(e[i]);
        }
        if (vars.empty()) out += cs;
        else if (cs == "1") out += vars;
        else out += cs + "*" + vars;
    }
    return out;
}

std::vector<MultiPoly> gradient(const MultiPoly& f) {
    std::vector<MultiPoly> g;
    g.reserve(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) g.push_back(f.partial(i));
    return g;
}

ExactMatrix hessian_matrix(const MultiPoly& f, const std::vector<FieldScalar>& x) {
    if (x.size() != f.nvars()) throw field_error("dimension mismatch in hessian");
    std::size_t n = f.nvars();
    ExactMatrix h(f.field(), n, n);
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly fi = f.partial(i);
        for (std::size_t j = i; j < n; ++j) {
            FieldScalar v = fi.partial(j).eval(x);
            h.set(i, j, v);
            h.set(j, i, v);
        }
    }
    return h;
}

LinearSubspaceParam::LinearSubspaceParam(ExactMatrix m)
    : ambient_nvars(m.rows()), params(m.cols()), matrix(std::move(m)) {
    if (rank(matrix) != params)
        throw field_error("subspace parametrization is rank-deficient");
}

LinearSubspaceParam LinearSubspaceParam::from_columns(
    const Field& f, const std::vector<std::vector<FieldScalar>>& cols) {
    std::size_t n = cols.empty() ? 0 : cols.front().size();
    ExactMatrix m(f, n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != n) throw field_error("ragged columns");
        for (std::size_t i = 0; i < n; ++i) m.set(i, j, cols[j][i]);
    }
    return LinearSubspaceParam(std::move(m));
}

MultiPoly substitute_linear(const MultiPoly& f, const ExactMatrix& mat) {
    if (mat.rows() != f.nvars()) throw field_error("substitution matrix dimension mismatch");
    const Field& fld = f.field();
    std::size_t m = mat.cols();
    std::vector<MultiPoly> lin;
    lin.reserve(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        MultiPoly li(fld, m, 1);
        for (std::size_t j = 0; j < m; ++j) {
            ExpVec e(m, 0);
            e[j] = 1;
            li.add_term(e, mat.at(i, j));
        }
        lin.push_back(std::move(li));
    }
    std::vector<std::vector<MultiPoly>> pow_cache(f.nvars());
    auto power = [&](std::size_t i, std::uint16_t e) -> const MultiPoly& {
        auto& cache = pow_cache[i];
        if (cache.empty()) cache.push_back(MultiPoly::constant(fld, m, FieldScalar::one(fld)));
        while (cache.size() <= e) cache.push_back(cache.back() * lin[i]);
        return cache[e];
    };
    MultiPoly out(fld, m, f.degree());
    for (const auto& [e, c] : f.terms()) {
        MultiPoly t = MultiPoly::constant(fld, m, c);
        for (std::size_t i = 0; i < f.nvars(); ++i)
            if (e[i] > 0) t = t * power(i, e[i]);
        out = out + t;
    }
    return out;
}

MultiPoly restrict_to_subspace(const MultiPoly& f, const LinearSubspaceParam& s) {
    if (s.ambient_nvars != f.nvars()) throw field_error("ambient dimension mismatch");
    return substitute_linear(f, s.matrix);
}

MultiPoly embed_poly(const MultiPoly& f, const FieldEmbedding& emb) {
    MultiPoly out(emb.dst(), f.nvars(), f.degree());
    for (const auto& [e, c] : f.terms()) out.add_term(e, emb.map(c));
    return out;
}

MultiPoly drop_last_var(const MultiPoly& f) {
    if (f.nvars() == 0) throw field_error("cannot drop a variable from a 0-variable polynomial");
    MultiPoly out(f.field(), f.nvars() - 1, f.degree());
    for (const auto& [e, c] : f.terms()) {
        if (e.back() != 0) throw field_error("drop_last_var: variable still occurs");
        out.add_term(ExpVec(e.begin(), e.end() - 1), c);
    }
    return out;
}

std::vector<ExpVec> monomial_basis(std::size_t nvars, std::size_t d) {
    std::vector<ExpVec> out;
    if (nvars == 0) return out;
    ExpVec cur(nvars, 0);
    // emits in ascending graded-lex order by construction
    struct Rec {
        std::size_t nvars;
        std::vector<ExpVec>& out;
        ExpVec& cur;
        void go(std::size_t i, std::size_t rem) {
            if (i + 1 == nvars) {
                cur[i] = (std::uint16_t)rem;
                out.push_back(cur);
                cur[i] = 0;
                return;
            }
            for (std::size_t e = 0; e <= rem; ++e) {
                cur[i] = (std::uint16_t)e;
                go(i + 1, rem - e);
            }
            cur[i] = 0;
        }
    } rec{nvars, out, cur};
    rec.go(0, d);
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// ----------------------------- parser ---------------------------------

namespace {

// The parser works on raw term maps (no homogeneity constraint); the result
// is validated and packed into a MultiPoly at the end.
using RawPoly = std::map<ExpVec, FieldScalar, GrlexLess>;

struct Parser {
    const std::string& s;
    std::size_t pos;
    std::size_t nvars;
    Field field;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos); }

    static void accumulate(RawPoly& r, const ExpVec& e, const FieldScalar& c) {
        if (c.is_zero()) return;
        auto it = r.find(e);
        if (it == r.end()) r.emplace(e, c);
        else {
            it->second += c;
            if (it->second.is_zero()) r.erase(it);
        }
    }
    static RawPoly add(const RawPoly& a, const RawPoly& b) {
        RawPoly r = a;
        for (const auto& [e, c] : b) accumulate(r, e, c);
        return r;
    }
    static RawPoly negate(const RawPoly& a) {
        RawPoly r;
        for (const auto& [e, c] : a) r.emplace(e, -c);
        return r;
    }
    RawPoly mul(const RawPoly& a, const RawPoly& b) const {
        RawPoly r;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                ExpVec e(nvars);
                for (std::size_t i = 0; i < nvars; ++i) e[i] = (std::uint16_t)(ea[i] + eb[i]);
                accumulate(r, e, ca * cb);
            }
        return r;
    }
    RawPoly constant(const FieldScalar& c) const {
        RawPoly r;
        if (!c.is_zero()) r.emplace(ExpVec(nvars, 0), c);
        return r;
    }

    RawPoly parse_expr() {
        skip_ws();
        bool neg = eat('-');
        if (!neg) eat('+');
        RawPoly acc = parse_term();
        if (neg) acc = negate(acc);
        for (;;) {
            skip_ws();
            if (pos < s.size() && s[pos] == '+') { ++pos; acc = add(acc, parse_term()); }
            else if (pos < s.size() && s[pos] == '-') { ++pos; acc = add(acc, negate(parse_term())); }
            else break;
        }
        return acc;
    }

    RawPoly parse_term() {
        RawPoly acc = parse_factor();
        for (;;) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') { ++pos; acc = mul(acc, parse_factor()); }
            else break;
        }
        return acc;
    }

    RawPoly parse_factor() {
        RawPoly base = parse_base();
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            skip_ws();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == start) fail("expected exponent");
            unsigned long e = std::stoul(s.substr(start, pos - start));
            RawPoly r = constant(FieldScalar::one(field));
            for (unsigned long i = 0; i < e; ++i) r = mul(r, base);
            return r;
        }
        return base;
    }

    RawPoly parse_base() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            RawPoly e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == '-') {
            ++pos;
            return negate(parse_factor());
        }
        if (c == 'x') {
            ++pos;
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == start) fail("expected variable index after 'x'");
            unsigned long idx = std::stoul(s.substr(start, pos - start));
            if (idx >= nvars)
                fail("variable x" + std::to_string(idx) + " out of range (nvars = " +
                     std::to_string(nvars) + ")");
            ExpVec e(nvars, 0);
            e[idx] = 1;
            RawPoly r;
            r.emplace(std::move(e), FieldScalar::one(field));
            return r;
        }
        if (std::isdigit((unsigned char)c)) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            std::string num = s.substr(start, pos - start);
            std::size_t save = pos;
            skip_ws();
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                skip_ws();
                std::size_t dstart = pos;
                while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
                if (pos == dstart) {
                    pos = save;
                } else {
                    std::string den = s.substr(dstart, pos - dstart);
                    return constant(parse_scalar(field, num + "/" + den));
                }
            } else {
                pos = save;
            }
            return constant(parse_scalar(field, num));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

MultiPoly parse_poly(const std::string& text, std::size_t nvars, const Field& f) {
    Parser p{text, 0, nvars, f};
    RawPoly r = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw parse_error("trailing input after polynomial", p.pos);
    if (r.empty()) return MultiPoly(f, nvars, 0);
    long deg = -1;
    std::vector<std::string> offenders;
    for (const auto& [e, c] : r) {
        long d = 0;
        for (auto x : e) d += x;
        if (deg == -1) deg = d;
        if (d != deg) offenders.push_back(MultiPoly::monomial(f, e, c).to_string());
    }
    if (!offenders.empty()) {
        std::string msg = "polynomial is not homogeneous; offending terms:";
        for (const auto& o : offenders) msg += " " + o;
        throw parse_error(msg, 0);
    }
    MultiPoly out(f, nvars, deg);
    for (const auto& [e, c] : r) out.add_term(e, c);
    return out;
}

} // namespace qfac
