#include "qfac/projgeo.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "qfac/scan.hpp"

namespace qfac {

ProjPoint::ProjPoint(std::vector<FieldScalar> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw field_error("empty coordinate vector");
    std::size_t lead = coords_.size();
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) { lead = i; break; }
    if (lead == coords_.size()) throw field_error("projective point cannot be zero");
    FieldScalar inv = coords_[lead].inverse();
    for (auto& c : coords_) c *= inv;
}

bool ProjPoint::operator<(const ProjPoint& o) const {
    for (std::size_t i = 0; i < coords_.size() && i < o.coords_.size(); ++i) {
        if (coords_[i] == o.coords_[i]) continue;
        return coords_[i] < o.coords_[i];
    }
    return coords_.size() < o.coords_.size();
}

std::string ProjPoint::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ":";
        s += coords_[i].to_string();
    }
    return s + ")";
}

PointConfig::PointConfig(const Field& f, std::size_t ambient_dim, std::vector<ProjPoint> points)
    : field_(f), n_(ambient_dim), points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].coords().size() != n_ + 1)
            throw field_error("point with wrong coordinate count");
        if (points_[i].field() != field_)
            throw field_error("point from a different field");
        for (std::size_t j = 0; j < i; ++j)
            if (points_[i] == points_[j])
                throw field_error("duplicate points in configuration (indices " +
                                  std::to_string(j) + ", " + std::to_string(i) + ")");
    }
}

PointConfig PointConfig::read(std::istream& in, std::size_t ambient_dim) {
    Field f = Field::rationals();
    std::vector<ProjPoint> pts;
    std::string line;
    bool field_seen = false;
    while (std::getline(in, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        if (line.rfind("field", 0) == 0) {
            if (field_seen) throw field_error("duplicate field header in point file");
            field_seen = true;
            std::string rest = line.substr(5);
            rest.erase(std::remove_if(rest.begin(), rest.end(), ::isspace), rest.end());
            if (rest == "rationals" || rest == "QQ") {
                f = Field::rationals();
            } else if (rest.rfind("p=", 0) == 0) {
                std::size_t used = 0;
                unsigned long p = std::stoul(rest.substr(2), &used);
                if (used != rest.size() - 2)
                    throw field_error("point files support prime fields only: '" + line + "'");
                f = Field::gf((std::uint32_t)p);
            } else {
                throw field_error("bad field header: '" + line + "'");
            }
            continue;
        }
        std::vector<FieldScalar> coords;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
            if (tok.empty()) throw field_error("empty coordinate in point file");
            coords.push_back(parse_scalar(f, tok));
        }
        if (coords.size() != ambient_dim + 1)
            throw field_error("expected " + std::to_string(ambient_dim + 1) +
                              " coordinates, got " + std::to_string(coords.size()));
        pts.emplace_back(std::move(coords));
    }
    return PointConfig(f, ambient_dim, std::move(pts));
}

void PointConfig::write(std::ostream& out) const {
    if (field_.is_finite()) out << "field p=" << field_.p() << "\n";
    for (const auto& p : points_) {
        const auto& c = p.coords();
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) out << ",";
            out << c[i].to_string();
        }
        out << "\n";
    }
}

ExactMatrix coordinate_matrix(const PointConfig& cfg, const std::vector<std::size_t>& subset) {
    ExactMatrix m(cfg.field(), subset.size(), cfg.ambient_dim() + 1);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        const auto& c = cfg[subset[i]].coords();
        for (std::size_t j = 0; j < c.size(); ++j) m.set(i, j, c[j]);
    }
    return m;
}

int span_dim(const PointConfig& cfg, const std::vector<std::size_t>& subset) {
    if (subset.empty()) throw field_error("span of an empty subset");
    return (int)rank(coordinate_matrix(cfg, subset)) - 1;
}

namespace {

std::vector<std::size_t> all_indices(const PointConfig& cfg) {
    std::vector<std::size_t> v(cfg.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

// membership of a row vector in the row space described by an RREF
bool in_row_space(const RrefResult& rr, const std::vector<FieldScalar>& v) {
    std::vector<FieldScalar> w = v;
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i) {
        const FieldScalar& c = w[rr.pivot_cols[i]];
        if (c.is_zero()) continue;
        FieldScalar f = c;
        for (std::size_t j = 0; j < w.size(); ++j)
            w[j] -= f * rr.rref.at(i, j);
    }
    for (const auto& x : w)
        if (!x.is_zero()) return false;
    return true;
}

// lexicographically ordered subsets of {0..n-1} of given size
template <typename F>
void for_each_subset(std::size_t n, std::size_t size, F&& fn) {
    if (size > n) return;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
        if (!fn(idx)) return;
        std::size_t i = size;
        while (i-- > 0) {
            if (idx[i] + (size - i) < n + 0) {
                ++idx[i];
                for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

} // namespace

SubspaceMax max_in_subspace(const PointConfig& cfg, std::size_t k) {
    if (k < 1 || k + 1 > cfg.ambient_dim())
        throw field_error("max_in_subspace: k out of range");
    SubspaceMax best;
    std::size_t s = cfg.size();
    if (s == 0) return best;
    if (s <= k + 1) {
        best.count = s;
        best.witness = all_indices(cfg);
        return best;
    }
    for_each_subset(s, k + 1, [&](const std::vector<std::size_t>& sub) {
        RrefResult rr = rref(coordinate_matrix(cfg, sub));
        if (rr.pivot_cols.size() > k + 1) return true; // cannot happen; k+1 rows
        std::vector<std::size_t> inside;
        for (std::size_t i = 0; i < s; ++i)
            if (in_row_space(rr, cfg[i].coords())) inside.push_back(i);
        if (inside.size() > best.count) {
            best.count = inside.size();
            best.witness = inside;
            if (best.count == s) return false; // maximal possible
        }
        return true;
    });
    return best;
}

EisenbudKohResult eisenbud_koh_check(const PointConfig& cfg, std::size_t d) {
    EisenbudKohResult out;
    for (std::size_t k = 1; k + 1 <= cfg.ambient_dim(); ++k) {
        SubspaceMax m = max_in_subspace(cfg, k);
        if (m.count > d * k + 1) {
            out.pass = false;
            out.k = k;
            out.bound = d * k + 1;
            out.witness = m.witness;
            return out;
        }
    }
    return out;
}

ExactMatrix evaluation_matrix_rows(const PointConfig& cfg, const std::vector<std::size_t>& subset,
                                   std::size_t d) {
    auto basis = monomial_basis(cfg.ambient_dim() + 1, d);
    ExactMatrix m(cfg.field(), subset.size(), basis.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
        const auto& x = cfg[subset[i]].coords();
        for (std::size_t j = 0; j < basis.size(); ++j) {
            FieldScalar v = FieldScalar::one(cfg.field());
            for (std::size_t t = 0; t < x.size(); ++t) {
                if (basis[j][t] == 0) continue;
                if (x[t].is_zero()) { v = FieldScalar::zero(cfg.field()); break; }
                v *= x[t].pow(basis[j][t]);
            }
            m.set(i, j, v);
        }
    }
    return m;
}

std::size_t vanishing_system_dim(const PointConfig& cfg, const std::vector<std::size_t>& subset,
                                 std::size_t d) {
    std::size_t nmon = monomial_basis(cfg.ambient_dim() + 1, d).size();
    if (subset.empty()) return nmon;
    return nmon - rank(evaluation_matrix_rows(cfg, subset, d));
}

LinearSubspaceParam containing_p3(const PointConfig& cfg) {
    const Field& f = cfg.field();
    std::size_t n1 = cfg.ambient_dim() + 1;
    RrefResult rr = rref(coordinate_matrix(cfg, all_indices(cfg)));
    std::vector<std::vector<FieldScalar>> cols;
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
        cols.push_back(rr.rref.row(i));
    // pad with standard basis vectors keeping full rank, ascending index
    for (std::size_t e = 0; e < n1 && cols.size() < 4; ++e) {
        std::vector<FieldScalar> cand(n1, FieldScalar::zero(f));
        cand[e] = FieldScalar::one(f);
        std::vector<std::vector<FieldScalar>> trial = cols;
        trial.push_back(cand);
        ExactMatrix m(f, trial.size(), n1);
        for (std::size_t i = 0; i < trial.size(); ++i)
            for (std::size_t j = 0; j < n1; ++j) m.set(i, j, trial[i][j]);
        if (rank(m) == trial.size()) cols.push_back(cand);
    }
    if (cols.size() != 4) throw field_error("points do not fit in a P^3");
    // columns of the parametrization are the basis rows
    ExactMatrix param(f, n1, 4);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < n1; ++i) param.set(i, j, cols[j][i]);
    return LinearSubspaceParam(std::move(param));
}

PointConfig restrict_config(const PointConfig& cfg, const LinearSubspaceParam& s) {
    std::vector<ProjPoint> pts;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        auto sol = solve_linear(s.matrix, cfg[i].coords());
        if (!sol) throw field_error("point outside the parametrized subspace");
        pts.emplace_back(std::move(*sol));
    }
    return PointConfig(cfg.field(), s.params - 1, std::move(pts));
}

QuadricSystemVerdict pencil_of_quadrics_test(const PointConfig& cfg) {
    if (cfg.size() == 0) throw field_error("empty configuration");
    if (span_dim(cfg, all_indices(cfg)) > 3) return QuadricSystemVerdict::NoCommonP3;
    PointConfig inside = restrict_config(cfg, containing_p3(cfg));
    std::size_t dim = vanishing_system_dim(inside, all_indices(inside), 2);
    if (dim == 0) return QuadricSystemVerdict::NoQuadric;
    if (dim == 1) return QuadricSystemVerdict::UniqueQuadric;
    return QuadricSystemVerdict::Pencil;
}

std::string to_string(QuadricSystemVerdict v) {
    switch (v) {
        case QuadricSystemVerdict::NoCommonP3: return "no common P3";
        case QuadricSystemVerdict::NoQuadric: return "no quadric";
        case QuadricSystemVerdict::UniqueQuadric: return "unique quadric";
        case QuadricSystemVerdict::Pencil: return "pencil";
    }
    return "?";
}

std::string to_string(TriBool v) {
    switch (v) {
        case TriBool::Yes: return "yes";
        case TriBool::No: return "no";
        case TriBool::Indeterminate: return "indeterminate";
    }
    return "?";
}

TwistedCubicResult twisted_cubic_test(const PointConfig& cfg,
                                      const std::vector<std::size_t>& subset,
                                      std::uint64_t budget) {
    TwistedCubicResult out;
    if (subset.empty()) {
        out.verdict = TriBool::No;
        out.reason = "empty subset";
        return out;
    }
    if (span_dim(cfg, subset) > 3) {
        out.verdict = TriBool::No;
        out.reason = "subset spans more than a P^3";
        return out;
    }
    // work inside a P^3 containing the subset
    std::vector<ProjPoint> pts;
    for (auto i : subset) pts.push_back(cfg[i]);
    PointConfig sub(cfg.field(), cfg.ambient_dim(), std::move(pts));
    PointConfig inside = restrict_config(sub, containing_p3(sub));

    auto basis4 = monomial_basis(4, 2);
    ExactMatrix ev = evaluation_matrix_rows(inside, all_indices(inside), 2);
    // a quadric through the points is a coefficient vector in the kernel of ev
    auto ker = kernel_basis(ev);
    out.quadric_system_dim = ker.size();
    if (ker.size() < 3) {
        out.verdict = TriBool::No;
        out.reason = "quadric system dimension " + std::to_string(ker.size()) + " < 3";
        return out;
    }
    if (cfg.field().is_rationals()) {
        out.verdict = TriBool::Indeterminate;
        out.reason = "base-locus enumeration unavailable over QQ";
        return out;
    }
    const Field& f = cfg.field();
    // the quadrics as polynomials in 4 variables
    std::vector<MultiPoly> quads;
    for (const auto& v : ker) {
        MultiPoly g(f, 4, 2);
        for (std::size_t j = 0; j < basis4.size(); ++j) g.add_term(basis4[j], v[j]);
        quads.push_back(std::move(g));
    }
    auto locus_size = [&](const Field& ext) -> std::optional<std::uint64_t> {
        std::vector<scan::FPoly> sys;
        if (ext == f) {
            for (const auto& g : quads) sys.push_back(scan::FPoly::from(g));
        } else {
            FieldEmbedding emb(f, ext);
            for (const auto& g : quads) sys.push_back(scan::FPoly::embedded(g, emb));
        }
        std::vector<scan::FPoly> extras(sys.begin() + 1, sys.end());
        try {
            auto pts2 = scan::p3_quadric_scan(ext.ctx(), sys.front(), extras, budget);
            return (std::uint64_t)pts2.size();
        } catch (const budget_error&) {
            return std::nullopt;
        }
    };
    auto n1 = locus_size(f);
    Field ext = Field::rationals();
    try {
        ext = Field::gf(f.p(), 2 * f.k());
    } catch (const budget_error&) {
        out.verdict = TriBool::Indeterminate;
        out.reason = "quadratic extension exceeds table budget";
        return out;
    }
    auto n2 = locus_size(ext);
    if (!n1 || !n2) {
        out.verdict = TriBool::Indeterminate;
        out.reason = "base-locus enumeration exceeds budget";
        return out;
    }
    std::uint64_t q = f.q();
    std::uint64_t q2 = (std::uint64_t)ext.q();
    if (*n2 >= q2 / 2) {
        // curve-like locus; it contains all subset points by construction
        out.verdict = TriBool::Yes;
        out.reason = "net base locus has " + std::to_string(*n2) + " points over GF(" +
                     ext.ctx().describe() + ")";
        return out;
    }
    if (*n2 <= std::max<std::uint64_t>(2 * q, 24)) {
        out.verdict = TriBool::No;
        out.reason = "net base locus is finite (" + std::to_string(*n2) + " points over GF(" +
                     ext.ctx().describe() + "))";
        return out;
    }
    out.verdict = TriBool::Indeterminate;
    out.reason = "ambiguous base locus size " + std::to_string(*n2);
    return out;
}

LemmaSixReport lemma_six_points_report(const PointConfig& cfg, std::uint64_t budget) {
    LemmaSixReport rep;
    std::size_t s = cfg.size();
    if (cfg.ambient_dim() < 2) throw field_error("lemma report needs ambient dimension >= 2");
    if (s == 0) return rep;

    SubspaceMax lines = max_in_subspace(cfg, 1);
    if (lines.count >= 4) {
        rep.line_with_4 = true;
        rep.line_witness = lines.witness;
    }
    if (cfg.ambient_dim() >= 3) {
        SubspaceMax planes = max_in_subspace(cfg, 2);
        if (planes.count >= 7) {
            rep.plane_with_7 = true;
            rep.plane_witness = planes.witness;
        }
    }

    // maximal coplanar groups with >= 6 points
    std::vector<std::vector<std::size_t>> groups;
    for_each_subset(s, std::min<std::size_t>(3, s), [&](const std::vector<std::size_t>& sub) {
        RrefResult rr = rref(coordinate_matrix(cfg, sub));
        if (rr.pivot_cols.size() > 3) return true; // spans more than a plane
        std::vector<std::size_t> inside;
        for (std::size_t i = 0; i < s; ++i)
            if (in_row_space(rr, cfg[i].coords())) inside.push_back(i);
        if (inside.size() >= 6 &&
            std::find(groups.begin(), groups.end(), inside) == groups.end())
            groups.push_back(inside);
        return true;
    });
    rep.coplanar_six = groups;

    // twisted cubic through 10 of the points
    rep.twisted_cubic_with_10 = TriBool::No;
    if (s >= 10) {
        bool indeterminate = false;
        std::string ireason;
        for_each_subset(s, 10, [&](const std::vector<std::size_t>& sub) {
            if (span_dim(cfg, sub) != 3) return true;
            TwistedCubicResult r = twisted_cubic_test(cfg, sub, budget);
            if (r.verdict == TriBool::Yes) {
                rep.twisted_cubic_with_10 = TriBool::Yes;
                rep.twisted_cubic_witness = sub;
                rep.twisted_cubic_reason = r.reason;
                return false;
            }
            if (r.verdict == TriBool::Indeterminate) {
                indeterminate = true;
                ireason = r.reason;
            }
            return true;
        });
        if (rep.twisted_cubic_with_10 != TriBool::Yes && indeterminate) {
            rep.twisted_cubic_with_10 = TriBool::Indeterminate;
            rep.twisted_cubic_reason = ireason;
        }
    }
    return rep;
}

} // namespace qfac
