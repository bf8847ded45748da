#include "qfac/defect.hpp"

#include <nlohmann/json.hpp>

namespace qfac {

EvaluationMatrix evaluation_matrix(const PointConfig& cfg, std::size_t d) {
    if (d < 1) throw field_error("evaluation matrix needs degree >= 1");
    std::vector<std::size_t> all(cfg.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return EvaluationMatrix{evaluation_matrix_rows(cfg, all, d), d, cfg.size()};
}

std::size_t defect_of_points(const PointConfig& cfg, std::size_t d) {
    if (cfg.size() == 0) return 0;
    return cfg.size() - rank(evaluation_matrix(cfg, d).matrix);
}

std::optional<MultiPoly> separating_form(const PointConfig& cfg, std::size_t i, std::size_t d) {
    if (i >= cfg.size()) throw field_error("separating_form: index out of range");
    const Field& f = cfg.field();
    auto mons = monomial_basis(cfg.ambient_dim() + 1, d);
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < cfg.size(); ++j)
        if (j != i) others.push_back(j);
    ExactMatrix ev = evaluation_matrix_rows(cfg, others, d);
    auto ker = kernel_basis(ev);
    const auto& x = cfg[i].coords();
    for (const auto& v : ker) {
        FieldScalar val = FieldScalar::zero(f);
        for (std::size_t j = 0; j < mons.size(); ++j) {
            if (v[j].is_zero()) continue;
            FieldScalar m = v[j];
            bool zero = false;
            for (std::size_t t = 0; t < x.size(); ++t) {
                if (mons[j][t] == 0) continue;
                if (x[t].is_zero()) { zero = true; break; }
                m *= x[t].pow(mons[j][t]);
            }
            if (!zero) val += m;
        }
        if (!val.is_zero()) {
            MultiPoly form(f, cfg.ambient_dim() + 1, (long)d);
            for (std::size_t j = 0; j < mons.size(); ++j) form.add_term(mons[j], v[j]);
            return form;
        }
    }
    return std::nullopt;
}

std::string to_string(TheoremPath p) {
    switch (p) {
        case TheoremPath::QFactorial: return "QFactorial";
        case TheoremPath::ExceptionCase: return "ExceptionCase";
        case TheoremPath::OutsideHypotheses: return "OutsideHypotheses";
    }
    return "?";
}

FactorialityVerdict factoriality_verdict(std::size_t s, bool contains_plane,
                                         bool contains_quadric, const PointConfig& node_config,
                                         std::size_t d) {
    if (s != node_config.size())
        throw field_error("verdict: s = " + std::to_string(s) + " but configuration has " +
                          std::to_string(node_config.size()) + " points");
    FactorialityVerdict v;
    v.s = s;
    v.field = node_config.field().to_string();
    if (s <= 8) {
        v.theorem_path = TheoremPath::QFactorial;
        v.citation = "Thm1.1-s<=8";
    } else if (contains_plane) {
        v.theorem_path = TheoremPath::OutsideHypotheses;
        v.citation = "contains-plane";
    } else if (s == 9) {
        v.theorem_path = TheoremPath::QFactorial;
        v.citation = "Thm1.1-s=9-noplane";
    } else if (s <= 11) {
        v.theorem_path = TheoremPath::QFactorial;
        v.citation = "Thm1.3-s<=11";
    } else if (s == 12) {
        if (!contains_quadric) {
            v.theorem_path = TheoremPath::QFactorial;
            v.citation = "Thm1.3-s=12-noquadric";
        } else {
            v.theorem_path = TheoremPath::ExceptionCase;
            v.citation = "Thm1.3-s=12-quadric";
        }
    } else {
        v.theorem_path = TheoremPath::OutsideHypotheses;
        v.citation = "s>12";
    }
    v.defect_value = defect_of_points(node_config, d);
    v.consistent = !(v.theorem_path == TheoremPath::QFactorial && v.defect_value != 0);
    if (v.theorem_path == TheoremPath::ExceptionCase)
        v.note = v.defect_value > 0
                     ? "defect evidence: the nodes fail to impose independent conditions"
                     : "exception case; defect 0 on this instance (Q-factorial despite the quadric)";
    if (!v.consistent)
        v.note = "FINDING: theorem path QFactorial but defect " + std::to_string(v.defect_value) +
                 " over " + v.field;
    return v;
}

std::string FactorialityVerdict::to_json() const {
    nlohmann::json j;
    j["s"] = s;
    j["theorem_path"] = qfac::to_string(theorem_path);
    j["citation"] = citation;
    j["defect"] = defect_value;
    j["field"] = field;
    j["consistent"] = consistent;
    j["witnesses"] = nlohmann::json::object();
    if (!note.empty()) j["note"] = note;
    return j.dump();
}

} // namespace qfac
