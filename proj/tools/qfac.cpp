// qfac: Q-factoriality analysis of nodal quartic threefolds.
//
// Subcommands:
//   analyze   full pipeline: singular points, node certification, plane and
//             quadric containment, configuration report, defect, verdict
//   verdict   analyze, printing only the verdict block
//   generate  seeded Q Q' - L C instance with 12 certified nodes over GF(p^2)
//   audit     recompute the surface-theory tables (bese) or the involution
//             action arithmetic (lattice)
//
// Exit codes: 0 success, 1 input error, 2 budget/search failure,
// 3 internal inconsistency or reported finding.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qfac/piclattice.hpp"
#include "qfac/quartic.hpp"
#include "qfac/surfgeo.hpp"
#include "qfac/version.hpp"

using nlohmann::json;

namespace {

qfac::Field parse_field_spec(const std::string& spec) {
    if (spec == "rationals" || spec == "QQ") return qfac::Field::rationals();
    std::string s = spec;
    if (s.rfind("p=", 0) == 0) s = s.substr(2);
    std::size_t comma = s.find(",k=");
    if (comma == std::string::npos) {
        std::size_t caret = s.find('^');
        if (caret != std::string::npos)
            return qfac::Field::gf((std::uint32_t)std::stoul(s.substr(0, caret)),
                                   (std::uint32_t)std::stoul(s.substr(caret + 1)));
        return qfac::Field::gf((std::uint32_t)std::stoul(s));
    }
    return qfac::Field::gf((std::uint32_t)std::stoul(s.substr(0, comma)),
                           (std::uint32_t)std::stoul(s.substr(comma + 3)));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << std::endl;
    } else {
        std::ofstream out(out_path);
        if (!out) throw qfac::field_error("cannot open output file " + out_path);
        out << text << "\n";
    }
}

json bese_instance_json(unsigned r, long long a, long long b,
                        long long (*poly)(long long, long long), const std::string& poly_text) {
    qfac::RuledClass d{r, a, b};
    qfac::BeseInvariants inv = qfac::bese_invariants(r, d);
    qfac::ClassRange range = qfac::condition_iii_range(r, d);
    json inst;
    inst["r"] = r;
    inst["D"] = {a, b};
    inst["rho"] = inv.rho;
    inst["h"] = inv.h;
    inst["D2"] = inv.d2;
    inst["range"] = {{"xmax", range.xmax}, {"ymax", range.ymax}};
    inst["polynomial"] = poly_text;
    json table = json::array();
    bool all_match = true;
    for (long long x = 0; x <= range.xmax; ++x)
        for (long long y = 0; y <= range.ymax; ++y) {
            if (x == 0 && y == 0) continue;
            long long bound = qfac::condition_iii_bound(r, d, qfac::RuledClass{r, x, y});
            long long ref = poly(x, y);
            bool match = bound == ref;
            all_match = all_match && match;
            table.push_back(json{{"class", {x, y}}, {"bound", bound}, {"polynomial", ref},
                                 {"matches", match}});
        }
    inst["bound_table"] = table;
    inst["all_match"] = all_match;
    return inst;
}

int cmd_audit(const std::string& which, const std::string& gram_path,
              const std::string& out_path) {
    if (which == "bese") {
        json j;
        j["version"] = QFAC_VERSION;
        j["audit"] = "bese";
        j["field"] = "ZZ";
        j["instances"] = json::array();
        j["instances"].push_back(bese_instance_json(
            0, 3, 3, [](long long x, long long y) { return 5 * x + 5 * y - 2 * x * y - 2; },
            "5x+5y-2xy-2"));
        j["instances"].push_back(bese_instance_json(
            2, 3, 6,
            [](long long x, long long y) { return 2 * x * x + 5 * y - 2 * x * y - 2; },
            "2x^2+5y-2xy-2"));
        j["instances"].push_back(bese_instance_json(
            2, 2, 5,
            [](long long x, long long y) { return 2 * x * x + x + 4 * y - 2 * x * y - 2; },
            "2x^2+x+4y-2xy-2"));
        emit(j.dump(2), out_path);
        return 0;
    }
    if (which == "lattice") {
        qfac::GramTable printed = qfac::printed_gram();
        if (!gram_path.empty()) {
            std::ifstream in(gram_path);
            if (!in) throw qfac::field_error("cannot open gram file " + gram_path);
            json g = json::parse(in);
            printed = qfac::GramTable::from_entries(g.at("hh"), g.at("hf"), g.at("he"),
                                                    g.at("ff"), g.at("fe"), g.at("ee"));
        }
        json j = json::parse(qfac::lattice_audit_json(printed, qfac::printed_gram_h2_6()));
        j["version"] = QFAC_VERSION;
        j["audit"] = "lattice";
        j["field"] = "ZZ";
        emit(j.dump(2), out_path);
        return 0;
    }
    std::cerr << "audit: expected 'bese' or 'lattice'\n";
    return 1;
}

int cmd_generate(std::uint64_t seed, std::uint32_t p, const std::string& out_dir,
                 std::uint64_t budget) {
    qfac::GeneratedExample ex = qfac::generate_example(seed, p, budget);
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream f(out_dir + "/instance.txt");
        if (!f) throw qfac::field_error("cannot write " + out_dir + "/instance.txt");
        qfac::write_quartic_input(f, ex.input);
    }
    auto models = qfac::birational_models(ex.input);
    qfac::NodeOnYReport yrep = qfac::node_on_Y(ex.input);
    json j;
    j["version"] = QFAC_VERSION;
    j["seed"] = seed;
    j["p"] = p;
    j["field"] = "GF(" + std::to_string(p) + "^2)";
    j["attempts"] = ex.attempts;
    j["qprime_nonsingular"] = ex.qprime_nonsingular;
    j["all_transverse"] = ex.all_transverse;
    json nodes = json::array();
    for (const auto& r : ex.nodes) {
        json n;
        json coords = json::array();
        for (const auto& c : r.point.coords()) coords.push_back(c.to_string());
        n["point"] = coords;
        n["hessian_rank"] = r.hessian_rank;
        n["is_node"] = r.is_node;
        nodes.push_back(n);
    }
    j["nodes"] = nodes;
    j["model_y"] = {{"quadric", models.first.eq_quadric.to_string()},
                    {"cubic", models.first.eq_cubic.to_string()}};
    j["model_yprime"] = {{"quadric", models.second.eq_quadric.to_string()},
                         {"cubic", models.second.eq_cubic.to_string()}};
    j["node_on_y"] = {{"qprime_rank", yrep.qprime_rank},
                      {"qprime_restricted_rank", yrep.qprime_restricted_rank},
                      {"is_node", yrep.is_node}};
    {
        std::ofstream f(out_dir + "/report.json");
        if (!f) throw qfac::field_error("cannot write " + out_dir + "/report.json");
        f << j.dump(2) << "\n";
    }
    std::cout << "wrote " << out_dir << "/instance.txt and report.json ("
              << ex.nodes.size() << " nodes)\n";
    return 0;
}

int cmd_analyze(const std::string& input_path, const std::string& field_spec,
                const std::string& points_path, std::uint64_t budget,
                const std::string& out_path, bool verdict_only) {
    std::ifstream in(input_path);
    if (!in) throw qfac::field_error("cannot open input file " + input_path);
    std::stringstream buffer;
    buffer << in.rdbuf();

    std::stringstream base_stream(buffer.str());
    qfac::QuarticInput base = qfac::read_quartic_input(base_stream);
    std::optional<qfac::Field> override_field;
    if (!field_spec.empty()) {
        qfac::Field f = parse_field_spec(field_spec);
        if (f != base.field()) override_field = f;
    }
    std::stringstream main_stream(buffer.str());
    qfac::QuarticInput input =
        override_field ? qfac::read_quartic_input(main_stream, override_field) : std::move(base);

    if (!points_path.empty()) {
        std::ifstream pin(points_path);
        if (!pin) throw qfac::field_error("cannot open points file " + points_path);
        qfac::PointConfig pts = qfac::PointConfig::read(pin, 4);
        for (const auto& p : pts.points()) {
            if (p.field() == input.field()) {
                input.supplied_points.push_back(p);
            } else if (input.field().is_finite() && p.field().is_finite() &&
                       p.field().p() == input.field().p()) {
                qfac::FieldEmbedding emb(p.field(), input.field());
                std::vector<qfac::FieldScalar> c;
                for (const auto& x : p.coords()) c.push_back(emb.map(x));
                input.supplied_points.emplace_back(std::move(c));
            } else {
                throw qfac::field_error("points file field does not match the analysis field");
            }
        }
    }

    qfac::AnalyzeOptions opts;
    opts.budget = budget;
    std::optional<qfac::QuarticInput> search_base;
    if (override_field && input.field().is_finite()) {
        std::stringstream sstream(buffer.str());
        search_base = qfac::read_quartic_input(sstream);
        if (search_base->field().is_finite()) opts.search_input = &*search_base;
    }
    qfac::QuarticAnalysis an = qfac::analyze_quartic(input, opts);
    if (verdict_only) {
        json j = json::parse(an.verdict.to_json());
        j["version"] = QFAC_VERSION;
        emit(j.dump(2), out_path);
    } else {
        emit(an.to_json(), out_path);
    }
    return an.findings.empty() ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qfac: Q-factoriality toolkit for nodal quartic threefolds"};
    app.set_version_flag("--version", QFAC_VERSION);
    app.require_subcommand(1);

    std::string input_path, field_spec, points_path, out_path, gram_path, out_dir;
    std::uint64_t budget = 2000000000ull;
    std::uint64_t seed = 1;
    std::uint32_t p = 11;

    auto* analyze = app.add_subcommand("analyze", "analyze a quartic input file");
    analyze->add_option("--input", input_path, "quartic input file")->required();
    analyze->add_option("--field", field_spec, "field override, e.g. p=11,k=2");
    analyze->add_option("--points", points_path, "supplied singular points file");
    analyze->add_option("--budget", budget, "enumeration budget");
    analyze->add_option("--out", out_path, "output path (default stdout)");

    auto* verdict = app.add_subcommand("verdict", "verdict only");
    verdict->add_option("--input", input_path, "quartic input file")->required();
    verdict->add_option("--field", field_spec, "field override");
    verdict->add_option("--points", points_path, "supplied singular points file");
    verdict->add_option("--budget", budget, "enumeration budget");
    verdict->add_option("--out", out_path, "output path (default stdout)");

    auto* generate = app.add_subcommand("generate", "generate a 12-node family instance");
    generate->add_option("--seed", seed, "generator seed")->required();
    generate->add_option("--p", p, "odd prime field characteristic")->required();
    generate->add_option("--out", out_dir, "output directory")->required();
    generate->add_option("--budget", budget, "enumeration budget");

    auto* audit = app.add_subcommand("audit", "recompute the reference tables");
    std::string which;
    audit->add_option("which", which, "bese | lattice")->required();
    audit->add_option("--gram", gram_path, "custom Gram table JSON (lattice)");
    audit->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return cmd_analyze(input_path, field_spec, points_path, budget, out_path, false);
        if (*verdict) return cmd_analyze(input_path, field_spec, points_path, budget, out_path, true);
        if (*generate) return cmd_generate(seed, p, out_dir, budget);
        if (*audit) return cmd_audit(which, gram_path, out_path);
    } catch (const qfac::budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const qfac::internal_error& e) {
        std::cerr << "finding: " << e.what() << "\n";
        return 3;
    } catch (const qfac::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const qfac::field_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
