#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "qfac/quartic.hpp"
#include "qfac/rng.hpp"
#include "qfac/scan.hpp"

using namespace qfac;

namespace {

ProjPoint pt(const Field& f, std::initializer_list<long long> coords) {
    std::vector<FieldScalar> v;
    for (auto c : coords) v.emplace_back(f, c);
    return ProjPoint(std::move(v));
}

MultiPoly random_form(const Field& f, std::size_t nvars, std::size_t d, Rng& rng) {
    auto mons = monomial_basis(nvars, d);
    MultiPoly g(f, nvars, (long)d);
    for (const auto& e : mons) g.add_term(e, FieldScalar(f, (long long)rng.uniform(f.p())));
    return g;
}

} // namespace

TEST_CASE("build_qqlc and the decomposition identity") {
    Field f = Field::gf(11);
    Rng rng(3);
    MultiPoly q = random_form(f, 5, 2, rng), qp = random_form(f, 5, 2, rng),
              l = random_form(f, 5, 1, rng), c = random_form(f, 5, 3, rng);
    REQUIRE(!l.is_zero());
    QuarticInput in = build_qqlc(q, qp, l, c);
    CHECK(in.F.degree() == 4);
    for (int i = 0; i < 20; ++i) {
        std::vector<FieldScalar> x;
        for (int j = 0; j < 5; ++j) x.emplace_back(f, (long long)rng.uniform(11));
        CHECK(in.F.eval(x) ==
              q.eval(x) * qp.eval(x) - l.eval(x) * c.eval(x));
    }
    CHECK(!in.degenerate_decomposition);
    // Q = L^2 is accepted but flagged
    QuarticInput degen = build_qqlc((l * l).scaled(FieldScalar(f, 3)), qp, l, c);
    CHECK(degen.degenerate_decomposition);
    CHECK_THROWS_AS(build_qqlc(q, qp, l, q), field_error); // degree mismatch
}

TEST_CASE("certify_node on reference fixtures") {
    Field q = Field::rationals();
    MultiPoly cone = parse_poly("x0*x1 + x2*x3", 5, q);
    NodeRecord rec = certify_node(cone, pt(q, {0, 0, 0, 0, 1}));
    CHECK(rec.gradient_zero);
    CHECK(rec.hessian_rank == 4);
    CHECK(rec.is_node);

    NodeRecord smooth = certify_node(cone, pt(q, {1, 0, 0, 0, 0}));
    CHECK(!smooth.gradient_zero);
    CHECK(!smooth.is_node);

    MultiPoly sq = parse_poly("(x0*x1 - x2*x3)^2", 5, q);
    NodeRecord degen = certify_node(sq, pt(q, {0, 0, 0, 0, 1}));
    CHECK(degen.gradient_zero);
    CHECK(degen.hessian_rank < 4);
    CHECK(!degen.is_node);

    CHECK_THROWS_AS(certify_node(parse_poly("x0^4", 5, Field::gf(3)), pt(Field::gf(3), {0, 1, 0, 0, 0})),
                    field_error);
}

TEST_CASE("singular point enumeration") {
    Field f = Field::gf(11);
    // the squared quadric is singular along a surface; every point fails the
    // Hessian rank test
    MultiPoly sq = parse_poly("(x0*x1 - x2*x3)^2", 5, f);
    auto records = singular_points_enumerate(sq);
    CHECK(records.size() > 100);
    for (const auto& r : records) {
        CHECK(r.gradient_zero);
        CHECK(!r.is_node);
    }
    // deterministic and ascending
    auto again = singular_points_enumerate(sq);
    REQUIRE(again.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) CHECK(again[i].point == records[i].point);
    for (std::size_t i = 1; i < records.size(); ++i) CHECK(records[i - 1].point < records[i].point);

    // a seeded quartic with no GF(11)-rational singular points
    Rng rng(17);
    MultiPoly smooth = random_form(f, 5, 4, rng);
    CHECK(singular_points_enumerate(smooth).empty());

    CHECK_THROWS_AS(singular_points_enumerate(parse_poly("x0^4", 5, f), 10), budget_error);
}

TEST_CASE("singular scan agrees with brute force over GF(5)") {
    Field f = Field::gf(5);
    Rng rng(42);
    for (int iter = 0; iter < 6; ++iter) {
        // mix generic quartics with ones built to be singular
        MultiPoly g = iter % 2 ? random_form(f, 5, 2, rng) * random_form(f, 5, 2, rng)
                               : random_form(f, 5, 4, rng);
        if (g.is_zero() || g.degree() != 4) continue;
        auto grads = gradient(g);
        // brute force over all 781 points of P^4(GF(5))
        std::vector<std::vector<FieldScalar>> expected;
        for (std::size_t chart = 0; chart < 5; ++chart) {
            std::uint64_t combos = 1;
            for (std::size_t i = chart + 1; i < 5; ++i) combos *= 5;
            for (std::uint64_t idx = 0; idx < combos; ++idx) {
                std::vector<FieldScalar> x(5, FieldScalar::zero(f));
                x[chart] = FieldScalar::one(f);
                std::uint64_t rem = idx;
                for (std::size_t i = 5; i-- > chart + 1;) {
                    x[i] = FieldScalar(f, (long long)(rem % 5));
                    rem /= 5;
                }
                bool sing = true;
                for (const auto& d : grads) sing = sing && d.eval(x).is_zero();
                if (sing) expected.push_back(x);
            }
        }
        auto records = singular_points_enumerate(g);
        REQUIRE(records.size() == expected.size());
        for (const auto& r : records) {
            bool found = false;
            for (const auto& x : expected) found = found || r.point.coords() == x;
            CHECK(found);
        }
    }
}

TEST_CASE("contains_plane") {
    Field f = Field::gf(11);
    Rng rng(5);
    // F in the ideal (x0, x1) contains the plane {x0 = x1 = 0}
    MultiPoly F = parse_poly("x0", 5, f) * random_form(f, 5, 3, rng) +
                  parse_poly("x1", 5, f) * random_form(f, 5, 3, rng);
    PlaneSearch ps = contains_plane(F);
    CHECK(ps.verdict == SearchVerdict::Yes);
    REQUIRE(ps.witness);
    CHECK(restrict_to_subspace(F, *ps.witness).is_zero());

    // a generic Q Q' - L C quartic over GF(5) contains no rational plane
    Field f5 = Field::gf(5);
    Rng rng5(1);
    QuarticInput in = build_qqlc(random_form(f5, 5, 2, rng5), random_form(f5, 5, 2, rng5),
                                 random_form(f5, 5, 1, rng5), random_form(f5, 5, 3, rng5));
    CHECK(contains_plane(in.F).verdict == SearchVerdict::No);

    // over QQ the exhaustive search is out of scope
    CHECK(contains_plane(parse_poly("x0^4 + x1^4 + x2^4 + x3^4 + x4^4", 5, Field::rationals()))
              .verdict == SearchVerdict::BudgetExceeded);
}

TEST_CASE("contains_quadric_surface in candidate mode") {
    Field f = Field::gf(11);
    Rng rng(23);
    MultiPoly q = random_form(f, 5, 2, rng), qp = random_form(f, 5, 2, rng),
              l = random_form(f, 5, 1, rng), c = random_form(f, 5, 3, rng);
    QuarticInput in = build_qqlc(q, qp, l, c);

    QuadricSurfaceSearch a = contains_quadric_surface(in.F, l, q);
    CHECK(a.verdict == SearchVerdict::Yes);
    REQUIRE(a.acubic);
    REQUIRE(a.bquad);
    CHECK(l * *a.acubic + q * *a.bquad == in.F);

    QuadricSurfaceSearch b = contains_quadric_surface(in.F, l, qp);
    CHECK(b.verdict == SearchVerdict::Yes);

    MultiPoly generic = random_form(f, 5, 4, rng);
    QuadricSurfaceSearch no =
        contains_quadric_surface(generic, random_form(f, 5, 1, rng), random_form(f, 5, 2, rng));
    CHECK(no.verdict == SearchVerdict::No);
}

TEST_CASE("contains_quadric_surface search finds double quadric sections") {
    Field f = Field::gf(5);
    Rng rng(7);
    MultiPoly q = random_form(f, 5, 2, rng);
    MultiPoly l = parse_poly("x4", 5, f);
    MultiPoly c = random_form(f, 5, 3, rng);
    // F = Q^2 - L C meets {L = 0} in a double quadric
    MultiPoly F = q * q - l * c;
    QuadricSurfaceSearch r = contains_quadric_surface_search(F, 100000000ull);
    CHECK(r.verdict == SearchVerdict::Yes);

    MultiPoly generic = random_form(f, 5, 4, rng);
    QuadricSurfaceSearch nf = contains_quadric_surface_search(generic, 100000000ull);
    CHECK(nf.verdict == SearchVerdict::NotFound);
}

TEST_CASE("quadric surface search recovers the hidden decomposition from the nodes") {
    GeneratedExample ex = generate_example(4, 11);
    Field ext = Field::gf(11, 2);
    FieldEmbedding emb(Field::gf(11), ext);
    // hand the search only the quartic, over the field where all nodes live
    MultiPoly f2 = embed_poly(ex.input.F, emb);
    QuadricSurfaceSearch r = contains_quadric_surface_search(f2, 3000000000ull);
    REQUIRE(r.verdict == SearchVerdict::Yes);
    REQUIRE(r.lprime);
    REQUIRE(r.qprime);
    CHECK(*r.lprime * *r.acubic + *r.qprime * *r.bquad == f2);
    // the found hyperplane is the one from the decomposition
    CHECK(r.lprime->proportional_to(embed_poly(*ex.input.L, emb)));
}

TEST_CASE("classify_plane_section") {
    Field f = Field::gf(11);
    // the plane {x3 = x4 = 0} parametrized by the first three coordinates
    std::vector<std::vector<FieldScalar>> cols;
    for (std::size_t j = 0; j < 3; ++j) {
        std::vector<FieldScalar> col(5, FieldScalar::zero(f));
        col[j] = FieldScalar::one(f);
        cols.push_back(col);
    }
    LinearSubspaceParam plane = LinearSubspaceParam::from_columns(f, cols);

    MultiPoly dc = parse_poly("(x0*x1 - x2^2)^2", 5, f);
    CHECK(classify_plane_section(dc, plane).kind == SectionKind::DoubleConic);

    MultiPoly fl = parse_poly("x0 * x1 * (x0 + x1) * (x0 + 2*x2)", 5, f);
    PlaneSectionClass flc = classify_plane_section(fl, plane);
    CHECK(flc.kind == SectionKind::FourLines);
    CHECK(flc.intersection_points.size() == 6);
    for (const auto& p : flc.intersection_points) {
        // intersection points satisfy two of the four linear forms, hence F
        CHECK(fl.eval(p.coords()).is_zero());
    }

    MultiPoly fermat = parse_poly("x0^4 + x1^4 + x2^4", 5, f);
    CHECK(classify_plane_section(fermat, plane).kind == SectionKind::Other);

    // lines split only over GF(11^2)
    MultiPoly ext = parse_poly("x0 * x1 * (x2^2 + x0^2)", 5, f);
    PlaneSectionClass extc = classify_plane_section(ext, plane);
    CHECK(extc.kind == SectionKind::FourLines);
    CHECK(extc.splitting_extension == 2);
    CHECK(extc.intersection_points.size() == 6);

    // plane inside the quartic
    MultiPoly inside = parse_poly("x3", 5, f) * parse_poly("x0^3", 5, f) +
                       parse_poly("x4", 5, f) * parse_poly("x1^3", 5, f);
    CHECK(classify_plane_section(inside, plane).kind == SectionKind::PlaneContained);

    // over QQ the double-conic test stays decidable
    Field q = Field::rationals();
    std::vector<std::vector<FieldScalar>> qcols;
    for (std::size_t j = 0; j < 3; ++j) {
        std::vector<FieldScalar> col(5, FieldScalar::zero(q));
        col[j] = FieldScalar::one(q);
        qcols.push_back(col);
    }
    LinearSubspaceParam qplane = LinearSubspaceParam::from_columns(q, qcols);
    MultiPoly qdc = parse_poly("(x0*x1 - 3*x2^2)^2", 5, q);
    CHECK(classify_plane_section(qdc, qplane).kind == SectionKind::DoubleConic);
    // two rational lines times a rank-2 conic: four lines over an extension
    MultiPoly qfl = parse_poly("x0 * x1 * (x2^2 - 2*x0^2)", 5, q);
    CHECK(classify_plane_section(qfl, qplane).kind == SectionKind::FourLines);
}

TEST_CASE("generated example reproduces the 12-node family") {
    GeneratedExample ex = generate_example(1, 11);
    REQUIRE(ex.nodes.size() == 12);
    const Field ext = Field::gf(11, 2);
    CHECK(ex.input.field() == Field::gf(11));
    CHECK(ex.qprime_nonsingular);
    CHECK(ex.all_transverse);

    FieldEmbedding emb(Field::gf(11), ext);
    MultiPoly l2 = embed_poly(*ex.input.L, emb);
    for (const auto& r : ex.nodes) {
        CHECK(r.is_node);
        CHECK(r.hessian_rank == 4);
        CHECK(l2.eval(r.point.coords()).is_zero());
    }

    // determinism
    GeneratedExample again = generate_example(1, 11);
    CHECK(again.input.F == ex.input.F);

    // defect 1 via the independent GF(p^2) oracle
    std::vector<ProjPoint> pts;
    for (const auto& r : ex.nodes) pts.push_back(r.point);
    PointConfig cfg(ext, 4, pts);
    EvaluationMatrix em = evaluation_matrix(cfg, 3);
    std::vector<std::vector<FieldScalar>> rows;
    for (std::size_t i = 0; i < 12; ++i) rows.push_back(em.matrix.row(i));
    CHECK(oracles::rank_rows_gf2(rows) == 11);
    CHECK(defect_of_points(cfg, 3) == 1);

    // the nodes lie on a pencil of quadrics and break the k = 3 bound
    CHECK(pencil_of_quadrics_test(cfg) == QuadricSystemVerdict::Pencil);
    EisenbudKohResult ek = eisenbud_koh_check(cfg, 3);
    CHECK(!ek.pass);
    CHECK(ek.k == 3);
    CHECK(ek.bound == 10);
    // all twelve lie in one hyperplane
    CHECK(max_in_subspace(cfg, 3).count == 12);
    // defect 1 forces a missing separating cubic for at least one index
    bool missing = false;
    for (std::size_t i = 0; i < 12; ++i) missing = missing || !separating_form(cfg, i, 3);
    CHECK(missing);
}

TEST_CASE("birational models and the distinguished node") {
    GeneratedExample ex = generate_example(2, 11);
    auto [y, yp] = birational_models(ex.input);
    CHECK(y.eq_quadric.degree() == 2);
    CHECK(y.eq_cubic.degree() == 3);
    CHECK(y.eq_quadric.nvars() == 6);

    // sample points of X with L != 0 and map them to both models
    Field f = Field::gf(11);
    const GFContext& ctx = f.ctx();
    auto zeros = scan::projective_zeros(ctx, {scan::FPoly::from(ex.input.F)}, 100000000ull);
    int tested = 0;
    for (const auto& z : zeros) {
        if (tested >= 10) break;
        std::vector<FieldScalar> x;
        for (auto c : z) x.push_back(FieldScalar::finite(f, c));
        FieldScalar lv = ex.input.L->eval(x);
        if (lv.is_zero()) continue;
        FieldScalar yv = ex.input.Q->eval(x) / lv;
        std::vector<FieldScalar> x6 = x;
        x6.push_back(yv);
        CHECK(y.eq_quadric.eval(x6).is_zero());
        CHECK(y.eq_cubic.eval(x6).is_zero());
        // and Y' with y' = Q'(x)/L(x)
        FieldScalar ypv = ex.input.Qprime->eval(x) / lv;
        std::vector<FieldScalar> x6p = x;
        x6p.push_back(ypv);
        CHECK(yp.eq_quadric.eval(x6p).is_zero());
        CHECK(yp.eq_cubic.eval(x6p).is_zero());
        ++tested;
    }
    CHECK(tested > 0);

    NodeOnYReport rep = node_on_Y(ex.input);
    CHECK(rep.structure_ok);
    CHECK(rep.qprime_rank == 5);
    CHECK(rep.qprime_restricted_rank == 4);
    CHECK(rep.is_node);

    // a rank-3 quadric cannot give a simple double point
    Rng rng(8);
    MultiPoly bad = parse_poly("x0^2 + x1*x2", 5, f);
    MultiPoly l = parse_poly("x4", 5, f);
    QuarticInput in2 = build_qqlc(random_form(f, 5, 2, rng), bad, l, random_form(f, 5, 3, rng));
    NodeOnYReport rep2 = node_on_Y(in2);
    CHECK(rep2.qprime_rank == 3);
    CHECK(!rep2.is_node);

    // rank-4 quadric singular away from {L = 0}: restricted rank still 4
    MultiPoly rank4 = parse_poly("x0*x1 + x2*x3", 5, f);
    QuarticInput in3 = build_qqlc(random_form(f, 5, 2, rng), rank4, l, random_form(f, 5, 3, rng));
    NodeOnYReport rep3 = node_on_Y(in3);
    CHECK(rep3.qprime_rank == 4);
    CHECK(rep3.qprime_restricted_rank == 4);
    CHECK(rep3.is_node);
}

TEST_CASE("lines through the node at small extensions") {
    GeneratedExample ex = generate_example(1, 11);
    auto models = birational_models(ex.input);
    LinesThroughNodeReport rep = lines_through_node(models.first, 2);
    REQUIRE(rep.extension_degrees.size() == 2);
    CHECK(rep.extension_degrees[0] == 1);
    CHECK(rep.extension_degrees[1] == 2);
    CHECK(rep.counts[1] == 12); // all twelve nodes are GF(p^2)-rational
    CHECK(rep.counts[0] <= 12);
    CHECK(rep.lines.size() == 12);
    CHECK(rep.all_in_tangent_hyperplane);
    CHECK(rep.all_transverse);
}

TEST_CASE("quartic input files round-trip") {
    GeneratedExample ex = generate_example(3, 11);
    std::stringstream ss;
    write_quartic_input(ss, ex.input);
    std::stringstream in(ss.str());
    QuarticInput back = read_quartic_input(in);
    CHECK(back.F == ex.input.F);
    REQUIRE(back.has_decomposition());
    CHECK(*back.Q == *ex.input.Q);
    CHECK(*back.C == *ex.input.C);

    std::stringstream direct("field p=11\nF: x0^4 + x1^4 + x2^4 + x3^4 + x4^4\n");
    QuarticInput fd = read_quartic_input(direct);
    CHECK(!fd.has_decomposition());
    CHECK(fd.F.degree() == 4);

    std::stringstream bad("field p=11\nF: x0^3\n");
    CHECK_THROWS(read_quartic_input(bad));
    std::stringstream bad2("field p=11\nQ: x0^2\n");
    CHECK_THROWS_AS(read_quartic_input(bad2), field_error);
    std::stringstream bad3("field p=11\nF: x0^2 +\n");
    CHECK_THROWS_AS(read_quartic_input(bad3), parse_error);
}

TEST_CASE("full analysis of the family instance") {
    GeneratedExample ex = generate_example(1, 11);
    Field ext = Field::gf(11, 2);
    FieldEmbedding emb(Field::gf(11), ext);
    QuarticInput embedded(embed_poly(ex.input.F, emb));
    embedded.Q = embed_poly(*ex.input.Q, emb);
    embedded.Qprime = embed_poly(*ex.input.Qprime, emb);
    embedded.L = embed_poly(*ex.input.L, emb);
    embedded.C = embed_poly(*ex.input.C, emb);

    AnalyzeOptions opts;
    opts.search_input = &ex.input; // containment searches over GF(11)
    QuarticAnalysis an = analyze_quartic(embedded, opts);
    CHECK(an.s == 12);
    CHECK(an.all_singular_are_nodes);
    CHECK(an.all_on_decomposition_locus);
    CHECK(an.plane.verdict == SearchVerdict::No);
    CHECK(an.quadric.verdict == SearchVerdict::Yes);
    CHECK(an.defect == 1);
    CHECK(an.verdict.theorem_path == TheoremPath::ExceptionCase);
    CHECK(an.verdict.consistent);
    CHECK(an.findings.empty());
    CHECK(!an.configuration.line_with_4);
    CHECK(!an.configuration.plane_with_7);

    std::string json = an.to_json();
    CHECK(json.find("\"s\": 12") != std::string::npos);
    CHECK(json.find("ExceptionCase") != std::string::npos);
}
