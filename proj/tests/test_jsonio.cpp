#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "sdesign/carlitz.hpp"
#include "sdesign/common.hpp"
#include "sdesign/design.hpp"
#include "sdesign/expander.hpp"
#include "sdesign/jsonio.hpp"
#include "sdesign/poly.hpp"
#include "sdesign/riemannroch.hpp"

using namespace sdesign;
using nlohmann::json;

namespace {

Mat mat_rows(std::uint32_t cols, const std::vector<std::vector<elem_t>>& rows) {
    Mat M(static_cast<std::uint32_t>(rows.size()), cols);
    for (std::uint32_t i = 0; i < M.rows; ++i)
        for (std::uint32_t j = 0; j < cols; ++j) M.at(i, j) = rows[i][j];
    return M;
}

bool same_design(const DesignInstance& A, const DesignInstance& B) {
    if (A.params.q != B.params.q || A.params.variant != B.params.variant ||
        !(A.params.p == B.params.p) || A.params.d != B.params.d ||
        A.params.m != B.params.m || A.params.r != B.params.r ||
        A.params.t != B.params.t || A.params.ell != B.params.ell ||
        A.params.s_max != B.params.s_max ||
        A.params.has_target != B.params.has_target ||
        A.params.eps_num != B.params.eps_num ||
        A.params.eps_den != B.params.eps_den ||
        A.params.target_s != B.params.target_s)
        return false;
    if (A.Vbasis != B.Vbasis || A.polyBasis.size() != B.polyBasis.size())
        return false;
    for (std::size_t i = 0; i < A.polyBasis.size(); ++i)
        if (!(A.polyBasis[i] == B.polyBasis[i])) return false;
    if (A.subspaces.size() != B.subspaces.size()) return false;
    for (std::size_t i = 0; i < A.subspaces.size(); ++i) {
        if (!(A.subspaces[i].rows == B.subspaces[i].rows)) return false;
        if (A.subspaces[i].pivots != B.subspaces[i].pivots) return false;
        if (!(A.subspaces[i].orbit_g == B.subspaces[i].orbit_g)) return false;
        if (A.subspaces[i].start != B.subspaces[i].start) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("json: element encodings") {
    Field F5(5);
    CHECK(elem_to_json(F5, 3) == json(3));
    CHECK(elem_from_json(F5, json(3)) == 3);
    CHECK_THROWS_AS(elem_from_json(F5, json(5)), ParamError);
    CHECK_THROWS_AS(elem_from_json(F5, json(-1)), ParamError);
    CHECK_THROWS_AS(elem_from_json(F5, json::array()), ParamError);

    Field F8(8);
    json a = elem_to_json(F8, 6);
    REQUIRE(a.is_array());  // little-endian base-2 digits of the code
    CHECK(a.size() == 3);
    CHECK(elem_from_json(F8, a) == 6);
    // digit arrays must have exactly k digits, each below the characteristic
    CHECK(elem_from_json(F8, json::array({1, 0, 0})) == 1);
    CHECK_THROWS_AS(elem_from_json(F8, json::array({1})), ParamError);
    CHECK_THROWS_AS(elem_from_json(F8, json::array({2, 0, 0})), ParamError);
    CHECK_THROWS_AS(elem_from_json(F8, json::array({0, 0, 0, 1})), ParamError);
    CHECK_THROWS_AS(elem_from_json(F8, json(3)), ParamError);
}

TEST_CASE("json: polynomial encodings round-trip and trim") {
    Field F(3);
    Poly f = pparse(F, "x^2+2*x+1");
    json j = poly_to_json(F, f);
    CHECK(j == json::array({1, 2, 1}));
    CHECK(poly_from_json(F, j) == f);
    // zero polynomial is the empty array; trailing zeros are trimmed
    CHECK(poly_to_json(F, Poly::zero()) == json::array());
    CHECK(poly_from_json(F, json::array()).is_zero());
    CHECK(poly_from_json(F, json::array({1, 2, 1, 0, 0})) == f);
    CHECK_THROWS_AS(poly_from_json(F, json(7)), ParamError);
}

TEST_CASE("json: function field elements round-trip") {
    Field F(3);
    CycCtx C = cyc_ctx_make(F, pparse(F, "x^2+x+2"));
    auto CS = complement_space(C);
    for (const FFElem& f : CS.V.basis) {
        json j = ffe_to_json(F, f);
        CHECK(ffe_from_json(F, j) == f);
    }
    // an element with a nontrivial denominator exponent
    FFElem g = ffe_mul_ppow(C, ffe_lambda(C), -2);
    CHECK(g.e == 2);
    CHECK(ffe_from_json(F, ffe_to_json(F, g)) == g);
}

TEST_CASE("json: matrices and CSV") {
    Field F(5);
    Mat M = mat_rows(3, {{1, 0, 3}, {0, 1, 4}});
    json j = mat_to_json(M);
    CHECK(j == json::array({{1, 0, 3}, {0, 1, 4}}));
    CHECK(mat_from_json(F, j) == M);
    CHECK(mat_from_json(F, j, 3) == M);
    // empty matrices keep their announced width
    Mat Z = mat_from_json(F, json::array(), 4);
    CHECK(Z.rows == 0);
    CHECK(Z.cols == 4);
    CHECK_THROWS_AS(mat_from_json(F, j, 2), ParamError);
    CHECK_THROWS_AS(mat_from_json(F, json::array({{1, 5}}), 2), ParamError);
    CHECK_THROWS_AS(mat_from_json(F, json(3)), ParamError);

    CHECK(csv_matrix(M) == "1,0,3\n0,1,4\n");
    CHECK(csv_matrix(Mat(0, 3)).empty());
}

TEST_CASE("json: design documents round-trip exactly") {
    Field F3(3);
    DesignInstance D = build_design_cyclotomic(3, pparse(F3, "x^2+x+2"), 3, 2);
    json j = design_to_json(D);
    CHECK(j.at("format") == "subspace-design");
    CHECK(j.at("params").at("variant") == "cyclotomic");
    CHECK(j.at("params").at("m") == 8);
    CHECK(j.at("params").at("target").is_null());
    CHECK(j.at("subspaces").size() == 4);
    CHECK(j.at("subspaces").at(0).at("provenance").at("start") == 0);

    DesignInstance R = design_from_json(j);
    CHECK(same_design(D, R));

    // the parsed instance verifies identically
    VerifyOptions opt;
    auto a = verify_design(D, 2, opt);
    auto b = verify_design(R, 2, opt);
    CHECK(a.max_total == b.max_total);
    CHECK(a.witness == b.witness);
    CHECK(a.tested == b.tested);

    // canonical serialization is byte-stable across rebuilds and round-trips
    DesignInstance D2 = build_design_cyclotomic(3, pparse(F3, "x^2+x+2"), 3, 2);
    CHECK(canonical_json(design_to_json(D2)) == canonical_json(j));
    CHECK(canonical_json(design_to_json(R)) == canonical_json(j));
}

TEST_CASE("json: folded and target designs carry their extras") {
    DesignInstance Df = build_design_folded_rs(5, 3, 1, 2);
    json jf = design_to_json(Df);
    CHECK(jf.at("params").at("p") == json::array());
    CHECK(jf.at("V_basis").size() == 3);
    CHECK(jf.at("V_basis").at(1) == json::array({0, 1}));  // the monomial x
    DesignInstance Rf = design_from_json(jf);
    CHECK(same_design(Df, Rf));

    DesignInstance Dt = design_from_target(3, 8, 1, 1, 1);
    json jt = design_to_json(Dt);
    CHECK(jt.at("params").at("target").at("eps_num") == 1);
    CHECK(jt.at("params").at("target").at("s") == 1);
    DesignInstance Rt = design_from_json(jt);
    CHECK(same_design(Dt, Rt));
    CHECK(Rt.target_bound(1) == 4);
}

TEST_CASE("json: malformed design documents are rejected") {
    Field F3(3);
    DesignInstance D = build_design_cyclotomic(3, pparse(F3, "x^2+x+2"), 3, 2);
    json good = design_to_json(D);

    json bad = good;
    bad["format"] = "something-else";
    CHECK_THROWS_AS(design_from_json(bad), ParamError);

    bad = good;
    bad.erase("subspaces");
    CHECK_THROWS_AS(design_from_json(bad), ParamError);

    bad = good;
    bad["params"]["q"] = 1;
    CHECK_THROWS_AS(design_from_json(bad), ParamError);

    bad = good;
    bad["params"]["variant"] = "nope";
    CHECK_THROWS_AS(design_from_json(bad), ParamError);

    bad = good;
    bad["subspaces"][0]["rows"][0][0] = 3;  // entry not below q
    CHECK_THROWS_AS(design_from_json(bad), ParamError);

    bad = good;
    bad["subspaces"][0]["rows"][1] = bad["subspaces"][0]["rows"][0];
    CHECK_THROWS_AS(design_from_json(bad), ParamError);  // dependent rows

    bad = good;
    bad["V_basis"][0]["A"] = json::array({json::array({1})});
    CHECK_THROWS_AS(design_from_json(bad), ParamError);  // wrong length

    bad = good;
    bad["params"]["d"] = 7;  // conductor degree mismatch
    CHECK_THROWS_AS(design_from_json(bad), ParamError);

    CHECK_THROWS_AS(design_from_json(json(3)), ParamError);
    CHECK_THROWS_AS(design_from_json(json::object()), ParamError);
}

TEST_CASE("json: non-canonical but equivalent subspace rows are canonicalized") {
    Field F3(3);
    DesignInstance D = build_design_cyclotomic(3, pparse(F3, "x^2+x+2"), 3, 2);
    json j = design_to_json(D);
    // scale a row by 2: same row space, different bytes
    json& row = j["subspaces"][0]["rows"][0];
    for (auto& v : row) v = (v.get<int>() * 2) % 3;
    DesignInstance R = design_from_json(j);
    CHECK(R.subspaces[0].rows == D.subspaces[0].rows);
}

TEST_CASE("json: expander documents round-trip exactly") {
    ExpanderInstance E = build_expander(17, 4, 1);
    json j = expander_to_json(E);
    CHECK(j.at("format") == "dimension-expander");
    CHECK(j.at("degree") == 8);
    CHECK(j.at("maps").size() == 8);
    CHECK(j.at("provenance").at("M") == 4);
    CHECK(j.at("provenance").at("alpha") == json::array({1, 3}));
    CHECK(j.at("provenance").at("design").at("p") == json::array({3, 1}));

    ExpanderInstance R = expander_from_json(j);
    CHECK(R.q == E.q);
    CHECK(R.n == E.n);
    CHECK(R.M == E.M);
    CHECK(R.has_design == E.has_design);
    CHECK(R.mhat == E.mhat);
    CHECK(R.available == E.available);
    CHECK(R.skipped == E.skipped);
    REQUIRE(R.maps.size() == E.maps.size());
    for (std::size_t i = 0; i < E.maps.size(); ++i) CHECK(R.maps[i] == E.maps[i]);
    REQUIRE(R.kernels.size() == E.kernels.size());
    for (std::size_t i = 0; i < E.kernels.size(); ++i)
        CHECK(R.kernels[i] == E.kernels[i]);

    VerifyOptions opt;
    auto a = verify_expander(E, 1, 1, 3, opt);
    auto b = verify_expander(R, 1, 1, 3, opt);
    CHECK(a.min_dim == b.min_dim);
    CHECK(a.witness == b.witness);
    CHECK(a.invariant[0].bound == b.invariant[0].bound);

    CHECK(canonical_json(expander_to_json(R)) == canonical_json(j));

    // the infeasible instance round-trips too, note and all
    ExpanderInstance E0 = build_expander(2, 3, 1);
    json j0 = expander_to_json(E0);
    CHECK(j0.at("provenance").at("design").is_null());
    ExpanderInstance R0 = expander_from_json(j0);
    CHECK(R0.M == 0);
    CHECK_FALSE(R0.has_design);
    CHECK(R0.note == E0.note);
    CHECK(canonical_json(expander_to_json(R0)) == canonical_json(j0));
}

TEST_CASE("json: malformed expander documents are rejected") {
    ExpanderInstance E = build_expander(17, 4, 1);
    json good = expander_to_json(E);

    json bad = good;
    bad["degree"] = 6;
    CHECK_THROWS_AS(expander_from_json(bad), ParamError);

    bad = good;
    bad["provenance"]["kernels"].erase(3);
    CHECK_THROWS_AS(expander_from_json(bad), ParamError);

    bad = good;
    bad["provenance"]["alpha"] = json::array({1});
    CHECK_THROWS_AS(expander_from_json(bad), ParamError);

    bad = good;
    bad["maps"][0][0][0] = 17;
    CHECK_THROWS_AS(expander_from_json(bad), ParamError);

    bad = good;
    bad["provenance"]["design"]["q"] = 5;
    CHECK_THROWS_AS(expander_from_json(bad), ParamError);

    CHECK_THROWS_AS(expander_from_json(json::object()), ParamError);
}

TEST_CASE("json: verification reports serialize with witnesses") {
    Field F3(3);
    DesignInstance D = build_design_cyclotomic(3, pparse(F3, "x^2+x+2"), 3, 2);
    VerifyOptions opt;
    auto rep = verify_design(D, 1, opt);
    json j = report_to_json(rep);
    CHECK(j.at("format") == "design-verification");
    CHECK(j.at("mode") == "exhaustive");
    CHECK(j.at("s") == 1);
    CHECK(j.at("tested") == 3280);
    CHECK(j.at("max_total") == 1);
    CHECK(j.at("bound") == 2);
    CHECK(j.at("pass") == true);
    CHECK(j.at("witness").size() == 1);

    ExpanderInstance E = build_expander(17, 4, 1);
    auto erep = verify_expander(E, 1, 1, 3, opt);
    json ej = expander_report_to_json(erep);
    CHECK(ej.at("format") == "expander-verification");
    CHECK(ej.at("min_dim") == 3);
    CHECK(ej.at("min_ell") == 1);
    CHECK(ej.at("pass") == true);
    CHECK(ej.at("invariant").size() == 1);
    CHECK(ej.at("invariant").at(0).at("bound") == 10);
    CHECK(ej.at("invariant_ok") == true);
}

TEST_CASE("json: split places and Riemann-Roch bases") {
    Field F(2);
    CycCtx C = cyc_ctx_make(F, pparse(F, "x^2+x+1"));
    auto orbits = split_places(C, 4);
    json j = places_to_json(C, orbits, 4);
    CHECK(j.at("format") == "split-places");
    CHECK(j.at("q") == 2);
    CHECK(j.at("p") == json::array({1, 1, 1}));
    CHECK(j.at("count") == 1);
    REQUIRE(j.at("orbits").size() == 1);
    CHECK(j.at("orbits").at(0).at("g") == json::array({1, 1, 0, 0, 1}));
    CHECK(j.at("orbits").at(0).at("roots").size() == 3);
    // roots live in F_16: little-endian digit arrays
    CHECK(j.at("orbits").at(0).at("roots").at(0).is_array());

    RRBasis B = rr_basis(C, 2, false);
    json rj = rrbasis_to_json(C, B);
    CHECK(rj.at("format") == "riemann-roch-basis");
    CHECK(rj.at("c") == 2);
    CHECK(rj.at("minusQ") == false);
    CHECK(rj.at("dim") == B.dim());
    CHECK(rj.at("basis").size() == B.dim());
    for (const auto& f : rj.at("basis"))
        CHECK(ffe_from_json(F, f).A.size() == C.m);
}
