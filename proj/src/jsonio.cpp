#include "sdesign/jsonio.hpp"

#include <string>
#include <utility>
#include <vector>

#include "sdesign/common.hpp"

namespace sdesign {

namespace {

using nlohmann::json;

std::uint64_t get_u64(const json& j, const char* key) {
    const json& v = j.at(key);
    require_param(v.is_number_unsigned() || (v.is_number_integer() &&
                                             v.get<std::int64_t>() >= 0),
                  std::string(key) + " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::uint32_t get_u32(const json& j, const char* key) {
    const std::uint64_t v = get_u64(j, key);
    require_param(v <= 0xffffffffULL,
                  std::string(key) + " is out of range");
    return static_cast<std::uint32_t>(v);
}

std::int64_t get_i64(const json& j, const char* key) {
    const json& v = j.at(key);
    require_param(v.is_number_integer() || v.is_number_unsigned(),
                  std::string(key) + " must be an integer");
    return v.get<std::int64_t>();
}

void require_format(const json& j, const char* tag) {
    require_param(j.is_object() && j.contains("format") &&
                      j.at("format").is_string() &&
                      j.at("format").get<std::string>() == tag,
                  std::string("input is not a \"") + tag + "\" document");
}

json verify_mode_to_json(VerifyMode m) {
    return m == VerifyMode::exhaustive ? "exhaustive" : "sample";
}

json params_to_json(const Field& F, const DesignParams& P) {
    json j;
    j["q"] = P.q;
    j["variant"] = variant_name(P.variant);
    j["p"] = poly_to_json(F, P.p);
    j["d"] = P.d;
    j["m"] = P.m;
    j["r"] = P.r;
    j["t"] = P.t;
    j["ell"] = P.ell;
    j["s_max"] = P.s_max;
    if (P.has_target) {
        json tgt;
        tgt["eps_num"] = P.eps_num;
        tgt["eps_den"] = P.eps_den;
        tgt["s"] = P.target_s;
        j["target"] = tgt;
    } else {
        j["target"] = nullptr;
    }
    return j;
}

DesignParams params_from_json(const json& j) {
    DesignParams P;
    P.q = get_u64(j, "q");
    require_param(P.q >= 2, "q must be at least 2");
    const Field F(P.q);
    P.variant = variant_from_name(j.at("variant").get<std::string>());
    P.p = poly_from_json(F, j.at("p"));
    P.d = get_u32(j, "d");
    P.m = get_u32(j, "m");
    P.r = get_u32(j, "r");
    P.t = get_u32(j, "t");
    P.ell = get_i64(j, "ell");
    P.s_max = get_u32(j, "s_max");
    require_param(P.m >= 1 && P.r >= 1 && P.t >= 1,
                  "m, r and t must be positive");
    if (P.variant == DesignVariant::foldedRS) {
        require_param(P.p.is_zero(), "foldedRS designs carry no conductor");
    } else {
        require_param(P.p.deg() >= 1 && P.p.deg() == static_cast<int>(P.d),
                      "conductor degree does not match d");
    }
    const json& tgt = j.at("target");
    if (!tgt.is_null()) {
        P.has_target = true;
        P.eps_num = get_u64(tgt, "eps_num");
        P.eps_den = get_u64(tgt, "eps_den");
        P.target_s = get_u32(tgt, "s");
        require_param(P.eps_num >= 1 && P.eps_den >= 1,
                      "target eps must be a positive rational");
    }
    return P;
}

// Canonicalize parsed subspace rows: require full rank, store RREF + pivots.
SubspaceBasis subspace_from_json(const Field& F, std::uint32_t m,
                                 const json& j) {
    SubspaceBasis S;
    S.rows = mat_from_json(F, j.at("rows"), m);
    const std::uint32_t given = S.rows.rows;
    const std::uint32_t rank = rref(F, S.rows, &S.pivots);
    require_param(rank == given,
                  "subspace rows are linearly dependent");
    const json& prov = j.at("provenance");
    S.orbit_g = poly_from_json(F, prov.at("orbit"));
    S.start = get_u32(prov, "start");
    return S;
}

json subspace_to_json(const Field& F, const SubspaceBasis& S) {
    json j;
    json prov;
    prov["orbit"] = poly_to_json(F, S.orbit_g);
    prov["start"] = S.start;
    j["provenance"] = prov;
    j["rows"] = mat_to_json(S.rows);
    return j;
}

}  // namespace

std::string canonical_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json elem_to_json(const Field& F, elem_t a) {
    if (F.prime()) return a;
    return F.digits(a);
}

elem_t elem_from_json(const Field& F, const nlohmann::json& j) {
    if (F.prime()) {
        require_param(j.is_number_unsigned() ||
                          (j.is_number_integer() && j.get<std::int64_t>() >= 0),
                      "field element must be a non-negative integer");
        const std::uint64_t v = j.get<std::uint64_t>();
        require_param(v < F.q(), "field element code " + std::to_string(v) +
                                     " is not below q");
        return static_cast<elem_t>(v);
    }
    require_param(j.is_array() && j.size() == F.k(),
                  "extension field element must be a digit array of length " +
                      std::to_string(F.k()));
    std::vector<std::uint32_t> ds;
    for (const auto& d : j) {
        require_param(d.is_number_unsigned() ||
                          (d.is_number_integer() && d.get<std::int64_t>() >= 0),
                      "field element digit must be a non-negative integer");
        const std::uint64_t v = d.get<std::uint64_t>();
        require_param(v < F.p(), "field element digit " + std::to_string(v) +
                                     " is not below the characteristic");
        ds.push_back(static_cast<std::uint32_t>(v));
    }
    return F.from_digits(ds);
}

nlohmann::json poly_to_json(const Field& F, const Poly& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (elem_t c : f.c) arr.push_back(elem_to_json(F, c));
    return arr;
}

Poly poly_from_json(const Field& F, const nlohmann::json& j) {
    require_param(j.is_array(), "polynomial must be a coefficient array");
    Poly f;
    for (const auto& c : j) f.c.push_back(elem_from_json(F, c));
    ptrim(f);
    return f;
}

nlohmann::json ffe_to_json(const Field& F, const FFElem& f) {
    nlohmann::json j;
    j["e"] = f.e;
    nlohmann::json arr = nlohmann::json::array();
    for (const Poly& a : f.A) arr.push_back(poly_to_json(F, a));
    j["A"] = arr;
    return j;
}

FFElem ffe_from_json(const Field& F, const nlohmann::json& j) {
    FFElem f;
    f.e = get_i64(j, "e");
    const nlohmann::json& arr = j.at("A");
    require_param(arr.is_array(), "A must be an array of polynomials");
    for (const auto& a : arr) f.A.push_back(poly_from_json(F, a));
    return f;
}

nlohmann::json mat_to_json(const Mat& M) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint32_t i = 0; i < M.rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::uint32_t c = 0; c < M.cols; ++c) row.push_back(M.at(i, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(const Field& F, const nlohmann::json& j,
                  std::uint32_t cols) {
    require_param(j.is_array(), "matrix must be an array of rows");
    std::uint32_t width = cols;
    if (width == 0 && !j.empty()) {
        require_param(j.at(0).is_array(), "matrix rows must be arrays");
        width = static_cast<std::uint32_t>(j.at(0).size());
    }
    Mat M(static_cast<std::uint32_t>(j.size()), width);
    for (std::uint32_t i = 0; i < M.rows; ++i) {
        const auto& row = j.at(i);
        require_param(row.is_array() && row.size() == width,
                      "matrix row " + std::to_string(i) +
                          " does not have " + std::to_string(width) +
                          " entries");
        for (std::uint32_t c = 0; c < width; ++c) {
            const auto& v = row.at(c);
            require_param(v.is_number_unsigned() ||
                              (v.is_number_integer() &&
                               v.get<std::int64_t>() >= 0),
                          "matrix entries must be non-negative integers");
            const std::uint64_t a = v.get<std::uint64_t>();
            require_param(a < F.q(), "matrix entry " + std::to_string(a) +
                                         " is not below q");
            M.at(i, c) = static_cast<elem_t>(a);
        }
    }
    return M;
}

std::string csv_matrix(const Mat& M) {
    std::string out;
    for (std::uint32_t i = 0; i < M.rows; ++i) {
        for (std::uint32_t c = 0; c < M.cols; ++c) {
            if (c) out += ',';
            out += std::to_string(M.at(i, c));
        }
        out += '\n';
    }
    return out;
}

nlohmann::json design_to_json(const DesignInstance& D) {
    const Field F(D.params.q);
    nlohmann::json j;
    j["format"] = "subspace-design";
    j["params"] = params_to_json(F, D.params);
    nlohmann::json basis = nlohmann::json::array();
    if (D.params.variant == DesignVariant::foldedRS) {
        for (const Poly& f : D.polyBasis) basis.push_back(poly_to_json(F, f));
    } else {
        for (const FFElem& f : D.Vbasis) basis.push_back(ffe_to_json(F, f));
    }
    j["V_basis"] = basis;
    nlohmann::json subs = nlohmann::json::array();
    for (const SubspaceBasis& S : D.subspaces)
        subs.push_back(subspace_to_json(F, S));
    j["subspaces"] = subs;
    return j;
}

DesignInstance design_from_json(const nlohmann::json& j) {
    try {
        require_format(j, "subspace-design");
        DesignInstance D;
        D.params = params_from_json(j.at("params"));
        const Field F(D.params.q);
        const nlohmann::json& basis = j.at("V_basis");
        require_param(basis.is_array(), "V_basis must be an array");
        if (D.params.variant == DesignVariant::foldedRS) {
            for (const auto& f : basis)
                D.polyBasis.push_back(poly_from_json(F, f));
        } else {
            for (const auto& f : basis) {
                FFElem v = ffe_from_json(F, f);
                require_param(v.A.size() == D.params.m,
                              "ambient basis element has the wrong length");
                D.Vbasis.push_back(std::move(v));
            }
        }
        const nlohmann::json& subs = j.at("subspaces");
        require_param(subs.is_array(), "subspaces must be an array");
        for (const auto& s : subs)
            D.subspaces.push_back(subspace_from_json(F, D.params.m, s));
        return D;
    } catch (const nlohmann::json::exception& e) {
        throw ParamError(std::string("malformed design document: ") +
                         e.what());
    }
}

nlohmann::json report_to_json(const VerificationReport& rep) {
    nlohmann::json j;
    j["format"] = "design-verification";
    j["mode"] = verify_mode_to_json(rep.mode);
    j["s"] = rep.sprime;
    j["tested"] = rep.tested;
    j["max_total"] = rep.max_total;
    j["bound"] = rep.bound;
    j["pass"] = rep.pass;
    j["witness"] = mat_to_json(rep.witness);
    return j;
}

nlohmann::json expander_to_json(const ExpanderInstance& E) {
    const Field F(E.q);
    nlohmann::json j;
    j["format"] = "dimension-expander";
    j["q"] = E.q;
    j["n"] = E.n;
    j["degree"] = E.degree();
    nlohmann::json maps = nlohmann::json::array();
    for (const Mat& A : E.maps) maps.push_back(mat_to_json(A));
    j["maps"] = maps;
    nlohmann::json prov;
    prov["b"] = E.b;
    prov["alpha"] = {E.alpha_num, E.alpha_den};
    prov["M"] = E.M;
    prov["mhat"] = E.mhat;
    prov["available"] = E.available;
    prov["skipped"] = E.skipped;
    prov["design"] =
        E.has_design ? params_to_json(F, E.design) : nlohmann::json(nullptr);
    nlohmann::json kers = nlohmann::json::array();
    for (const Mat& K : E.kernels) kers.push_back(mat_to_json(K));
    prov["kernels"] = kers;
    prov["note"] = E.note;
    j["provenance"] = prov;
    return j;
}

ExpanderInstance expander_from_json(const nlohmann::json& j) {
    try {
        require_format(j, "dimension-expander");
        ExpanderInstance E;
        E.q = get_u64(j, "q");
        require_param(E.q >= 2, "q must be at least 2");
        const Field F(E.q);
        E.n = get_u32(j, "n");
        require_param(E.n >= 1, "n must be at least 1");
        const nlohmann::json& maps = j.at("maps");
        require_param(maps.is_array(), "maps must be an array of matrices");
        for (const auto& A : maps)
            E.maps.push_back(mat_from_json(F, A, E.n));
        for (const Mat& A : E.maps)
            require_param(A.rows == E.n, "maps must be n x n matrices");
        require_param(get_u32(j, "degree") == E.maps.size(),
                      "degree does not match the number of maps");

        const nlohmann::json& prov = j.at("provenance");
        E.b = get_u32(prov, "b");
        const nlohmann::json& alpha = prov.at("alpha");
        require_param(alpha.is_array() && alpha.size() == 2 &&
                          alpha.at(0).is_number_unsigned() &&
                          alpha.at(1).is_number_unsigned(),
                      "alpha must be a [numerator, denominator] pair of "
                      "non-negative integers");
        E.alpha_num = alpha.at(0).get<std::uint64_t>();
        E.alpha_den = alpha.at(1).get<std::uint64_t>();
        require_param(E.alpha_den >= 1, "alpha denominator must be positive");
        E.M = get_u32(prov, "M");
        require_param(2 * E.M == E.maps.size(),
                      "degree must be twice the number of design subspaces");
        E.mhat = get_u32(prov, "mhat");
        E.available = get_u32(prov, "available");
        E.skipped = get_u32(prov, "skipped");
        if (!prov.at("design").is_null()) {
            E.has_design = true;
            E.design = params_from_json(prov.at("design"));
            require_param(E.design.q == E.q,
                          "design and expander fields disagree");
        }
        const nlohmann::json& kers = prov.at("kernels");
        require_param(kers.is_array() && kers.size() == E.M,
                      "kernels must list one matrix per design subspace");
        for (const auto& K : kers) {
            Mat km = mat_from_json(F, K, 2 * E.n);
            require_param(km.rows == E.n, "kernels must be n x 2n matrices");
            E.kernels.push_back(std::move(km));
        }
        E.note = prov.at("note").get<std::string>();
        return E;
    } catch (const nlohmann::json::exception& e) {
        throw ParamError(std::string("malformed expander document: ") +
                         e.what());
    }
}

nlohmann::json expander_report_to_json(const ExpanderReport& rep) {
    nlohmann::json j;
    j["format"] = "expander-verification";
    j["mode"] = verify_mode_to_json(rep.mode);
    j["b"] = rep.b;
    j["alpha"] = {rep.alpha_num, rep.alpha_den};
    j["tested"] = rep.tested;
    j["min_dim"] = rep.min_dim;
    j["min_ell"] = rep.min_ell;
    j["pass"] = rep.pass;
    j["witness"] = mat_to_json(rep.witness);
    nlohmann::json inv = nlohmann::json::array();
    for (const ExpanderInvariantLine& L : rep.invariant) {
        nlohmann::json line;
        line["ell"] = L.ell;
        line["tested"] = L.tested;
        line["bound"] = L.bound;
        line["max_sum"] = L.max_sum;
        line["ok"] = L.ok;
        inv.push_back(std::move(line));
    }
    j["invariant"] = inv;
    j["invariant_ok"] = rep.invariant_ok;
    return j;
}

nlohmann::json places_to_json(const CycCtx& C,
                              const std::vector<PlaceOrbit>& orbits,
                              std::uint32_t r) {
    nlohmann::json j;
    j["format"] = "split-places";
    j["q"] = C.F.q();
    j["p"] = poly_to_json(C.F, C.p);
    j["r"] = r;
    j["count"] = orbits.size();
    nlohmann::json arr = nlohmann::json::array();
    for (const PlaceOrbit& O : orbits) {
        nlohmann::json o;
        o["g"] = poly_to_json(C.F, O.g);
        nlohmann::json roots = nlohmann::json::array();
        for (elem_t a : O.roots) roots.push_back(elem_to_json(O.E.K, a));
        o["roots"] = roots;
        arr.push_back(std::move(o));
    }
    j["orbits"] = arr;
    return j;
}

nlohmann::json rrbasis_to_json(const CycCtx& C, const RRBasis& B) {
    nlohmann::json j;
    j["format"] = "riemann-roch-basis";
    j["q"] = C.F.q();
    j["p"] = poly_to_json(C.F, C.p);
    j["c"] = B.c;
    j["minusQ"] = B.subtractQ;
    j["dim"] = B.dim();
    nlohmann::json arr = nlohmann::json::array();
    for (const FFElem& f : B.basis) arr.push_back(ffe_to_json(C.F, f));
    j["basis"] = arr;
    return j;
}

}  // namespace sdesign
