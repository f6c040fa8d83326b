// Command-line front end: constructs subspace designs and dimension
// expanders, verifies their claimed properties, and exposes the underlying
// function-field computations (split places, Riemann-Roch bases, Moore
// determinants).  Machine-readable canonical JSON goes to stdout or --out;
// a one-line human summary goes to stderr.
//
// Exit codes: 0 success (and verification passed), 1 verification failure
// (the witness is in the JSON output), 2 parameter error, 3 internal
// invariant failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdesign/carlitz.hpp"
#include "sdesign/common.hpp"
#include "sdesign/design.hpp"
#include "sdesign/expander.hpp"
#include "sdesign/jsonio.hpp"
#include "sdesign/moore.hpp"
#include "sdesign/poly.hpp"
#include "sdesign/riemannroch.hpp"

namespace {

using sdesign::ParamError;

// "a" or "a/b" with positive integers.
std::pair<std::uint64_t, std::uint64_t> parse_rational(const std::string& s,
                                                       const char* what) {
    std::uint64_t num = 0, den = 1;
    std::size_t pos = 0;
    try {
        num = std::stoull(s, &pos);
        if (pos < s.size()) {
            if (s[pos] != '/') throw std::invalid_argument("separator");
            std::size_t pos2 = 0;
            den = std::stoull(s.substr(pos + 1), &pos2);
            if (pos + 1 + pos2 != s.size())
                throw std::invalid_argument("trailing characters");
        }
    } catch (const std::exception&) {
        throw ParamError(std::string(what) + " must be an integer or a "
                         "fraction like 1/2: got \"" + s + "\"");
    }
    sdesign::require_param(den >= 1, std::string(what) +
                                         " must have a positive denominator");
    return {num, den};
}

nlohmann::json load_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        sdesign::require_param(in.good(), "cannot open input file " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParamError("input is not valid JSON: " + std::string(e.what()));
    }
}

void emit(const nlohmann::json& j, const std::string& out_path) {
    const std::string text = sdesign::canonical_json(j);
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        sdesign::require_param(out.good(),
                               "cannot open output file " + out_path);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        sdesign::require_param(out.good(),
                               "failed writing output file " + out_path);
    }
}

void write_csv(const std::string& prefix, std::size_t index,
               const sdesign::Mat& M) {
    const std::string path = prefix + std::to_string(index) + ".csv";
    std::ofstream out(path, std::ios::binary);
    sdesign::require_param(out.good(), "cannot open CSV file " + path);
    const std::string text = sdesign::csv_matrix(M);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    sdesign::require_param(out.good(), "failed writing CSV file " + path);
}

sdesign::VerifyMode mode_from_name(const std::string& mode) {
    if (mode == "exhaustive") return sdesign::VerifyMode::exhaustive;
    if (mode == "sample") return sdesign::VerifyMode::sample;
    throw ParamError("--mode must be exhaustive or sample: got \"" + mode +
                     "\"");
}

int run(int argc, char** argv) {
    using namespace sdesign;

    CLI::App app{
        "subspace designs from cyclotomic function fields, and the "
        "dimension expanders they condense into"};
    app.require_subcommand(1);

    // shared option storage
    std::uint64_t q = 0;
    std::string p_str, out_path, csv_prefix, in_path, mode = "exhaustive";
    std::string variant, eps_str, alpha_str = "1/3", funcs_path;
    std::uint32_t r = 0, t = 0, m = 0, s = 0, n = 0, b = 0;
    std::int64_t c = 0;
    bool minusQ = false;
    bool have_eps = false, have_m = false, have_r = false, have_t = false,
         have_s = false, have_p = false;
    std::uint64_t samples = 1000, seed = kDefaultSeed,
                  cap = kDefaultExhaustiveCap;
    int precision = 0;

    const char* seed_doc =
        "seed for sample-mode subspace draws (default 0; all randomness "
        "flows from this one value)";

    auto* gd = app.add_subcommand(
        "gen-design",
        "construct a subspace design; either give --variant with the direct "
        "parameters, or --eps/--s/--m for the parameter-driven route");
    gd->add_option("--variant", variant,
                   "construction route: cyclotomic, quadratic or foldedRS");
    gd->add_option("--q", q, "field size (prime power)")->required();
    gd->add_option("--p", p_str,
                   "conductor polynomial literal, e.g. \"x^2+x+2\"")
        ->each([&](const std::string&) { have_p = true; });
    gd->add_option("--r", r, "degree of the places cutting the subspaces")
        ->each([&](const std::string&) { have_r = true; });
    gd->add_option("--t", t, "zero-block length along each place orbit")
        ->each([&](const std::string&) { have_t = true; });
    gd->add_option("--m", m, "ambient dimension")
        ->each([&](const std::string&) { have_m = true; });
    gd->add_option("--eps", eps_str,
                   "target rate parameter as an exact rational, e.g. 1/2")
        ->each([&](const std::string&) { have_eps = true; });
    gd->add_option("--s", s, "target intersection order")
        ->each([&](const std::string&) { have_s = true; });
    gd->add_option("--out", out_path, "write JSON here instead of stdout");
    gd->add_option("--csv", csv_prefix,
                   "also write each subspace matrix to <prefix><i>.csv");

    auto* vd = app.add_subcommand("verify-design",
                                  "check the intersection bound of a design "
                                  "document against subspaces of dimension "
                                  "s'");
    vd->add_option("--in", in_path, "design JSON file (- for stdin)")
        ->required();
    vd->add_option("--s", s, "intersection order s' to test")->required();
    vd->add_option("--mode", mode, "exhaustive or sample");
    vd->add_option("--samples", samples,
                   "number of draws in sample mode (default 1000)");
    vd->add_option("--seed", seed, seed_doc);
    vd->add_option("--cap", cap,
                   "refuse exhaustive enumeration beyond this many subspaces");
    vd->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* ge = app.add_subcommand("gen-expander",
                                  "condense a target-parameter design into "
                                  "a dimension expander");
    ge->add_option("--q", q, "field size (prime power)")->required();
    ge->add_option("--n", n, "dimension of the expander space")->required();
    ge->add_option("--b", b, "largest subspace dimension to expand")
        ->required();
    ge->add_option("--out", out_path, "write JSON here instead of stdout");
    ge->add_option("--csv", csv_prefix,
                   "also write each map matrix to <prefix><i>.csv");

    auto* ve = app.add_subcommand("verify-expander",
                                  "check the expansion ratio of an expander "
                                  "document");
    ve->add_option("--in", in_path, "expander JSON file (- for stdin)")
        ->required();
    ve->add_option("--b", b, "largest subspace dimension to test")
        ->required();
    ve->add_option("--alpha", alpha_str,
                   "required expansion margin as an exact rational "
                   "(default 1/3)");
    ve->add_option("--mode", mode, "exhaustive or sample");
    ve->add_option("--samples", samples,
                   "number of draws per dimension in sample mode "
                   "(default 1000)");
    ve->add_option("--seed", seed, seed_doc);
    ve->add_option("--cap", cap,
                   "refuse exhaustive enumeration beyond this many subspaces");
    ve->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* pl = app.add_subcommand("places",
                                  "list the orbits of completely split "
                                  "degree-r places of the cyclotomic field "
                                  "of conductor p");
    pl->add_option("--q", q, "field size (prime power)")->required();
    pl->add_option("--p", p_str, "conductor polynomial literal")->required();
    pl->add_option("--r", r, "place degree")->required();
    pl->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* rb = app.add_subcommand("rr-basis",
                                  "basis of the Riemann-Roch space of c "
                                  "times the infinite-place divisor, "
                                  "optionally minus the ramified place");
    rb->add_option("--q", q, "field size (prime power)")->required();
    rb->add_option("--p", p_str, "conductor polynomial literal")->required();
    rb->add_option("--c", c, "divisor multiple c")->required();
    rb->add_flag("--minusQ", minusQ,
                 "subtract the place above the conductor");
    rb->add_option("--precision", precision,
                   "Laurent precision override (default: automatic)");
    rb->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* md = app.add_subcommand("moore-det",
                                  "determinant of the automorphism Moore "
                                  "matrix of the given functions");
    md->add_option("--q", q, "field size (prime power)")->required();
    md->add_option("--p", p_str, "conductor polynomial literal")->required();
    md->add_option("--funcs-file", funcs_path,
                   "JSON array of function field elements {e, A}")
        ->required();
    md->add_option("--out", out_path, "write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (gd->parsed()) {
        DesignInstance D;
        if (have_eps || (have_s && !have_r && !have_t)) {
            require_param(have_eps && have_s && have_m,
                          "the parameter-driven route needs --eps, --s and "
                          "--m (and no --variant/--p/--r/--t)");
            require_param(variant.empty() && !have_p && !have_r && !have_t,
                          "--eps/--s selects the parameter-driven route; it "
                          "takes no --variant, --p, --r or --t");
            const auto [eps_num, eps_den] = parse_rational(eps_str, "--eps");
            D = design_from_target(q, m, eps_num, eps_den, s);
        } else {
            require_param(!variant.empty(),
                          "give --variant (or --eps/--s/--m for the "
                          "parameter-driven route)");
            const DesignVariant v = variant_from_name(variant);
            Field F(q);
            switch (v) {
                case DesignVariant::cyclotomic:
                    require_param(have_p && have_r && have_t,
                                  "cyclotomic designs need --p, --r and --t");
                    require_param(!have_m,
                                  "cyclotomic designs take no --m (the "
                                  "ambient dimension is q^deg(p) - 1)");
                    D = build_design_cyclotomic(q, pparse(F, p_str), r, t);
                    break;
                case DesignVariant::quadratic:
                    require_param(have_p && have_m && have_r && have_t,
                                  "quadratic designs need --p, --m, --r and "
                                  "--t");
                    D = build_design_quadratic(q, pparse(F, p_str), m, r, t);
                    break;
                case DesignVariant::foldedRS:
                    require_param(have_m && have_r && have_t,
                                  "foldedRS designs need --m, --r and --t");
                    require_param(!have_p,
                                  "foldedRS designs take no conductor --p");
                    D = build_design_folded_rs(q, m, r, t);
                    break;
            }
        }
        emit(design_to_json(D), out_path);
        if (!csv_prefix.empty())
            for (std::size_t i = 0; i < D.subspaces.size(); ++i)
                write_csv(csv_prefix, i, D.subspaces[i].rows);
        std::fprintf(stderr,
                     "built %s design: q=%llu m=%u r=%u t=%u subspaces=%zu "
                     "ell=%lld L(1)=%lld L(%u)=%lld\n",
                     variant_name(D.params.variant).c_str(),
                     static_cast<unsigned long long>(D.params.q), D.params.m,
                     D.params.r, D.params.t, D.subspaces.size(),
                     static_cast<long long>(D.params.ell),
                     static_cast<long long>(D.bound(1)), D.params.s_max,
                     static_cast<long long>(D.bound(D.params.s_max)));
        return 0;
    }

    if (vd->parsed()) {
        DesignInstance D = design_from_json(load_json(in_path));
        VerifyOptions opt;
        opt.mode = mode_from_name(mode);
        opt.samples = samples;
        opt.seed = seed;
        opt.cap = cap;
        VerificationReport rep = verify_design(D, s, opt);
        emit(report_to_json(rep), out_path);
        std::fprintf(stderr,
                     "%s verification at s'=%u: tested=%llu max_total=%lld "
                     "bound=%lld -> %s\n",
                     mode.c_str(), s,
                     static_cast<unsigned long long>(rep.tested),
                     static_cast<long long>(rep.max_total),
                     static_cast<long long>(rep.bound),
                     rep.pass ? "PASS" : "FAIL");
        return rep.pass ? 0 : 1;
    }

    if (ge->parsed()) {
        ExpanderInstance E = build_expander(q, n, b);
        emit(expander_to_json(E), out_path);
        if (!csv_prefix.empty())
            for (std::size_t i = 0; i < E.maps.size(); ++i)
                write_csv(csv_prefix, i, E.maps[i]);
        if (E.degree() == 0) {
            std::fprintf(stderr,
                         "built empty expander (degree 0): %s\n",
                         E.note.empty() ? "no design blocks were usable"
                                        : E.note.c_str());
        } else {
            std::fprintf(stderr,
                         "built expander: q=%llu n=%u degree=%u (M=%u of %u "
                         "usable blocks, %u skipped) from design m=%u\n",
                         static_cast<unsigned long long>(E.q), E.n,
                         E.degree(), E.M, E.available, E.skipped, E.mhat);
        }
        return 0;
    }

    if (ve->parsed()) {
        ExpanderInstance E = expander_from_json(load_json(in_path));
        const auto [an, ad] = parse_rational(alpha_str, "--alpha");
        VerifyOptions opt;
        opt.mode = mode_from_name(mode);
        opt.samples = samples;
        opt.seed = seed;
        opt.cap = cap;
        ExpanderReport rep = verify_expander(E, b, an, ad, opt);
        emit(expander_report_to_json(rep), out_path);
        std::fprintf(stderr,
                     "%s verification up to b=%u: tested=%llu min ratio "
                     "%u/%u vs 1+%llu/%llu -> %s; kernel accounting %s\n",
                     mode.c_str(), b,
                     static_cast<unsigned long long>(rep.tested), rep.min_dim,
                     rep.min_ell, static_cast<unsigned long long>(an),
                     static_cast<unsigned long long>(ad),
                     rep.pass ? "PASS" : "FAIL",
                     rep.invariant_ok ? "holds" : "VIOLATED");
        return (rep.pass && rep.invariant_ok) ? 0 : 1;
    }

    if (pl->parsed()) {
        Field F(q);
        CycCtx C = cyc_ctx_make(F, pparse(F, p_str));
        auto orbits = split_places(C, r);
        emit(places_to_json(C, orbits, r), out_path);
        std::fprintf(stderr,
                     "found %zu orbit(s) of completely split degree-%u "
                     "places (orbit length %llu)\n",
                     orbits.size(), r,
                     static_cast<unsigned long long>(C.m));
        return 0;
    }

    if (rb->parsed()) {
        Field F(q);
        CycCtx C = cyc_ctx_make(F, pparse(F, p_str));
        RRBasis B = rr_basis(C, c, minusQ, precision);
        emit(rrbasis_to_json(C, B), out_path);
        std::fprintf(stderr, "Riemann-Roch space of degree %lld%s: dim=%zu\n",
                     static_cast<long long>(C.d) * static_cast<long long>(c),
                     minusQ ? " minus the ramified place" : "", B.dim());
        return 0;
    }

    if (md->parsed()) {
        Field F(q);
        CycCtx C = cyc_ctx_make(F, pparse(F, p_str));
        nlohmann::json in = load_json(funcs_path);
        require_param(in.is_array() && !in.empty(),
                      "--funcs-file must hold a non-empty JSON array of "
                      "function field elements");
        std::vector<FFElem> fs;
        for (const auto& f : in) {
            FFElem raw = ffe_from_json(F, f);
            fs.push_back(ffe_make(C, raw.e, std::move(raw.A)));
        }
        FFElem det = sigma_moore_det(C, fs);
        nlohmann::json j;
        j["format"] = "moore-determinant";
        j["q"] = q;
        j["p"] = poly_to_json(F, C.p);
        j["s"] = fs.size();
        j["det"] = ffe_to_json(F, det);
        j["nonzero"] = !ffe_is_zero(det);
        emit(j, out_path);
        std::fprintf(stderr,
                     "Moore determinant of %zu function(s): %s\n", fs.size(),
                     ffe_is_zero(det)
                         ? "zero (dependent over the base field)"
                         : "nonzero (independent over the base field)");
        return 0;
    }

    return 2;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sdesign::ParamError& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 2;
    } catch (const sdesign::PrecisionError& e) {
        std::fprintf(stderr,
                     "precision failure: %s (raise --precision)\n", e.what());
        return 2;
    } catch (const sdesign::InvariantError& e) {
        std::fprintf(stderr, "internal invariant failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
}
