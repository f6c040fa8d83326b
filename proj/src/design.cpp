#include "sdesign/design.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sdesign/common.hpp"
#include "sdesign/factor.hpp"
#include "sdesign/riemannroch.hpp"
#include "sdesign/rng.hpp"

namespace sdesign {

std::string variant_name(DesignVariant v) {
    switch (v) {
        case DesignVariant::foldedRS: return "foldedRS";
        case DesignVariant::quadratic: return "quadratic";
        case DesignVariant::cyclotomic: return "cyclotomic";
    }
    throw InvariantError("unknown design variant");
}

DesignVariant variant_from_name(const std::string& name) {
    if (name == "foldedRS") return DesignVariant::foldedRS;
    if (name == "quadratic") return DesignVariant::quadratic;
    if (name == "cyclotomic") return DesignVariant::cyclotomic;
    throw ParamError("unknown design variant: " + name +
                     " (expected foldedRS, quadratic or cyclotomic)");
}

namespace {

std::vector<std::uint32_t> pivots_of(const Mat& M) {
    std::vector<std::uint32_t> piv;
    piv.reserve(M.rows);
    for (std::uint32_t i = 0; i < M.rows; ++i) {
        std::uint32_t j = 0;
        while (j < M.cols && M.at(i, j) == 0) ++j;
        require_invariant(j < M.cols, "subspace basis has a zero row");
        piv.push_back(j);
    }
    return piv;
}

// Subspace of the coefficient space cut by one zero block: the kernel of the
// (r*t) x dim matrix whose rows are the F_q-coordinates (via the residue
// field's power basis) of the basis functions' residues at t consecutive
// places of the orbit.
SubspaceBasis cut_subspace_field(const CycCtx& C,
                                 const std::vector<FFElem>& basis,
                                 const PlaceOrbit& O, std::uint32_t r,
                                 std::uint32_t t, std::uint32_t start) {
    const Field& F = C.F;
    const auto dim = static_cast<std::uint32_t>(basis.size());
    Mat A(r * t, dim);
    for (std::uint32_t i = 0; i < t; ++i) {
        for (std::uint32_t k = 0; k < dim; ++k) {
            const elem_t v = evaluate_at(C, basis[k], O, start + i);
            const std::vector<elem_t> coords = ext_decompose(O.E, F, v);
            for (std::uint32_t c = 0; c < r; ++c) A.at(i * r + c, k) = coords[c];
        }
    }
    SubspaceBasis S;
    S.rows = kernel(F, A);
    S.pivots = pivots_of(S.rows);
    S.orbit_g = O.g;
    S.start = start;
    require_invariant(S.rows.rows + static_cast<std::uint64_t>(r) * t >= dim,
                      "subspace codimension exceeds r*t");
    return S;
}

// Shared by the cyclotomic and quadratic builders: every orbit contributes
// floor(orbit length / t) subspaces at offsets 0, t, 2t, ...; the leftover
// places at the end of each orbit are discarded.
void append_orbit_subspaces(DesignInstance& D, const CycCtx& C,
                            const std::vector<PlaceOrbit>& orbits,
                            std::uint32_t r, std::uint32_t t) {
    for (const PlaceOrbit& O : orbits) {
        const auto len = static_cast<std::uint32_t>(O.roots.size());
        for (std::uint32_t start = 0; start + t <= len; start += t)
            D.subspaces.push_back(
                cut_subspace_field(C, D.Vbasis, O, r, t, start));
    }
}

std::string no_places_message(std::uint32_t r) {
    return "no completely split places of degree " + std::to_string(r) +
           ": every monic irreducible of degree " + std::to_string(r) +
           " congruent to 1 modulo the conductor was searched; try a larger "
           "degree coprime to the Galois group order";
}

}  // namespace

std::int64_t design_bound(const DesignParams& P, std::uint32_t sprime) {
    require_param(sprime >= 1 && sprime <= P.s_max,
                  "s' must satisfy 1 <= s' <= " + std::to_string(P.s_max) +
                      ": got " + std::to_string(sprime));
    const std::int64_t denom = static_cast<std::int64_t>(P.r) *
                               (static_cast<std::int64_t>(P.t) - sprime + 1);
    return floor_div(P.ell * sprime, denom);
}

std::int64_t DesignInstance::bound(std::uint32_t sprime) const {
    return design_bound(params, sprime);
}

std::int64_t DesignInstance::target_bound(std::uint32_t sprime) const {
    require_param(params.has_target,
                  "the coarse guarantee is recorded only for designs built "
                  "from target parameters");
    require_param(sprime >= 1 && sprime <= params.target_s,
                  "s' must satisfy 1 <= s' <= " +
                      std::to_string(params.target_s) + ": got " +
                      std::to_string(sprime));
    return static_cast<std::int64_t>(2ULL * sprime * params.d *
                                     params.eps_den / params.eps_num);
}

DesignInstance build_design_cyclotomic(std::uint64_t q, const Poly& p,
                                       std::uint32_t r, std::uint32_t t) {
    Field F(q);
    CycCtx C = cyc_ctx_make(F, p);
    const std::uint64_t m = C.m;
    require_param(r >= 1 && gcd_u64(r, m) == 1,
                  "place degree r must be >= 1 and coprime to the Galois "
                  "group order " + std::to_string(m) + ": got r = " +
                      std::to_string(r));
    require_param(t >= 1 && t <= m,
                  "block length t must satisfy 1 <= t <= " + std::to_string(m) +
                      ": got t = " + std::to_string(t));

    ComplementSpace CS = complement_space(C);
    std::vector<PlaceOrbit> orbits = split_places(C, r);
    require_param(!orbits.empty(), no_places_message(r));

    DesignInstance D;
    D.params.q = q;
    D.params.variant = DesignVariant::cyclotomic;
    D.params.p = p;
    D.params.d = C.d;
    D.params.m = static_cast<std::uint32_t>(m);
    D.params.r = r;
    D.params.t = t;
    D.params.ell = CS.ell;
    D.params.s_max = t;
    D.Vbasis = CS.V.basis;
    append_orbit_subspaces(D, C, orbits, r, t);
    return D;
}

DesignInstance build_design_quadratic(std::uint64_t q, const Poly& p2,
                                      std::uint32_t m, std::uint32_t r,
                                      std::uint32_t t) {
    Field F(q);
    CycCtx C = cyc_ctx_make(F, p2);
    require_param(C.d == 2, "quadratic variant requires a degree-2 conductor: "
                            "got degree " + std::to_string(C.d));
    const std::uint64_t n = C.m;  // q^2 - 1, the Galois group order
    const std::int64_t g = genus(q, 2);
    require_param(m >= 1 && 2ULL * m <= q * q,
                  "ambient dimension must satisfy 1 <= m <= q^2/2: got m = " +
                      std::to_string(m));
    require_param(static_cast<std::int64_t>(m) >= g,
                  "ambient dimension must be at least the genus " +
                      std::to_string(g) + " so the dimension law applies: "
                      "got m = " + std::to_string(m));
    const std::int64_t ell = static_cast<std::int64_t>(m) + g - 1;
    require_param(ell % 2 == 0,
                  "deg D = m + genus - 1 = " + std::to_string(ell) +
                      " must be even (the conductor place has degree 2); "
                      "nearest valid ambient dimensions are " +
                      std::to_string(m - 1) + " and " + std::to_string(m + 1));
    require_param(ell < static_cast<std::int64_t>(n),
                  "deg D = " + std::to_string(ell) +
                      " must be smaller than q^2 - 1 = " + std::to_string(n));
    require_param(r >= 1 && gcd_u64(r, n) == 1,
                  "place degree r must be >= 1 and coprime to the Galois "
                  "group order " + std::to_string(n) + ": got r = " +
                      std::to_string(r));
    require_param(t >= 1 && t <= n,
                  "block length t must satisfy 1 <= t <= " + std::to_string(n) +
                      ": got t = " + std::to_string(t));

    RRBasis B = rr_basis(C, ell / 2, false);
    require_invariant(B.dim() == m,
                      "ambient Riemann-Roch space has unexpected dimension");
    std::vector<PlaceOrbit> orbits = split_places(C, r);
    require_param(!orbits.empty(), no_places_message(r));

    DesignInstance D;
    D.params.q = q;
    D.params.variant = DesignVariant::quadratic;
    D.params.p = p2;
    D.params.d = 2;
    D.params.m = m;
    D.params.r = r;
    D.params.t = t;
    D.params.ell = ell;
    D.params.s_max = t;
    D.Vbasis = B.basis;
    append_orbit_subspaces(D, C, orbits, r, t);
    return D;
}

DesignInstance build_design_folded_rs(std::uint64_t q, std::uint32_t m,
                                      std::uint32_t r, std::uint32_t t) {
    Field F(q);
    require_param(m >= 1 && m < q - 1,
                  "ambient dimension must satisfy 1 <= m < q - 1: got m = " +
                      std::to_string(m));
    const auto n = static_cast<std::uint32_t>(q - 1);  // orbit length
    require_param(t >= 1 && t <= n,
                  "block length t must satisfy 1 <= t <= q - 1 = " +
                      std::to_string(n) + ": got t = " + std::to_string(t));
    require_param(r >= 1 && gcd_u64(r, n) == 1,
                  "place degree r must be >= 1 and coprime to q - 1 = " +
                      std::to_string(n) + ": got r = " + std::to_string(r));
    require_param(ipow_capped(q, r, kFieldSizeCap) <= kFieldSizeCap,
                  "residue field q^r exceeds the field size cap");

    const elem_t gamma = F.primitive_element();

    DesignInstance D;
    D.params.q = q;
    D.params.variant = DesignVariant::foldedRS;
    D.params.d = 0;
    D.params.m = m;
    D.params.r = r;
    D.params.t = t;
    D.params.ell = static_cast<std::int64_t>(m) - 1;
    D.params.s_max = t;
    D.polyBasis = folded_rs_space(F, m);

    // One orbit = the multiplicative translates {gamma^i * beta} of a point
    // beta of degree r; the orbit has exactly q-1 distinct places because
    // gcd(r, q-1) = 1 and every nonzero point is unramified under folding.
    // For each orbit the basis (monomial) residues at t consecutive points
    // give the constraint rows; beta = 0 (the ramified point) is excluded.
    struct RSOrbit {
        Poly g0;
        std::optional<ExtField> E;  // engaged when r >= 2
        std::vector<elem_t> pts;
    };
    std::vector<RSOrbit> orbits;
    if (r == 1) {
        RSOrbit O;
        O.pts.reserve(n);
        elem_t pt = F.one();
        for (std::uint32_t i = 0; i < n; ++i) {
            O.pts.push_back(pt);
            pt = F.mul(pt, gamma);
        }
        O.g0 = Poly{{F.neg(F.one()), 1}};  // minimal polynomial of 1
        orbits.push_back(std::move(O));
    } else {
        struct PolyCanonLess {
            const Field* F;
            bool operator()(const Poly& a, const Poly& b) const {
                return ppless(*F, a, b);
            }
        };
        std::set<Poly, PolyCanonLess> seen(PolyCanonLess{&F});
        for (const Poly& g : irreducible_enumerate(F, r)) {
            if (seen.count(g)) continue;
            RSOrbit O;
            O.g0 = g;
            O.E = ext_field_make(F, g);
            const elem_t gammaK = O.E->embed[gamma];
            elem_t pt = O.E->xbar;
            for (std::uint32_t i = 0; i < n; ++i) {
                O.pts.push_back(pt);
                const Poly mp = ext_minpoly(*O.E, F, pt);
                require_invariant(
                    mp.deg() == static_cast<int>(r) && seen.insert(mp).second,
                    "orbit of a degree-r point must consist of q-1 distinct "
                    "degree-r places when gcd(r, q-1) = 1");
                pt = O.E->K.mul(pt, gammaK);
            }
            orbits.push_back(std::move(O));
        }
        require_invariant(!orbits.empty(),
                          "degree-r irreducibles exist for every r >= 1");
    }

    for (const RSOrbit& O : orbits) {
        for (std::uint32_t start = 0; start + t <= n; start += t) {
            Mat A(r * t, m);
            for (std::uint32_t i = 0; i < t; ++i) {
                const elem_t pt = O.pts[start + i];
                if (r == 1) {
                    elem_t pw = F.one();
                    for (std::uint32_t k = 0; k < m; ++k) {
                        A.at(i, k) = pw;
                        pw = F.mul(pw, pt);
                    }
                } else {
                    elem_t pw = O.E->K.one();
                    for (std::uint32_t k = 0; k < m; ++k) {
                        const std::vector<elem_t> coords =
                            ext_decompose(*O.E, F, pw);
                        for (std::uint32_t c = 0; c < r; ++c)
                            A.at(i * r + c, k) = coords[c];
                        pw = O.E->K.mul(pw, pt);
                    }
                }
            }
            SubspaceBasis S;
            S.rows = kernel(F, A);
            S.pivots = pivots_of(S.rows);
            S.orbit_g = O.g0;
            S.start = start;
            require_invariant(
                S.rows.rows + static_cast<std::uint64_t>(r) * t >= m,
                "subspace codimension exceeds r*t");
            D.subspaces.push_back(std::move(S));
        }
    }
    return D;
}

DesignInstance design_from_target(std::uint64_t q, std::uint32_t m,
                                  std::uint64_t eps_num,
                                  std::uint64_t eps_den, std::uint32_t s) {
    require_param(eps_num >= 1 && eps_den >= 1 && eps_num <= eps_den,
                  "epsilon must be a rational in (0, 1]");
    require_param(s >= 1, "s must be >= 1");
    Field F(q);

    // m must be q^d - 1 for some d >= 1.
    std::uint32_t d = 0;
    {
        std::uint64_t below = 0, v = 1;
        for (std::uint32_t k = 1;; ++k) {
            v *= q;
            if (v - 1 == m) {
                d = k;
                break;
            }
            if (v - 1 > m) {
                const std::uint64_t lo = below > 0 ? below : q - 1;
                const std::uint64_t hi = below > 0 ? v - 1 : q * q - 1;
                require_param(false,
                              "ambient dimension " + std::to_string(m) +
                                  " is not of the form q^d - 1 for q = " +
                                  std::to_string(q) +
                                  "; nearest admissible values are " +
                                  std::to_string(lo) + " and " +
                                  std::to_string(hi));
            }
            below = v - 1;
        }
    }
    require_param(4ULL * s * eps_den <= eps_num * m,
                  "s must satisfy s <= eps*m/4: got s = " + std::to_string(s) +
                      " with eps*m/4 = " + std::to_string(eps_num * m) + "/" +
                      std::to_string(4ULL * eps_den));

    const std::uint32_t t = 2 * s;
    std::uint64_t r = eps_num * m / (eps_den * 2 * s);  // >= 2 since s <= eps*m/4
    while (gcd_u64(r, m) != 1) --r;

    const Poly p = first_primitive_poly(F, d);
    DesignInstance D =
        build_design_cyclotomic(q, p, static_cast<std::uint32_t>(r), t);
    D.params.has_target = true;
    D.params.eps_num = eps_num;
    D.params.eps_den = eps_den;
    D.params.target_s = s;
    return D;
}

namespace {

VerificationReport verify_core(const DesignInstance& D, std::uint32_t sprime,
                               const VerifyOptions& opt, bool parallel) {
    const DesignParams& P = D.params;
    require_param(sprime >= 1 && sprime <= P.s_max,
                  "s' must satisfy 1 <= s' <= " + std::to_string(P.s_max) +
                      ": got " + std::to_string(sprime));
    require_param(sprime <= P.m, "s' exceeds the ambient dimension " +
                                     std::to_string(P.m));
    const Field F(P.q);

    VerificationReport rep;
    rep.mode = opt.mode;
    rep.sprime = sprime;
    rep.bound = D.bound(sprime);

    std::optional<SubspaceIter> iter;
    std::uint64_t total = 0;
    if (opt.mode == VerifyMode::exhaustive) {
        const std::uint64_t count =
            gaussian_binomial(P.q, P.m, sprime, opt.cap);
        require_param(count <= opt.cap,
                      "exhaustive verification refused: the number of " +
                          std::to_string(sprime) + "-dimensional subspaces "
                          "of F_q^" + std::to_string(P.m) + " exceeds " +
                          std::to_string(opt.cap) + "; use sample mode or "
                          "raise the cap");
        iter.emplace(F, P.m, sprime);
        total = iter->total();
    } else {
        require_param(opt.samples >= 1, "sample mode requires samples >= 1");
        total = opt.samples;
    }
    rep.tested = total;

    const auto make_W = [&](std::uint64_t k) -> Mat {
        if (iter) return iter->decode(k);
        SplitMix64 rng = derived_stream(opt.seed, k);
        return sample_subspace(F, P.m, sprime, rng);
    };
    const auto score = [&](const Mat& W) -> std::int64_t {
        std::int64_t tot = 0;
        for (const SubspaceBasis& S : D.subspaces)
            if (S.rows.rows > 0)
                tot += intersect_dim_rref(F, S.rows, S.pivots, W);
        return tot;
    };

    std::int64_t best = -1;
    std::uint64_t bestIdx = 0;
    if (!parallel) {
        for (std::uint64_t k = 0; k < total; ++k) {
            const std::int64_t tot = score(make_W(k));
            if (tot > best) {
                best = tot;
                bestIdx = k;
            }
        }
    } else {
#pragma omp parallel
        {
            std::int64_t lbest = -1;
            std::uint64_t lidx = 0;
            // static schedule: each thread sees ascending k, so ">" keeps the
            // thread-local earliest maximizer
#pragma omp for schedule(static)
            for (std::uint64_t k = 0; k < total; ++k) {
                const std::int64_t tot = score(make_W(k));
                if (tot > lbest) {
                    lbest = tot;
                    lidx = k;
                }
            }
#pragma omp critical
            {
                if (lbest > best || (lbest == best && lidx < bestIdx)) {
                    best = lbest;
                    bestIdx = lidx;
                }
            }
        }
    }

    require_invariant(best >= 0, "verification examined no subspaces");
    rep.max_total = best;
    rep.witness = make_W(bestIdx);
    rep.pass = rep.max_total <= rep.bound;
    return rep;
}

}  // namespace

VerificationReport verify_design(const DesignInstance& D, std::uint32_t sprime,
                                 const VerifyOptions& opts) {
    return verify_core(D, sprime, opts, true);
}

VerificationReport verify_design_serial(const DesignInstance& D,
                                        std::uint32_t sprime,
                                        const VerifyOptions& opts) {
    return verify_core(D, sprime, opts, false);
}

}  // namespace sdesign
