#pragma once
// Explicit strong subspace designs over F_q, built by three routes:
//
//   foldedRS   — ambient = polynomials of degree < m over the rational
//                function field, subspaces cut by evaluation constraints
//                along multiplicative orbits of points (the classical
//                folded-Wronskian design, m < q - 1);
//   quadratic  — ambient = a Riemann-Roch space of a degree-2 cyclotomic
//                field, subspaces cut at completely-split places (small
//                ambient dimension, bound (1 + 1/(2*zeta)) m s' / ...);
//   cyclotomic — ambient = the canonical m-dimensional complement space V
//                of a degree-d cyclotomic field, m = q^d - 1 (large ambient
//                dimension).
//
// A design is a list of explicit RREF bases H_i of subspaces of F_q^m with
// the guarantee that every s'-dimensional W satisfies
// sum_i dim(W cap H_i) <= L(s') = floor(ell s' / (r (t - s' + 1))).
// verify_design checks this exhaustively or by seeded sampling.

#include <cstdint>
#include <string>
#include <vector>

#include "sdesign/carlitz.hpp"
#include "sdesign/field.hpp"
#include "sdesign/linalg.hpp"
#include "sdesign/poly.hpp"

namespace sdesign {

inline constexpr std::uint64_t kDefaultSeed = 0;
inline constexpr std::uint64_t kDefaultExhaustiveCap = 10'000'000;

enum class DesignVariant { foldedRS, quadratic, cyclotomic };

std::string variant_name(DesignVariant v);
DesignVariant variant_from_name(const std::string& name);

struct DesignParams {
    std::uint64_t q = 0;
    DesignVariant variant = DesignVariant::cyclotomic;
    Poly p;                   // conductor polynomial (empty for foldedRS)
    std::uint32_t d = 0;      // conductor degree (0 for foldedRS)
    std::uint32_t m = 0;      // ambient dimension
    std::uint32_t r = 0;      // degree of the places cutting the subspaces
    std::uint32_t t = 0;      // length of each zero block along an orbit
    std::int64_t ell = 0;     // degree of the divisor D
    std::uint32_t s_max = 0;  // the guarantee covers 1 <= s' <= s_max (= t)

    // Set by design_from_target: the requested (epsilon, s) and the coarse
    // guarantee floor(2 s' ceil(log_q m) / epsilon) recorded alongside the
    // sharper constructive bound.
    bool has_target = false;
    std::uint64_t eps_num = 0, eps_den = 1;
    std::uint32_t target_s = 0;
};

// The constructive guarantee L(s') = floor(ell*s' / (r*(t-s'+1))),
// 1 <= s' <= s_max, computable from the parameters alone.
std::int64_t design_bound(const DesignParams& P, std::uint32_t sprime);

struct SubspaceBasis {
    Mat rows;                           // k x m, reduced row echelon form
    std::vector<std::uint32_t> pivots;  // pivot columns of `rows`
    Poly orbit_g;            // monic irreducible naming the place orbit
    std::uint32_t start = 0; // offset of the zero block within the orbit
};

struct DesignInstance {
    DesignParams params;
    std::vector<FFElem> Vbasis;  // ambient basis functions (field variants)
    std::vector<Poly> polyBasis; // ambient basis polynomials (foldedRS)
    std::vector<SubspaceBasis> subspaces;

    // The constructive guarantee L(s'), 1 <= s' <= s_max.
    std::int64_t bound(std::uint32_t sprime) const;
    // The coarse target-parameter guarantee (has_target only).
    std::int64_t target_bound(std::uint32_t sprime) const;
};

// Large-dimension route: V is the canonical complement space of the
// degree-d cyclotomic field of the primitive conductor p, m = q^d - 1,
// ell = d * ceil((2g + m - 1)/d).  Requires gcd(r, m) = 1, 1 <= t <= m.
DesignInstance build_design_cyclotomic(std::uint64_t q, const Poly& p,
                                       std::uint32_t r, std::uint32_t t);

// Baseline route: ambient = polynomials of degree < m (m < q - 1),
// subspaces cut by zeros at t consecutive points of gamma-multiplication
// orbits, gamma the canonical primitive element; ell = m - 1.  Requires
// gcd(r, q - 1) = 1 and 1 <= t <= q - 1.
DesignInstance build_design_folded_rs(std::uint64_t q, std::uint32_t m,
                                      std::uint32_t r, std::uint32_t t);

// Small-dimension route: ambient = L((ell/2) P') of the degree-2 cyclotomic
// field of the primitive conductor p2, with ell = m + genus - 1 chosen so
// the ambient dimension is exactly m (requires ell even, ell < q^2 - 1,
// genus <= m <= q^2/2).  Requires gcd(r, q^2 - 1) = 1, 1 <= t <= q^2 - 1.
DesignInstance build_design_quadratic(std::uint64_t q, const Poly& p2,
                                      std::uint32_t m, std::uint32_t r,
                                      std::uint32_t t);

// Parameter-driven dispatcher: m must equal q^d - 1 for some d (otherwise
// an error names the two nearest admissible values), s <= eps*m/4; builds
// the cyclotomic design with t = 2s and r the largest integer at most
// floor(eps*m/(2s)) that is coprime to m, using the canonically-first
// primitive conductor of degree d.  eps is the exact rational
// eps_num/eps_den.
DesignInstance design_from_target(std::uint64_t q, std::uint32_t m,
                                  std::uint64_t eps_num,
                                  std::uint64_t eps_den, std::uint32_t s);

enum class VerifyMode { exhaustive, sample };

struct VerifyOptions {
    VerifyMode mode = VerifyMode::exhaustive;
    std::uint64_t samples = 0;  // number of draws in sample mode
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t cap = kDefaultExhaustiveCap;  // exhaustive refusal cap
};

struct VerificationReport {
    VerifyMode mode = VerifyMode::exhaustive;
    std::uint32_t sprime = 0;
    std::uint64_t tested = 0;
    std::int64_t max_total = 0;  // max over W of sum_i dim(W cap H_i)
    std::int64_t bound = 0;      // L(sprime)
    Mat witness;                 // earliest W attaining max_total
    bool pass = false;
};

// Check sum_i dim(W cap H_i) <= L(s') over all (exhaustive) or `samples`
// seeded-random (sample) s'-dimensional subspaces W of F_q^m.  Exhaustive
// mode refuses when the subspace count exceeds opts.cap.  The parallel
// verifier partitions the index range across threads; results (including
// the witness) are independent of the schedule.
VerificationReport verify_design(const DesignInstance& D, std::uint32_t sprime,
                                 const VerifyOptions& opts);
// Single-threaded reference implementation with identical semantics.
VerificationReport verify_design_serial(const DesignInstance& D,
                                        std::uint32_t sprime,
                                        const VerifyOptions& opts);

}  // namespace sdesign
