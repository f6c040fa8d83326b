#pragma once
// Carlitz-module arithmetic for the cyclotomic function field F obtained by
// adjoining the torsion of a monic primitive conductor p(x) to K = F_q(x):
//   * q-linearized Carlitz polynomials rho_A(z),
//   * the cyclotomic modulus Psi_p(z) = rho_p(z)/z (Eisenstein at p),
//   * exact field arithmetic over the integral basis {1, lambda, ...,
//     lambda^{m-1}} with p-power denominators (m = q^deg(p) - 1),
//   * the Galois action sigma_A : lambda -> rho_A(lambda),
//   * the valuation at the unique place above the conductor,
//   * enumeration of completely-split places of a chosen degree, organized in
//     Galois orbits, and evaluation of field elements at those places.

#include <cstdint>
#include <utility>
#include <vector>

#include "sdesign/factor.hpp"
#include "sdesign/field.hpp"
#include "sdesign/poly.hpp"

namespace sdesign {

// rho_A as a q-linearized polynomial: entry i is the coefficient in F_q[x] of
// z^{q^i}.  rho_0 is the empty sequence (the zero map); rho_1 = {1}.
// Satisfies rho_{A+B} = rho_A + rho_B and rho_{AB} = rho_A o rho_B.
std::vector<Poly> carlitz_linearized(const Field& F, const Poly& A);

// Psi_p(z) = rho_p(z)/z for monic irreducible p of degree d, returned dense in
// z (ascending; length q^d, leading coefficient the constant polynomial 1).
std::vector<Poly> cyclotomic_modulus(const Field& F, const Poly& p);

// Context for the cyclotomic function field of a monic primitive conductor.
// Immutable after construction; safe for concurrent read-only use.
struct CycCtx {
    Field F;
    Poly p;           // monic primitive conductor
    std::uint32_t d;  // deg p
    std::uint64_t m;  // q^d - 1, the degree of F over K and the basis length
    // Sparse cyclotomic modulus: pairs (q^i - 1, c_i) for i = 0..d with c_d=1.
    // Eisenstein at p: c_0 = p exactly and p divides every other non-leading
    // coefficient (verified at construction).
    std::vector<std::pair<std::uint64_t, Poly>> psi;
};

CycCtx cyc_ctx_make(const Field& F, const Poly& p);

// Element p(x)^{-e} * sum_i A[i] lambda^i over the integral basis.  A always
// has length m.  Normalized: the zero element has e = 0 and all A[i] = 0, and
// whenever e > 0 some A[i] is not divisible by p.  All constructors and
// arithmetic below return normalized values, so == is semantic equality.
struct FFElem {
    std::int64_t e = 0;
    std::vector<Poly> A;

    bool operator==(const FFElem&) const = default;
};

FFElem ffe_zero(const CycCtx& C);
FFElem ffe_one(const CycCtx& C);
FFElem ffe_lambda(const CycCtx& C);
FFElem ffe_from_poly(const CycCtx& C, const Poly& a);
// Normalized element from raw parts; A is padded or trimmed to length m.
FFElem ffe_make(const CycCtx& C, std::int64_t e, std::vector<Poly> A);
bool ffe_is_zero(const FFElem& f);

FFElem ffe_add(const CycCtx& C, const FFElem& f, const FFElem& g);
FFElem ffe_sub(const CycCtx& C, const FFElem& f, const FFElem& g);
FFElem ffe_neg(const CycCtx& C, const FFElem& f);
// Products reduce lambda-powers >= m through Psi_p(lambda) = 0; since Psi_p is
// monic with polynomial coefficients this stays in polynomial arithmetic, and
// the p-power denominator is renormalized afterwards.
FFElem ffe_mul(const CycCtx& C, const FFElem& f, const FFElem& g);
FFElem ffe_scale(const CycCtx& C, const FFElem& f, const Poly& a);  // f * a(x)
FFElem ffe_mul_ppow(const CycCtx& C, const FFElem& f, std::int64_t k);  // f * p^k
FFElem ffe_pow(const CycCtx& C, FFElem f, std::uint64_t n);

// Image of f under the automorphism sigma_A : lambda -> rho_A(lambda).
// Requires gcd(A, p) = 1.  sigma_x generates the Galois group (p primitive),
// and applying sigma_x m times is the identity.
FFElem sigma_apply(const CycCtx& C, const FFElem& f, const Poly& A);

// Valuation sentinel for the zero element.
inline constexpr std::int64_t kPlaceValInfinity = std::int64_t(1) << 27;

// Valuation of f at the unique (totally ramified) place above the conductor,
// where lambda is a local parameter: -e*m + min_i (m*v_p(A_i) + i).
std::int64_t valuation_at_ramified_place(const CycCtx& C, const FFElem& f);

// One Galois orbit of completely-split places: a monic irreducible g != p
// of degree r with g = 1 (mod p), its residue field F_q[x]/(g), and the m
// roots of Psi_p mod g ordered so that roots[i+1] = roots[i]^q + xbar*roots[i]
// (the Carlitz action of x), starting from the canonically least root.
struct PlaceOrbit {
    Poly g;
    ExtField E;
    std::vector<elem_t> roots;
};

// All orbits of completely-split places of degree r, ordered by the canonical
// order of g.  May be empty.
std::vector<PlaceOrbit> split_places(const CycCtx& C, std::uint32_t r);

// Residue of f at the place of O with root alpha = O.roots[idx]:
// p(xbar)^{-e} * sum_i A_i(xbar) alpha^i computed in the residue field.
elem_t evaluate_at(const CycCtx& C, const FFElem& f, const PlaceOrbit& O,
                   std::size_t idx);

}  // namespace sdesign
