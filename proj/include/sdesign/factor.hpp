#pragma once
// Deterministic polynomial factorization utilities over finite fields, plus
// explicit extension-field construction (flattening F_q^r to a prime-field
// extension with an embedding of F_q).
//
// All procedures are deterministic: sweeps are ordered canonically and fall
// back to exhaustive enumeration at desk scale, never to randomness.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sdesign/linalg.hpp"
#include "sdesign/poly.hpp"

namespace sdesign {

bool is_irreducible(const Field& F, const Poly& f);

// Roots in F with multiplicities, sorted by canonical element order.
std::vector<std::pair<elem_t, int>> proots(const Field& F, const Poly& f);

// Monic irreducible factorization, sorted by (degree, canonical poly order);
// exponents alongside.  f nonzero.
std::vector<std::pair<Poly, int>> pfactor(const Field& F, const Poly& f);

// Visit all monic polynomials of the given degree in canonical order.
// Return false from the visitor to stop early.
void enumerate_monic(const Field& F, std::uint32_t deg,
                     const std::function<bool(const Poly&)>& visit);

// All monic irreducibles of the given degree, canonical order.
std::vector<Poly> irreducible_enumerate(const Field& F, std::uint32_t deg);

// Canonically-first monic irreducible of the given degree (early exit, so
// usable where full enumeration would be too large).
Poly first_irreducible_poly(const Field& F, std::uint32_t deg);

// Canonically-first monic primitive polynomial of the given degree.
Poly first_primitive_poly(const Field& F, std::uint32_t deg);

// Count of monic irreducibles of degree d over F_q (necklace formula).
std::uint64_t irreducible_count(std::uint64_t q, std::uint32_t d);

// Monic irreducible f is primitive iff x mod f generates the unit group.
bool is_primitive(const Field& F, const Poly& f);
// Multiplicative order of x modulo f (f monic irreducible, f != x).
std::uint64_t order_of_x_mod(const Field& F, const Poly& f);

// F_q[x]/(g) flattened to an explicit extension of the prime field: K is a
// single extension of F_p, `embed` realizes F_q inside K (canonically-least
// root of the base modulus) and `xbar` is the canonically-least root of g.
struct ExtField {
    Field K;                    // the flattened field F_{q^r} over F_p
    std::uint32_t r;            // degree over the base field F_q
    elem_t xbar;                // image of x (a root of g in K)
    std::vector<elem_t> embed;  // embed[a] = image in K of base element code a
    Poly g;                     // the defining modulus over the base field
    Mat decomp_inv;             // F_p-inverse of the basis {embed(y^t) xbar^j}
};

// Build F_q[x]/(g) for monic irreducible g of degree r >= 1 with q^r within
// the desk-scale cap.  Errors carry a witness factor when g is reducible.
ExtField ext_field_make(const Field& base, const Poly& g);

// Evaluate f in F_q[x] at a point of the extension (coefficients embedded).
elem_t ext_eval(const ExtField& E, const Field& base, const Poly& f, elem_t at);

// Coordinates of v in the basis {1, xbar, .., xbar^(r-1)} over the embedded
// base field; length r, base-field element codes.
std::vector<elem_t> ext_decompose(const ExtField& E, const Field& base, elem_t v);

// Minimal polynomial of v over the embedded base field (monic, in F_q[x]).
Poly ext_minpoly(const ExtField& E, const Field& base, elem_t v);

}  // namespace sdesign
