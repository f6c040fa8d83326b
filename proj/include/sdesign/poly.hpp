#pragma once
// Dense univariate polynomials over a Field, ascending coefficients with no
// trailing zeros.  deg(0) = -1.  All operations take the field explicitly;
// a Poly does not own a field reference.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sdesign/field.hpp"

namespace sdesign {

struct Poly {
    std::vector<elem_t> c;  // c[i] multiplies x^i; c.back() != 0 when nonempty

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    elem_t lc() const { return c.back(); }
    elem_t coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }

    static Poly zero() { return {}; }
    static Poly one() { return {{1}}; }
    static Poly constant(elem_t a) { return a ? Poly{{a}} : Poly{}; }
    static Poly x() { return {{0, 1}}; }

    bool operator==(const Poly&) const = default;
};

void ptrim(Poly& a);

Poly padd(const Field& F, const Poly& a, const Poly& b);
Poly psub(const Field& F, const Poly& a, const Poly& b);
Poly pneg(const Field& F, const Poly& a);
Poly pmul(const Field& F, const Poly& a, const Poly& b);
Poly pscale(const Field& F, const Poly& a, elem_t s);
// quotient and remainder; b must be nonzero
std::pair<Poly, Poly> pdivmod(const Field& F, const Poly& a, const Poly& b);
Poly pmod(const Field& F, const Poly& a, const Poly& b);
Poly pdiv_exact(const Field& F, const Poly& a, const Poly& b);  // asserts zero remainder
bool pdivides(const Field& F, const Poly& b, const Poly& a);    // b | a
Poly pgcd(const Field& F, Poly a, Poly b);  // monic
Poly pmonic(const Field& F, const Poly& a);
elem_t peval(const Field& F, const Poly& a, elem_t at);
Poly ppow(const Field& F, Poly a, std::uint64_t e);
Poly ppowmod(const Field& F, Poly a, std::uint64_t e, const Poly& mod);
Poly pderiv(const Field& F, const Poly& a);
// f(s*x): multiplies coefficient of x^i by s^i
Poly pscale_arg(const Field& F, const Poly& a, elem_t s);

// Canonical order on polynomials: by degree, then lexicographically on the
// ascending coefficient tuple (constant term compared first, using the
// field's canonical element order).
bool ppless(const Field& F, const Poly& a, const Poly& b);

// Parse a literal like "x^2+x+1" / "2*x^3 + 4" over F.  Coefficients are
// integer element codes in 0..q-1 (for prime fields, ordinary residues).
// Throws ParamError on malformed input or out-of-range coefficients.
Poly pparse(const Field& F, const std::string& text);
// Inverse of pparse for display: "x^2+x+1" style using element codes.
std::string pformat(const Field& F, const Poly& a, const std::string& var = "x");

}  // namespace sdesign
