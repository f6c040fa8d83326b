#pragma once
// Exact Laurent series over F_q with explicit precision tracking, and a
// Newton-polygon solver for polynomial equations with series coefficients.
//
// An LSeries knows its coefficients on [lo, prec]; reading past prec throws
// PrecisionError.  prec == kExactPrec means the series is known exactly
// (all unlisted coefficients are zero).  Arithmetic propagates precision
// pessimistically, so every coefficient handed out is certain.

#include <cstdint>
#include <optional>
#include <vector>

#include "sdesign/field.hpp"
#include "sdesign/poly.hpp"

namespace sdesign {

constexpr int kExactPrec = 1 << 28;
constexpr int kValInfinity = 1 << 27;  // valuation of a series with no known nonzero term

struct LSeries {
    int lo = 0;                // exponent of c[0]
    int prec = kExactPrec;     // largest exponent with a known coefficient
    std::vector<elem_t> c;     // c[i] multiplies t^(lo+i); empty == zero up to prec

    bool known_zero() const { return c.empty(); }
    bool exact() const { return prec >= kExactPrec; }
};

// Canonicalize: strip leading/trailing zero coefficients, clamp to prec.
void ls_norm(LSeries& s);

LSeries ls_zero(int prec = kExactPrec);
LSeries ls_monomial(elem_t a, int e);
// Polynomial in t as an exact series.
LSeries ls_from_poly(const Poly& f);

// Valuation: smallest known nonzero exponent; kValInfinity if none and the
// series is exact, prec+1 if none and truncated (a conservative lower bound).
int ls_val(const LSeries& s);

// Coefficient of t^e; throws PrecisionError if e exceeds the known range.
elem_t ls_coeff(const LSeries& s, int e);

LSeries ls_add(const Field& F, const LSeries& a, const LSeries& b);
LSeries ls_sub(const Field& F, const LSeries& a, const LSeries& b);
LSeries ls_neg(const Field& F, const LSeries& a);
LSeries ls_scale(const Field& F, const LSeries& a, elem_t s);
LSeries ls_mul(const Field& F, const LSeries& a, const LSeries& b);
// multiply by the monomial a*t^e (exactness-preserving)
LSeries ls_mul_monomial(const Field& F, const LSeries& s, elem_t a, int e);
LSeries ls_shift(const LSeries& a, int k);  // multiply by t^k
LSeries ls_trunc(const LSeries& a, int P);
// Inverse computed through exponent out_prec (requires a known nonzero lead).
LSeries ls_inv(const Field& F, const LSeries& a, int out_prec);
// a^e for e in Z (negative via ls_inv), capped at out_prec.
LSeries ls_pow(const Field& F, const LSeries& a, std::int64_t e, int out_prec);

// True if a and b agree on all exponents <= P (both must know that range).
bool ls_agree(const LSeries& a, const LSeries& b, int P);

// f(s) for a polynomial f over F, truncating work at out_prec.
LSeries poly_at_series(const Field& F, const Poly& f, const LSeries& s, int out_prec);

// A polynomial in X with Laurent-series coefficients: sum c[j] X^j.
struct SeriesPoly {
    std::vector<LSeries> c;
};

// All roots of sp in F_q((t)), each reported through exponent N (prec = N),
// deterministically ordered by their coefficient sequences.  Coefficients of
// sp must be exact.  If first_exponent is set, only roots whose leading
// exponent equals it are pursued.
//
// Root finding walks the Newton polygon: integer-slope edges give leading
// terms; simple edge roots continue by exact Newton steps, repeated ones by
// substitution and recursion.  Non-integer slopes cannot start an
// F_q((t))-root and are skipped.
std::vector<LSeries> series_roots(const Field& F, const SeriesPoly& sp, int N,
                                  std::optional<int> first_exponent = std::nullopt);

}  // namespace sdesign
