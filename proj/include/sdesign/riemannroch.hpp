#pragma once
// Riemann-Roch spaces of the cyclotomic function field: the genus, Laurent
// expansions of x and lambda at every place over the infinite place of
// F_q(x), explicit bases of L(c P') and L(c P' - Q') solved from valuation
// constraints (P' the ramified place over the conductor, Q' the inert place
// over x), and a deterministic complement V with V (+) L(D - Q') = L(D).

#include <cstdint>
#include <vector>

#include "sdesign/carlitz.hpp"
#include "sdesign/laurent.hpp"

namespace sdesign {

// Genus of the cyclotomic function field for a degree-d conductor over F_q,
// from the Riemann-Hurwitz ramification data (checked at runtime against the
// Riemann-Roch dimension law by rr_basis).
std::int64_t genus(std::uint64_t q, std::uint32_t d);

// One place over the infinite place of F_q(x).  Places come in levels
// i = 1..d with q^(i-1) places at level i; t = (x^(d-i) lambda)^(-1) is a
// local parameter there.  x expands with lowest exponent -(q-1) (the
// ramification index) and lambda with lowest exponent (q-1)(d-i)-1.
struct InfiniteBranch {
    std::uint32_t level;    // i in 1..d
    std::uint32_t index;    // position within the level, canonical order
    LSeries x_series;       // expansion of x in the local parameter
    LSeries lambda_series;  // expansion of lambda
};

// Default working precision for branch separation and basis solving.
int branch_default_precision(const CycCtx& C);

// All (q^d - 1)/(q - 1) infinite places, as Laurent expansions to precision
// N.  Throws PrecisionError when branches fail to separate at N (retry with
// a larger N).  Requires N >= d(q-1) + 2.
std::vector<InfiniteBranch> branch_expansions(const CycCtx& C, int N);

// Expansion of f at an infinite place: substitutes the branch series into
// the integral-basis representation of f.  Precision follows the series
// arithmetic pessimistically.
LSeries expand_at_branch(const CycCtx& C, const FFElem& f,
                         const InfiniteBranch& br);

// Basis of L(c P') or L(c P' - Q'), echelonized over the solver's canonical
// unknown ordering.
struct RRBasis {
    std::int64_t c = 0;
    bool subtractQ = false;
    std::vector<FFElem> basis;

    std::size_t dim() const { return basis.size(); }
};

// Solve for the full space by linear algebra over F_q: unknowns are the
// coefficients of the integral-basis numerators (with the conductor-power
// divisibility pattern required at P' folded in), constraints demand no
// negative exponent at any infinite place, plus divisibility by x when
// subtractQ.  The dimension is checked against deg(D) - genus + 1 whenever
// deg(D) >= 2*genus - 1.  N <= 0 selects the default precision; precision
// failures retry automatically with a doubled expansion order.
RRBasis rr_basis(const CycCtx& C, std::int64_t c, bool subtractQ, int N = 0);

// Membership predicate (the same conditions rr_basis solves for), usable on
// arbitrary elements; branches must come from branch_expansions.
bool in_rr_space(const CycCtx& C, const FFElem& f, std::int64_t c,
                 bool subtractQ, const std::vector<InfiniteBranch>& branches);

// The deterministic complement V: D = ceil((2g + m - 1)/d) P', and V is
// spanned by the lexicographically-first subset of the echelon basis of
// L(D) that extends a basis of L(D - Q').  dim V = m always.
struct ComplementSpace {
    std::int64_t c = 0;    // multiplicity of P' in D
    std::int64_t ell = 0;  // deg D = c*d
    RRBasis V;
    RRBasis LD;
    RRBasis LDQ;
};

ComplementSpace complement_space(const CycCtx& C, int N = 0);

// Degenerate rational-function-field ambient space used by the folded
// Reed-Solomon baseline: all polynomials of degree < m, basis {1, x, ...,
// x^(m-1)}.  Requires m < q - 1.
std::vector<Poly> folded_rs_space(const Field& F, std::uint32_t m);

}  // namespace sdesign
