#pragma once
// Automorphism Moore matrices over the cyclotomic function field, their exact
// determinants, and the folded-Wronskian specialization for the rational
// function field.  The determinant gives an executable linear-independence
// criterion: for functions drawn from the canonical complement space V, the
// sigma-Moore determinant is nonzero exactly when the functions are linearly
// independent over the base field F_q.

#include <cstdint>
#include <vector>

#include "sdesign/carlitz.hpp"
#include "sdesign/field.hpp"
#include "sdesign/poly.hpp"

namespace sdesign {

// s x s grid with entries[i][j] = sigma_x^i(f_j); row 0 is fs itself and each
// later row is the image of the previous one under the generating
// automorphism sigma_x.
struct MooreMatrix {
    std::uint32_t s = 0;
    std::vector<std::vector<FFElem>> entries;
};

// Requires 1 <= fs.size() <= m.
MooreMatrix sigma_moore_matrix(const CycCtx& C, const std::vector<FFElem>& fs);

// Exact determinant of the sigma-Moore matrix.  Leibniz expansion for
// s <= 6; fraction-free Gaussian elimination (Bareiss) otherwise, with the
// exact ring divisions performed through Galois norms.  Nonzero exactly when
// fs are independent over the sigma-fixed subfield.
FFElem sigma_moore_det(const CycCtx& C, const std::vector<FFElem>& fs);

// Exact division a / b for b != 0, valid when the quotient lies in the
// integral-basis ring (polynomial components over a conductor-power
// denominator); throws InvariantError otherwise.  Implemented as
// multiplication by the product of the nontrivial sigma-conjugates of b
// followed by division by the rational norm.
FFElem ffe_div_exact(const CycCtx& C, const FFElem& a, const FFElem& b);

// Determinant of the s x s grid with entry (i,j) = f_j(gamma^i x), gamma a
// primitive element of F_q^*.  Requires deg f_j < q - 1.  Nonzero exactly
// when fs are linearly independent over F_q.
Poly folded_wronskian(const Field& F, const std::vector<Poly>& fs,
                      elem_t gamma);

// Rank test over F_q of the stacked numerator coefficient vectors at a
// common conductor-power denominator: true when the functions are linearly
// independent over F_q.
bool independent_over_Fq(const CycCtx& C, const std::vector<FFElem>& fs);

}  // namespace sdesign
