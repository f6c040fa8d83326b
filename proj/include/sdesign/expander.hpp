// Dimension expanders by the tensor-then-condense recipe: a subspace design
// in F_q^mhat (mhat = q^d - 1 >= 2n), the two coordinate embeddings
// T1(v) = (v; 0), T2(v) = (0; v) of F^n into F^2n, and for each retained
// design subspace a condensing map E_i: F^2n -> F^n whose kernel K_i is a
// canonical n-dimensional subspace of H_i intersected with F^2n.  The
// emitted maps are the 2M compositions E_i o T_j; expansion
// dim(sum_j A_j V) >= (1+alpha) dim V is checked empirically, together with
// the per-subspace accounting sum_i dim(W cap K_i) <= L(2*dim V) for
// W = T1 V + T2 V that drives the counting argument.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdesign/design.hpp"
#include "sdesign/linalg.hpp"

namespace sdesign {

struct ExpanderInstance {
    std::uint64_t q = 0;
    std::uint32_t n = 0;
    std::uint32_t M = 0;          // retained design subspaces; degree = 2M
    std::vector<Mat> maps;        // 2M matrices, n x n: E_i o T1, E_i o T2

    // Claimed parameters: the instance targets (b, alpha) expansion.
    std::uint32_t b = 0;
    std::uint64_t alpha_num = 1, alpha_den = 3;

    // Provenance: the underlying design (parameters only), the kernels K_i
    // of the condensing maps (n x 2n, reduced echelon form), and how many
    // usable design subspaces were skipped or left unused.
    bool has_design = false;
    DesignParams design;
    std::vector<Mat> kernels;      // M entries, kernel of E_i as a map
    std::uint32_t mhat = 0;        // design ambient dimension
    std::uint32_t skipped = 0;     // blocks with dim(H cap F^2n) < n
    std::uint32_t available = 0;   // blocks that met the dimension threshold
    std::string note;              // reason when no design could be built

    std::uint32_t degree() const {
        return static_cast<std::uint32_t>(maps.size());
    }
};

// Build the degree-2M instance for (q, n, b): d is the least integer with
// q^d - 1 >= 2n, the design comes from target parameters (m = q^d - 1,
// eps = 1/2, s = 2b), K_i is the first n rows of the reduced-echelon basis
// of H_i intersect F^2n (blocks with a thinner intersection are skipped),
// E_i is the canonical full-rank n x 2n matrix with kernel K_i, and
// M = min(12*ceil(log_q mhat), retained blocks).  If the design parameters
// are infeasible at this scale the instance is returned with M = 0 and the
// reason recorded in `note`.
ExpanderInstance build_expander(std::uint64_t q, std::uint32_t n,
                                std::uint32_t b);

// Same condensation applied to an already-built design (2n <= m required);
// exposed so instrumented and hand-made designs can drive the block
// selection logic directly.
ExpanderInstance build_expander_from_design(const DesignInstance& D,
                                            std::uint32_t n, std::uint32_t b);

// Accounting for one tested dimension ell: every W = T1 V + T2 V with
// dim V = ell must satisfy sum_i dim(W cap K_i) <= L(2*ell).  `bound` is
// -1 when no design backs the instance (the sum is then over no kernels).
struct ExpanderInvariantLine {
    std::uint32_t ell = 0;
    std::uint64_t tested = 0;
    std::int64_t bound = 0;
    std::int64_t max_sum = 0;
    bool ok = false;
};

struct ExpanderReport {
    VerifyMode mode = VerifyMode::exhaustive;
    std::uint32_t b = 0;
    std::uint64_t alpha_num = 0, alpha_den = 1;
    std::uint64_t tested = 0;      // total subspaces across all dimensions

    // Minimum expansion ratio found, as the exact fraction min_dim/min_ell.
    std::uint32_t min_dim = 0;
    std::uint32_t min_ell = 1;
    Mat witness;                   // earliest V attaining the minimum
    bool pass = false;             // min ratio >= 1 + alpha

    std::vector<ExpanderInvariantLine> invariant;  // one line per ell
    bool invariant_ok = false;     // conjunction of the lines
};

// Check dim(sum_j A_j V) >= (1 + alpha) * dim V over all (exhaustive) or
// opts.samples seeded-random (sample) subspaces V of each dimension
// 1 <= ell <= b, alpha = alpha_num/alpha_den.  Exhaustive mode refuses when
// the total subspace count exceeds opts.cap.  Also records the per-W
// kernel-intersection accounting against the design bound L(2*ell).
ExpanderReport verify_expander(const ExpanderInstance& E, std::uint32_t b,
                               std::uint64_t alpha_num,
                               std::uint64_t alpha_den,
                               const VerifyOptions& opts);
// Single-threaded reference implementation with identical semantics.
ExpanderReport verify_expander_serial(const ExpanderInstance& E,
                                      std::uint32_t b,
                                      std::uint64_t alpha_num,
                                      std::uint64_t alpha_den,
                                      const VerifyOptions& opts);

}  // namespace sdesign
