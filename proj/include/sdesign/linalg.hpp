#pragma once
// Dense exact linear algebra over a Field: row-reduction, kernels,
// subspace intersection, and deterministic enumeration/sampling of
// s-dimensional subspaces of F_q^m in reduced-row-echelon form.

#include <cstdint>
#include <optional>
#include <vector>

#include "sdesign/field.hpp"
#include "sdesign/rng.hpp"

namespace sdesign {

struct Mat {
    std::uint32_t rows = 0, cols = 0;
    std::vector<elem_t> a;  // row-major

    Mat() = default;
    Mat(std::uint32_t r, std::uint32_t c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    elem_t& at(std::uint32_t i, std::uint32_t j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    elem_t at(std::uint32_t i, std::uint32_t j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool operator==(const Mat&) const = default;
};

// In-place reduced row echelon form; returns rank, optionally pivot columns.
std::uint32_t rref(const Field& F, Mat& M, std::vector<std::uint32_t>* pivots = nullptr);

std::uint32_t rank_of(const Field& F, Mat M);

// Reduced-echelon basis (rows) of {v : M v^T = 0}; (M.cols - rank) rows.
Mat kernel(const Field& F, const Mat& M);

Mat stack(const Mat& A, const Mat& B);

// dim(rowspace(A) ∩ rowspace(B)).
std::uint32_t intersection_dim(const Field& F, const Mat& A, const Mat& B);

// Fast path used by verifiers: H must already be in RREF with the given
// pivot columns and full row rank; W must have independent rows.
// Returns dim(rowspace(W) ∩ rowspace(H)).
std::uint32_t intersect_dim_rref(const Field& F, const Mat& H,
                                 const std::vector<std::uint32_t>& pivots, const Mat& W);

// Inverse of a square invertible matrix (throws InvariantError if singular).
Mat inverse(const Field& F, const Mat& M);

// Gaussian binomial [m choose s]_q, capped: returns cap+1 if it exceeds cap.
std::uint64_t gaussian_binomial(std::uint64_t q, std::uint32_t m, std::uint32_t s, std::uint64_t cap);

// Deterministic enumeration of all s-dimensional subspaces of F_q^m, each
// represented by its unique RREF basis matrix.  decode(i) is random-access,
// so index ranges can be partitioned across threads.
//
// Order: pivot-column sets in lexicographic order; within a pivot set, free
// entries (row-major over the allowed positions) run as little-endian base-q
// digits of the sub-index.
class SubspaceIter {
  public:
    SubspaceIter(const Field& F, std::uint32_t m, std::uint32_t s);

    std::uint64_t total() const { return total_; }
    Mat decode(std::uint64_t idx) const;

  private:
    const Field& F_;
    std::uint32_t m_, s_;
    std::vector<std::vector<std::uint32_t>> combos_;  // pivot column sets, lex order
    std::vector<std::uint64_t> cum_;                  // cumulative subspace counts
    std::uint64_t total_ = 0;
};

// Uniformly random s-dimensional subspace as its RREF basis (rejection on
// rank, so the row space is uniform over all s-dim subspaces).
Mat sample_subspace(const Field& F, std::uint32_t m, std::uint32_t s, SplitMix64& rng);

}  // namespace sdesign
