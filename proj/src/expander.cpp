#include "sdesign/expander.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdesign/common.hpp"
#include "sdesign/field.hpp"
#include "sdesign/rng.hpp"

namespace sdesign {

namespace {

// Reduced-echelon basis of H cap F^2n (first-coordinates embedding), where
// H is given by its reduced-echelon rows in F^m.  Vectors of H supported on
// the first 2n coordinates are the combinations c*H whose trailing m - 2n
// coordinates vanish; truncation to F^2n is then injective.
Mat first_coordinate_slice(const Field& F, const Mat& H, std::uint32_t twoN) {
    require_invariant(twoN <= H.cols, "slice wider than the ambient space");
    if (H.rows == 0) return Mat(0, twoN);
    Mat coeff;
    if (H.cols == twoN) {
        coeff = Mat(H.rows, H.rows);
        for (std::uint32_t i = 0; i < H.rows; ++i) coeff.at(i, i) = 1;
    } else {
        Mat tail(H.cols - twoN, H.rows);
        for (std::uint32_t j = 0; j < tail.rows; ++j)
            for (std::uint32_t k = 0; k < H.rows; ++k)
                tail.at(j, k) = H.at(k, twoN + j);
        coeff = kernel(F, tail);
    }
    Mat B(coeff.rows, twoN);
    for (std::uint32_t i = 0; i < coeff.rows; ++i)
        for (std::uint32_t c = 0; c < twoN; ++c) {
            elem_t acc = 0;
            for (std::uint32_t k = 0; k < H.rows; ++k)
                acc = F.add(acc, F.mul(coeff.at(i, k), H.at(k, c)));
            B.at(i, c) = acc;
        }
    rref(F, B);
    return B;
}

std::uint32_t ceil_log(std::uint64_t q, std::uint64_t x) {
    std::uint32_t k = 0;
    std::uint64_t v = 1;
    while (v < x) {
        v *= q;
        ++k;
    }
    return k;
}

std::vector<std::uint32_t> pivots_of(const Mat& M) {
    std::vector<std::uint32_t> piv;
    piv.reserve(M.rows);
    for (std::uint32_t i = 0; i < M.rows; ++i) {
        std::uint32_t c = 0;
        while (c < M.cols && M.at(i, c) == 0) ++c;
        require_invariant(c < M.cols, "kernel basis has a zero row");
        piv.push_back(c);
    }
    return piv;
}

}  // namespace

ExpanderInstance build_expander_from_design(const DesignInstance& D,
                                            std::uint32_t n, std::uint32_t b) {
    require_param(n >= 1, "n must be at least 1");
    require_param(b >= 1 && b <= n, "b must satisfy 1 <= b <= n");
    const std::uint32_t m = D.params.m;
    require_param(2ULL * n <= m, "the design ambient dimension " +
                                     std::to_string(m) +
                                     " must be at least 2n = " +
                                     std::to_string(2ULL * n));
    const Field F(D.params.q);

    ExpanderInstance E;
    E.q = D.params.q;
    E.n = n;
    E.b = b;
    E.has_design = true;
    E.design = D.params;
    E.mhat = m;

    std::vector<Mat> kept;
    for (const SubspaceBasis& S : D.subspaces) {
        Mat B = first_coordinate_slice(F, S.rows, 2 * n);
        if (B.rows < n) {
            ++E.skipped;
            continue;
        }
        Mat K(n, 2 * n);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t c = 0; c < 2 * n; ++c) K.at(i, c) = B.at(i, c);
        kept.push_back(std::move(K));
    }
    E.available = static_cast<std::uint32_t>(kept.size());

    const std::uint32_t want = 12 * ceil_log(D.params.q, m);
    E.M = std::min<std::uint32_t>(want, E.available);
    E.kernels.assign(kept.begin(), kept.begin() + E.M);

    for (const Mat& K : E.kernels) {
        Mat Emat = kernel(F, K);  // rows annihilate K; as a map, ker = K
        require_invariant(Emat.rows == n,
                          "condensing map is not full rank");
        Mat left(n, n), right(n, n);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t c = 0; c < n; ++c) {
                left.at(i, c) = Emat.at(i, c);
                right.at(i, c) = Emat.at(i, n + c);
            }
        E.maps.push_back(std::move(left));
        E.maps.push_back(std::move(right));
    }
    return E;
}

ExpanderInstance build_expander(std::uint64_t q, std::uint32_t n,
                                std::uint32_t b) {
    require_param(n >= 1, "n must be at least 1");
    require_param(b >= 1 && b <= n, "b must satisfy 1 <= b <= n");
    const Field F(q);  // validates q

    std::uint64_t mhat = 0;
    {
        std::uint64_t v = 1;
        while (v - 1 < 2ULL * n) {
            require_param(v <= (1ULL << 31) / q,
                          "2n is too large: no admissible ambient dimension "
                          "q^d - 1 fits the supported range");
            v *= q;
        }
        mhat = v - 1;
    }

    DesignInstance D;
    try {
        D = design_from_target(q, static_cast<std::uint32_t>(mhat), 1, 2,
                               2 * b);
    } catch (const ParamError& e) {
        ExpanderInstance E;
        E.q = q;
        E.n = n;
        E.b = b;
        E.mhat = static_cast<std::uint32_t>(mhat);
        E.note = std::string("design construction failed: ") + e.what();
        return E;
    }
    return build_expander_from_design(D, n, b);
}

namespace {

ExpanderReport verify_core(const ExpanderInstance& E, std::uint32_t b,
                           std::uint64_t alpha_num, std::uint64_t alpha_den,
                           const VerifyOptions& opt, bool parallel) {
    require_param(E.n >= 1 && E.q >= 2, "uninitialized expander instance");
    require_param(b >= 1 && b <= E.n,
                  "b must satisfy 1 <= b <= n = " + std::to_string(E.n));
    require_param(alpha_den >= 1, "alpha denominator must be at least 1");
    const Field F(E.q);
    const std::uint32_t n = E.n;

    ExpanderReport rep;
    rep.mode = opt.mode;
    rep.b = b;
    rep.alpha_num = alpha_num;
    rep.alpha_den = alpha_den;

    if (opt.mode == VerifyMode::exhaustive) {
        std::uint64_t total = 0;
        for (std::uint32_t ell = 1; ell <= b; ++ell) {
            total += gaussian_binomial(E.q, n, ell, opt.cap);
            require_param(
                total <= opt.cap,
                "exhaustive verification refused: the number of subspaces of "
                "F_q^" + std::to_string(n) + " of dimension at most " +
                    std::to_string(b) + " exceeds " + std::to_string(opt.cap) +
                    "; use sample mode or raise the cap");
        }
    } else {
        require_param(opt.samples >= 1, "sample mode requires samples >= 1");
    }

    std::vector<std::vector<std::uint32_t>> kpivots;
    kpivots.reserve(E.kernels.size());
    for (const Mat& K : E.kernels) kpivots.push_back(pivots_of(K));

    // score one subspace V (ell x n, full rank): the expansion dimension
    // dim(sum_j A_j V) and the kernel-intersection sum over W = T1 V + T2 V
    const auto score = [&](const Mat& V) -> std::pair<std::int64_t, std::int64_t> {
        const std::uint32_t ell = V.rows;
        Mat img(static_cast<std::uint32_t>(E.maps.size()) * ell, n);
        std::uint32_t row = 0;
        for (const Mat& A : E.maps)
            for (std::uint32_t i = 0; i < ell; ++i, ++row)
                for (std::uint32_t r = 0; r < n; ++r) {
                    elem_t acc = 0;
                    for (std::uint32_t k = 0; k < n; ++k)
                        acc = F.add(acc, F.mul(V.at(i, k), A.at(r, k)));
                    img.at(row, r) = acc;
                }
        const std::int64_t dim = rank_of(F, img);
        require_invariant(
            dim <= std::min<std::int64_t>(
                       n, static_cast<std::int64_t>(E.maps.size()) * ell),
            "expansion dimension exceeds the sanity bound");

        Mat W(2 * ell, 2 * n);
        for (std::uint32_t i = 0; i < ell; ++i)
            for (std::uint32_t c = 0; c < n; ++c) {
                W.at(i, c) = V.at(i, c);
                W.at(ell + i, n + c) = V.at(i, c);
            }
        std::int64_t ksum = 0;
        for (std::size_t i = 0; i < E.kernels.size(); ++i)
            ksum += intersect_dim_rref(F, E.kernels[i], kpivots[i], W);
        return {dim, ksum};
    };

    bool have_min = false;
    std::uint64_t min_dim = 0, min_ell = 1;
    std::uint32_t wit_ell = 0;
    std::uint64_t wit_idx = 0;
    rep.invariant_ok = true;

    for (std::uint32_t ell = 1; ell <= b; ++ell) {
        std::optional<SubspaceIter> iter;
        std::uint64_t total;
        if (opt.mode == VerifyMode::exhaustive) {
            iter.emplace(F, n, ell);
            total = iter->total();
        } else {
            total = opt.samples;
        }
        const std::uint64_t stream_base =
            static_cast<std::uint64_t>(ell - 1) * opt.samples;
        const auto make_V = [&](std::uint64_t k) -> Mat {
            if (iter) return iter->decode(k);
            SplitMix64 rng = derived_stream(opt.seed, stream_base + k);
            return sample_subspace(F, n, ell, rng);
        };

        std::int64_t best_dim = -1;  // smallest expansion dim at this ell
        std::uint64_t best_idx = 0;
        std::int64_t max_ksum = 0;
        if (!parallel) {
            for (std::uint64_t k = 0; k < total; ++k) {
                const auto [dim, ksum] = score(make_V(k));
                if (best_dim < 0 || dim < best_dim) {
                    best_dim = dim;
                    best_idx = k;
                }
                if (ksum > max_ksum) max_ksum = ksum;
            }
        } else {
#pragma omp parallel
            {
                std::int64_t ldim = -1;
                std::uint64_t lidx = 0;
                std::int64_t lksum = 0;
                // static schedule: each thread sees ascending k, so "<"
                // keeps the thread-local earliest minimizer
#pragma omp for schedule(static)
                for (std::uint64_t k = 0; k < total; ++k) {
                    const auto [dim, ksum] = score(make_V(k));
                    if (ldim < 0 || dim < ldim) {
                        ldim = dim;
                        lidx = k;
                    }
                    if (ksum > lksum) lksum = ksum;
                }
#pragma omp critical
                {
                    if (ldim >= 0 &&
                        (best_dim < 0 || ldim < best_dim ||
                         (ldim == best_dim && lidx < best_idx))) {
                        best_dim = ldim;
                        best_idx = lidx;
                    }
                    if (lksum > max_ksum) max_ksum = lksum;
                }
            }
        }
        require_invariant(best_dim >= 0, "verification examined no subspaces");
        rep.tested += total;

        ExpanderInvariantLine line;
        line.ell = ell;
        line.tested = total;
        line.bound = -1;
        if (E.has_design && 2 * ell <= E.design.s_max)
            line.bound = design_bound(E.design, 2 * ell);
        line.max_sum = max_ksum;
        line.ok = line.bound < 0 || line.max_sum <= line.bound;
        rep.invariant_ok = rep.invariant_ok && line.ok;
        rep.invariant.push_back(line);

        // strictly smaller ratio than the current minimum (cross-multiplied)
        if (!have_min || static_cast<std::uint64_t>(best_dim) * min_ell <
                             min_dim * ell) {
            have_min = true;
            min_dim = static_cast<std::uint64_t>(best_dim);
            min_ell = ell;
            wit_ell = ell;
            wit_idx = best_idx;
        }
    }

    rep.min_dim = static_cast<std::uint32_t>(min_dim);
    rep.min_ell = min_ell;
    {
        std::optional<SubspaceIter> iter;
        if (opt.mode == VerifyMode::exhaustive) iter.emplace(F, n, wit_ell);
        if (iter) {
            rep.witness = iter->decode(wit_idx);
        } else {
            SplitMix64 rng = derived_stream(
                opt.seed,
                static_cast<std::uint64_t>(wit_ell - 1) * opt.samples +
                    wit_idx);
            rep.witness = sample_subspace(F, n, wit_ell, rng);
        }
    }
    // min ratio >= 1 + alpha, compared exactly by cross-multiplication
    rep.pass = static_cast<std::uint64_t>(min_dim) * alpha_den >=
               static_cast<std::uint64_t>(min_ell) * (alpha_den + alpha_num);
    return rep;
}

}  // namespace

ExpanderReport verify_expander(const ExpanderInstance& E, std::uint32_t b,
                               std::uint64_t alpha_num,
                               std::uint64_t alpha_den,
                               const VerifyOptions& opts) {
    return verify_core(E, b, alpha_num, alpha_den, opts, true);
}

ExpanderReport verify_expander_serial(const ExpanderInstance& E,
                                      std::uint32_t b,
                                      std::uint64_t alpha_num,
                                      std::uint64_t alpha_den,
                                      const VerifyOptions& opts) {
    return verify_core(E, b, alpha_num, alpha_den, opts, false);
}

}  // namespace sdesign
