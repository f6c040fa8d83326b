#include "sdesign/moore.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>

#include "sdesign/common.hpp"
#include "sdesign/linalg.hpp"

namespace sdesign {

namespace {

// Parity of a permutation given as an index vector (0 = even, 1 = odd).
int permutation_parity(std::vector<std::uint32_t> perm) {
    int swaps = 0;
    for (std::uint32_t i = 0; i < perm.size(); ++i)
        while (perm[i] != i) {
            std::swap(perm[i], perm[perm[i]]);
            ++swaps;
        }
    return swaps & 1;
}

FFElem leibniz_det(const CycCtx& C, const MooreMatrix& M) {
    std::vector<std::uint32_t> perm(M.s);
    std::iota(perm.begin(), perm.end(), 0);
    FFElem det = ffe_zero(C);
    do {
        FFElem term = ffe_one(C);
        for (std::uint32_t i = 0; i < M.s; ++i)
            term = ffe_mul(C, term, M.entries[i][perm[i]]);
        if (permutation_parity(perm)) term = ffe_neg(C, term);
        det = ffe_add(C, det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

// One-step fraction-free elimination; all intermediate entries are minors of
// the original matrix, so the divisions by the previous pivot are exact in
// the integral-basis ring.
FFElem bareiss_det(const CycCtx& C, MooreMatrix M) {
    const std::uint32_t s = M.s;
    bool negate = false;
    FFElem prev = ffe_one(C);
    for (std::uint32_t k = 0; k + 1 < s; ++k) {
        std::uint32_t pr = k;
        while (pr < s && ffe_is_zero(M.entries[pr][k])) ++pr;
        if (pr == s) return ffe_zero(C);
        if (pr != k) {
            std::swap(M.entries[pr], M.entries[k]);
            negate = !negate;
        }
        for (std::uint32_t i = k + 1; i < s; ++i) {
            for (std::uint32_t j = k + 1; j < s; ++j) {
                FFElem num =
                    ffe_sub(C, ffe_mul(C, M.entries[k][k], M.entries[i][j]),
                            ffe_mul(C, M.entries[i][k], M.entries[k][j]));
                M.entries[i][j] = ffe_div_exact(C, num, prev);
            }
            M.entries[i][k] = ffe_zero(C);
        }
        prev = M.entries[k][k];
    }
    FFElem det = M.entries[s - 1][s - 1];
    return negate ? ffe_neg(C, det) : det;
}

Poly poly_leibniz_det(const Field& F,
                      const std::vector<std::vector<Poly>>& M) {
    std::vector<std::uint32_t> perm(M.size());
    std::iota(perm.begin(), perm.end(), 0);
    Poly det = Poly::zero();
    do {
        Poly term = Poly::one();
        for (std::uint32_t i = 0; i < M.size(); ++i)
            term = pmul(F, term, M[i][perm[i]]);
        if (permutation_parity(perm)) term = pneg(F, term);
        det = padd(F, det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

Poly poly_bareiss_det(const Field& F, std::vector<std::vector<Poly>> M) {
    const std::uint32_t s = static_cast<std::uint32_t>(M.size());
    bool negate = false;
    Poly prev = Poly::one();
    for (std::uint32_t k = 0; k + 1 < s; ++k) {
        std::uint32_t pr = k;
        while (pr < s && M[pr][k].is_zero()) ++pr;
        if (pr == s) return Poly::zero();
        if (pr != k) {
            std::swap(M[pr], M[k]);
            negate = !negate;
        }
        for (std::uint32_t i = k + 1; i < s; ++i) {
            for (std::uint32_t j = k + 1; j < s; ++j) {
                Poly num = psub(F, pmul(F, M[k][k], M[i][j]),
                                pmul(F, M[i][k], M[k][j]));
                M[i][j] = pdiv_exact(F, num, prev);
            }
            M[i][k] = Poly::zero();
        }
        prev = M[k][k];
    }
    Poly det = M[s - 1][s - 1];
    return negate ? pneg(F, det) : det;
}

}  // namespace

MooreMatrix sigma_moore_matrix(const CycCtx& C,
                               const std::vector<FFElem>& fs) {
    const std::uint32_t s = static_cast<std::uint32_t>(fs.size());
    require_param(s >= 1, "Moore matrix needs at least one function");
    require_param(s <= C.m, "Moore matrix size exceeds the field degree");
    for (const auto& f : fs)
        require_param(f.A.size() == C.m,
                      "function does not belong to this context");
    MooreMatrix M;
    M.s = s;
    M.entries.resize(s);
    M.entries[0] = fs;
    for (std::uint32_t i = 1; i < s; ++i) {
        M.entries[i].reserve(s);
        for (std::uint32_t j = 0; j < s; ++j)
            M.entries[i].push_back(
                sigma_apply(C, M.entries[i - 1][j], Poly::x()));
    }
    return M;
}

FFElem sigma_moore_det(const CycCtx& C, const std::vector<FFElem>& fs) {
    MooreMatrix M = sigma_moore_matrix(C, fs);
    if (M.s <= 6) return leibniz_det(C, M);
    return bareiss_det(C, std::move(M));
}

FFElem ffe_div_exact(const CycCtx& C, const FFElem& a, const FFElem& b) {
    require_invariant(!ffe_is_zero(b), "exact division by zero");
    if (ffe_is_zero(a)) return ffe_zero(C);
    // cofactor = product of the nontrivial conjugates sigma^k(b); then
    // b * cofactor = Norm(b) is rational: a single lambda^0 component.
    FFElem cofactor = ffe_one(C);
    FFElem conj = b;
    for (std::uint64_t k = 1; k < C.m; ++k) {
        conj = sigma_apply(C, conj, Poly::x());
        cofactor = ffe_mul(C, cofactor, conj);
    }
    FFElem nrm = ffe_mul(C, b, cofactor);
    for (std::size_t i = 1; i < nrm.A.size(); ++i)
        require_invariant(nrm.A[i].is_zero(),
                          "Galois norm must be rational");
    require_invariant(!nrm.A[0].is_zero(), "vanishing norm of a nonzero element");

    // Norm(b) = p^{v - e_n} n with p coprime to n, so
    // a / b = a * cofactor * p^{e_n - v} / n.
    std::int64_t v = 0;
    Poly n = nrm.A[0];
    while (pdivides(C.F, C.p, n)) {
        n = pdiv_exact(C.F, n, C.p);
        ++v;
    }
    FFElem r = ffe_mul_ppow(C, ffe_mul(C, a, cofactor), nrm.e - v);
    std::vector<Poly> A(r.A.size());
    for (std::size_t i = 0; i < r.A.size(); ++i) {
        require_invariant(r.A[i].is_zero() || pdivides(C.F, n, r.A[i]),
                          "inexact ring division");
        A[i] = r.A[i].is_zero() ? Poly::zero() : pdiv_exact(C.F, r.A[i], n);
    }
    return ffe_make(C, r.e, std::move(A));
}

Poly folded_wronskian(const Field& F, const std::vector<Poly>& fs,
                      elem_t gamma) {
    const std::uint32_t s = static_cast<std::uint32_t>(fs.size());
    require_param(s >= 1, "folded Wronskian needs at least one polynomial");
    require_param(gamma != 0 && F.mult_order(gamma) == F.q() - 1,
                  "gamma must be a primitive element");
    for (const auto& f : fs)
        require_param(f.deg() < static_cast<int>(F.q() - 1),
                      "folded Wronskian needs deg f < q - 1");
    std::vector<std::vector<Poly>> M(s, std::vector<Poly>(s));
    elem_t gi = 1;
    for (std::uint32_t i = 0; i < s; ++i) {
        for (std::uint32_t j = 0; j < s; ++j)
            M[i][j] = pscale_arg(F, fs[j], gi);
        gi = F.mul(gi, gamma);
    }
    if (s <= 6) return poly_leibniz_det(F, M);
    return poly_bareiss_det(F, std::move(M));
}

bool independent_over_Fq(const CycCtx& C, const std::vector<FFElem>& fs) {
    const Field& F = C.F;
    if (fs.empty()) return true;
    std::int64_t emax = 0;
    for (const auto& f : fs) emax = std::max(emax, f.e);
    // Numerator vectors at the common denominator p^emax.
    std::vector<std::vector<Poly>> num;
    std::size_t degcap = 0;
    for (const auto& f : fs) {
        std::vector<Poly> row(C.m);
        Poly scale = ppow(F, C.p, static_cast<std::uint64_t>(emax - f.e));
        for (std::size_t i = 0; i < C.m; ++i) {
            row[i] = f.A[i].is_zero() ? Poly::zero() : pmul(F, f.A[i], scale);
            degcap = std::max(degcap, row[i].c.size());
        }
        num.push_back(std::move(row));
    }
    Mat M(static_cast<std::uint32_t>(fs.size()),
          static_cast<std::uint32_t>(C.m * degcap));
    for (std::uint32_t r = 0; r < M.rows; ++r)
        for (std::size_t i = 0; i < C.m; ++i)
            for (std::size_t k = 0; k < num[r][i].c.size(); ++k)
                M.at(r, static_cast<std::uint32_t>(i * degcap + k)) =
                    num[r][i].c[k];
    return rank_of(F, std::move(M)) == fs.size();
}

}  // namespace sdesign
