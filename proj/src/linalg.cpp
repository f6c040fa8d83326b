#include "sdesign/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sdesign {

std::uint32_t rref(const Field& F, Mat& M, std::vector<std::uint32_t>* pivots) {
    if (pivots) pivots->clear();
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < M.cols && rank < M.rows; ++col) {
        std::uint32_t sel = rank;
        while (sel < M.rows && M.at(sel, col) == 0) ++sel;
        if (sel == M.rows) continue;
        if (sel != rank)
            for (std::uint32_t j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(rank, j));
        const elem_t piv_inv = F.inv(M.at(rank, col));
        for (std::uint32_t j = col; j < M.cols; ++j) M.at(rank, j) = F.mul(M.at(rank, j), piv_inv);
        for (std::uint32_t i = 0; i < M.rows; ++i) {
            if (i == rank) continue;
            const elem_t f = M.at(i, col);
            if (f == 0) continue;
            for (std::uint32_t j = col; j < M.cols; ++j)
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(rank, j)));
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

std::uint32_t rank_of(const Field& F, Mat M) { return rref(F, M); }

Mat kernel(const Field& F, const Mat& M) {
    Mat R = M;
    std::vector<std::uint32_t> piv;
    const std::uint32_t rank = rref(F, R, &piv);
    std::vector<bool> is_piv(M.cols, false);
    for (auto c : piv) is_piv[c] = true;

    Mat K(M.cols - rank, M.cols);
    std::uint32_t kr = 0;
    for (std::uint32_t free_col = 0; free_col < M.cols; ++free_col) {
        if (is_piv[free_col]) continue;
        K.at(kr, free_col) = 1;
        for (std::uint32_t i = 0; i < rank; ++i)
            K.at(kr, piv[i]) = F.neg(R.at(i, free_col));
        ++kr;
    }
    rref(F, K);  // canonical form (RREF of a subspace is unique)
    return K;
}

Mat stack(const Mat& A, const Mat& B) {
    if (A.rows == 0) return B;
    if (B.rows == 0) return A;
    require_invariant(A.cols == B.cols, "stack: column mismatch");
    Mat S(A.rows + B.rows, A.cols);
    std::copy(A.a.begin(), A.a.end(), S.a.begin());
    std::copy(B.a.begin(), B.a.end(), S.a.begin() + A.a.size());
    return S;
}

std::uint32_t intersection_dim(const Field& F, const Mat& A, const Mat& B) {
    const std::uint32_t ra = rank_of(F, A);
    const std::uint32_t rb = rank_of(F, B);
    const std::uint32_t rs = rank_of(F, stack(A, B));
    return ra + rb - rs;
}

std::uint32_t intersect_dim_rref(const Field& F, const Mat& H,
                                 const std::vector<std::uint32_t>& pivots, const Mat& W) {
    // Reduce each W row against H (one elimination step per pivot), then the
    // residuals' rank measures what W adds beyond H.
    Mat R = W;
    for (std::uint32_t i = 0; i < R.rows; ++i) {
        for (std::uint32_t k = 0; k < pivots.size(); ++k) {
            const elem_t f = R.at(i, pivots[k]);
            if (f == 0) continue;
            for (std::uint32_t j = 0; j < R.cols; ++j)
                R.at(i, j) = F.sub(R.at(i, j), F.mul(f, H.at(k, j)));
        }
    }
    return W.rows - rref(F, R);
}

Mat inverse(const Field& F, const Mat& M) {
    require_invariant(M.rows == M.cols, "inverse: matrix not square");
    const std::uint32_t n = M.rows;
    Mat A(n, 2 * n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) A.at(i, j) = M.at(i, j);
        A.at(i, n + i) = 1;
    }
    const std::uint32_t rank = rref(F, A);
    require_invariant(rank == n, "inverse: singular matrix");
    Mat R(n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) R.at(i, j) = A.at(i, n + j);
    return R;
}

std::uint64_t gaussian_binomial(std::uint64_t q, std::uint32_t m, std::uint32_t s, std::uint64_t cap) {
    if (s > m) return 0;
    if (s == 0 || s == m) return 1 > cap ? cap + 1 : 1;
    require_param(cap <= (1ULL << 61), "subspace-count cap too large");
    const std::uint32_t ss = std::min(s, m - s);  // [m,s]_q = [m,m-s]_q

    // q^(ss(m-ss)) <= [m,ss]_q, so a large exponent certifies cap excess
    // without any big-integer work.
    long double lg = static_cast<long double>(ss) * (m - ss) * std::log2(static_cast<long double>(q));
    if (lg > 62.0L) return cap + 1;

    if (ss == 1) {  // 1 + q + .. + q^(m-1), capped
        std::uint64_t acc = 1, pw = 1;
        for (std::uint32_t i = 1; i < m; ++i) {
            if (pw > cap / q) return cap + 1;
            pw *= q;
            if (acc > cap - pw) return cap + 1;
            acc += pw;
        }
        return acc;
    }

    // Exact product prod_i (q^(m-i)-1)/(q^(i+1)-1); every prefix is itself a
    // Gaussian binomial (hence integral), prefixes are nondecreasing for
    // ss <= m/2, and the exponent bound above keeps all intermediates in
    // 128 bits.
    unsigned __int128 num = 1;
    for (std::uint32_t i = 0; i < ss; ++i) {
        unsigned __int128 top = 1, bot = 1;
        for (std::uint32_t e = 0; e < m - i; ++e) top *= q;
        for (std::uint32_t e = 0; e < i + 1; ++e) bot *= q;
        num = num * (top - 1) / (bot - 1);
        if (num > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(num);
}

SubspaceIter::SubspaceIter(const Field& F, std::uint32_t m, std::uint32_t s) : F_(F), m_(m), s_(s) {
    require_param(s >= 1 && s <= m, "subspace dimension out of range");
    // enumerate pivot-column combinations in lexicographic order
    std::vector<std::uint32_t> combo(s);
    for (std::uint32_t i = 0; i < s; ++i) combo[i] = i;
    for (;;) {
        combos_.push_back(combo);
        int i = static_cast<int>(s) - 1;
        while (i >= 0 && combo[i] == m - s + i) --i;
        if (i < 0) break;
        ++combo[i];
        for (std::uint32_t j = i + 1; j < s; ++j) combo[j] = combo[j - 1] + 1;
    }
    cum_.resize(combos_.size() + 1, 0);
    for (std::size_t t = 0; t < combos_.size(); ++t) {
        std::uint32_t nfree = 0;
        const auto& P = combos_[t];
        for (std::uint32_t i = 0; i < s; ++i) {
            std::uint32_t after = m - 1 - P[i];          // columns right of pivot i
            std::uint32_t piv_after = s - 1 - i;         // pivot columns among them
            nfree += after - piv_after;
        }
        const std::uint64_t cnt = ipow(F.q(), nfree);
        require_invariant(cum_[t] <= ~0ULL - cnt, "subspace count overflow");
        cum_[t + 1] = cum_[t] + cnt;
    }
    total_ = cum_.back();
}

Mat SubspaceIter::decode(std::uint64_t idx) const {
    require_invariant(idx < total_, "subspace index out of range");
    const std::size_t t = static_cast<std::size_t>(
                              std::upper_bound(cum_.begin(), cum_.end(), idx) - cum_.begin()) - 1;
    std::uint64_t sub = idx - cum_[t];
    const auto& P = combos_[t];
    Mat W(s_, m_);
    std::vector<bool> is_piv(m_, false);
    for (auto c : P) is_piv[c] = true;
    for (std::uint32_t i = 0; i < s_; ++i) {
        W.at(i, P[i]) = 1;
        for (std::uint32_t c = P[i] + 1; c < m_; ++c) {
            if (is_piv[c]) continue;
            W.at(i, c) = static_cast<elem_t>(sub % F_.q());
            sub /= F_.q();
        }
    }
    return W;
}

Mat sample_subspace(const Field& F, std::uint32_t m, std::uint32_t s, SplitMix64& rng) {
    require_param(s >= 1 && s <= m, "subspace dimension out of range");
    for (;;) {
        Mat W(s, m);
        for (auto& v : W.a) v = static_cast<elem_t>(rng.next_below(F.q()));
        Mat R = W;
        if (rref(F, R) == s) return R;
    }
}

}  // namespace sdesign
