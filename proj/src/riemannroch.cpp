#include "sdesign/riemannroch.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "sdesign/common.hpp"
#include "sdesign/linalg.hpp"

namespace sdesign {

std::int64_t genus(std::uint64_t q, std::uint32_t d) {
    require_param(q >= 2 && d >= 1, "genus needs q >= 2 and d >= 1");
    std::uint64_t qd = ipow(q, d);
    std::int64_t m = static_cast<std::int64_t>(qd) - 1;
    std::int64_t n1 = m / static_cast<std::int64_t>(q - 1);
    // Riemann-Hurwitz: 2g - 2 = -2m + (m - 1)*deg(different at P')... summed
    // over the ramified places this collapses to the closed form below.
    std::int64_t num = m * (static_cast<std::int64_t>(d) - 2) +
                       n1 * (static_cast<std::int64_t>(q) - 2) -
                       static_cast<std::int64_t>(d);
    require_invariant(num % 2 == 0, "genus formula produced an odd numerator");
    std::int64_t g = 1 + num / 2;
    require_invariant(g >= 0, "negative genus");
    return g;
}

int branch_default_precision(const CycCtx& C) {
    return 2 * static_cast<int>(C.d) * static_cast<int>(C.F.q() - 1) + 8;
}

std::vector<InfiniteBranch> branch_expansions(const CycCtx& C, int N) {
    const Field& F = C.F;
    const int qm1 = static_cast<int>(F.q() - 1);
    const int d = static_cast<int>(C.d);
    require_param(N >= d * qm1 + 2, "branch precision too small");

    std::vector<InfiniteBranch> out;
    for (int lvl = 1; lvl <= d; ++lvl) {
        // Substituting lambda = t^-1 X^-(d-lvl) into Psi_p(lambda) = 0 and
        // clearing denominators gives the level equation
        //   sum_u psi_u(X) X^((d-lvl)(m-E_u)) t^(m-E_u) = 0,
        // whose F_q((t))-roots with val(X) = -(q-1) are exactly the
        // expansions of x at the level-lvl places.
        std::size_t degX = 0;
        for (const auto& [E, cu] : C.psi) {
            std::size_t w = static_cast<std::size_t>(cu.deg()) +
                            static_cast<std::size_t>(d - lvl) * (C.m - E);
            degX = std::max(degX, w);
        }
        SeriesPoly G;
        G.c.assign(degX + 1, ls_zero(kExactPrec));
        for (const auto& [E, cu] : C.psi) {
            std::size_t shift = static_cast<std::size_t>(d - lvl) * (C.m - E);
            int texp = static_cast<int>(C.m - E);
            for (std::size_t w = 0; w < cu.c.size(); ++w)
                if (cu.c[w] != 0)
                    G.c[shift + w] = ls_add(F, G.c[shift + w],
                                            ls_monomial(cu.c[w], texp));
        }

        auto roots = series_roots(F, G, N, -qm1);
        std::uint64_t expect = ipow(F.q(), static_cast<std::uint32_t>(lvl - 1));
        if (roots.size() != expect)
            throw PrecisionError(
                "branch separation failed at precision " + std::to_string(N) +
                "; retry with a larger expansion order");

        for (std::size_t j = 0; j < roots.size(); ++j) {
            InfiniteBranch br;
            br.level = static_cast<std::uint32_t>(lvl);
            br.index = static_cast<std::uint32_t>(j);
            br.x_series = roots[j];
            LSeries xp = ls_pow(F, roots[j], -(static_cast<std::int64_t>(d - lvl)), N);
            br.lambda_series = ls_mul_monomial(F, xp, 1, -1);
            require_invariant(ls_val(br.x_series) == -qm1,
                              "infinite branch: wrong x valuation");
            require_invariant(ls_val(br.lambda_series) == qm1 * (d - lvl) - 1,
                              "infinite branch: wrong lambda valuation");
            out.push_back(std::move(br));
        }
    }
    require_invariant(out.size() == (ipow(F.q(), C.d) - 1) / (F.q() - 1),
                      "wrong total number of infinite places");
    return out;
}

LSeries expand_at_branch(const CycCtx& C, const FFElem& f,
                         const InfiniteBranch& br) {
    const Field& F = C.F;
    const int P = br.x_series.prec;
    LSeries acc = ls_zero(kExactPrec);
    for (std::size_t i = C.m; i-- > 0;) {
        acc = ls_mul(F, acc, br.lambda_series);
        if (!f.A[i].is_zero())
            acc = ls_add(F, acc, poly_at_series(F, f.A[i], br.x_series, P));
    }
    if (f.e > 0) {
        LSeries pv = poly_at_series(F, C.p, br.x_series, P);
        acc = ls_mul(F, acc, ls_pow(F, pv, -f.e, P));
    }
    return acc;
}

namespace {

// True when the expansion is certified to have no negative-exponent term;
// throws PrecisionError when the series does not reach exponent -1.
bool expansion_nonnegative(const LSeries& s) {
    if (s.prec < -1)
        throw PrecisionError("expansion too short to certify membership");
    int v = ls_val(s);
    return v >= 0;
}

struct SolveResult {
    Mat kern;  // canonical reduced-echelon kernel rows (coefficient space)
    std::vector<FFElem> fs;
};

// Shared linear solver for L(c P') and L(c P' - Q').  Unknown ordering:
// basis index i major, then ascending coefficient index of b_i, where
// a_i = p^{w_i} b_i folds the P'-divisibility constraints into the
// parametrization.
SolveResult solve_space(const CycCtx& C, std::int64_t c, bool subtractQ,
                        const std::vector<InfiniteBranch>& branches) {
    const Field& F = C.F;
    const std::int64_t m = static_cast<std::int64_t>(C.m);
    const std::int64_t d = static_cast<std::int64_t>(C.d);
    const std::int64_t q = static_cast<std::int64_t>(F.q());

    const std::int64_t E = c > 0 ? ceil_div(c, m) : 0;
    // Numerator degree bound: (m-1)/(q-1) + d*E + d/2, floored exactly.
    const std::int64_t B =
        ((m - 1) * 2 + (2 * d * E + d) * (q - 1)) / (2 * (q - 1));

    std::vector<std::int64_t> w(C.m, 0);
    std::vector<std::int64_t> blim(C.m, -1);  // max deg of b_i; -1 = absent
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cols;
    for (std::uint32_t i = 0; i < C.m; ++i) {
        w[i] = std::max<std::int64_t>(0, ceil_div(E * m - c - i, m));
        blim[i] = B - d * w[i];
        for (std::int64_t k = 0; k <= blim[i]; ++k)
            cols.emplace_back(i, static_cast<std::uint32_t>(k));
    }

    // Expansion of every unknown's basis function at every infinite place.
    std::vector<std::vector<LSeries>> colseries(branches.size());
    int low = 0;
    for (std::size_t bi = 0; bi < branches.size(); ++bi) {
        const auto& br = branches[bi];
        const int P = br.x_series.prec;
        std::vector<LSeries> pinv(static_cast<std::size_t>(E) + 1,
                                  ls_monomial(1, 0));
        if (E > 0) {
            LSeries pv = poly_at_series(F, C.p, br.x_series, P);
            for (std::int64_t j = 1; j <= E; ++j)
                pinv[static_cast<std::size_t>(j)] =
                    ls_mul(F, pinv[static_cast<std::size_t>(j - 1)],
                           ls_pow(F, pv, -1, P));
        }
        std::vector<LSeries> lampow(C.m, ls_monomial(1, 0));
        for (std::size_t i = 1; i < C.m; ++i)
            lampow[i] = ls_mul(F, lampow[i - 1], br.lambda_series);
        std::vector<LSeries> xpow(static_cast<std::size_t>(B) + 1,
                                  ls_monomial(1, 0));
        for (std::size_t k = 1; k <= static_cast<std::size_t>(B); ++k)
            xpow[k] = ls_mul(F, xpow[k - 1], br.x_series);

        colseries[bi].reserve(cols.size());
        for (const auto& [i, k] : cols) {
            LSeries s = ls_mul(F, pinv[static_cast<std::size_t>(E - w[i])],
                               ls_mul(F, lampow[i], xpow[k]));
            if (s.prec < -1)
                throw PrecisionError("basis expansion lost too much precision");
            low = std::min(low, ls_val(s));
            colseries[bi].push_back(std::move(s));
        }
    }

    // Constraint matrix: one row per (branch, negative exponent), plus one
    // row per i forcing b_i(0) = 0 when subtracting the inert place.
    std::size_t negrows = branches.size() * static_cast<std::size_t>(-low);
    std::size_t xrows = 0;
    if (subtractQ)
        for (std::uint32_t i = 0; i < C.m; ++i)
            if (blim[i] >= 0) ++xrows;
    Mat M(static_cast<std::uint32_t>(negrows + xrows),
          static_cast<std::uint32_t>(cols.size()));
    std::size_t row = 0;
    for (std::size_t bi = 0; bi < branches.size(); ++bi)
        for (int e = low; e < 0; ++e, ++row)
            for (std::size_t cj = 0; cj < cols.size(); ++cj)
                M.at(static_cast<std::uint32_t>(row),
                     static_cast<std::uint32_t>(cj)) =
                    ls_coeff(colseries[bi][cj], e);
    if (subtractQ)
        for (std::size_t cj = 0; cj < cols.size(); ++cj)
            if (cols[cj].second == 0)
                M.at(static_cast<std::uint32_t>(row++),
                     static_cast<std::uint32_t>(cj)) = 1;

    SolveResult out{kernel(F, M), {}};
    for (std::uint32_t r = 0; r < out.kern.rows; ++r) {
        std::vector<Poly> A(C.m, Poly::zero());
        for (std::size_t cj = 0; cj < cols.size(); ++cj) {
            elem_t v = out.kern.at(r, static_cast<std::uint32_t>(cj));
            if (v == 0) continue;
            auto [i, k] = cols[cj];
            Poly mono;
            mono.c.assign(k + 1, 0);
            mono.c[k] = v;
            A[i] = padd(F, A[i], mono);
        }
        for (std::uint32_t i = 0; i < C.m; ++i)
            if (!A[i].is_zero())
                A[i] = pmul(F, A[i], ppow(F, C.p, static_cast<std::uint64_t>(w[i])));
        out.fs.push_back(ffe_make(C, E, std::move(A)));
    }
    return out;
}

void check_dimension(const CycCtx& C, std::int64_t c, bool subtractQ,
                     std::size_t dim) {
    std::int64_t degD = c * static_cast<std::int64_t>(C.d) -
                        (subtractQ ? static_cast<std::int64_t>(C.m) : 0);
    std::int64_t g = genus(C.F.q(), C.d);
    if (degD < 0)
        require_invariant(dim == 0, "nonzero space for a negative divisor");
    else {
        require_invariant(static_cast<std::int64_t>(dim) <= degD + 1,
                          "dimension exceeds deg + 1");
        require_invariant(static_cast<std::int64_t>(dim) >= degD - g + 1,
                          "dimension below the Riemann bound");
        if (degD >= 2 * g - 1)
            require_invariant(static_cast<std::int64_t>(dim) == degD - g + 1,
                              "Riemann-Roch dimension law violated");
    }
}

}  // namespace

RRBasis rr_basis(const CycCtx& C, std::int64_t c, bool subtractQ, int N) {
    require_param(c >= 0, "divisor multiplicity must be non-negative");
    if (N <= 0) N = branch_default_precision(C);
    for (int attempt = 0;; ++attempt) {
        try {
            auto branches = branch_expansions(C, N);
            auto sol = solve_space(C, c, subtractQ, branches);
            check_dimension(C, c, subtractQ, sol.fs.size());
            return RRBasis{c, subtractQ, std::move(sol.fs)};
        } catch (const PrecisionError&) {
            if (attempt >= 3) throw;
            N = 2 * N + 16;
        }
    }
}

bool in_rr_space(const CycCtx& C, const FFElem& f, std::int64_t c,
                 bool subtractQ, const std::vector<InfiniteBranch>& branches) {
    if (valuation_at_ramified_place(C, f) < -c) return false;
    for (const auto& br : branches)
        if (!expansion_nonnegative(expand_at_branch(C, f, br))) return false;
    if (subtractQ)
        for (const auto& a : f.A)
            if (a.coeff(0) != 0) return false;
    return true;
}

ComplementSpace complement_space(const CycCtx& C, int N) {
    const Field& F = C.F;
    std::int64_t g = genus(F.q(), C.d);
    std::int64_t m = static_cast<std::int64_t>(C.m);
    std::int64_t c = ceil_div(2 * g + m - 1, static_cast<std::int64_t>(C.d));

    if (N <= 0) N = branch_default_precision(C);
    for (int attempt = 0;; ++attempt) {
        try {
            auto branches = branch_expansions(C, N);
            auto LD = solve_space(C, c, false, branches);
            auto LDQ = solve_space(C, c, true, branches);
            check_dimension(C, c, false, LD.fs.size());
            check_dimension(C, c, true, LDQ.fs.size());

            // Greedy lexicographically-first extension: take echelon rows of
            // L(D) that grow the span of the L(D-Q') rows, in order.
            Mat cur = LDQ.kern;
            std::uint32_t rank = rank_of(F, cur);
            require_invariant(rank == LDQ.kern.rows,
                              "dependent solver basis for L(D-Q')");
            ComplementSpace out;
            out.c = c;
            out.ell = c * static_cast<std::int64_t>(C.d);
            for (std::uint32_t r = 0; r < LD.kern.rows; ++r) {
                Mat cand(1, LD.kern.cols);
                for (std::uint32_t j = 0; j < LD.kern.cols; ++j)
                    cand.at(0, j) = LD.kern.at(r, j);
                Mat trial = stack(cur, cand);
                if (rank_of(F, trial) > rank) {
                    cur = std::move(trial);
                    ++rank;
                    out.V.basis.push_back(LD.fs[r]);
                }
            }
            require_invariant(out.V.basis.size() ==
                                  LD.fs.size() - LDQ.fs.size(),
                              "complement dimension mismatch");
            require_invariant(static_cast<std::int64_t>(out.V.basis.size()) ==
                                  m,
                              "complement dimension is not m");
            out.V.c = c;
            out.V.subtractQ = false;
            out.LD = RRBasis{c, false, std::move(LD.fs)};
            out.LDQ = RRBasis{c, true, std::move(LDQ.fs)};
            return out;
        } catch (const PrecisionError&) {
            if (attempt >= 3) throw;
            N = 2 * N + 16;
        }
    }
}

std::vector<Poly> folded_rs_space(const Field& F, std::uint32_t m) {
    require_param(m >= 1, "ambient dimension must be positive");
    require_param(m < F.q() - 1,
                  "folded Reed-Solomon ambient needs m < q - 1");
    std::vector<Poly> basis;
    for (std::uint32_t k = 0; k < m; ++k) {
        Poly mono;
        mono.c.assign(k + 1, 0);
        mono.c[k] = 1;
        basis.push_back(std::move(mono));
    }
    return basis;
}

}  // namespace sdesign
