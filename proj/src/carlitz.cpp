#include "sdesign/carlitz.hpp"

#include <algorithm>
#include <string>

#include "sdesign/common.hpp"

namespace sdesign {

namespace {

// Largest conductor torsion size q^d handled; keeps basis vectors desk-scale.
constexpr std::uint64_t kTorsionCap = std::uint64_t(1) << 20;

// a(x)^q by coefficient spread: over F_q the Frobenius fixes scalars, so
// (sum a_i x^i)^q = sum a_i x^{iq}.
Poly pfrobq(const Field& F, const Poly& a) {
    if (a.is_zero()) return Poly::zero();
    Poly r;
    r.c.assign(static_cast<std::size_t>(a.deg()) * F.q() + 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i * F.q()] = a.c[i];
    return r;
}

}  // namespace

std::vector<Poly> carlitz_linearized(const Field& F, const Poly& A) {
    if (A.is_zero()) return {};
    // rho_{x^i} iteratively: c'_j = c_{j-1}^q + x * c_j, starting from rho_1.
    std::vector<Poly> cur{Poly::one()};
    std::vector<Poly> res(static_cast<std::size_t>(A.deg()) + 1, Poly::zero());
    if (A.c[0] != 0) res[0] = Poly::constant(A.c[0]);
    const Poly x = Poly::x();
    for (std::size_t i = 1; i < A.c.size(); ++i) {
        std::vector<Poly> next(cur.size() + 1, Poly::zero());
        for (std::size_t j = 0; j < cur.size(); ++j) {
            next[j + 1] = padd(F, next[j + 1], pfrobq(F, cur[j]));
            next[j] = padd(F, next[j], pmul(F, x, cur[j]));
        }
        cur = std::move(next);
        if (A.c[i] != 0)
            for (std::size_t j = 0; j < cur.size(); ++j)
                res[j] = padd(F, res[j], pscale(F, cur[j], A.c[i]));
    }
    return res;
}

std::vector<Poly> cyclotomic_modulus(const Field& F, const Poly& p) {
    require_param(!p.is_zero() && p.lc() == 1 && p.deg() >= 1,
                  "conductor must be monic of positive degree");
    require_param(is_irreducible(F, p),
                  "conductor must be irreducible: " + pformat(F, p));
    std::uint64_t qd = ipow_capped(F.q(), static_cast<std::uint64_t>(p.deg()),
                                   kTorsionCap);
    require_param(qd <= kTorsionCap, "conductor torsion size exceeds the cap");
    auto lin = carlitz_linearized(F, p);
    std::vector<Poly> psi(qd, Poly::zero());
    for (std::size_t i = 0; i < lin.size(); ++i)
        psi[ipow(F.q(), static_cast<std::uint32_t>(i)) - 1] = lin[i];
    return psi;
}

CycCtx cyc_ctx_make(const Field& F, const Poly& p) {
    require_param(!p.is_zero() && p.lc() == 1 && p.deg() >= 1,
                  "conductor must be monic of positive degree");
    require_param(is_primitive(F, p),
                  "conductor must be primitive: " + pformat(F, p));
    std::uint64_t qd = ipow_capped(F.q(), static_cast<std::uint64_t>(p.deg()),
                                   kTorsionCap);
    require_param(qd <= kTorsionCap, "conductor torsion size exceeds the cap");

    CycCtx C;
    C.F = F;
    C.p = p;
    C.d = static_cast<std::uint32_t>(p.deg());
    C.m = qd - 1;
    auto lin = carlitz_linearized(F, p);
    for (std::size_t i = 0; i < lin.size(); ++i)
        C.psi.emplace_back(ipow(F.q(), static_cast<std::uint32_t>(i)) - 1,
                           lin[i]);
    // Eisenstein at p: constant coefficient p itself, every other non-leading
    // coefficient divisible by p, leading coefficient 1.
    require_invariant(C.psi.front().second == p,
                      "cyclotomic modulus: constant coefficient is not p");
    require_invariant(C.psi.back().second == Poly::one(),
                      "cyclotomic modulus is not monic");
    for (std::size_t i = 0; i + 1 < C.psi.size(); ++i)
        require_invariant(pdivides(F, p, C.psi[i].second),
                          "cyclotomic modulus is not Eisenstein at p");
    return C;
}

namespace {

bool all_coeffs_divisible(const CycCtx& C, const FFElem& f) {
    for (const auto& a : f.A)
        if (!a.is_zero() && !pdivides(C.F, C.p, a)) return false;
    return true;
}

bool all_coeffs_zero(const FFElem& f) {
    for (const auto& a : f.A)
        if (!a.is_zero()) return false;
    return true;
}

void normalize(const CycCtx& C, FFElem& f) {
    require_invariant(f.A.size() == C.m, "basis coefficient vector length");
    require_invariant(f.e >= 0, "negative denominator exponent");
    if (all_coeffs_zero(f)) {
        f.e = 0;
        return;
    }
    while (f.e > 0 && all_coeffs_divisible(C, f)) {
        for (auto& a : f.A)
            if (!a.is_zero()) a = pdiv_exact(C.F, a, C.p);
        --f.e;
    }
}

// Reduce a dense lambda-coefficient vector (length >= m) through
// Psi_p(lambda) = 0, i.e. lambda^m = -sum_{i<d} c_i lambda^{q^i - 1}, top
// down; every target exponent is strictly smaller, so one pass suffices.
void reduce_lambda(const CycCtx& C, std::vector<Poly>& v) {
    for (std::size_t k = v.size(); k-- > C.m;) {
        if (v[k].is_zero()) continue;
        Poly top = std::move(v[k]);
        v[k] = Poly::zero();
        for (std::size_t i = 0; i + 1 < C.psi.size(); ++i) {
            std::size_t tgt = k - C.m + C.psi[i].first;
            v[tgt] = psub(C.F, v[tgt], pmul(C.F, top, C.psi[i].second));
        }
    }
    v.resize(C.m);
}

}  // namespace

FFElem ffe_zero(const CycCtx& C) {
    FFElem f;
    f.A.assign(C.m, Poly::zero());
    return f;
}

FFElem ffe_one(const CycCtx& C) {
    FFElem f = ffe_zero(C);
    f.A[0] = Poly::one();
    return f;
}

FFElem ffe_lambda(const CycCtx& C) {
    require_invariant(C.m >= 2, "torsion basis too short for lambda");
    FFElem f = ffe_zero(C);
    f.A[1] = Poly::one();
    return f;
}

FFElem ffe_from_poly(const CycCtx& C, const Poly& a) {
    FFElem f = ffe_zero(C);
    f.A[0] = a;
    return f;
}

FFElem ffe_make(const CycCtx& C, std::int64_t e, std::vector<Poly> A) {
    require_param(e >= 0, "denominator exponent must be non-negative");
    for (std::size_t i = C.m; i < A.size(); ++i)
        require_param(A[i].is_zero(), "basis coefficient beyond lambda^(m-1)");
    A.resize(C.m, Poly::zero());
    FFElem f;
    f.e = e;
    f.A = std::move(A);
    normalize(C, f);
    return f;
}

bool ffe_is_zero(const FFElem& f) { return f.e == 0 && all_coeffs_zero(f); }

FFElem ffe_add(const CycCtx& C, const FFElem& f, const FFElem& g) {
    FFElem r = ffe_zero(C);
    r.e = std::max(f.e, g.e);
    Poly pf = ppow(C.F, C.p, static_cast<std::uint64_t>(r.e - f.e));
    Poly pg = ppow(C.F, C.p, static_cast<std::uint64_t>(r.e - g.e));
    for (std::size_t i = 0; i < C.m; ++i)
        r.A[i] = padd(C.F, pmul(C.F, f.A[i], pf), pmul(C.F, g.A[i], pg));
    normalize(C, r);
    return r;
}

FFElem ffe_neg(const CycCtx& C, const FFElem& f) {
    FFElem r = f;
    for (auto& a : r.A) a = pneg(C.F, a);
    return r;
}

FFElem ffe_sub(const CycCtx& C, const FFElem& f, const FFElem& g) {
    return ffe_add(C, f, ffe_neg(C, g));
}

FFElem ffe_mul(const CycCtx& C, const FFElem& f, const FFElem& g) {
    std::vector<Poly> conv(2 * C.m - 1, Poly::zero());
    for (std::size_t i = 0; i < C.m; ++i) {
        if (f.A[i].is_zero()) continue;
        for (std::size_t j = 0; j < C.m; ++j) {
            if (g.A[j].is_zero()) continue;
            conv[i + j] = padd(C.F, conv[i + j], pmul(C.F, f.A[i], g.A[j]));
        }
    }
    reduce_lambda(C, conv);
    FFElem r;
    r.e = f.e + g.e;
    r.A = std::move(conv);
    normalize(C, r);
    return r;
}

FFElem ffe_scale(const CycCtx& C, const FFElem& f, const Poly& a) {
    FFElem r = f;
    for (auto& c : r.A) c = pmul(C.F, c, a);
    normalize(C, r);
    return r;
}

FFElem ffe_mul_ppow(const CycCtx& C, const FFElem& f, std::int64_t k) {
    FFElem r = f;
    if (ffe_is_zero(r)) return r;
    if (k >= 0) {
        Poly pk = ppow(C.F, C.p, static_cast<std::uint64_t>(k));
        for (auto& c : r.A) c = pmul(C.F, c, pk);
    } else {
        r.e += -k;
    }
    normalize(C, r);
    return r;
}

FFElem ffe_pow(const CycCtx& C, FFElem f, std::uint64_t n) {
    FFElem r = ffe_one(C);
    while (n) {
        if (n & 1) r = ffe_mul(C, r, f);
        n >>= 1;
        if (n) f = ffe_mul(C, f, f);
    }
    return r;
}

FFElem sigma_apply(const CycCtx& C, const FFElem& f, const Poly& A) {
    require_param(!A.is_zero() && !pdivides(C.F, C.p, A),
                  "automorphism index must be coprime to the conductor");
    auto lin = carlitz_linearized(C.F, A);
    // Image of lambda: rho_A(lambda) = sum_i lin[i] * lambda^{q^i}.
    FFElem img = ffe_zero(C);
    FFElem lam = ffe_lambda(C);
    for (std::size_t i = 0; i < lin.size(); ++i) {
        if (!lin[i].is_zero())
            img = ffe_add(C, img, ffe_scale(C, lam, lin[i]));
        if (i + 1 < lin.size()) lam = ffe_pow(C, lam, C.F.q());
    }
    // Horner over the basis expansion; coefficients in F_q[x] are fixed.
    FFElem r = ffe_from_poly(C, f.A[C.m - 1]);
    for (std::size_t i = C.m - 1; i-- > 0;)
        r = ffe_add(C, ffe_mul(C, r, img), ffe_from_poly(C, f.A[i]));
    return ffe_mul_ppow(C, r, -f.e);
}

std::int64_t valuation_at_ramified_place(const CycCtx& C, const FFElem& f) {
    if (ffe_is_zero(f)) return kPlaceValInfinity;
    std::int64_t best = kPlaceValInfinity;
    for (std::size_t i = 0; i < C.m; ++i) {
        if (f.A[i].is_zero()) continue;
        std::int64_t vp = 0;
        Poly a = f.A[i];
        while (pdivides(C.F, C.p, a)) {
            a = pdiv_exact(C.F, a, C.p);
            ++vp;
        }
        best = std::min(best, vp * static_cast<std::int64_t>(C.m) +
                                  static_cast<std::int64_t>(i));
    }
    return best - f.e * static_cast<std::int64_t>(C.m);
}

std::vector<PlaceOrbit> split_places(const CycCtx& C, std::uint32_t r) {
    require_param(r >= 1, "place degree must be at least 1");
    std::vector<PlaceOrbit> orbits;
    for (const Poly& g : irreducible_enumerate(C.F, r)) {
        if (g == C.p) continue;
        // Completely split iff the Frobenius at g is trivial: g = 1 (mod p).
        if (pmod(C.F, g, C.p) != Poly::one()) continue;

        PlaceOrbit O;
        O.g = g;
        O.E = ext_field_make(C.F, g);
        const Field& K = O.E.K;

        // Psi_p reduced modulo g, as a dense polynomial over the residue field.
        Poly psibar;
        psibar.c.assign(C.m + 1, 0);
        for (const auto& [exp, coef] : C.psi)
            psibar.c[exp] = ext_eval(O.E, C.F, coef, O.E.xbar);
        ptrim(psibar);

        auto rts = proots(K, psibar);
        require_invariant(rts.size() == C.m,
                          "split place: expected m distinct torsion roots");
        for (const auto& [root, mult] : rts) {
            (void)root;
            require_invariant(mult == 1, "split place: repeated torsion root");
        }

        // Walk the Carlitz-x orbit from the canonically least root; p being
        // primitive forces a single m-cycle.
        elem_t start = rts.front().first;
        elem_t cur = start;
        for (std::uint64_t i = 0; i < C.m; ++i) {
            O.roots.push_back(cur);
            cur = K.add(K.pow(cur, C.F.q()), K.mul(O.E.xbar, cur));
        }
        require_invariant(cur == start, "Carlitz orbit does not close");
        std::vector<elem_t> sorted = O.roots;
        std::sort(sorted.begin(), sorted.end(),
                  [&](elem_t a, elem_t b) { return K.elem_less(a, b); });
        for (std::size_t i = 0; i < C.m; ++i)
            require_invariant(sorted[i] == rts[i].first,
                              "Carlitz orbit does not exhaust the roots");
        orbits.push_back(std::move(O));
    }
    return orbits;
}

elem_t evaluate_at(const CycCtx& C, const FFElem& f, const PlaceOrbit& O,
                   std::size_t idx) {
    require_param(idx < O.roots.size(), "place index out of range");
    const Field& K = O.E.K;
    elem_t alpha = O.roots[idx];
    elem_t acc = K.zero();
    for (std::size_t i = C.m; i-- > 0;)
        acc = K.add(K.mul(acc, alpha), ext_eval(O.E, C.F, f.A[i], O.E.xbar));
    if (f.e > 0) {
        elem_t px = ext_eval(O.E, C.F, C.p, O.E.xbar);
        require_invariant(px != K.zero(), "conductor vanishes at a place");
        acc = K.mul(acc, K.pow(K.inv(px), static_cast<std::uint64_t>(f.e)));
    }
    return acc;
}

}  // namespace sdesign
