#include "sdesign/laurent.hpp"

#include <algorithm>

#include "sdesign/factor.hpp"

namespace sdesign {

void ls_norm(LSeries& s) {
    if (!s.c.empty() && s.lo + static_cast<int>(s.c.size()) - 1 > s.prec)
        s.c.resize(static_cast<std::size_t>(s.prec - s.lo + 1));
    std::size_t lead = 0;
    while (lead < s.c.size() && s.c[lead] == 0) ++lead;
    if (lead) {
        s.c.erase(s.c.begin(), s.c.begin() + lead);
        s.lo += static_cast<int>(lead);
    }
    while (!s.c.empty() && s.c.back() == 0) s.c.pop_back();
    if (s.c.empty()) s.lo = 0;
}

LSeries ls_zero(int prec) {
    LSeries s;
    s.prec = prec;
    return s;
}

LSeries ls_monomial(elem_t a, int e) {
    LSeries s;
    if (a != 0) {
        s.lo = e;
        s.c = {a};
    }
    return s;
}

LSeries ls_from_poly(const Poly& f) {
    LSeries s;
    s.c = f.c;
    ls_norm(s);
    return s;
}

int ls_val(const LSeries& s) {
    if (!s.c.empty()) return s.lo;
    return s.exact() ? kValInfinity : s.prec + 1;
}

elem_t ls_coeff(const LSeries& s, int e) {
    if (e > s.prec) throw PrecisionError("series coefficient requested beyond known precision");
    if (e < s.lo || e >= s.lo + static_cast<int>(s.c.size())) return 0;
    return s.c[static_cast<std::size_t>(e - s.lo)];
}

LSeries ls_add(const Field& F, const LSeries& a, const LSeries& b) {
    LSeries r;
    r.prec = std::min(a.prec, b.prec);
    if (a.c.empty() && b.c.empty()) return r;
    int lo = std::min(a.c.empty() ? b.lo : a.lo, b.c.empty() ? a.lo : b.lo);
    int hi = std::min(r.prec, std::max(a.lo + static_cast<int>(a.c.size()),
                                       b.lo + static_cast<int>(b.c.size())) - 1);
    if (hi < lo) return r;
    r.lo = lo;
    r.c.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    for (int e = lo; e <= hi; ++e) {
        elem_t va = (e >= a.lo && e < a.lo + static_cast<int>(a.c.size())) ? a.c[e - a.lo] : 0;
        elem_t vb = (e >= b.lo && e < b.lo + static_cast<int>(b.c.size())) ? b.c[e - b.lo] : 0;
        r.c[e - lo] = F.add(va, vb);
    }
    ls_norm(r);
    return r;
}

LSeries ls_neg(const Field& F, const LSeries& a) {
    LSeries r = a;
    for (auto& v : r.c) v = F.neg(v);
    return r;
}

LSeries ls_sub(const Field& F, const LSeries& a, const LSeries& b) { return ls_add(F, a, ls_neg(F, b)); }

LSeries ls_scale(const Field& F, const LSeries& a, elem_t s) {
    if (s == 0) {
        LSeries r;
        r.prec = a.prec;
        return r;
    }
    LSeries r = a;
    for (auto& v : r.c) v = F.mul(v, s);
    ls_norm(r);
    return r;
}

LSeries ls_mul(const Field& F, const LSeries& a, const LSeries& b) {
    // known precision of the product: terms past prec of one factor times
    // the valuation of the other are uncertain
    LSeries r;
    if ((a.exact() && a.c.empty()) || (b.exact() && b.c.empty()))
        return ls_zero(kExactPrec);  // an exactly-zero factor gives an exact zero
    const int va = ls_val(a), vb = ls_val(b);
    int prec;
    if (a.exact() && b.exact())
        prec = kExactPrec;
    else
        prec = std::min(a.exact() ? kExactPrec : a.prec + vb, b.exact() ? kExactPrec : b.prec + va);
    r.prec = std::min(prec, kExactPrec);
    if (a.c.empty() || b.c.empty()) return r;  // zero as far as anybody knows
    r.lo = a.lo + b.lo;
    int hi = std::min(r.prec, a.lo + b.lo + static_cast<int>(a.c.size() + b.c.size()) - 2);
    if (hi < r.lo) {
        r.c.clear();
        r.lo = 0;
        return r;
    }
    r.c.assign(static_cast<std::size_t>(hi - r.lo + 1), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        const int base = a.lo + static_cast<int>(i) + b.lo - r.lo;
        if (base >= static_cast<int>(r.c.size())) break;  // past the window
        const std::size_t jmax =
            std::min(b.c.size(), r.c.size() - static_cast<std::size_t>(base));
        for (std::size_t j = 0; j < jmax; ++j)
            r.c[base + j] = F.add(r.c[base + j], F.mul(a.c[i], b.c[j]));
    }
    ls_norm(r);
    return r;
}

LSeries ls_mul_monomial(const Field& F, const LSeries& s, elem_t a, int e) {
    if (a == 0) return ls_zero(kExactPrec);
    LSeries r = ls_scale(F, s, a);
    r.lo += e;
    if (!r.exact()) r.prec += e;
    if (r.c.empty()) r.lo = 0;
    return r;
}

LSeries ls_shift(const LSeries& a, int k) {
    LSeries r = a;
    if (!r.c.empty()) r.lo += k;
    if (!r.exact()) r.prec += k;
    return r;
}

LSeries ls_trunc(const LSeries& a, int P) {
    LSeries r = a;
    r.prec = std::min(r.prec, P);
    ls_norm(r);
    return r;
}

LSeries ls_inv(const Field& F, const LSeries& a, int out_prec) {
    require_invariant(!a.c.empty(), "series inverse requires a known nonzero leading term");
    const int v = a.lo;
    // knowing a through prec means knowing rel coefficients 0..prec-v, which
    // determines the inverse through the same relative depth
    const int rel_known = a.exact() ? kExactPrec : a.prec - v;
    const int rel_out = std::min(out_prec + v, rel_known);  // output exponent -v + rel
    LSeries r;
    r.prec = std::min(a.exact() ? out_prec : -v + rel_known, out_prec);
    if (rel_out < 0) return r;
    r.lo = -v;
    r.c.assign(static_cast<std::size_t>(rel_out) + 1, 0);
    const elem_t i0 = F.inv(a.c[0]);
    r.c[0] = i0;
    for (int k = 1; k <= rel_out; ++k) {
        elem_t acc = 0;
        for (int i = 1; i <= k; ++i) {
            elem_t ai = (i < static_cast<int>(a.c.size())) ? a.c[i] : 0;
            if (ai) acc = F.add(acc, F.mul(ai, r.c[k - i]));
        }
        r.c[k] = F.neg(F.mul(i0, acc));
    }
    ls_norm(r);
    return r;
}

LSeries ls_pow(const Field& F, const LSeries& a, std::int64_t e, int out_prec) {
    if (e == 0) return ls_monomial(1, 0);
    LSeries base = e > 0 ? a : ls_inv(F, a, out_prec + std::abs(static_cast<int>(e) * ls_val(a)) + 1);
    std::uint64_t k = static_cast<std::uint64_t>(e > 0 ? e : -e);
    LSeries r = ls_monomial(1, 0);
    while (k) {
        if (k & 1) r = ls_trunc(ls_mul(F, r, base), out_prec);
        base = ls_trunc(ls_mul(F, base, base), out_prec);
        k >>= 1;
    }
    return r;
}

bool ls_agree(const LSeries& a, const LSeries& b, int P) {
    require_invariant(a.prec >= P && b.prec >= P, "comparison beyond known precision");
    int lo = std::min(ls_val(a), ls_val(b));
    if (lo > P) return true;
    for (int e = lo; e <= P; ++e)
        if (ls_coeff(a, e) != ls_coeff(b, e)) return false;
    return true;
}

LSeries poly_at_series(const Field& F, const Poly& f, const LSeries& s, int out_prec) {
    LSeries acc = ls_zero(kExactPrec);
    for (std::size_t i = f.c.size(); i-- > 0;) {
        acc = ls_trunc(ls_mul(F, acc, s), out_prec);
        acc = ls_add(F, acc, ls_monomial(f.c[i], 0));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Newton-polygon solver
// ---------------------------------------------------------------------------

namespace {

// G(X) -> G(X + a t^e), exactness-preserving synthetic substitution.
SeriesPoly sp_shift(const Field& F, SeriesPoly G, elem_t a, int e) {
    const int D = static_cast<int>(G.c.size()) - 1;
    for (int k = 0; k < D; ++k)
        for (int j = D - 1; j >= k; --j)
            G.c[j] = ls_add(F, G.c[j], ls_mul_monomial(F, G.c[j + 1], a, e));
    return G;
}

struct Edge {
    int mu;                      // candidate root valuation (integer slopes only)
    std::vector<std::uint32_t> js;  // polygon points on the edge
};

// Integer-slope lower-hull edges of the points (j, val(c_j)).  For an edge
// of slope -mu the member points satisfy val(c_j) + j*mu == minimum.
std::vector<Edge> polygon_edges(const SeriesPoly& G) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;  // (j, val)
    for (std::size_t j = 0; j < G.c.size(); ++j) {
        require_invariant(G.c[j].exact(), "polygon requires exact coefficients");
        if (!G.c[j].known_zero()) pts.emplace_back(static_cast<std::int64_t>(j), ls_val(G.c[j]));
    }
    std::vector<Edge> out;
    if (pts.size() < 2) return out;
    // lower convex hull, j ascending (monotone chain)
    std::vector<std::pair<std::int64_t, std::int64_t>> hull;
    for (auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep b only if it is strictly below segment a-p
            if ((b.second - a.second) * (p.first - a.first) <
                (p.second - a.second) * (b.first - a.first))
                break;
            hull.pop_back();
        }
        hull.push_back(p);
    }
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        auto [j1, v1] = hull[s];
        auto [j2, v2] = hull[s + 1];
        const std::int64_t dv = v2 - v1, dj = j2 - j1;
        if (dv % dj != 0) continue;  // non-integer slope: no F_q((t)) root here
        const std::int64_t mu = -(dv / dj);
        Edge e;
        e.mu = static_cast<int>(mu);
        const std::int64_t level = v1 + mu * j1;  // value of val + j*mu on the edge
        for (auto& p : pts)
            if (p.second + mu * p.first == level && p.first >= j1 && p.first <= j2)
                e.js.push_back(static_cast<std::uint32_t>(p.first));
        out.push_back(std::move(e));
    }
    return out;
}

struct RootCollector {
    const Field& F;
    int N;
    std::vector<LSeries> roots;

    void emit(const LSeries& prefix) {
        LSeries r = ls_trunc(prefix, N);
        r.prec = N;
        roots.push_back(std::move(r));
    }
};

// Continue a simple root by exact Newton steps until exponent N.
void extract_simple(const Field& F, SeriesPoly G, LSeries prefix, int last_mu, RootCollector& out) {
    for (;;) {
        require_invariant(G.c.size() >= 2, "degenerate series polynomial in extraction");
        const LSeries& c0 = G.c[0];
        if (c0.known_zero()) {  // exact root reached
            out.emit(prefix);
            return;
        }
        const int v0 = ls_val(c0);
        if (v0 > out.N) {
            out.emit(prefix);
            return;
        }
        const LSeries& c1 = G.c[1];
        require_invariant(!c1.known_zero(), "simple root lost its simple status");
        const int mu = v0 - ls_val(c1);
        require_invariant(mu > last_mu, "extraction exponent failed to increase");
        if (mu > out.N) {
            out.emit(prefix);
            return;
        }
        const elem_t a = F.neg(F.div(c0.c[0], c1.c[0]));
        G = sp_shift(F, std::move(G), a, mu);
        prefix = ls_add(F, prefix, ls_monomial(a, mu));
        last_mu = mu;
    }
}

void solve_rec(const Field& F, const SeriesPoly& G, int mu_min, const LSeries& prefix,
               std::optional<int> force_mu, int depth, RootCollector& out) {
    require_invariant(depth < 512, "series root recursion exceeded depth bound");
    // X = 0 continues the prefix exactly (suppressed under a leading-exponent
    // filter, where only roots that actually start at force_mu are wanted)
    if (G.c[0].known_zero() && !force_mu) out.emit(prefix);
    for (const Edge& e : polygon_edges(G)) {
        if (e.mu < mu_min) continue;
        if (force_mu && e.mu != *force_mu) continue;
        // edge polynomial: sum of leading coefficients over edge points
        Poly ep;
        ep.c.assign(e.js.back() + 1, 0);
        for (auto j : e.js) ep.c[j] = G.c[j].c[0];
        ptrim(ep);
        for (auto& [root, mult] : proots(F, ep)) {
            if (root == 0) continue;
            SeriesPoly Gs = sp_shift(F, G, root, e.mu);
            LSeries pre = ls_add(F, prefix, ls_monomial(root, e.mu));
            if (mult == 1)
                extract_simple(F, std::move(Gs), std::move(pre), e.mu, out);
            else
                solve_rec(F, Gs, e.mu + 1, pre, std::nullopt, depth + 1, out);
        }
    }
}

}  // namespace

std::vector<LSeries> series_roots(const Field& F, const SeriesPoly& sp, int N,
                                  std::optional<int> first_exponent) {
    require_param(sp.c.size() >= 2, "series polynomial must have positive degree");
    for (const auto& c : sp.c) require_param(c.exact(), "series root solver needs exact coefficients");

    RootCollector out{F, N, {}};
    LSeries zero_prefix = ls_zero(kExactPrec);
    solve_rec(F, sp, -(kValInfinity / 2), zero_prefix, first_exponent, 0, out);

    // deduplicate and order deterministically by coefficient sequence
    auto cmp = [&](const LSeries& a, const LSeries& b) {
        int lo = std::min(ls_val(a), ls_val(b));
        for (int e = lo; e <= N; ++e) {
            elem_t ca = ls_coeff(a, e), cb = ls_coeff(b, e);
            if (ca != cb) return F.elem_less(ca, cb);
        }
        return false;
    };
    auto eq = [&](const LSeries& a, const LSeries& b) { return ls_agree(a, b, N); };
    std::sort(out.roots.begin(), out.roots.end(), cmp);
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end(), eq), out.roots.end());
    return out.roots;
}

}  // namespace sdesign
