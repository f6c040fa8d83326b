#include "sdesign/factor.hpp"

#include <algorithm>
#include <map>

namespace sdesign {

namespace {

// x^(q^j) mod f via repeated q-th powering of the previous image.
Poly frob_power(const Field& F, const Poly& f, const Poly& prev) {
    return ppowmod(F, prev, F.q(), f);
}

Poly sub_x(const Field& F, const Poly& a) {
    // a - x
    Poly x = Poly::x();
    return psub(F, a, x);
}

}  // namespace

bool is_irreducible(const Field& F, const Poly& f) {
    const int n = f.deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    // Rabin: x^(q^n) = x mod f, and gcd(x^(q^(n/r)) - x, f) = 1 for prime r | n
    Poly xq = pmod(F, Poly::x(), f);
    std::vector<Poly> frob(n + 1);  // frob[j] = x^(q^j) mod f (filled as needed)
    frob[0] = xq;
    for (int j = 1; j <= n; ++j) frob[j] = frob_power(F, f, frob[j - 1]);
    if (!psub(F, frob[n], pmod(F, Poly::x(), f)).is_zero()) return false;
    for (std::uint64_t r : prime_factors(n)) {
        Poly g = pgcd(F, f, sub_x(F, frob[n / r]));
        if (g.deg() != 0) return false;
    }
    return true;
}

namespace {

// Distinct roots of a product of linear factors h (monic, squarefree, all
// roots in F).  Deterministic: exhaustive scan for small fields, character /
// trace splitting with canonical sweeps otherwise.
void distinct_roots(const Field& F, const Poly& h, std::vector<elem_t>& out) {
    if (h.deg() <= 0) return;
    if (h.deg() == 1) {
        out.push_back(F.neg(h.coeff(0)));  // h monic: x + c
        return;
    }
    if (F.q() <= (1ULL << 16)) {
        for (std::uint64_t a = 0; a < F.q(); ++a)
            if (peval(F, h, static_cast<elem_t>(a)) == 0) out.push_back(static_cast<elem_t>(a));
        return;
    }
    // Split by sweeping canonical test functions; every pair of roots is
    // separated by some sweep value, so this terminates long before the cap.
    std::uint64_t guard = 0;
    std::vector<std::uint32_t> ds(F.k(), 0);
    auto next_elem = [&]() -> elem_t {
        int i = static_cast<int>(F.k()) - 1;
        while (i >= 0 && ds[i] == F.p() - 1) ds[i--] = 0;
        require_invariant(i >= 0, "root splitting sweep exhausted");
        ++ds[i];
        return F.from_digits(ds);
    };
    Poly cur = h;
    std::vector<Poly> work{cur};
    while (!work.empty()) {
        require_invariant(++guard < 10000, "root splitting did not converge");
        Poly f = work.back();
        work.pop_back();
        if (f.deg() == 1) {
            out.push_back(F.neg(f.coeff(0)));
            continue;
        }
        elem_t a = next_elem();
        Poly g;
        if (F.p() == 2) {
            // trace map of a*x modulo f
            Poly t = pmod(F, Poly{{0, a}}, f);
            Poly acc = t;
            std::uint64_t e = F.q();
            for (std::uint64_t bits = e >> 1; bits > 1; bits >>= 1) {
                t = pmod(F, pmul(F, t, t), f);
                acc = padd(F, acc, t);
            }
            g = pgcd(F, f, acc);
        } else {
            // (x + a)^((q-1)/2) - 1 separates roots by quadratic character
            Poly w = ppowmod(F, Poly{{a, 1}}, (F.q() - 1) / 2, f);
            w = psub(F, w, Poly::one());
            g = pgcd(F, f, w);
        }
        if (g.deg() == 0 || g.deg() == f.deg()) {
            work.push_back(f);  // this sweep value did not split; try the next
        } else {
            work.push_back(g);
            work.push_back(pdiv_exact(F, f, g));
        }
    }
}

}  // namespace

std::vector<std::pair<elem_t, int>> proots(const Field& F, const Poly& f) {
    require_param(!f.is_zero(), "root finding requires a nonzero polynomial");
    std::vector<std::pair<elem_t, int>> out;
    if (f.deg() < 1) return out;
    // product of (x - a) over distinct roots a: gcd(f, x^q - x)
    Poly xq = ppowmod(F, Poly::x(), F.q(), f);
    Poly h = pgcd(F, f, sub_x(F, xq));
    std::vector<elem_t> roots;
    distinct_roots(F, h, roots);
    std::sort(roots.begin(), roots.end(), [&](elem_t a, elem_t b) { return F.elem_less(a, b); });
    Poly rest = f;
    for (elem_t rt : roots) {
        Poly lin{{F.neg(rt), 1}};
        int mult = 0;
        for (;;) {
            auto [q, r] = pdivmod(F, rest, lin);
            if (!r.is_zero()) break;
            rest = q;
            ++mult;
        }
        require_invariant(mult >= 1, "claimed root does not divide");
        out.emplace_back(rt, mult);
    }
    return out;
}

void enumerate_monic(const Field& F, std::uint32_t deg,
                     const std::function<bool(const Poly&)>& visit) {
    const auto elems = F.elements_canonical();
    Poly f;
    f.c.assign(deg + 1, 0);
    f.c[deg] = 1;
    // odometer over coefficient positions 0..deg-1, canonical order, with the
    // constant coefficient as the most significant position
    std::vector<std::uint32_t> idx(deg, 0);
    for (;;) {
        for (std::uint32_t i = 0; i < deg; ++i) f.c[i] = elems[idx[i]];
        if (!visit(f)) return;
        int i = static_cast<int>(deg) - 1;
        while (i >= 0 && idx[i] + 1 == F.q()) idx[i--] = 0;
        if (i < 0) return;
        ++idx[i];
    }
}

std::vector<Poly> irreducible_enumerate(const Field& F, std::uint32_t deg) {
    require_param(deg >= 1, "irreducible enumeration requires degree >= 1");
    require_param(ipow_capped(F.q(), deg, 1ULL << 26) <= (1ULL << 26),
                  "irreducible enumeration out of desk scale");
    std::vector<Poly> out;
    enumerate_monic(F, deg, [&](const Poly& f) {
        if (is_irreducible(F, f)) out.push_back(f);
        return true;
    });
    return out;
}

Poly first_irreducible_poly(const Field& F, std::uint32_t deg) {
    require_param(deg >= 1, "degree must be >= 1");
    Poly out;
    enumerate_monic(F, deg, [&](const Poly& f) {
        if (is_irreducible(F, f)) {
            out = f;
            return false;
        }
        return true;
    });
    require_invariant(!out.is_zero(), "no irreducible polynomial of requested degree");
    return out;
}

Poly first_primitive_poly(const Field& F, std::uint32_t deg) {
    require_param(deg >= 1, "degree must be >= 1");
    require_param(ipow_capped(F.q(), deg, kFieldSizeCap) <= kFieldSizeCap,
                  "q^d exceeds cap 2^24");
    Poly out;
    enumerate_monic(F, deg, [&](const Poly& f) {
        if (is_primitive(F, f)) {
            out = f;
            return false;
        }
        return true;
    });
    require_invariant(!out.is_zero(), "no primitive polynomial of requested degree");
    return out;
}

std::uint64_t irreducible_count(std::uint64_t q, std::uint32_t d) {
    // (1/d) sum_{e | d} mu(e) q^(d/e)
    auto mobius = [](std::uint64_t n) -> int {
        int m = 1;
        for (std::uint64_t p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                m = -m;
            }
        }
        if (n > 1) m = -m;
        return m;
    };
    __int128 acc = 0;
    for (std::uint64_t e = 1; e <= d; ++e) {
        if (d % e) continue;
        int mu = mobius(e);
        if (mu == 0) continue;
        __int128 t = 1;
        for (std::uint32_t i = 0; i < d / e; ++i) t *= q;
        acc += mu * t;
    }
    acc /= d;
    require_invariant(acc >= 0 && acc <= static_cast<__int128>(~0ULL), "irreducible count overflow");
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t order_of_x_mod(const Field& F, const Poly& f) {
    require_param(f.deg() >= 1 && f.coeff(0) != 0, "order of x undefined modulo this polynomial");
    const std::uint64_t m = ipow(F.q(), f.deg()) - 1;
    std::uint64_t ord = m;
    for (std::uint64_t pf : prime_factors(m)) {
        while (ord % pf == 0) {
            Poly t = ppowmod(F, Poly::x(), ord / pf, f);
            if (t == Poly::one())
                ord /= pf;
            else
                break;
        }
    }
    require_invariant(ppowmod(F, Poly::x(), ord, f) == Poly::one(), "order computation failed");
    return ord;
}

bool is_primitive(const Field& F, const Poly& f) {
    if (!is_irreducible(F, f)) return false;
    if (f.coeff(0) == 0) return false;  // x | f, so x-bar is not a unit
    return order_of_x_mod(F, f) == ipow(F.q(), f.deg()) - 1;
}

namespace {

// Complete deterministic factorization of a squarefree monic polynomial all
// of whose irreducible factors have degree exactly d.
void equal_degree_factor(const Field& F, const Poly& f, std::uint32_t d, std::vector<Poly>& out) {
    if (f.deg() == 0) return;
    if (f.deg() == static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    if (d == 1) {
        for (auto& [rt, mult] : proots(F, f)) {
            (void)mult;
            out.push_back(Poly{{F.neg(rt), 1}});
        }
        return;
    }
    // Trial division by monic degree-d candidates in canonical order: any
    // monic degree-d divisor of an equal-degree-d squarefree product is one
    // of its irreducible factors, so this is deterministic and complete.
    Poly rest = f;
    enumerate_monic(F, d, [&](const Poly& cand) {
        if (rest.deg() < static_cast<int>(d)) return false;
        if (!pdivides(F, cand, rest)) return true;
        out.push_back(cand);
        rest = pdiv_exact(F, rest, cand);
        return true;
    });
    require_invariant(rest.deg() == 0, "equal-degree factorization incomplete");
}

}  // namespace

std::vector<std::pair<Poly, int>> pfactor(const Field& F, const Poly& f_in) {
    require_param(!f_in.is_zero(), "cannot factor the zero polynomial");
    std::map<std::vector<elem_t>, std::pair<Poly, int>> found;
    Poly rest = pmonic(F, f_in);

    auto strip = [&](const Poly& irr) {
        int mult = 0;
        for (;;) {
            auto [q, r] = pdivmod(F, rest, irr);
            if (!r.is_zero()) break;
            rest = q;
            ++mult;
        }
        require_invariant(mult >= 1, "claimed factor does not divide");
        auto it = found.find(irr.c);
        if (it == found.end())
            found.emplace(irr.c, std::make_pair(irr, mult));
        else
            it->second.second += mult;
    };

    while (rest.deg() >= 1) {
        Poly der = pderiv(F, rest);
        if (der.is_zero()) {
            // rest = g(x^p): take the p-th root of the coefficients and
            // recurse on the strictly smaller g
            const std::uint32_t p = F.p();
            Poly g;
            g.c.resize(rest.deg() / p + 1);
            const std::uint64_t root_exp = ipow(F.p(), F.k() == 1 ? 0 : F.k() - 1);
            for (std::size_t i = 0; i < g.c.size(); ++i) {
                elem_t c = rest.coeff(i * p);
                g.c[i] = F.k() == 1 ? c : F.pow(c, root_exp);
            }
            ptrim(g);
            for (auto& [irr, mult] : pfactor(F, g)) {
                (void)mult;
                strip(irr);
            }
            continue;
        }
        Poly sf = pdiv_exact(F, rest, pgcd(F, rest, der));
        // distinct-degree splitting of the squarefree part
        Poly work = sf;
        Poly frob = pmod(F, Poly::x(), work);
        for (std::uint32_t d = 1; work.deg() >= 1; ++d) {
            require_invariant(d <= static_cast<std::uint32_t>(sf.deg()), "distinct-degree loop overran");
            if (work.deg() < static_cast<int>(2 * d)) {
                strip(pmonic(F, work));  // tail of DDF: the remainder is irreducible
                break;
            }
            frob = ppowmod(F, frob, F.q(), work);
            Poly part = pgcd(F, work, sub_x(F, frob));
            if (part.deg() >= 1) {
                std::vector<Poly> irrs;
                equal_degree_factor(F, part, d, irrs);
                for (auto& irr : irrs) strip(irr);
                work = pdiv_exact(F, work, part);
                frob = pmod(F, frob, work);
            }
        }
    }

    std::vector<std::pair<Poly, int>> out;
    for (auto& [key, val] : found) {
        (void)key;
        out.push_back(val);
    }
    std::sort(out.begin(), out.end(),
              [&](const auto& a, const auto& b) { return ppless(F, a.first, b.first); });
    return out;
}

ExtField ext_field_make(const Field& base, const Poly& g) {
    require_param(!g.is_zero() && g.lc() == 1, "extension modulus must be monic");
    const int r = g.deg();
    require_param(r >= 1, "extension modulus must have degree >= 1");
    if (!is_irreducible(base, g)) {
        auto fs = pfactor(base, g);
        require_invariant(!fs.empty() && fs[0].first.deg() < g.deg(), "reducibility witness missing");
        throw ParamError("extension modulus " + pformat(base, g) + " is reducible; factor: " +
                         pformat(base, fs[0].first));
    }
    const std::uint64_t Q = ipow_capped(base.q(), r, kFieldSizeCap);
    require_param(Q <= kFieldSizeCap, "extension field exceeds cap 2^24");

    ExtField E;
    E.r = static_cast<std::uint32_t>(r);
    E.g = g;

    const std::uint32_t k = base.k();
    if (r == 1) {
        E.K = base;
        E.xbar = base.neg(g.coeff(0));
        E.embed.resize(base.q());
        for (std::uint64_t a = 0; a < base.q(); ++a) E.embed[a] = static_cast<elem_t>(a);
        E.decomp_inv = Mat(0, 0);
        return E;
    }

    E.K = Field(Q);  // canonically-first modulus over the prime field

    // Embed F_q: send the base generator to the canonically-least root of the
    // base modulus inside K, extend F_p-linearly.
    elem_t yim = 0;
    if (k == 1) {
        E.embed.resize(base.q());
        for (std::uint64_t a = 0; a < base.q(); ++a) E.embed[a] = static_cast<elem_t>(a);
    } else {
        Poly base_mod;  // base modulus rewritten as a polynomial over K's prime subfield
        base_mod.c.assign(base.modulus().begin(), base.modulus().end());
        auto roots = proots(E.K, base_mod);
        require_invariant(!roots.empty(), "base modulus has no root in the extension");
        yim = roots.front().first;
        E.embed.resize(base.q());
        for (std::uint64_t a = 0; a < base.q(); ++a) {
            auto ds = base.digits(static_cast<elem_t>(a));
            elem_t acc = 0, pw = 1;
            for (std::uint32_t t = 0; t < k; ++t) {
                acc = E.K.add(acc, E.K.mul(E.K.from_int(ds[t]), pw));
                pw = E.K.mul(pw, yim);
            }
            E.embed[a] = acc;
        }
    }

    // xbar: canonically-least root in K of g with embedded coefficients.
    Poly gK;
    gK.c.resize(g.c.size());
    for (std::size_t i = 0; i < g.c.size(); ++i) gK.c[i] = E.embed[g.c[i]];
    auto xroots = proots(E.K, gK);
    require_invariant(xroots.size() == static_cast<std::size_t>(r),
                      "modulus does not split in its extension field");
    E.xbar = xroots.front().first;

    // Decomposition data: columns are the F_p digit vectors of
    // embed(y^t) * xbar^j; inverting gives coordinates over F_q.
    const std::uint32_t n = E.K.k();
    require_invariant(n == k * E.r, "flattened degree mismatch");
    Field Fp(base.p());
    Mat M(n, n);
    elem_t xp = 1;
    for (std::uint32_t j = 0; j < E.r; ++j) {
        elem_t yp = 1;
        for (std::uint32_t t = 0; t < k; ++t) {
            auto ds = E.K.digits(E.K.mul(xp, yp));
            for (std::uint32_t i = 0; i < n; ++i) M.at(i, j * k + t) = ds[i];
            if (k > 1) yp = E.K.mul(yp, yim);
        }
        xp = E.K.mul(xp, E.xbar);
    }
    E.decomp_inv = inverse(Fp, M);
    return E;
}

elem_t ext_eval(const ExtField& E, const Field& base, const Poly& f, elem_t at) {
    elem_t r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = E.K.add(E.K.mul(r, at), E.embed[f.c[i]]);
    (void)base;
    return r;
}

std::vector<elem_t> ext_decompose(const ExtField& E, const Field& base, elem_t v) {
    if (E.r == 1) return {v};
    const std::uint32_t k = base.k(), n = E.K.k();
    Field Fp(base.p());
    auto ds = E.K.digits(v);
    std::vector<elem_t> coords(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        elem_t acc = 0;
        for (std::uint32_t j = 0; j < n; ++j)
            acc = Fp.add(acc, Fp.mul(E.decomp_inv.at(i, j), ds[j]));
        coords[i] = acc;
    }
    std::vector<elem_t> out(E.r);
    for (std::uint32_t j = 0; j < E.r; ++j) {
        std::vector<std::uint32_t> digs(k);
        for (std::uint32_t t = 0; t < k; ++t) digs[t] = coords[j * k + t];
        out[j] = base.from_digits(digs);
    }
    return out;
}

Poly ext_minpoly(const ExtField& E, const Field& base, elem_t v) {
    // first linear dependence among 1, v, v^2, ... over the embedded base
    std::vector<std::vector<elem_t>> rows;  // decomposed powers
    elem_t pw = 1;
    for (std::uint32_t j = 0;; ++j) {
        require_invariant(j <= E.r, "minimal polynomial search overran");
        rows.push_back(ext_decompose(E, base, pw));
        Mat M(static_cast<std::uint32_t>(rows.size()), E.r);
        for (std::uint32_t i = 0; i < rows.size(); ++i)
            for (std::uint32_t c = 0; c < E.r; ++c) M.at(i, c) = rows[i][c];
        if (rank_of(base, M) < rows.size()) {
            // solve for the monic dependence v^j = -(c_0 + c_1 v + ..)
            Mat Ab(E.r, static_cast<std::uint32_t>(j) + 1);
            for (std::uint32_t c = 0; c < E.r; ++c) {
                for (std::uint32_t i = 0; i < j; ++i) Ab.at(c, i) = rows[i][c];
                Ab.at(c, j) = rows[j][c];
            }
            std::vector<std::uint32_t> piv;
            rref(base, Ab, &piv);
            Poly out;
            out.c.assign(j + 1, 0);
            out.c[j] = 1;
            for (std::uint32_t t = 0; t < piv.size(); ++t) {
                require_invariant(piv[t] < j, "inconsistent minimal polynomial system");
                out.c[piv[t]] = base.neg(Ab.at(t, j));
            }
            return out;
        }
        pw = E.K.mul(pw, v);
    }
}

}  // namespace sdesign
