#include "sdesign/poly.hpp"

#include <algorithm>
#include <cctype>

namespace sdesign {

void ptrim(Poly& a) {
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

Poly padd(const Field& F, const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.add(a.coeff(i), b.coeff(i));
    ptrim(r);
    return r;
}

Poly psub(const Field& F, const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.sub(a.coeff(i), b.coeff(i));
    ptrim(r);
    return r;
}

Poly pneg(const Field& F, const Poly& a) {
    Poly r = a;
    for (auto& v : r.c) v = F.neg(v);
    return r;
}

Poly pmul(const Field& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return r;
}

Poly pscale(const Field& F, const Poly& a, elem_t s) {
    if (s == 0) return Poly::zero();
    Poly r = a;
    for (auto& v : r.c) v = F.mul(v, s);
    return r;
}

std::pair<Poly, Poly> pdivmod(const Field& F, const Poly& a, const Poly& b) {
    require_invariant(!b.is_zero(), "polynomial division by zero");
    Poly q, r = a;
    if (r.deg() < b.deg()) return {q, r};
    q.c.assign(r.c.size() - b.c.size() + 1, 0);
    const elem_t bl = F.inv(b.lc());
    for (int i = r.deg(); i >= b.deg(); --i) {
        elem_t coef = r.coeff(i);
        if (coef == 0) continue;
        elem_t f = F.mul(coef, bl);
        q.c[i - b.deg()] = f;
        for (int j = 0; j <= b.deg(); ++j)
            r.c[i - b.deg() + j] = F.sub(r.c[i - b.deg() + j], F.mul(f, b.c[j]));
    }
    ptrim(q);
    ptrim(r);
    return {q, r};
}

Poly pmod(const Field& F, const Poly& a, const Poly& b) { return pdivmod(F, a, b).second; }

Poly pdiv_exact(const Field& F, const Poly& a, const Poly& b) {
    auto [q, r] = pdivmod(F, a, b);
    require_invariant(r.is_zero(), "expected exact polynomial division");
    return q;
}

bool pdivides(const Field& F, const Poly& b, const Poly& a) {
    if (b.is_zero()) return a.is_zero();
    return pmod(F, a, b).is_zero();
}

Poly pgcd(const Field& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = pmod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(F, a);
}

Poly pmonic(const Field& F, const Poly& a) {
    if (a.is_zero() || a.lc() == 1) return a;
    return pscale(F, a, F.inv(a.lc()));
}

elem_t peval(const Field& F, const Poly& a, elem_t at) {
    elem_t r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, at), a.c[i]);
    return r;
}

Poly ppow(const Field& F, Poly a, std::uint64_t e) {
    Poly r = Poly::one();
    while (e) {
        if (e & 1) r = pmul(F, r, a);
        a = pmul(F, a, a);
        e >>= 1;
    }
    return r;
}

Poly ppowmod(const Field& F, Poly a, std::uint64_t e, const Poly& mod) {
    Poly r = Poly::one();
    a = pmod(F, a, mod);
    while (e) {
        if (e & 1) r = pmod(F, pmul(F, r, a), mod);
        a = pmod(F, pmul(F, a, a), mod);
        e >>= 1;
    }
    return r;
}

Poly pderiv(const Field& F, const Poly& a) {
    Poly r;
    if (a.deg() < 1) return r;
    r.c.resize(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) {
        elem_t k = F.from_int(i % F.p());
        r.c[i - 1] = F.mul(a.c[i], k);
    }
    ptrim(r);
    return r;
}

Poly pscale_arg(const Field& F, const Poly& a, elem_t s) {
    Poly r = a;
    elem_t sp = 1;
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] = F.mul(r.c[i], sp);
        sp = F.mul(sp, s);
    }
    ptrim(r);
    return r;
}

bool ppless(const Field& F, const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] != b.c[i]) return F.elem_less(a.c[i], b.c[i]);
    }
    return false;
}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return s[i];
    }
    char take() {
        skip_ws();
        return s[i++];
    }
};

std::uint64_t parse_uint(Lexer& lx, const std::string& what) {
    lx.skip_ws();
    require_param(lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i])),
                  "expected " + what + " in polynomial literal '" + lx.s + "'");
    std::uint64_t v = 0;
    while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
        v = v * 10 + (lx.s[lx.i] - '0');
        require_param(v <= kFieldSizeCap * 2, "number too large in polynomial literal");
        ++lx.i;
    }
    return v;
}

}  // namespace

Poly pparse(const Field& F, const std::string& text) {
    Lexer lx{text};
    Poly acc;
    bool first = true;
    while (!lx.eof()) {
        bool negate = false;
        if (!first || lx.peek() == '+' || lx.peek() == '-') {
            char sign = lx.take();
            require_param(sign == '+' || sign == '-', std::string("unexpected '") + sign + "' in polynomial literal '" + text + "'");
            negate = (sign == '-');
        }
        first = false;
        require_param(!lx.eof(), "dangling sign in polynomial literal '" + text + "'");

        std::uint64_t coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            coeff = parse_uint(lx, "coefficient");
            require_param(coeff < F.q(), "coefficient " + std::to_string(coeff) + " out of range 0.." + std::to_string(F.q() - 1));
            have_coeff = true;
            if (!lx.eof() && lx.peek() == '*') lx.take();
        }
        std::uint64_t expo = 0;
        if (!lx.eof() && (lx.peek() == 'x' || lx.peek() == 'X')) {
            lx.take();
            expo = 1;
            if (!lx.eof() && lx.peek() == '^') {
                lx.take();
                expo = parse_uint(lx, "exponent");
                require_param(expo <= 1 << 20, "exponent too large in polynomial literal");
            }
        } else {
            require_param(have_coeff, "expected coefficient or 'x' in polynomial literal '" + text + "'");
        }
        elem_t ce = static_cast<elem_t>(coeff);
        if (negate) ce = F.neg(ce);
        Poly term;
        if (ce != 0) {
            term.c.assign(expo + 1, 0);
            term.c[expo] = ce;
        }
        acc = padd(F, acc, term);
    }
    require_param(!first, "empty polynomial literal");
    return acc;
}

std::string pformat(const Field& F, const Poly& a, const std::string& var) {
    (void)F;  // codes are printed directly; kept for signature symmetry
    if (a.is_zero()) return "0";
    std::string out;
    for (int i = a.deg(); i >= 0; --i) {
        elem_t v = a.coeff(i);
        if (v == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0 || v != 1) out += std::to_string(v);
        if (i > 0) {
            if (v != 1) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace sdesign
