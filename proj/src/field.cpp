#include "sdesign/field.hpp"

#include <algorithm>
#include <numeric>

namespace sdesign {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        require_invariant(b == 0 || r <= ~0ULL / (b ? b : 1), "ipow overflow");
        r *= b;
    }
    return r;
}

std::uint64_t ipow_capped(std::uint64_t b, std::uint64_t e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (b != 0 && r > cap / b) return cap + 1;
        r *= b;
        if (r > cap) return cap + 1;
    }
    return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool prime_power_split(std::uint64_t n, std::uint64_t& p, std::uint32_t& k) {
    if (n < 2) return false;
    auto fs = prime_factors(n);
    if (fs.size() != 1) return false;
    p = fs[0];
    k = 0;
    while (n > 1) {
        n /= p;
        ++k;
    }
    return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

namespace {

// --- minimal monic-polynomial arithmetic over F_p on digit vectors, used
// --- only for modulus selection/validation before Field exists.

using Digits = std::vector<std::uint32_t>;

Digits dmod(const Digits& a, const Digits& mod, std::uint32_t p) {
    Digits r = a;
    const std::size_t dm = mod.size() - 1;  // mod monic
    while (r.size() > dm) {
        std::uint32_t lead = r.back();
        if (lead != 0) {
            std::size_t off = r.size() - 1 - dm;
            for (std::size_t i = 0; i < dm; ++i) {
                std::uint64_t v = r[off + i] + static_cast<std::uint64_t>(p - mod[i] % p) * lead;
                r[off + i] = static_cast<std::uint32_t>(v % p);
            }
        }
        r.pop_back();
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

Digits dmulmod(const Digits& a, const Digits& b, const Digits& mod, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Digits c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] = static_cast<std::uint32_t>((c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    return dmod(c, mod, p);
}

Digits dpowmod(Digits base, std::uint64_t e, const Digits& mod, std::uint32_t p) {
    Digits r{1};
    base = dmod(base, mod, p);
    while (e) {
        if (e & 1) r = dmulmod(r, base, mod, p);
        base = dmulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

Digits dgcd(Digits a, Digits b, std::uint32_t p) {
    auto inv_mod_p = [p](std::uint32_t v) {
        std::uint32_t r = 1;
        std::uint64_t bb = v, e = p - 2;
        std::uint64_t acc = 1;
        while (e) {
            if (e & 1) acc = acc * bb % p;
            bb = bb * bb % p;
            e >>= 1;
        }
        r = static_cast<std::uint32_t>(acc);
        return r;
    };
    while (!b.empty()) {
        // a mod b with b made monic on the fly
        Digits bm = b;
        std::uint32_t lead = bm.back();
        if (lead != 1) {
            std::uint32_t li = inv_mod_p(lead);
            for (auto& c : bm) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * li % p);
        }
        Digits r = dmod(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin test for a monic polynomial over the prime field F_p.
bool digits_irreducible(const Digits& f, std::uint32_t p) {
    const std::size_t n = f.size() - 1;
    if (n == 0) return false;
    Digits x{0, 1};
    // x^(p^n) == x mod f
    Digits t = x;
    for (std::size_t i = 0; i < n; ++i) t = dpowmod(t, p, f, p);
    Digits xr = dmod(x, f, p);
    if (t != xr) return false;
    for (std::uint64_t r : prime_factors(n)) {
        Digits u = x;
        for (std::size_t i = 0; i < n / r; ++i) u = dpowmod(u, p, f, p);
        // gcd(x^(p^(n/r)) - x, f) must be 1
        Digits diff = u;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
        while (!diff.empty() && diff.back() == 0) diff.pop_back();
        Digits g = dgcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Canonically-first monic irreducible of degree k over F_p: minimal degree-k
// candidate under lex order on (c_0, .., c_{k-1}).
Digits first_irreducible(std::uint32_t p, std::uint32_t k) {
    Digits f(k + 1, 0);
    f[k] = 1;
    std::vector<std::uint32_t> c(k, 0);
    for (;;) {
        for (std::uint32_t i = 0; i < k; ++i) f[i] = c[i];
        if (digits_irreducible(f, p)) return f;
        // next coefficient tuple in lex order from c_0
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        require_invariant(i >= 0, "no irreducible polynomial found");
        ++c[i];
    }
}

}  // namespace

Field::Field(std::uint64_t q) {
    std::uint64_t p;
    std::uint32_t k;
    require_param(prime_power_split(q, p, k), "field size must be a prime power, got " + std::to_string(q));
    require_param(q <= kFieldSizeCap, "field size " + std::to_string(q) + " exceeds cap 2^24");
    p_ = static_cast<std::uint32_t>(p);
    k_ = k;
    q_ = q;
    if (k_ > 1) mod_ = first_irreducible(p_, k_);
    init_tables();
}

Field::Field(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
    std::uint64_t pp;
    std::uint32_t kk;
    require_param(prime_power_split(p, pp, kk) && kk == 1, "base characteristic must be prime");
    require_param(modulus.size() >= 3, "extension modulus must have degree >= 2");
    require_param(modulus.back() == 1, "extension modulus must be monic");
    for (auto c : modulus) require_param(c < p, "modulus coefficients must lie in 0..p-1");
    require_param(digits_irreducible(modulus, p), "extension modulus is reducible");
    p_ = p;
    k_ = static_cast<std::uint32_t>(modulus.size() - 1);
    q_ = ipow(p, k_);
    require_param(q_ <= kFieldSizeCap, "field size exceeds cap 2^24");
    mod_ = modulus;
    init_tables();
}

void Field::init_tables() {
    tables_ = (k_ > 1 && q_ <= 2048);
    if (tables_) {
        mul_tab_.assign(q_ * q_, 0);
        for (std::uint64_t a = 0; a < q_; ++a)
            for (std::uint64_t b = a; b < q_; ++b) {
                elem_t v = mul_nocache(static_cast<elem_t>(a), static_cast<elem_t>(b));
                mul_tab_[a * q_ + b] = v;
                mul_tab_[b * q_ + a] = v;
            }
    }
    if (q_ <= 1 << 16) {
        inv_tab_.assign(q_, 0);
        for (std::uint64_t a = 1; a < q_; ++a) {
            if (inv_tab_[a]) continue;
            elem_t ia = pow(static_cast<elem_t>(a), q_ - 2);
            inv_tab_[a] = ia;
            inv_tab_[ia] = static_cast<elem_t>(a);
        }
    }
}

elem_t Field::add(elem_t a, elem_t b) const {
    if (k_ == 1) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    elem_t r = 0, mult = 1;
    std::uint32_t av = a, bv = b;
    for (std::uint32_t i = 0; i < k_; ++i) {
        r += ((av % p_) + (bv % p_)) % p_ * mult;
        av /= p_;
        bv /= p_;
        mult *= p_;
    }
    return r;
}

elem_t Field::sub(elem_t a, elem_t b) const { return add(a, neg(b)); }

elem_t Field::neg(elem_t a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    elem_t r = 0, mult = 1;
    std::uint32_t av = a;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t d = av % p_;
        r += (d == 0 ? 0 : p_ - d) * mult;
        av /= p_;
        mult *= p_;
    }
    return r;
}

elem_t Field::mul_nocache(elem_t a, elem_t b) const {
    if (k_ == 1) return static_cast<elem_t>(static_cast<std::uint64_t>(a) * b % p_);
    if (p_ == 2) {
        // carry-less schoolbook followed by reduction by the modulus bits
        std::uint64_t mm = 0;
        for (std::uint32_t i = 0; i <= k_; ++i) mm |= static_cast<std::uint64_t>(mod_[i]) << i;
        std::uint64_t acc = 0, bv = b;
        for (std::uint32_t i = 0; i < k_; ++i)
            if ((a >> i) & 1) acc ^= bv << i;
        for (int bit = 2 * static_cast<int>(k_) - 2; bit >= static_cast<int>(k_); --bit)
            if ((acc >> bit) & 1) acc ^= mm << (bit - k_);
        return static_cast<elem_t>(acc & ((1ULL << k_) - 1));
    }
    Digits da = digits(a), db = digits(b);
    while (!da.empty() && da.back() == 0) da.pop_back();
    while (!db.empty() && db.back() == 0) db.pop_back();
    Digits prod = dmulmod(da, db, mod_, p_);
    prod.resize(k_, 0);
    return from_digits(prod);
}

elem_t Field::mul(elem_t a, elem_t b) const {
    if (tables_) return mul_tab_[static_cast<std::uint64_t>(a) * q_ + b];
    return mul_nocache(a, b);
}

elem_t Field::inv(elem_t a) const {
    require_invariant(a != 0, "division by zero field element");
    if (!inv_tab_.empty()) return inv_tab_[a];
    return pow(a, q_ - 2);
}

elem_t Field::pow(elem_t a, std::uint64_t e) const {
    elem_t r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::vector<std::uint32_t> Field::digits(elem_t a) const {
    std::vector<std::uint32_t> ds(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
        ds[i] = a % p_;
        a /= p_;
    }
    return ds;
}

elem_t Field::from_digits(const std::vector<std::uint32_t>& ds) const {
    require_param(ds.size() == k_, "coefficient vector length must equal the extension degree");
    elem_t r = 0, mult = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        require_param(ds[i] < p_, "coefficient out of range 0..p-1");
        r += ds[i] * mult;
        mult = (i + 1 < k_) ? mult * p_ : mult;
    }
    return r;
}

bool Field::elem_less(elem_t a, elem_t b) const {
    if (k_ == 1) return a < b;
    std::uint32_t av = a, bv = b;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t da = av % p_, db = bv % p_;
        if (da != db) return da < db;
        av /= p_;
        bv /= p_;
    }
    return false;
}

std::vector<elem_t> Field::elements_canonical() const {
    require_param(q_ <= 1 << 22, "field too large to enumerate");
    std::vector<elem_t> es(q_);
    for (std::uint64_t a = 0; a < q_; ++a) es[a] = static_cast<elem_t>(a);
    std::sort(es.begin(), es.end(), [this](elem_t a, elem_t b) { return elem_less(a, b); });
    return es;
}

std::uint64_t Field::mult_order(elem_t a) const {
    require_invariant(a != 0, "order of zero is undefined");
    std::uint64_t ord = q_ - 1;
    for (std::uint64_t f : prime_factors(q_ - 1)) {
        while (ord % f == 0 && pow(a, ord / f) == 1) ord /= f;
    }
    return ord;
}

elem_t Field::primitive_element() const {
    // walk codes in canonical order without materializing the whole field:
    // the canonical successor increments the last digit with carry upward
    std::vector<std::uint32_t> ds(k_, 0);
    for (;;) {
        int i = static_cast<int>(k_) - 1;
        while (i >= 0 && ds[i] == p_ - 1) ds[i--] = 0;
        require_invariant(i >= 0, "no primitive element found");
        ++ds[i];
        elem_t a = from_digits(ds);
        if (mult_order(a) == q_ - 1) return a;
    }
}

std::string Field::to_string(elem_t a) const {
    if (k_ == 1) return std::to_string(a);
    std::string s = "(";
    auto ds = digits(a);
    for (std::uint32_t i = 0; i < k_; ++i) {
        if (i) s += ",";
        s += std::to_string(ds[i]);
    }
    return s + ")";
}

}  // namespace sdesign
