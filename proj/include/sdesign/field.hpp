#pragma once
// Exact arithmetic in finite fields F_q, q = p^k, with a hard desk-scale cap.
//
// Elements are stored as integer codes 0..q-1: the code of an element with
// coefficient vector (c_0, .., c_{k-1}) over F_p (ascending powers of the
// generator) is sum c_i p^i.  Prime fields are the k = 1 case, so codes and
// canonical residues coincide there.
//
// Canonical ordering is lexicographic on the ascending-power coefficient
// vector, i.e. c_0 is compared first.  For prime fields this is the usual
// integer order.

#include <cstdint>
#include <string>
#include <vector>

#include "sdesign/common.hpp"

namespace sdesign {

using elem_t = std::uint32_t;

// Fields larger than this are refused everywhere (exact, in-memory design).
constexpr std::uint64_t kFieldSizeCap = 1ULL << 24;

class Field {
  public:
    // Invalid placeholder; assign a real field before use.
    Field() = default;

    // F_q with q = p^k.  For k > 1 the modulus is the canonically-first
    // (degree, then lex from the constant term) monic irreducible of degree k
    // over F_p, so F_4, F_8, ... are reproducible from q alone.
    explicit Field(std::uint64_t q);

    // Extension with an explicit monic modulus over F_p, ascending
    // coefficients including the leading 1.  Throws ParamError if the modulus
    // is not monic/irreducible of degree >= 2.
    Field(std::uint32_t p, const std::vector<std::uint32_t>& modulus);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint64_t q() const { return q_; }
    bool prime() const { return k_ == 1; }
    // Modulus coefficients over F_p (empty for prime fields).
    const std::vector<std::uint32_t>& modulus() const { return mod_; }

    elem_t zero() const { return 0; }
    elem_t one() const { return 1; }
    elem_t add(elem_t a, elem_t b) const;
    elem_t sub(elem_t a, elem_t b) const;
    elem_t neg(elem_t a) const;
    elem_t mul(elem_t a, elem_t b) const;
    elem_t inv(elem_t a) const;  // throws InvariantError on 0
    elem_t div(elem_t a, elem_t b) const { return mul(a, inv(b)); }
    elem_t pow(elem_t a, std::uint64_t e) const;

    // Image of the prime-subfield residue v mod p.
    elem_t from_int(std::uint64_t v) const { return static_cast<elem_t>(v % p_); }

    // Coefficient vector (length k, ascending powers) of an element code.
    std::vector<std::uint32_t> digits(elem_t a) const;
    elem_t from_digits(const std::vector<std::uint32_t>& ds) const;

    // Canonical order: lexicographic on the ascending coefficient vector.
    bool elem_less(elem_t a, elem_t b) const;

    // Elements sorted canonically (q must be small enough to enumerate).
    std::vector<elem_t> elements_canonical() const;

    std::uint64_t mult_order(elem_t a) const;  // a != 0
    // Canonically-first generator of the multiplicative group.
    elem_t primitive_element() const;

    std::string to_string(elem_t a) const;

  private:
    void init_tables();
    elem_t mul_nocache(elem_t a, elem_t b) const;

    std::uint32_t p_ = 0;
    std::uint32_t k_ = 1;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> mod_;
    // Dense multiplication/inverse tables for small fields.
    bool tables_ = false;
    std::vector<elem_t> mul_tab_;
    std::vector<elem_t> inv_tab_;
};

}  // namespace sdesign
