#pragma once
// Shared error types, exit-code policy and small integer helpers.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdesign {

// Bad user-supplied parameters (CLI exit code 2).
struct ParamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal invariant violation: a bug, not a user error (CLI exit code 3).
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

// A series computation ran out of working precision; callers may retry
// with a larger expansion order.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_param(bool cond, const std::string& msg) {
    if (!cond) throw ParamError(msg);
}

inline void require_invariant(bool cond, const std::string& msg) {
    if (!cond) throw InvariantError(msg);
}

// b^e with overflow check (throws InvariantError on overflow).
std::uint64_t ipow(std::uint64_t b, std::uint32_t e);

// b^e capped: returns cap+1 as soon as the value would exceed cap.
std::uint64_t ipow_capped(std::uint64_t b, std::uint64_t e, std::uint64_t cap);

// Distinct prime factors, ascending. Trial division; fine at desk scale.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Is n = p^k for a prime p?  On success stores p and k.
bool prime_power_split(std::uint64_t n, std::uint64_t& p, std::uint32_t& k);

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return -floor_div(-a, b);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

}  // namespace sdesign
