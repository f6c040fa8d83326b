#include "doctest.h"
#include "sdesign/field.hpp"

using namespace sdesign;

TEST_CASE("prime field arithmetic") {
    Field F5(5);
    CHECK(F5.p() == 5);
    CHECK(F5.k() == 1);
    CHECK(F5.add(3, 4) == 2);
    CHECK(F5.mul(3, 4) == 2);
    CHECK(F5.inv(2) == 3);
    CHECK(F5.neg(2) == 3);
    CHECK(F5.pow(2, 4) == 1);
    for (elem_t a = 1; a < 5; ++a) CHECK(F5.mul(a, F5.inv(a)) == 1);
}

TEST_CASE("F4 is built from the canonical modulus and reduces y^2") {
    Field F4(4);
    CHECK(F4.p() == 2);
    CHECK(F4.k() == 2);
    // canonical modulus over F_2 of degree 2 is y^2+y+1
    CHECK(F4.modulus() == std::vector<std::uint32_t>{1, 1, 1});
    // y has code 2; y*y = y+1 (code 3)
    CHECK(F4.mul(2, 2) == 3);
    CHECK(F4.mul(2, 3) == 1);
    CHECK(F4.add(2, 3) == 1);
    CHECK(F4.inv(2) == 3);
}

TEST_CASE("field axioms hold on all small-field triples") {
    for (std::uint64_t q : {4ULL, 8ULL, 9ULL, 25ULL, 27ULL}) {
        Field F(q);
        for (std::uint64_t a = 0; a < q; ++a)
            for (std::uint64_t b = 0; b < q; ++b) {
                elem_t x = static_cast<elem_t>(a), y = static_cast<elem_t>(b);
                CHECK(F.add(x, y) == F.add(y, x));
                CHECK(F.mul(x, y) == F.mul(y, x));
                CHECK(F.sub(F.add(x, y), y) == x);
                if (y != 0) CHECK(F.mul(F.div(x, y), y) == x);
                // distributivity against a fixed third element
                elem_t z = static_cast<elem_t>((a * 7 + b * 3 + 1) % q);
                CHECK(F.mul(z, F.add(x, y)) == F.add(F.mul(z, x), F.mul(z, y)));
            }
    }
}

TEST_CASE("canonical ordering is lexicographic from the constant coefficient") {
    Field F4(4);
    // digit vectors: 0=(0,0), 1=(1,0), 2=(0,1), 3=(1,1); lex from c0:
    // (0,0) < (0,1) < (1,0) < (1,1)  =>  0 < 2 < 1 < 3
    CHECK(F4.elem_less(0, 2));
    CHECK(F4.elem_less(2, 1));
    CHECK(F4.elem_less(1, 3));
    CHECK(F4.elements_canonical() == std::vector<elem_t>{0, 2, 1, 3});
}

TEST_CASE("multiplicative orders and primitive elements") {
    Field F9(9);
    elem_t g = F9.primitive_element();
    CHECK(F9.mult_order(g) == 8);
    Field F5(5);
    CHECK(F5.primitive_element() == 2);
    CHECK(F5.mult_order(4) == 2);
    Field F7(7);
    CHECK(F7.primitive_element() == 3);
}

TEST_CASE("non-prime-power and oversized field sizes are rejected") {
    CHECK_THROWS_AS(Field(6), ParamError);
    CHECK_THROWS_AS(Field(1), ParamError);
    CHECK_THROWS_AS(Field(1ULL << 25), ParamError);
    CHECK_THROWS_AS(Field(2, std::vector<std::uint32_t>{0, 0, 1}), ParamError);  // y^2 reducible
}

TEST_CASE("digit round trip on a large extension") {
    Field F(3 * 3 * 3 * 3 * 3);  // 3^5
    for (elem_t a : {0u, 1u, 7u, 80u, 242u}) {
        CHECK(F.from_digits(F.digits(a)) == a);
    }
}
