#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "apnlab/gf2m.hpp"

using namespace apnlab;

namespace {

// Independent slow-path arithmetic: shift-and-xor product with long division,
// no lookup tables. This is the reference the table-driven Field is checked
// against.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly) {
    std::uint64_t acc = 0;
    for (unsigned i = 0; i < 32; ++i) {
        if ((b >> i) & 1u) acc ^= static_cast<std::uint64_t>(a) << i;
    }
    const unsigned dp = static_cast<unsigned>(std::bit_width(poly)) - 1;
    while (acc != 0 && std::bit_width(acc) - 1 >= dp) {
        acc ^= static_cast<std::uint64_t>(poly)
               << (std::bit_width(acc) - 1 - dp);
    }
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t slow_pow(std::uint32_t x, std::uint64_t e, std::uint32_t poly) {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = slow_mul(r, x, poly);
        x = slow_mul(x, x, poly);
        e >>= 1;
    }
    return r;
}

// Second irreducibility route: p of degree m is irreducible over F_2 iff
// x^(2^m) = x (mod p) and gcd(x^(2^(m/q)) - x mod p, p) = 1 for every prime
// q dividing m.
std::uint32_t poly_gcd(std::uint32_t a, std::uint32_t b) {
    while (b) {
        // a mod b
        const unsigned db = static_cast<unsigned>(std::bit_width(b)) - 1;
        while (a != 0 && std::bit_width(a) - 1 >= db) {
            a ^= b << (std::bit_width(a) - 1 - db);
        }
        std::swap(a, b);
    }
    return a;
}

bool irreducible_by_frobenius(std::uint32_t p, unsigned m) {
    if (std::bit_width(p) != m + 1) return false;
    auto x_pow_2e = [&](unsigned e) {
        std::uint32_t r = 2;  // the polynomial x
        for (unsigned i = 0; i < e; ++i) r = slow_mul(r, r, p);
        return r;
    };
    if (x_pow_2e(m) != 2) return false;
    unsigned rem = m;
    for (unsigned q = 2; q <= rem; ++q) {
        if (rem % q != 0) continue;
        while (rem % q == 0) rem /= q;
        if (poly_gcd(x_pow_2e(m / q) ^ 2u, p) != 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("smallest irreducible polynomials are the classical ones") {
    CHECK(smallest_irreducible(2) == 0x7);    // x^2+x+1
    CHECK(smallest_irreducible(3) == 0xb);    // x^3+x+1
    CHECK(smallest_irreducible(4) == 0x13);   // x^4+x+1
    CHECK(smallest_irreducible(5) == 0x25);   // x^5+x^2+1
    CHECK(smallest_irreducible(6) == 0x43);   // x^6+x+1
    CHECK(smallest_irreducible(7) == 0x83);   // x^7+x+1
}

TEST_CASE("trial division agrees with the Frobenius-gcd criterion") {
    for (unsigned m = 2; m <= 9; ++m) {
        for (std::uint32_t p = 1u << m; p < (2u << m); ++p) {
            CAPTURE(p);
            CHECK(is_irreducible(p, m) == irreducible_by_frobenius(p, m));
        }
    }
    CHECK_FALSE(is_irreducible(0x13, 5));  // right poly, wrong degree
}

TEST_CASE("field construction validates its inputs") {
    CHECK_THROWS_AS(Field(1), std::invalid_argument);
    CHECK_THROWS_AS(Field(17), std::invalid_argument);
    CHECK_THROWS_AS(Field(4, 0x15), std::invalid_argument);  // (x^2+x+1)^2
    CHECK_THROWS_AS(Field(4, 0xb), std::invalid_argument);   // wrong degree
    CHECK(Field(4, 0x19).reduction() == 0x19);  // x^4+x^3+1 also works
}

TEST_CASE("arithmetic in F_8 with x^3+x+1") {
    Field f(3);
    CHECK(f.reduction() == 0xb);
    CHECK(Field::add(0b011, 0b101) == 0b110);

    const std::uint32_t g = 0b010;  // the class of x
    CHECK(f.mul(f.mul(g, g), g) == 0b011);  // x^3 = x + 1
    CHECK(f.mul(f.mul(g, g), g) == slow_pow(g, 3, 0xb));

    for (std::uint32_t x = 1; x < 8; ++x) {
        CHECK(f.pow(x, 7) == 1);
        CHECK(f.mul(x, f.inv(x)) == 1);
        CHECK(f.inv(f.inv(x)) == x);
    }
    CHECK(f.inv(1) == 1);
    CHECK(f.inv(g) == f.pow(g, 6));
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
}

TEST_CASE("field axioms hold exhaustively for small m") {
    for (unsigned m = 2; m <= 4; ++m) {
        Field f(m);
        const std::uint32_t q = f.order();
        for (std::uint32_t x = 0; x < q; ++x) {
            CHECK(Field::add(x, x) == 0);
            CHECK(Field::add(x, 0) == x);
            CHECK(f.mul(x, 1) == x);
            for (std::uint32_t y = 0; y < q; ++y) {
                CHECK(f.mul(x, y) == f.mul(y, x));
                CHECK(f.mul(x, y) == slow_mul(x, y, f.reduction()));
                for (std::uint32_t z = 0; z < q; ++z) {
                    CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
                    CHECK(f.mul(x, Field::add(y, z)) ==
                          Field::add(f.mul(x, y), f.mul(x, z)));
                }
            }
        }
    }
}

TEST_CASE("table multiplication matches the slow path at m = 8") {
    Field f(8);
    std::mt19937 rng(20240801);
    for (int t = 0; t < 2000; ++t) {
        const std::uint32_t x = rng() & 0xff, y = rng() & 0xff;
        CHECK(f.mul(x, y) == slow_mul(x, y, f.reduction()));
    }
}

TEST_CASE("frobenius is a field automorphism") {
    for (unsigned m = 2; m <= 4; ++m) {
        Field f(m);
        const std::uint32_t q = f.order();
        for (unsigned k = 0; k < m; ++k) {
            for (std::uint32_t x = 0; x < q; ++x) {
                CHECK(f.frob(x, 0) == x);
                CHECK(f.frob(x, k) == slow_pow(x, 1ull << k, f.reduction()));
                CHECK(f.frob(f.frob(x, k), m - k) == x);
                for (std::uint32_t y = 0; y < q; ++y) {
                    CHECK(f.frob(x ^ y, k) == (f.frob(x, k) ^ f.frob(y, k)));
                    CHECK(f.frob(f.mul(x, y), k) ==
                          f.mul(f.frob(x, k), f.frob(y, k)));
                }
            }
        }
    }
}

TEST_CASE("sqrt inverts squaring") {
    Field f(6);
    for (std::uint32_t x = 0; x < f.order(); ++x) {
        CHECK(f.mul(f.sqrt(x), f.sqrt(x)) == x);
        CHECK(f.sqrt(f.mul(x, x)) == x);
    }
}

TEST_CASE("trace is the Frobenius orbit sum, F_2-linear and balanced") {
    for (unsigned m = 2; m <= 6; ++m) {
        Field f(m);
        const std::uint32_t q = f.order();
        std::uint32_t ones = 0;
        for (std::uint32_t x = 0; x < q; ++x) {
            std::uint32_t acc = 0;
            for (unsigned i = 0; i < m; ++i) acc ^= f.pow(x, 1ull << i);
            CHECK(f.trace(x) == acc);
            CHECK(f.trace(f.mul(x, x)) == f.trace(x));
            ones += f.trace(x);
        }
        CHECK(f.trace(0) == 0);
        CHECK(ones == q / 2);
        if (m <= 4) {
            for (std::uint32_t x = 0; x < q; ++x) {
                for (std::uint32_t y = 0; y < q; ++y) {
                    CHECK(f.trace(x ^ y) == (f.trace(x) ^ f.trace(y)));
                    CHECK(f.trace(f.mul(x, y)) ==
                          (std::popcount(f.dual_mask(x) & y) & 1u));
                }
            }
        }
    }
    CHECK(Field(3).trace(0) == 0);
    unsigned trace_one = 0;
    Field f3(3);
    for (std::uint32_t x = 0; x < 8; ++x) trace_one += f3.trace(x);
    CHECK(trace_one == 4);
}

TEST_CASE("pow handles the edge exponents") {
    Field f(5);
    CHECK(f.pow(0, 0) == 1);
    CHECK(f.pow(0, 3) == 0);
    for (std::uint32_t x = 1; x < f.order(); ++x) {
        CHECK(f.pow(x, 0) == 1);
        CHECK(f.pow(x, f.units()) == 1);
        CHECK(f.pow(x, f.units() + 1) == x);
    }
}
