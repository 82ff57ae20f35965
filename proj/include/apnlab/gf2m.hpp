#pragma once

#include <cstdint>
#include <vector>

namespace apnlab {

// Arithmetic in K = F_{2^m}, 2 <= m <= 16. An element is an m-bit value;
// bit j is the coefficient of x^j in the polynomial basis modulo the
// reduction polynomial. Multiplication and inversion run on log/antilog
// tables built once at construction; a Field is immutable afterwards and
// safe to share across threads.
class Field {
public:
    // Uses the irreducible polynomial of degree m with the smallest bitmask
    // (deterministic, reproducible element encodings across runs).
    explicit Field(unsigned m);

    // Explicit reduction polynomial, e.g. 0x13 for x^4 + x + 1. Throws
    // std::invalid_argument unless poly is irreducible of exact degree m.
    Field(unsigned m, std::uint32_t reduction);

    unsigned degree() const { return m_; }
    std::uint32_t reduction() const { return reduction_; }
    std::uint32_t order() const { return 1u << m_; }        // |K| = 2^m
    std::uint32_t units() const { return (1u << m_) - 1; }  // |K*|

    static std::uint32_t add(std::uint32_t x, std::uint32_t y) { return x ^ y; }

    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        if (x == 0 || y == 0) return 0;
        std::uint32_t s = log_[x] + log_[y];
        const std::uint32_t un = units();
        if (s >= un) s -= un;
        return alog_[s];
    }

    // Throws std::domain_error on x = 0.
    std::uint32_t inv(std::uint32_t x) const;

    std::uint32_t pow(std::uint32_t x, std::uint64_t e) const;

    // Frobenius power x^(2^k); k is taken mod m.
    std::uint32_t frob(std::uint32_t x, unsigned k) const;

    // Unique square root (squaring is a bijection in characteristic 2).
    std::uint32_t sqrt(std::uint32_t x) const { return frob(x, m_ - 1); }

    // Absolute trace to F_2.
    unsigned trace(std::uint32_t x) const { return trace_[x]; }

    // Mask D(b) with Tr(b*w) = parity(popcount(D(b) & w)) for all w.
    std::uint32_t dual_mask(std::uint32_t b) const { return dual_[b]; }

    bool operator==(const Field& o) const {
        return m_ == o.m_ && reduction_ == o.reduction_;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    unsigned m_;
    std::uint32_t reduction_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> alog_;
    std::vector<std::uint8_t> trace_;
    std::vector<std::uint32_t> dual_;

    void build_tables();
};

// Irreducibility over F_2 of a polynomial bitmask of exact degree m.
bool is_irreducible(std::uint32_t poly, unsigned m);

// Smallest (by bitmask value) irreducible polynomial of degree m.
std::uint32_t smallest_irreducible(unsigned m);

}  // namespace apnlab
