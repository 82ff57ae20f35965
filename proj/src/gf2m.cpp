#include "apnlab/gf2m.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace apnlab {

namespace {

std::string hex_str(std::uint32_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    do {
        s.insert(s.begin(), digits[v & 0xf]);
        v >>= 4;
    } while (v);
    return "0x" + s;
}

unsigned poly_degree(std::uint64_t p) {
    return p ? static_cast<unsigned>(std::bit_width(p) - 1) : 0;
}

std::uint64_t clmul(std::uint32_t a, std::uint32_t b) {
    std::uint64_t r = 0;
    while (b) {
        r ^= static_cast<std::uint64_t>(a) << std::countr_zero(b);
        b &= b - 1;
    }
    return r;
}

std::uint32_t poly_mod(std::uint64_t a, std::uint32_t p) {
    const unsigned dp = poly_degree(p);
    while (a != 0 && poly_degree(a) >= dp) {
        a ^= static_cast<std::uint64_t>(p) << (poly_degree(a) - dp);
    }
    return static_cast<std::uint32_t>(a);
}

}  // namespace

bool is_irreducible(std::uint32_t poly, unsigned m) {
    if (m == 0 || poly_degree(poly) != m) return false;
    if ((poly & 1) == 0) return m == 1 && poly == 0b10;  // divisible by x
    for (unsigned d = 1; 2 * d <= m; ++d) {
        for (std::uint32_t q = 1u << d; q < (2u << d); ++q) {
            if (poly_mod(poly, q) == 0) return false;
        }
    }
    return true;
}

std::uint32_t smallest_irreducible(unsigned m) {
    if (m < 1 || m > 16) throw std::invalid_argument("degree out of range");
    for (std::uint32_t p = (1u << m) | 1u; p < (2u << m); p += 2) {
        if (is_irreducible(p, m)) return p;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

Field::Field(unsigned m) : Field(m, smallest_irreducible(m)) {}

Field::Field(unsigned m, std::uint32_t reduction) : m_(m), reduction_(reduction) {
    if (m < 2 || m > 16) {
        throw std::invalid_argument("field degree must be in [2, 16], got " +
                                    std::to_string(m));
    }
    if (!is_irreducible(reduction, m)) {
        throw std::invalid_argument("reduction polynomial " + hex_str(reduction) +
                                    " is not irreducible of degree " +
                                    std::to_string(m));
    }
    build_tables();
}

void Field::build_tables() {
    const std::uint32_t q = order();
    const std::uint32_t un = units();
    auto smul = [&](std::uint32_t x, std::uint32_t y) {
        return poly_mod(clmul(x, y), reduction_);
    };

    log_.assign(q, 0);
    alog_.assign(un, 0);
    bool found = false;
    for (std::uint32_t g = 2; g < q && !found; ++g) {
        std::uint32_t v = 1;
        bool prim = true;
        for (std::uint32_t i = 0; i < un; ++i) {
            if (i > 0 && v == 1) {  // subgroup closed early: not a generator
                prim = false;
                break;
            }
            alog_[i] = v;
            v = smul(v, g);
        }
        found = prim && v == 1;
    }
    if (!found) throw std::logic_error("no multiplicative generator found");
    for (std::uint32_t i = 0; i < un; ++i) log_[alog_[i]] = i;

    trace_.assign(q, 0);
    for (std::uint32_t x = 0; x < q; ++x) {
        std::uint32_t acc = x, t = x;
        for (unsigned i = 1; i < m_; ++i) {
            t = smul(t, t);
            acc ^= t;
        }
        if (acc > 1) throw std::logic_error("trace left the prime field");
        trace_[x] = static_cast<std::uint8_t>(acc);
    }

    dual_.assign(q, 0);
    for (std::uint32_t b = 0; b < q; ++b) {
        std::uint32_t mask = 0;
        for (unsigned j = 0; j < m_; ++j) {
            if (trace_[mul(b, 1u << j)]) mask |= 1u << j;
        }
        dual_[b] = mask;
    }
}

std::uint32_t Field::inv(std::uint32_t x) const {
    if (x == 0) throw std::domain_error("inverse of 0");
    const std::uint32_t un = units();
    return alog_[(un - log_[x]) % un];
}

std::uint32_t Field::pow(std::uint32_t x, std::uint64_t e) const {
    if (x == 0) return e == 0 ? 1u : 0u;
    const std::uint64_t un = units();
    return alog_[(log_[x] * (e % un)) % un];
}

std::uint32_t Field::frob(std::uint32_t x, unsigned k) const {
    k %= m_;
    if (x == 0 || k == 0) return x;
    const std::uint64_t un = units();
    return alog_[(static_cast<std::uint64_t>(log_[x]) << k) % un];
}

}  // namespace apnlab
