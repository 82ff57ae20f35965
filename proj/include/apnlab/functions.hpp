#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "apnlab/gf2m.hpp"

namespace apnlab {

// f(x,y) = a1 x^(s+1) + a2 x^s y + a3 x y^s + a4 y^(s+1) over K with s = 2^k,
// identified with the coefficient matrix [[a1, a3], [a2, a4]].
struct BiprojectivePoly {
    const Field* field = nullptr;  // non-owning; the caller keeps the Field alive
    unsigned k = 1;
    std::array<std::uint32_t, 4> coeffs{};  // a1, a2, a3, a4

    bool operator==(const BiprojectivePoly& o) const {
        return *field == *o.field && k == o.k && coeffs == o.coeffs;
    }
};

std::uint32_t eval_biprojective(const BiprojectivePoly& p, std::uint32_t x,
                                std::uint32_t y);

// Exhaustive value table of a map K^2 -> K^2. Entry i is the packed output
// (f2 << m) | f1 at the packed input x = i & (2^m - 1), y = i >> m.
struct FunctionTable {
    unsigned m = 0;
    std::vector<std::uint32_t> values;

    unsigned n() const { return 2 * m; }
    std::uint64_t size() const { return values.size(); }

    bool operator==(const FunctionTable& o) const {
        return m == o.m && values == o.values;
    }
};

inline std::uint32_t pack_pair(unsigned m, std::uint32_t lo, std::uint32_t hi) {
    return lo | (hi << m);
}
inline std::uint32_t pair_lo(unsigned m, std::uint32_t v) {
    return v & ((1u << m) - 1);
}
inline std::uint32_t pair_hi(unsigned m, std::uint32_t v) { return v >> m; }

struct FamilyParams {
    const Field* field = nullptr;
    unsigned k = 1;
    std::uint32_t alpha = 1;
};

// Smallest root in K of X^(2^k + 1) + X + alpha, if any.
std::optional<std::uint32_t> projective_root(const Field& field, unsigned k,
                                             std::uint32_t alpha);

// alpha is admissible iff X^(2^k + 1) + X + alpha has no root in K.
bool is_admissible(const Field& field, unsigned k, std::uint32_t alpha);

// All admissible alpha, ascending. Requires gcd(k, m) = 1.
std::vector<std::uint32_t> admissible_alphas(const Field& field, unsigned k);

// Throws std::invalid_argument naming the violated condition (gcd or root).
void require_family_params(const FamilyParams& p);

// First coordinate x^(s+1) + x y^s + alpha y^(s+1), exponent k.
BiprojectivePoly family_first_poly(const Field& field, unsigned k,
                                   std::uint32_t alpha);

// Second coordinate x^(t+1) + alpha x^t y + (1 + alpha^s) x y^t + alpha y^(t+1)
// with t = s^2, stored with the explicit exponent 2k mod m.
BiprojectivePoly family_second_poly(const Field& field, unsigned k,
                                    std::uint32_t alpha);

// Exhaustive evaluation of the pair (p1, p2) in index order.
FunctionTable to_table(const BiprojectivePoly& p1, const BiprojectivePoly& p2);

// Extended family member F_alpha for admissible parameters.
FunctionTable build_family_new(const FamilyParams& p);

// Original family (the alpha = 1 specialization); requires gcd(3k, m) = 1.
FunctionTable build_family_orig(const Field& field, unsigned k);

}  // namespace apnlab
