#include "apnlab/functions.hpp"

#include <numeric>
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

void require_same_field(const BiprojectivePoly& a, const BiprojectivePoly& b) {
    if (a.field == nullptr || b.field == nullptr || *a.field != *b.field) {
        throw std::invalid_argument("biprojective polynomials over different fields");
    }
}

}  // namespace

std::uint32_t eval_biprojective(const BiprojectivePoly& p, std::uint32_t x,
                                std::uint32_t y) {
    const Field& F = *p.field;
    const std::uint32_t xs = F.frob(x, p.k);
    const std::uint32_t ys = F.frob(y, p.k);
    std::uint32_t r = F.mul(p.coeffs[0], F.mul(xs, x));
    r ^= F.mul(p.coeffs[1], F.mul(xs, y));
    r ^= F.mul(p.coeffs[2], F.mul(x, ys));
    r ^= F.mul(p.coeffs[3], F.mul(ys, y));
    return r;
}

std::optional<std::uint32_t> projective_root(const Field& field, unsigned k,
                                             std::uint32_t alpha) {
    for (std::uint32_t x = 0; x < field.order(); ++x) {
        const std::uint32_t v = field.mul(field.frob(x, k), x) ^ x ^ alpha;
        if (v == 0) return x;
    }
    return std::nullopt;
}

bool is_admissible(const Field& field, unsigned k, std::uint32_t alpha) {
    return !projective_root(field, k, alpha).has_value();
}

std::vector<std::uint32_t> admissible_alphas(const Field& field, unsigned k) {
    if (std::gcd(k, field.degree()) != 1) {
        throw std::invalid_argument("k must be coprime to m");
    }
    // alpha is a root value of X^(s+1) + X at some point iff it is NOT
    // admissible, so take the complement of the image of x -> x^(s+1) + x.
    std::vector<bool> hit(field.order(), false);
    for (std::uint32_t x = 0; x < field.order(); ++x) {
        hit[field.mul(field.frob(x, k), x) ^ x] = true;
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t a = 0; a < field.order(); ++a) {
        if (!hit[a]) out.push_back(a);
    }
    return out;
}

void require_family_params(const FamilyParams& p) {
    if (p.field == nullptr) throw std::invalid_argument("missing field");
    const unsigned m = p.field->degree();
    if (p.k < 1 || p.k >= m || std::gcd(p.k, m) != 1) {
        throw std::invalid_argument("k=" + std::to_string(p.k) +
                                    " violates gcd(k, m) = 1 for m=" +
                                    std::to_string(m));
    }
    if (auto root = projective_root(*p.field, p.k, p.alpha)) {
        throw std::invalid_argument(
            "alpha=" + hex_str(p.alpha) + " is not admissible: X^(2^" +
            std::to_string(p.k) + "+1) + X + alpha has root x=" + hex_str(*root) +
            " in F_" + std::to_string(p.field->order()));
    }
}

BiprojectivePoly family_first_poly(const Field& field, unsigned k,
                                   std::uint32_t alpha) {
    return BiprojectivePoly{&field, k, {1, 0, 1, alpha}};
}

BiprojectivePoly family_second_poly(const Field& field, unsigned k,
                                    std::uint32_t alpha) {
    const std::uint32_t as = field.frob(alpha, k);
    return BiprojectivePoly{&field, (2 * k) % field.degree(),
                            {1, alpha, 1u ^ as, alpha}};
}

FunctionTable to_table(const BiprojectivePoly& p1, const BiprojectivePoly& p2) {
    require_same_field(p1, p2);
    const unsigned m = p1.field->degree();
    FunctionTable t;
    t.m = m;
    t.values.resize(std::uint64_t{1} << (2 * m));
    const std::uint32_t q = 1u << m;
    for (std::uint32_t y = 0; y < q; ++y) {
        for (std::uint32_t x = 0; x < q; ++x) {
            t.values[(static_cast<std::uint64_t>(y) << m) | x] =
                pack_pair(m, eval_biprojective(p1, x, y), eval_biprojective(p2, x, y));
        }
    }
    return t;
}

FunctionTable build_family_new(const FamilyParams& p) {
    require_family_params(p);
    return to_table(family_first_poly(*p.field, p.k, p.alpha),
                    family_second_poly(*p.field, p.k, p.alpha));
}

FunctionTable build_family_orig(const Field& field, unsigned k) {
    const unsigned m = field.degree();
    if (std::gcd(3u * k, m) != 1) {
        throw std::invalid_argument("gcd(3k, m) = " +
                                    std::to_string(std::gcd(3u * k, m)) +
                                    " != 1 for k=" + std::to_string(k) +
                                    ", m=" + std::to_string(m));
    }
    const BiprojectivePoly f{&field, k, {1, 0, 1, 1}};
    const BiprojectivePoly g{&field, (2 * k) % m, {1, 1, 0, 1}};
    return to_table(f, g);
}

}  // namespace apnlab
