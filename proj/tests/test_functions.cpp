#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "apnlab/analysis.hpp"
#include "apnlab/functions.hpp"

using namespace apnlab;

namespace {

// Brute-force admissibility: try every (alpha, x) pair with pow only.
std::vector<std::uint32_t> admissible_by_scan(const Field& f, unsigned k) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t alpha = 0; alpha < f.order(); ++alpha) {
        bool rootless = true;
        for (std::uint32_t x = 0; x < f.order() && rootless; ++x) {
            if ((f.pow(x, (1ull << k) + 1) ^ x ^ alpha) == 0) rootless = false;
        }
        if (rootless) out.push_back(alpha);
    }
    return out;
}

}  // namespace

TEST_CASE("biprojective evaluation degenerates correctly on the axes") {
    for (unsigned m = 2; m <= 4; ++m) {
        Field f(m);
        for (std::uint32_t alpha = 1; alpha < f.order(); ++alpha) {
            const auto p = family_first_poly(f, 1, alpha);
            for (std::uint32_t v = 0; v < f.order(); ++v) {
                CHECK(eval_biprojective(p, v, 0) == f.mul(f.frob(v, 1), v));
                CHECK(eval_biprojective(p, 0, v) ==
                      f.mul(alpha, f.mul(f.frob(v, 1), v)));
            }
        }
    }
}

TEST_CASE("family components are homogeneous of degree s+1 and s^2+1") {
    for (unsigned m = 3; m <= 4; ++m) {
        Field f(m);
        for (unsigned k = 1; k < m; ++k) {
            if (std::gcd(k, m) != 1) continue;
            for (std::uint32_t alpha : admissible_alphas(f, k)) {
                const auto p1 = family_first_poly(f, k, alpha);
                const auto p2 = family_second_poly(f, k, alpha);
                for (std::uint32_t c = 1; c < f.order(); ++c) {
                    const std::uint32_t c1 = f.mul(f.frob(c, k), c);
                    const std::uint32_t c2 = f.mul(f.frob(c, 2 * k % m), c);
                    for (std::uint32_t x = 0; x < f.order(); ++x) {
                        for (std::uint32_t y = 0; y < f.order(); ++y) {
                            const std::uint32_t cx = f.mul(c, x), cy = f.mul(c, y);
                            CHECK(eval_biprojective(p1, cx, cy) ==
                                  f.mul(c1, eval_biprojective(p1, x, y)));
                            CHECK(eval_biprojective(p2, cx, cy) ==
                                  f.mul(c2, eval_biprojective(p2, x, y)));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("admissible alpha sets match the brute-force scan") {
    for (unsigned m = 2; m <= 6; ++m) {
        Field f(m);
        for (unsigned k = 1; k < m; ++k) {
            if (std::gcd(k, m) != 1) continue;
            CAPTURE(m);
            CAPTURE(k);
            CHECK(admissible_alphas(f, k) == admissible_by_scan(f, k));
        }
    }
}

TEST_CASE("admissible alpha counts and membership of 1") {
    Field f3(3), f4(4), f5(5);
    CHECK(admissible_alphas(f3, 1).size() == 3);
    CHECK(admissible_alphas(f4, 1).size() == 5);

    const auto a5 = admissible_alphas(f5, 1);
    CHECK(std::find(a5.begin(), a5.end(), 1u) != a5.end());

    for (unsigned m = 3; m <= 8; ++m) {
        Field f(m);
        const std::uint64_t expect = (m % 2 == 1) ? ((1ull << (m + 1)) + 2) / 6
                                                  : ((1ull << (m + 1)) - 2) / 6;
        for (unsigned k = 1; k < m; ++k) {
            if (std::gcd(k, m) != 1) continue;
            const auto alphas = admissible_alphas(f, k);
            CAPTURE(m);
            CAPTURE(k);
            CHECK(alphas.size() == expect);
            // alpha = 0 always has the root x = 0.
            CHECK(std::find(alphas.begin(), alphas.end(), 0u) == alphas.end());
            const bool has_one =
                std::find(alphas.begin(), alphas.end(), 1u) != alphas.end();
            CHECK(has_one == (m % 3 != 0));
        }
    }
}

TEST_CASE("inadmissible parameters are rejected with the root named") {
    Field f3(3);
    CHECK(projective_root(f3, 1, 1).value() == 0x2);
    try {
        build_family_new(FamilyParams{&f3, 1, 1});
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("root x=0x2") != std::string::npos);
    }
    CHECK_THROWS_AS(build_family_new(FamilyParams{&f3, 3, 1}), std::invalid_argument);
    Field f4(4);
    CHECK_THROWS_AS(build_family_new(FamilyParams{&f4, 2, 1}), std::invalid_argument);
}

TEST_CASE("the original family is the alpha = 1 specialization") {
    Field f5(5);
    CHECK(build_family_orig(f5, 1) == build_family_new(FamilyParams{&f5, 1, 1}));
    Field f4(4);
    CHECK(build_family_orig(f4, 1) == build_family_new(FamilyParams{&f4, 1, 1}));

    Field f3(3);
    CHECK_THROWS_AS(build_family_orig(f3, 1), std::invalid_argument);  // 3 | 3k
    Field f6(6);
    CHECK_THROWS_AS(build_family_orig(f6, 1), std::invalid_argument);
}

TEST_CASE("family tables are APN by the definitional scan") {
    Field f4(4), f5(5);
    CHECK(differential_spectrum(build_family_orig(f4, 1)).delta == 2);
    CHECK(differential_spectrum(build_family_new(FamilyParams{&f5, 1, 1})).delta == 2);
}

TEST_CASE("to_table materializes exactly the evaluation map") {
    Field f3(3);
    const auto t = build_family_new(FamilyParams{&f3, 1, 2});
    CHECK(t.size() == 64);
    CHECK(t.values[0] == 0);

    for (unsigned m = 2; m <= 4; ++m) {
        Field f(m);
        std::mt19937 rng(7 + m);
        BiprojectivePoly p1{&f, 1, {}}, p2{&f, 2 % m, {}};
        for (auto& c : p1.coeffs) c = rng() % f.order();
        for (auto& c : p2.coeffs) c = rng() % f.order();
        const auto tab = to_table(p1, p2);
        for (std::uint32_t y = 0; y < f.order(); ++y) {
            for (std::uint32_t x = 0; x < f.order(); ++x) {
                const std::uint32_t v = tab.values[(y << m) | x];
                CHECK(pair_lo(m, v) == eval_biprojective(p1, x, y));
                CHECK(pair_hi(m, v) == eval_biprojective(p2, x, y));
            }
        }
    }
}

TEST_CASE("to_table rejects mismatched fields") {
    Field a(3), b(4);
    const auto p1 = family_first_poly(a, 1, 2);
    const auto p2 = family_second_poly(b, 1, 1);
    CHECK_THROWS_AS(to_table(p1, p2), std::invalid_argument);
}

TEST_CASE("family tables scale as (c^(s+1) F1, c^(s^2+1) F2) on the diagonal") {
    for (unsigned m = 3; m <= 4; ++m) {
        Field f(m);
        for (std::uint32_t alpha : admissible_alphas(f, 1)) {
            const auto t = build_family_new(FamilyParams{&f, 1, alpha});
            for (std::uint32_t c = 1; c < f.order(); ++c) {
                const std::uint32_t h1 = f.mul(f.frob(c, 1), c);
                const std::uint32_t h2 = f.mul(f.frob(c, 2 % m), c);
                for (std::uint64_t v = 0; v < t.size(); ++v) {
                    const std::uint32_t x = pair_lo(m, static_cast<std::uint32_t>(v));
                    const std::uint32_t y = pair_hi(m, static_cast<std::uint32_t>(v));
                    const std::uint32_t cv = pack_pair(m, f.mul(c, x), f.mul(c, y));
                    const std::uint32_t fv = t.values[v];
                    CHECK(t.values[cv] == pack_pair(m, f.mul(h1, pair_lo(m, fv)),
                                                    f.mul(h2, pair_hi(m, fv))));
                }
            }
        }
    }
}
