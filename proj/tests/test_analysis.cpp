#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "apnlab/analysis.hpp"
#include "apnlab/bitmatrix.hpp"
#include "apnlab/functions.hpp"

using namespace apnlab;

namespace {

FunctionTable identity_table(unsigned m) {
    FunctionTable t;
    t.m = m;
    t.values.resize(std::uint64_t{1} << (2 * m));
    for (std::uint64_t v = 0; v < t.size(); ++v) {
        t.values[v] = static_cast<std::uint32_t>(v);
    }
    return t;
}

FunctionTable constant_table(unsigned m, std::uint32_t c) {
    FunctionTable t;
    t.m = m;
    t.values.assign(std::uint64_t{1} << (2 * m), c);
    return t;
}

FunctionTable random_table(unsigned m, std::uint32_t seed) {
    FunctionTable t;
    t.m = m;
    t.values.resize(std::uint64_t{1} << (2 * m));
    std::mt19937 rng(seed);
    for (auto& v : t.values) v = rng() & ((1u << (2 * m)) - 1);
    return t;
}

// Character-sum Walsh values with the trace pairing, no transform.
std::map<std::uint32_t, std::uint64_t> walsh_by_sums(const FunctionTable& F,
                                                     const Field& f) {
    const unsigned m = F.m;
    const std::uint64_t size = F.size();
    auto pair_bit = [&](std::uint32_t u, std::uint32_t v) {
        return (f.trace(f.mul(pair_lo(m, u), pair_lo(m, v))) ^
                f.trace(f.mul(pair_hi(m, u), pair_hi(m, v)))) & 1u;
    };
    std::map<std::uint32_t, std::uint64_t> counts;
    for (std::uint32_t b = 1; b < size; ++b) {
        for (std::uint32_t a = 0; a < size; ++a) {
            std::int64_t w = 0;
            for (std::uint32_t x = 0; x < size; ++x) {
                w += (pair_bit(b, F.values[x]) ^ pair_bit(a, x)) ? -1 : 1;
            }
            ++counts[static_cast<std::uint32_t>(w < 0 ? -w : w)];
        }
    }
    return counts;
}

// ANF degree straight from the definition: coefficient of u is the parity of
// f over the subcube below u.
unsigned degree_by_subcubes(const FunctionTable& F) {
    const unsigned n = F.n();
    unsigned best = 0;
    for (unsigned c = 0; c < n; ++c) {
        for (std::uint32_t u = 0; u < F.size(); ++u) {
            unsigned parity = 0;
            for (std::uint32_t x = 0; x <= u; ++x) {
                if ((x & u) == x) parity ^= (F.values[x] >> c) & 1u;
            }
            if (parity) {
                best = std::max(best, static_cast<unsigned>(std::popcount(u)));
            }
        }
    }
    return best;
}

BitMatrix random_invertible(unsigned n, std::mt19937& rng) {
    for (;;) {
        BitMatrix M = BitMatrix::zero(n);
        for (unsigned i = 0; i < n; ++i) M.rows[i] = rng() & ((1u << n) - 1);
        if (M.inverse()) return M;
    }
}

FunctionTable affine_conjugate(const FunctionTable& F, const BitMatrix& in,
                               std::uint32_t cin, const BitMatrix& out,
                               std::uint32_t cout) {
    FunctionTable t;
    t.m = F.m;
    t.values.resize(F.size());
    for (std::uint64_t x = 0; x < F.size(); ++x) {
        const std::uint32_t u = in.apply(static_cast<std::uint32_t>(x)) ^ cin;
        t.values[x] = out.apply(F.values[u]) ^ cout;
    }
    return t;
}

}  // namespace

TEST_CASE("differential spectrum of degenerate tables") {
    const unsigned m = 3;
    const std::uint64_t size = 64;

    const auto cs = differential_spectrum(constant_table(m, 5));
    CHECK(cs.delta == size);
    CHECK(cs.counts.at(0) == (size - 1) * (size - 1));
    CHECK(cs.counts.at(size) == size - 1);

    const auto is = differential_spectrum(identity_table(m));
    CHECK(is.delta == size);  // a linear map concentrates each derivative
    CHECK(is.counts.at(0) == (size - 1) * (size - 1));
    CHECK(is.counts.at(size) == size - 1);
}

TEST_CASE("differential spectrum totals and parity") {
    for (std::uint32_t seed = 1; seed <= 4; ++seed) {
        const auto t = random_table(3, seed);
        const auto s = differential_spectrum(t);
        std::uint64_t total = 0;
        for (const auto& [c, pairs] : s.counts) {
            CHECK(c % 2 == 0);  // x and x + a solve together
            total += pairs;
        }
        CHECK(total == (t.size() - 1) * t.size());
        CHECK(is_apn(t) == (s.delta == 2));
    }
}

TEST_CASE("frozen differential spectrum of the m=4 family") {
    Field f(4);
    const auto s = differential_spectrum(build_family_new(FamilyParams{&f, 1, 1}));
    CHECK(s.delta == 2);
    CHECK(s.counts.at(0) == 32640);
    CHECK(s.counts.at(2) == 32640);
}

TEST_CASE("is_apn agrees with the full spectrum and the kernel criterion") {
    CHECK_FALSE(is_apn(identity_table(3)));
    for (unsigned m = 3; m <= 5; ++m) {
        Field f(m);
        for (std::uint32_t alpha : admissible_alphas(f, 1)) {
            const auto t = build_family_new(FamilyParams{&f, 1, alpha});
            CHECK(is_apn(t));
            CHECK(quadratic_apn_kernel_check(t));
        }
    }
    // the kernel route rejects a linear table too (derivatives have full kernel)
    CHECK_FALSE(quadratic_apn_kernel_check(identity_table(3)));
}

TEST_CASE("walsh distribution matches the naive character sums") {
    Field f2(2);
    for (std::uint32_t seed = 10; seed <= 12; ++seed) {
        const auto t = random_table(2, seed);
        const auto rep = walsh_spectrum(t, f2);
        CHECK(rep.counts == walsh_by_sums(t, f2));
        CHECK(rep.parseval_ok);
    }
    Field f3(3);
    const auto fam = build_family_new(FamilyParams{&f3, 1, 2});
    CHECK(walsh_spectrum(fam, f3).counts == walsh_by_sums(fam, f3));
}

TEST_CASE("frozen walsh distribution of the m=3 family") {
    Field f(3);
    const auto rep = walsh_spectrum(build_family_new(FamilyParams{&f, 1, 2}), f);
    REQUIRE(rep.counts.size() == 3);
    CHECK(rep.counts.at(0) == 1008);
    CHECK(rep.counts.at(8) == 2688);
    CHECK(rep.counts.at(16) == 336);
    CHECK(rep.parseval_ok);
    CHECK(rep.classical);
    CHECK(classify_walsh(rep));
}

TEST_CASE("walsh distribution of the zero map") {
    Field f(2);
    const auto rep = walsh_spectrum(constant_table(2, 0), f);
    const std::uint64_t size = 16;
    CHECK(rep.counts.at(size) == size - 1);       // W(b, 0) = 2^n
    CHECK(rep.counts.at(0) == (size - 1) * (size - 1));
    CHECK(rep.parseval_ok);
    CHECK_FALSE(rep.classical);
}

TEST_CASE("classify_walsh rejects non-classical shapes and odd n") {
    Field f(3);
    CHECK_FALSE(walsh_spectrum(identity_table(3), f).classical);
    WalshReport odd;
    odd.n = 3;
    CHECK_THROWS_AS(classify_walsh(odd), std::invalid_argument);
}

TEST_CASE("image reports: family, bijection, constant") {
    Field f3(3);
    const auto r3 = image_report(build_family_new(FamilyParams{&f3, 1, 2}));
    CHECK(r3.image_size == 22);  // (2^6 - 1)/3 + 1
    CHECK(r3.three_to_one);
    CHECK(r3.preimage_counts.at(1) == 1);
    CHECK(r3.preimage_counts.at(3) == 21);

    Field f4(4);
    const auto r4 = image_report(build_family_new(FamilyParams{&f4, 1, 1}));
    CHECK(r4.image_size == 86);
    CHECK(r4.three_to_one);

    const auto rid = image_report(identity_table(3));
    CHECK(rid.image_size == 64);
    CHECK(rid.preimage_counts.size() == 1);
    CHECK(rid.preimage_counts.at(1) == 64);
    CHECK_FALSE(image_report(constant_table(3, 3)).three_to_one);
}

TEST_CASE("algebraic degree against the subcube-parity definition") {
    CHECK(algebraic_degree(constant_table(2, 3)) == 0);
    CHECK(algebraic_degree(identity_table(2)) == 1);
    CHECK(algebraic_degree(identity_table(3)) == 1);
    Field f3(3), f5(5);
    CHECK(algebraic_degree(build_family_new(FamilyParams{&f3, 1, 2})) == 2);
    CHECK(algebraic_degree(build_family_new(FamilyParams{&f5, 2, 1})) == 2);
    for (std::uint32_t seed = 21; seed <= 23; ++seed) {
        const auto t = random_table(2, seed);
        CHECK(algebraic_degree(t) == degree_by_subcubes(t));
    }
}

TEST_CASE("derivatives of quadratic tables are affine") {
    Field f(3);
    const auto t = build_family_new(FamilyParams{&f, 1, 2});
    const std::uint64_t size = t.size();
    for (std::uint32_t a = 1; a < size; ++a) {
        // B_a(x) = D_a(x) + D_a(0) must be additive
        auto B = [&](std::uint32_t x) {
            return t.values[x ^ a] ^ t.values[x] ^ t.values[a] ^ t.values[0];
        };
        for (std::uint32_t x = 0; x < size; ++x) {
            for (std::uint32_t y = 0; y < size; ++y) {
                CHECK(B(x ^ y) == (B(x) ^ B(y)));
            }
        }
    }
}

TEST_CASE("analyzer outputs are invariant under affine changes of coordinates") {
    Field f(3);
    const auto t = build_family_new(FamilyParams{&f, 1, 2});
    const auto diff0 = differential_spectrum(t);
    const auto walsh0 = walsh_spectrum(t, f);
    const auto img0 = image_report(t);
    const unsigned deg0 = algebraic_degree(t);

    std::mt19937 rng(9000);
    for (int trial = 0; trial < 20; ++trial) {
        const BitMatrix in = random_invertible(t.n(), rng);
        const BitMatrix out = random_invertible(t.n(), rng);
        const std::uint32_t cin = rng() & 63, cout = rng() & 63;
        const auto g = affine_conjugate(t, in, cin, out, cout);

        CHECK(differential_spectrum(g) == diff0);
        CHECK(walsh_spectrum(g, f).counts == walsh0.counts);
        const auto img = image_report(g);
        CHECK(img.preimage_counts == img0.preimage_counts);
        CHECK(img.image_size == img0.image_size);
        CHECK(algebraic_degree(g) == deg0);
    }
}

TEST_CASE("three-to-one family instances have classical walsh reports") {
    for (unsigned m = 3; m <= 4; ++m) {
        Field f(m);
        for (unsigned k : {1u, m - 1}) {
            for (std::uint32_t alpha : admissible_alphas(f, k)) {
                const auto t = build_family_new(FamilyParams{&f, k, alpha});
                CHECK(image_report(t).three_to_one);
                CHECK(walsh_spectrum(t, f).classical);
            }
        }
    }
}

TEST_CASE("ortho-derivative is well-defined exactly on quadratic APN tables") {
    Field f5(5);
    const auto t1 = build_family_new(FamilyParams{&f5, 1, 1});
    const auto pi = ortho_derivative(t1, f5);
    CHECK(pi.values[0] == 0);
    // every value is a nonzero direction orthogonal to the derivative image
    for (std::uint64_t a = 1; a < pi.size(); ++a) CHECK(pi.values[a] != 0);

    CHECK_THROWS_AS(ortho_derivative(identity_table(3), Field(3)),
                    std::invalid_argument);
    auto broken = t1;
    broken.values[5] ^= 3;  // no longer quadratic APN
    CHECK_THROWS_AS(ortho_derivative(broken, f5), std::invalid_argument);
}

TEST_CASE("ortho-derivative spectra separate k=1 from k=2 at m=5") {
    Field f(5);
    const auto s1 =
        ortho_derivative_spectrum(build_family_new(FamilyParams{&f, 1, 1}), f);
    const auto s2 =
        ortho_derivative_spectrum(build_family_new(FamilyParams{&f, 2, 1}), f);
    CHECK_FALSE(s1 == s2);

    // alpha does not matter at fixed exponent
    const auto alphas = admissible_alphas(f, 1);
    const auto other = ortho_derivative_spectrum(
        build_family_new(FamilyParams{&f, 1, alphas[1]}), f);
    CHECK(s1 == other);
}

TEST_CASE("analyzers are independent of the worker count") {
    Field f(4);
    const auto t = build_family_new(FamilyParams{&f, 3, 1});
    CHECK(differential_spectrum(t, 1) == differential_spectrum(t, 3));
    CHECK(walsh_spectrum(t, f, 1).counts == walsh_spectrum(t, f, 3).counts);
    CHECK(ortho_derivative_spectrum(t, f, 1) == ortho_derivative_spectrum(t, f, 3));
    CHECK(is_apn(t, 1) == is_apn(t, 3));
}
