#pragma once

#include <cstdint>
#include <map>

#include "apnlab/functions.hpp"
#include "apnlab/gf2m.hpp"

namespace apnlab {

// counts[c] = number of pairs (a, b) with a != 0 whose derivative equation
// F(x+a) + F(x) = b has exactly c solutions; pairs with no solution are kept
// under c = 0, so the counts always sum to (2^n - 1) * 2^n.
struct DifferentialSpectrum {
    std::map<std::uint32_t, std::uint64_t> counts;
    std::uint32_t delta = 0;  // differential uniformity

    bool operator==(const DifferentialSpectrum& o) const {
        return delta == o.delta && counts == o.counts;
    }
};

// Multiset of |W(b, a)| with b != 0 and a ranging over ALL of F_2^n; the
// component function of b is Tr(b1*F1) + Tr(b2*F2) in the pair encoding.
struct WalshReport {
    unsigned n = 0;
    std::map<std::uint32_t, std::uint64_t> counts;  // |W| -> multiplicity
    bool parseval_ok = false;  // sum_a W(b,a)^2 = 2^(2n) held for every b
    bool classical = false;

    bool operator==(const WalshReport& o) const {
        return n == o.n && counts == o.counts;
    }
};

struct ImageReport {
    std::uint64_t image_size = 0;
    std::map<std::uint32_t, std::uint64_t> preimage_counts;  // fiber size -> #values
    bool three_to_one = false;  // F(x)=0 iff x=0 and every nonzero fiber has size 3
};

// Exact spectrum by scanning every derivative direction; O(2^(2n)).
DifferentialSpectrum differential_spectrum(const FunctionTable& F, unsigned jobs = 0);

// delta == 2, with early exit on the first direction exceeding 2.
bool is_apn(const FunctionTable& F, unsigned jobs = 0);

// APN test through derivative kernels: valid only for tables of algebraic
// degree <= 2, where every symmetrized derivative is linear and APN-ness is
// equivalent to all of them having rank n - 1. O(n^2 * 2^n).
bool quadratic_apn_kernel_check(const FunctionTable& F);

// Walsh value distribution via one length-2^n fast transform per b.
WalshReport walsh_spectrum(const FunctionTable& F, const Field& field,
                           unsigned jobs = 0);

// Support {0, 2^(n/2), 2^(n/2+1)} with multiplicities (2^n-1)*2^(n-2),
// (2^n-1)*2^(n+1)/3 and (2^n-1)*2^(n-2)/3. Throws on odd n.
bool classify_walsh(const WalshReport& r);

// The multiplicity of 2^(n/2+1) forced by totality and Parseval.
std::uint64_t classical_top_count(unsigned n);

ImageReport image_report(const FunctionTable& F);

// Max over output bits of the ANF degree (Moebius transform per bit).
unsigned algebraic_degree(const FunctionTable& F);

// For a quadratic APN table with F(0) = 0: the map a -> unique nonzero b with
// <b, B_a(x)> = 0 for all x, where B_a(x) = F(x+a) + F(x) + F(a) + F(0) and
// <(b1,b2),(y1,y2)> = Tr(b1*y1) + Tr(b2*y2). Throws std::invalid_argument if
// the table is not quadratic or some derivative image has rank != n - 1.
FunctionTable ortho_derivative(const FunctionTable& F, const Field& field);

DifferentialSpectrum ortho_derivative_spectrum(const FunctionTable& F,
                                               const Field& field,
                                               unsigned jobs = 0);

}  // namespace apnlab
