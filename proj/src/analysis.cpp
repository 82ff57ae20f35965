#include "apnlab/analysis.hpp"

#include <atomic>
#include <stdexcept>
#include <vector>

#include "apnlab/bitmatrix.hpp"
#include "apnlab/parallel.hpp"

namespace apnlab {

namespace {

void require_table(const FunctionTable& F) {
    if (F.m < 1 || F.size() != (std::uint64_t{1} << F.n())) {
        throw std::invalid_argument("malformed function table");
    }
    if (F.n() > 24) throw std::invalid_argument("table too large for analysis");
}

void fwht(std::vector<std::int32_t>& v) {
    const std::size_t nn = v.size();
    for (std::size_t step = 1; step < nn; step <<= 1) {
        for (std::size_t i = 0; i < nn; i += step << 1) {
            for (std::size_t j = i; j < i + step; ++j) {
                const std::int32_t u = v[j], w = v[j + step];
                v[j] = u + w;
                v[j + step] = u - w;
            }
        }
    }
}

}  // namespace

DifferentialSpectrum differential_spectrum(const FunctionTable& F, unsigned jobs) {
    require_table(F);
    const std::uint64_t size = F.size();
    const unsigned workers = resolve_jobs(jobs);
    std::vector<std::map<std::uint32_t, std::uint64_t>> partial(workers);

    parallel_chunks(size - 1, workers, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
        std::vector<std::uint32_t> count(size, 0);
        std::vector<std::uint32_t> touched;
        touched.reserve(size / 2 + 1);
        auto& hist = partial[w];
        for (std::uint64_t ai = b; ai < e; ++ai) {
            const std::uint32_t a = static_cast<std::uint32_t>(ai) + 1;
            for (std::uint64_t x = 0; x < size; ++x) {
                const std::uint32_t d = F.values[x] ^ F.values[x ^ a];
                if (count[d]++ == 0) touched.push_back(d);
            }
            hist[0] += size - touched.size();
            for (std::uint32_t d : touched) {
                ++hist[count[d]];
                count[d] = 0;
            }
            touched.clear();
        }
    });

    DifferentialSpectrum out;
    for (const auto& hist : partial) {
        for (const auto& [c, n] : hist) out.counts[c] += n;
    }
    out.delta = out.counts.empty() ? 0 : out.counts.rbegin()->first;
    return out;
}

bool is_apn(const FunctionTable& F, unsigned jobs) {
    require_table(F);
    const std::uint64_t size = F.size();
    std::atomic<bool> exceeded{false};

    parallel_chunks(size - 1, jobs, [&](unsigned, std::uint64_t b, std::uint64_t e) {
        std::vector<std::uint8_t> count(size, 0);
        std::vector<std::uint32_t> touched;
        touched.reserve(size / 2 + 1);
        for (std::uint64_t ai = b; ai < e && !exceeded.load(std::memory_order_relaxed);
             ++ai) {
            const std::uint32_t a = static_cast<std::uint32_t>(ai) + 1;
            for (std::uint64_t x = 0; x < size; ++x) {
                const std::uint32_t d = F.values[x] ^ F.values[x ^ a];
                if (count[d] == 0) touched.push_back(d);
                if (++count[d] > 2) {
                    exceeded.store(true, std::memory_order_relaxed);
                    break;
                }
            }
            for (std::uint32_t d : touched) count[d] = 0;
            touched.clear();
        }
    });
    // delta is even and at least 2 on any table with 2+ entries, so
    // "never exceeds 2" is exactly delta == 2.
    return !exceeded.load();
}

bool quadratic_apn_kernel_check(const FunctionTable& F) {
    require_table(F);
    const unsigned n = F.n();
    const std::uint64_t size = F.size();
    const std::uint32_t f0 = F.values[0];
    std::atomic<bool> bad{false};

    parallel_chunks(size - 1, 0, [&](unsigned, std::uint64_t b, std::uint64_t e) {
        BitMatrix B = BitMatrix::zero(n);
        for (std::uint64_t ai = b; ai < e && !bad.load(std::memory_order_relaxed);
             ++ai) {
            const std::uint32_t a = static_cast<std::uint32_t>(ai) + 1;
            const std::uint32_t fa = F.values[a] ^ f0;
            std::uint32_t cols[32];
            for (unsigned j = 0; j < n; ++j) {
                cols[j] = F.values[a ^ (1u << j)] ^ F.values[1u << j] ^ fa;
            }
            B = BitMatrix::from_columns(n, cols);
            if (B.rank() != n - 1) {
                bad.store(true, std::memory_order_relaxed);
                break;
            }
        }
    });
    return !bad.load();
}

WalshReport walsh_spectrum(const FunctionTable& F, const Field& field, unsigned jobs) {
    require_table(F);
    if (field.degree() != F.m) throw std::invalid_argument("field/table degree mismatch");
    const unsigned n = F.n();
    if (n > 20) throw std::invalid_argument("walsh scan too large for n > 20");
    const unsigned m = F.m;
    const std::uint64_t size = F.size();
    const unsigned workers = resolve_jobs(jobs);

    std::vector<std::vector<std::uint64_t>> partial(
        workers, std::vector<std::uint64_t>(size + 1, 0));
    std::atomic<bool> parseval{true};

    parallel_chunks(size - 1, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::int32_t> s(size);
        auto& hist = partial[w];
        for (std::uint64_t bi = lo; bi < hi; ++bi) {
            const std::uint32_t b = static_cast<std::uint32_t>(bi) + 1;
            const std::uint32_t mask = field.dual_mask(pair_lo(m, b)) |
                                       (field.dual_mask(pair_hi(m, b)) << m);
            for (std::uint64_t x = 0; x < size; ++x) {
                s[x] = parity32(mask & F.values[x]) ? -1 : 1;
            }
            fwht(s);
            std::uint64_t sq = 0;
            for (std::uint64_t a = 0; a < size; ++a) {
                const std::uint32_t v =
                    static_cast<std::uint32_t>(s[a] < 0 ? -s[a] : s[a]);
                ++hist[v];
                sq += static_cast<std::uint64_t>(v) * v;
            }
            if (sq != size * size) parseval.store(false, std::memory_order_relaxed);
        }
    });

    WalshReport out;
    out.n = n;
    for (const auto& hist : partial) {
        for (std::uint64_t v = 0; v <= size; ++v) {
            if (hist[v]) out.counts[static_cast<std::uint32_t>(v)] += hist[v];
        }
    }
    out.parseval_ok = parseval.load();
    out.classical = (n % 2 == 0) && classify_walsh(out);
    return out;
}

std::uint64_t classical_top_count(unsigned n) {
    const std::uint64_t size = std::uint64_t{1} << n;
    return ((size - 1) / 3) * (size / 4);
}

bool classify_walsh(const WalshReport& r) {
    if (r.n % 2 != 0) throw std::invalid_argument("classical spectrum needs even n");
    const std::uint64_t size = std::uint64_t{1} << r.n;
    const std::uint32_t mid = 1u << (r.n / 2);
    // (2^n - 1) * 2^(n-2) zeros and (2^n - 1) * 2^(n+1)/3 values 2^(n/2); the
    // top multiplicity follows from totality.
    std::map<std::uint32_t, std::uint64_t> expect{
        {0, (size - 1) * (size / 4)},
        {mid, ((size - 1) / 3) * (2 * size)},
        {2 * mid, classical_top_count(r.n)}};
    return r.counts == expect;
}

ImageReport image_report(const FunctionTable& F) {
    require_table(F);
    const std::uint64_t size = F.size();
    std::vector<std::uint32_t> freq(size, 0);
    for (std::uint32_t v : F.values) ++freq[v];

    ImageReport out;
    for (std::uint64_t v = 0; v < size; ++v) {
        if (freq[v]) {
            ++out.image_size;
            ++out.preimage_counts[freq[v]];
        }
    }
    out.three_to_one = F.values[0] == 0 && freq[0] == 1;
    if (out.three_to_one) {
        for (std::uint64_t v = 1; v < size && out.three_to_one; ++v) {
            if (freq[v] != 0 && freq[v] != 3) out.three_to_one = false;
        }
    }
    return out;
}

unsigned algebraic_degree(const FunctionTable& F) {
    require_table(F);
    const unsigned n = F.n();
    const std::uint64_t size = F.size();
    unsigned best = 0;
    std::vector<std::uint8_t> f(size);
    for (unsigned c = 0; c < n; ++c) {
        for (std::uint64_t x = 0; x < size; ++x) {
            f[x] = static_cast<std::uint8_t>((F.values[x] >> c) & 1u);
        }
        for (std::uint64_t step = 1; step < size; step <<= 1) {
            for (std::uint64_t x = 0; x < size; ++x) {
                if (x & step) f[x] ^= f[x ^ step];
            }
        }
        for (std::uint64_t u = 0; u < size; ++u) {
            if (f[u]) {
                const unsigned w = static_cast<unsigned>(std::popcount(u));
                if (w > best) best = w;
            }
        }
    }
    return best;
}

FunctionTable ortho_derivative(const FunctionTable& F, const Field& field) {
    require_table(F);
    if (field.degree() != F.m) throw std::invalid_argument("field/table degree mismatch");
    if (F.values[0] != 0) throw std::invalid_argument("ortho-derivative needs F(0) = 0");
    if (algebraic_degree(F) != 2) {
        throw std::invalid_argument("ortho-derivative needs a quadratic table");
    }
    const unsigned n = F.n();
    const unsigned m = F.m;
    const std::uint64_t size = F.size();

    FunctionTable pi;
    pi.m = m;
    pi.values.assign(size, 0);

    std::vector<std::uint32_t> rows(n);
    for (std::uint64_t ai = 1; ai < size; ++ai) {
        const std::uint32_t a = static_cast<std::uint32_t>(ai);
        const std::uint32_t fa = F.values[a];
        for (unsigned j = 0; j < n; ++j) {
            const std::uint32_t v = F.values[a ^ (1u << j)] ^ F.values[1u << j] ^ fa;
            rows[j] = field.dual_mask(pair_lo(m, v)) |
                      (field.dual_mask(pair_hi(m, v)) << m);
        }
        const auto basis = nullspace(rows, n);
        if (basis.size() != 1) {
            throw std::invalid_argument("not APN: derivative image has rank " +
                                        std::to_string(n - basis.size()) +
                                        " at a=" + std::to_string(a));
        }
        pi.values[a] = basis[0];
    }
    return pi;
}

DifferentialSpectrum ortho_derivative_spectrum(const FunctionTable& F,
                                               const Field& field, unsigned jobs) {
    return differential_spectrum(ortho_derivative(F, field), jobs);
}

}  // namespace apnlab
