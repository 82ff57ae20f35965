#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "apnlab/gf2m.hpp"

namespace apnlab {

inline unsigned parity32(std::uint32_t x) { return std::popcount(x) & 1u; }

// Square matrix over F_2, n <= 32. rows[i] holds row i, bit j = entry (i,j);
// vectors are columns, so apply(v) bit i = <row i, v>.
struct BitMatrix {
    unsigned n = 0;
    std::array<std::uint32_t, 32> rows{};

    static BitMatrix zero(unsigned n) {
        BitMatrix r;
        r.n = n;
        return r;
    }

    static BitMatrix identity(unsigned n) {
        BitMatrix r = zero(n);
        for (unsigned i = 0; i < n; ++i) r.rows[i] = 1u << i;
        return r;
    }

    // cols[j] is the image of the j-th unit vector.
    static BitMatrix from_columns(unsigned n, const std::uint32_t* cols) {
        BitMatrix r = zero(n);
        for (unsigned j = 0; j < n; ++j) {
            for (unsigned i = 0; i < n; ++i) {
                if ((cols[j] >> i) & 1u) r.rows[i] |= 1u << j;
            }
        }
        return r;
    }

    std::uint32_t apply(std::uint32_t v) const {
        std::uint32_t r = 0;
        for (unsigned i = 0; i < n; ++i) r |= parity32(rows[i] & v) << i;
        return r;
    }

    BitMatrix mul(const BitMatrix& o) const {
        BitMatrix r = zero(n);
        for (unsigned i = 0; i < n; ++i) {
            std::uint32_t bits = rows[i], acc = 0;
            while (bits) {
                acc ^= o.rows[std::countr_zero(bits)];
                bits &= bits - 1;
            }
            r.rows[i] = acc;
        }
        return r;
    }

    bool operator==(const BitMatrix& o) const {
        if (n != o.n) return false;
        for (unsigned i = 0; i < n; ++i)
            if (rows[i] != o.rows[i]) return false;
        return true;
    }

    unsigned rank() const {
        std::array<std::uint32_t, 32> r = rows;
        unsigned rk = 0;
        for (unsigned col = 0; col < n && rk < n; ++col) {
            unsigned piv = rk;
            while (piv < n && !((r[piv] >> col) & 1u)) ++piv;
            if (piv == n) continue;
            std::swap(r[rk], r[piv]);
            for (unsigned i = 0; i < n; ++i) {
                if (i != rk && ((r[i] >> col) & 1u)) r[i] ^= r[rk];
            }
            ++rk;
        }
        return rk;
    }

    std::optional<BitMatrix> inverse() const {
        // Gauss-Jordan on [M | I] with rows packed into 64 bits.
        std::array<std::uint64_t, 32> aug{};
        for (unsigned i = 0; i < n; ++i) {
            aug[i] = rows[i] | (std::uint64_t{1} << (n + i));
        }
        unsigned rk = 0;
        for (unsigned col = 0; col < n; ++col) {
            unsigned piv = rk;
            while (piv < n && !((aug[piv] >> col) & 1u)) ++piv;
            if (piv == n) return std::nullopt;
            std::swap(aug[rk], aug[piv]);
            for (unsigned i = 0; i < n; ++i) {
                if (i != rk && ((aug[i] >> col) & 1u)) aug[i] ^= aug[rk];
            }
            ++rk;
        }
        BitMatrix inv = zero(n);
        for (unsigned i = 0; i < n; ++i) {
            inv.rows[i] = static_cast<std::uint32_t>(aug[i] >> n);
        }
        return inv;
    }
};

// Basis of {v : <row, v> = 0 for every row} under the standard dot product.
inline std::vector<std::uint32_t> nullspace(std::vector<std::uint32_t> rows, unsigned n) {
    std::array<int, 32> pivot_row{};
    pivot_row.fill(-1);
    unsigned rk = 0;
    for (unsigned col = 0; col < n && rk < rows.size(); ++col) {
        unsigned piv = rk;
        while (piv < rows.size() && !((rows[piv] >> col) & 1u)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rk], rows[piv]);
        for (unsigned i = 0; i < rows.size(); ++i) {
            if (i != rk && ((rows[i] >> col) & 1u)) rows[i] ^= rows[rk];
        }
        pivot_row[col] = static_cast<int>(rk);
        ++rk;
    }
    std::vector<std::uint32_t> basis;
    for (unsigned f = 0; f < n; ++f) {
        if (pivot_row[f] >= 0) continue;
        std::uint32_t v = 1u << f;
        for (unsigned c = 0; c < n; ++c) {
            if (pivot_row[c] >= 0 && ((rows[static_cast<unsigned>(pivot_row[c])] >> f) & 1u)) {
                v |= 1u << c;
            }
        }
        basis.push_back(v);
    }
    return basis;
}

// Matrix of v -> a*v on the m bits of K.
inline BitMatrix mult_matrix(const Field& field, std::uint32_t a) {
    const unsigned m = field.degree();
    std::array<std::uint32_t, 32> cols{};
    for (unsigned j = 0; j < m; ++j) cols[j] = field.mul(a, 1u << j);
    return BitMatrix::from_columns(m, cols.data());
}

// Matrix of v -> v^(2^k) on the m bits of K.
inline BitMatrix frob_matrix(const Field& field, unsigned k) {
    const unsigned m = field.degree();
    std::array<std::uint32_t, 32> cols{};
    for (unsigned j = 0; j < m; ++j) cols[j] = field.frob(1u << j, k);
    return BitMatrix::from_columns(m, cols.data());
}

// diag(A, B) acting on packed pairs (low half via A, high half via B).
inline BitMatrix block_diag(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix r = BitMatrix::zero(a.n + b.n);
    for (unsigned i = 0; i < a.n; ++i) r.rows[i] = a.rows[i];
    for (unsigned i = 0; i < b.n; ++i) r.rows[a.n + i] = b.rows[i] << a.n;
    return r;
}

}  // namespace apnlab
