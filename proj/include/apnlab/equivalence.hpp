#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apnlab/analysis.hpp"
#include "apnlab/bitmatrix.hpp"
#include "apnlab/functions.hpp"
#include "apnlab/group_action.hpp"

namespace apnlab {

// Certificate that L(F(x)) = G(M(x)) for all x, with both n x n bit-matrices
// invertible. Maps are stored over F_2 so witnesses composed from K-linear
// and Frobenius-semilinear pieces verify the same way.
struct LinearEquivalence {
    BitMatrix input;   // M
    BitMatrix output;  // L
};

LinearEquivalence identity_witness(unsigned n);

// first: F -> G, second: G -> H; the result certifies F -> H.
LinearEquivalence compose(const LinearEquivalence& second,
                          const LinearEquivalence& first);

// Pointwise check of L(F(x)) == G(M(x)); false on shape mismatch or a
// non-invertible map. Throws only on table shape mismatch.
bool verify_el_equivalence_witness(const FunctionTable& F, const FunctionTable& G,
                                   const LinearEquivalence& w);

// Substitution v -> (c1 x + c2 y, c3 x + c4 y) as a bit-matrix on K^2.
BitMatrix substitution_matrix(const Field& field, const GL2& M);

// Witness from the table of params1 to the table of params2 (same field and
// k): a coefficient-level move of the first components, lifted to the second,
// inverted into the canonical relation, and verified pointwise before return.
LinearEquivalence build_alpha_equivalence(const FamilyParams& params1,
                                          const FamilyParams& params2);

struct InverseSigmaEquivalence {
    FamilyParams target;  // exponent m - k, alpha^(2^(m-k))
    LinearEquivalence witness;
};

// The explicit inverse-exponent witness: Frobenius powers on the two output
// coordinates combined with the input shear (x, y) -> (x + y, y). Verified
// pointwise before return.
InverseSigmaEquivalence inverse_sigma_equivalence(const FamilyParams& params);

enum class VerdictStatus {
    EquivalentWithWitness,
    InequivalentByInvariant,
    Undecided,
};

struct EquivalenceVerdict {
    VerdictStatus status = VerdictStatus::Undecided;
    std::optional<LinearEquivalence> witness;
    std::string detail;
};

// Pairwise verdicts for the canonical family member of every exponent k
// coprime to m. Exponents k and m - k are tied by verified witnesses; the
// rest are separated by ortho-derivative spectra (then ortho-derivative Walsh
// and plain extended Walsh reports as tie-breakers). Absence of a separating
// invariant is reported as Undecided, never as equivalence.
struct ClassMatrix {
    unsigned m = 0;
    std::vector<unsigned> ks;                             // ascending
    std::vector<std::vector<EquivalenceVerdict>> verdicts;  // [i][j] over ks
    unsigned num_classes = 0;
    std::map<unsigned, std::uint32_t> rep_alpha;          // class rep -> alpha used
    std::map<unsigned, DifferentialSpectrum> rep_ods;     // class rep -> spectrum
};

ClassMatrix certify_classes(const Field& field, unsigned jobs = 0);

}  // namespace apnlab
