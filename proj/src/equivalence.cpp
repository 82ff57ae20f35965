#include "apnlab/equivalence.hpp"

#include <numeric>
#include <stdexcept>

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

std::uint32_t smallest_admissible(const Field& field, unsigned k) {
    const auto alphas = admissible_alphas(field, k);
    if (alphas.empty()) throw std::logic_error("no admissible alpha");  // never
    return alphas.front();
}

}  // namespace

LinearEquivalence identity_witness(unsigned n) {
    return LinearEquivalence{BitMatrix::identity(n), BitMatrix::identity(n)};
}

LinearEquivalence compose(const LinearEquivalence& second,
                          const LinearEquivalence& first) {
    if (second.input.n != first.input.n) {
        throw std::invalid_argument("witness dimension mismatch");
    }
    return LinearEquivalence{second.input.mul(first.input),
                             second.output.mul(first.output)};
}

bool verify_el_equivalence_witness(const FunctionTable& F, const FunctionTable& G,
                                   const LinearEquivalence& w) {
    if (F.m != G.m) throw std::invalid_argument("table shapes differ");
    const unsigned n = F.n();
    if (w.input.n != n || w.output.n != n) return false;
    if (!w.input.inverse() || !w.output.inverse()) return false;
    for (std::uint64_t x = 0; x < F.size(); ++x) {
        const std::uint32_t lhs = w.output.apply(F.values[x]);
        const std::uint32_t rhs =
            G.values[w.input.apply(static_cast<std::uint32_t>(x))];
        if (lhs != rhs) return false;
    }
    return true;
}

BitMatrix substitution_matrix(const Field& field, const GL2& M) {
    const unsigned m = field.degree();
    std::array<std::uint32_t, 32> cols{};
    for (unsigned j = 0; j < m; ++j) {
        cols[j] = pack_pair(m, field.mul(M.c1, 1u << j), field.mul(M.c3, 1u << j));
        cols[m + j] = pack_pair(m, field.mul(M.c2, 1u << j), field.mul(M.c4, 1u << j));
    }
    return BitMatrix::from_columns(2 * m, cols.data());
}

LinearEquivalence build_alpha_equivalence(const FamilyParams& params1,
                                          const FamilyParams& params2) {
    require_family_params(params1);
    require_family_params(params2);
    if (*params1.field != *params2.field || params1.k != params2.k) {
        throw std::invalid_argument("alpha-equivalence needs the same field and k");
    }
    const Field& field = *params1.field;
    const unsigned n = 2 * field.degree();

    LinearEquivalence w = identity_witness(n);
    if (params1.alpha != params2.alpha) {
        const auto move =
            find_move(family_first_poly(field, params1.k, params1.alpha),
                      family_first_poly(field, params1.k, params2.alpha));
        if (!move) {
            throw std::runtime_error(
                "no coefficient move between admissible alpha=" +
                hex_str(params1.alpha) + " and alpha=" + hex_str(params2.alpha) +
                " (transitivity violated)");
        }
        const std::uint32_t a2 = lift_scalar(field, params1.k, move->M,
                                             params1.alpha, params2.alpha);
        // act((a, M), f1) = f2 means a * f1(M(v)) = f2(v), so f1(M(v)) equals
        // diag(1/a, 1/a2) F2(v); substituting u = M(v) gives the canonical
        // relation L(F1(u)) = F2(M^-1(u)).
        w.input = substitution_matrix(field, gl2_inv(field, move->M));
        w.output = block_diag(mult_matrix(field, move->a), mult_matrix(field, a2));
    }

    if (!verify_el_equivalence_witness(build_family_new(params1),
                                       build_family_new(params2), w)) {
        throw std::logic_error("alpha-equivalence witness failed pointwise");
    }
    return w;
}

InverseSigmaEquivalence inverse_sigma_equivalence(const FamilyParams& params) {
    require_family_params(params);
    const Field& field = *params.field;
    const unsigned m = field.degree();
    const unsigned kbar = m - params.k;

    InverseSigmaEquivalence out;
    out.target = FamilyParams{&field, kbar, field.frob(params.alpha, kbar)};
    require_family_params(out.target);

    // Output map: inverse Frobenius on the first coordinate, its square on the
    // second; input map: the shear (x, y) -> (x + y, y), which is self-inverse.
    out.witness.output = block_diag(frob_matrix(field, kbar),
                                    frob_matrix(field, (2 * kbar) % m));
    out.witness.input = substitution_matrix(field, GL2{1, 1, 0, 1});

    if (!verify_el_equivalence_witness(build_family_new(params),
                                       build_family_new(out.target),
                                       out.witness)) {
        throw std::logic_error("inverse-exponent witness failed pointwise");
    }
    return out;
}

ClassMatrix certify_classes(const Field& field, unsigned jobs) {
    const unsigned m = field.degree();
    ClassMatrix out;
    out.m = m;
    for (unsigned k = 1; k < m; ++k) {
        if (std::gcd(k, m) == 1) out.ks.push_back(k);
    }

    std::map<unsigned, std::uint32_t> alpha_of;
    std::map<unsigned, FunctionTable> table_of;
    for (unsigned k : out.ks) {
        alpha_of[k] = smallest_admissible(field, k);
        table_of[k] = build_family_new(FamilyParams{&field, k, alpha_of[k]});
    }

    auto rep_of = [&](unsigned k) { return std::min(k, m - k); };
    std::vector<unsigned> reps;
    for (unsigned k : out.ks) {
        if (rep_of(k) == k) reps.push_back(k);
    }
    out.num_classes = static_cast<unsigned>(reps.size());

    for (unsigned r : reps) {
        out.rep_alpha[r] = alpha_of[r];
        out.rep_ods[r] = ortho_derivative_spectrum(table_of[r], field, jobs);
    }

    // Lazy tie-breaking invariants, only computed when spectra collide.
    std::map<unsigned, WalshReport> ods_walsh, ext_walsh;
    auto ods_walsh_of = [&](unsigned r) -> const WalshReport& {
        auto it = ods_walsh.find(r);
        if (it == ods_walsh.end()) {
            it = ods_walsh
                     .emplace(r, walsh_spectrum(ortho_derivative(table_of[r], field),
                                                field, jobs))
                     .first;
        }
        return it->second;
    };
    auto ext_walsh_of = [&](unsigned r) -> const WalshReport& {
        auto it = ext_walsh.find(r);
        if (it == ext_walsh.end()) {
            it = ext_walsh.emplace(r, walsh_spectrum(table_of[r], field, jobs)).first;
        }
        return it->second;
    };

    auto same_class_witness = [&](unsigned k1, unsigned k2) -> LinearEquivalence {
        if (k1 == k2) return identity_witness(2 * m);
        // k2 == m - k1: hop exponents, then align alpha within exponent k2.
        const auto hop = inverse_sigma_equivalence(FamilyParams{&field, k1, alpha_of[k1]});
        const auto align = build_alpha_equivalence(
            hop.target, FamilyParams{&field, k2, alpha_of[k2]});
        return compose(align, hop.witness);
    };

    auto cross_class_verdict = [&](unsigned r1, unsigned r2) {
        EquivalenceVerdict v;
        if (out.rep_ods[r1] != out.rep_ods[r2]) {
            v.status = VerdictStatus::InequivalentByInvariant;
            v.detail = "ortho-derivative differential spectra differ (reps k=" +
                       std::to_string(r1) + ", k=" + std::to_string(r2) + ")";
        } else if (ods_walsh_of(r1) != ods_walsh_of(r2)) {
            v.status = VerdictStatus::InequivalentByInvariant;
            v.detail = "ortho-derivative walsh reports differ (reps k=" +
                       std::to_string(r1) + ", k=" + std::to_string(r2) + ")";
        } else if (ext_walsh_of(r1) != ext_walsh_of(r2)) {
            v.status = VerdictStatus::InequivalentByInvariant;
            v.detail = "extended walsh reports differ (reps k=" +
                       std::to_string(r1) + ", k=" + std::to_string(r2) + ")";
        } else {
            v.status = VerdictStatus::Undecided;
            v.detail = "no separating invariant found (reps k=" +
                       std::to_string(r1) + ", k=" + std::to_string(r2) + ")";
        }
        return v;
    };

    out.verdicts.resize(out.ks.size());
    for (std::size_t i = 0; i < out.ks.size(); ++i) {
        out.verdicts[i].resize(out.ks.size());
        for (std::size_t j = 0; j < out.ks.size(); ++j) {
            const unsigned k1 = out.ks[i], k2 = out.ks[j];
            EquivalenceVerdict& v = out.verdicts[i][j];
            if (rep_of(k1) == rep_of(k2)) {
                LinearEquivalence w = same_class_witness(k1, k2);
                if (!verify_el_equivalence_witness(table_of[k1], table_of[k2], w)) {
                    throw std::logic_error("class witness failed pointwise");
                }
                v.status = VerdictStatus::EquivalentWithWitness;
                v.witness = std::move(w);
                v.detail = k1 == k2 ? "identity" : "inverse-exponent witness";
            } else {
                v = cross_class_verdict(rep_of(k1), rep_of(k2));
            }
        }
    }
    return out;
}

}  // namespace apnlab
