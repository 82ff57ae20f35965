#include "apnlab/group_action.hpp"

#include <stdexcept>

namespace apnlab {

namespace {

// 2x2 matrix over K in plain (e00, e01, e10, e11) layout.
struct Mat2 {
    std::uint32_t e00, e01, e10, e11;
};

Mat2 to_mat(const GL2& g) { return {g.c1, g.c3, g.c2, g.c4}; }

Mat2 mat_mul(const Field& F, const Mat2& a, const Mat2& b) {
    return {F.mul(a.e00, b.e00) ^ F.mul(a.e01, b.e10),
            F.mul(a.e00, b.e01) ^ F.mul(a.e01, b.e11),
            F.mul(a.e10, b.e00) ^ F.mul(a.e11, b.e10),
            F.mul(a.e10, b.e01) ^ F.mul(a.e11, b.e11)};
}

Mat2 coeff_mat(const BiprojectivePoly& p) {
    return {p.coeffs[0], p.coeffs[2], p.coeffs[1], p.coeffs[3]};
}

std::array<std::uint32_t, 4> to_coeffs(const Mat2& m) {
    return {m.e00, m.e10, m.e01, m.e11};
}

// a * M A (M^s)^t for the polynomial's exponent; shared by act and the
// exhaustive searches (which derive the scalar instead of passing one).
Mat2 matrix_action(const Field& F, unsigned k, const GL2& g, const Mat2& A) {
    const Mat2 M = to_mat(g);
    const Mat2 Mst = {F.frob(g.c1, k), F.frob(g.c2, k),
                      F.frob(g.c3, k), F.frob(g.c4, k)};  // (M^s)^t
    return mat_mul(F, mat_mul(F, M, A), Mst);
}

// The scalar with a * C == A, if any. C != 0 whenever A != 0 and the acting
// matrix is invertible.
std::optional<std::uint32_t> scalar_matching(const Field& F, const Mat2& C,
                                             const Mat2& A) {
    const std::uint32_t c[4] = {C.e00, C.e01, C.e10, C.e11};
    const std::uint32_t a[4] = {A.e00, A.e01, A.e10, A.e11};
    std::uint32_t scal = 0;
    for (int i = 0; i < 4; ++i) {
        if (c[i] != 0) {
            if (a[i] == 0) return std::nullopt;
            scal = F.mul(a[i], F.inv(c[i]));
            break;
        }
    }
    if (scal == 0) return std::nullopt;
    for (int i = 0; i < 4; ++i) {
        if (F.mul(scal, c[i]) != a[i]) return std::nullopt;
    }
    return scal;
}

void require_compatible(const BiprojectivePoly& p1, const BiprojectivePoly& p2) {
    if (*p1.field != *p2.field || p1.k != p2.k) {
        throw std::invalid_argument("polynomials live under different actions");
    }
}

}  // namespace

std::uint32_t gl2_det(const Field& field, const GL2& M) {
    return field.mul(M.c1, M.c4) ^ field.mul(M.c2, M.c3);
}

GL2 gl2_mul(const Field& field, const GL2& a, const GL2& b) {
    const Mat2 p = mat_mul(field, to_mat(a), to_mat(b));
    return GL2{p.e00, p.e10, p.e01, p.e11};
}

GL2 gl2_inv(const Field& field, const GL2& M) {
    const std::uint32_t d = gl2_det(field, M);
    const std::uint32_t id = field.inv(d);
    return GL2{field.mul(M.c4, id), field.mul(M.c2, id), field.mul(M.c3, id),
               field.mul(M.c1, id)};
}

std::uint32_t gl2_apply_point(const Field& field, const GL2& M, std::uint32_t v) {
    const unsigned m = field.degree();
    const std::uint32_t x = pair_lo(m, v), y = pair_hi(m, v);
    return pack_pair(m, field.mul(M.c1, x) ^ field.mul(M.c2, y),
                     field.mul(M.c3, x) ^ field.mul(M.c4, y));
}

BiprojectivePoly act(const GroupElement& g, const BiprojectivePoly& p) {
    const Field& F = *p.field;
    if (g.a == 0 || gl2_det(F, g.M) == 0) {
        throw std::invalid_argument("group element is not invertible");
    }
    Mat2 B = matrix_action(F, p.k, g.M, coeff_mat(p));
    B.e00 = F.mul(g.a, B.e00);
    B.e01 = F.mul(g.a, B.e01);
    B.e10 = F.mul(g.a, B.e10);
    B.e11 = F.mul(g.a, B.e11);
    return BiprojectivePoly{p.field, p.k, to_coeffs(B)};
}

GroupElement compose(const Field& field, const GroupElement& g, const GroupElement& h) {
    return GroupElement{field.mul(g.a, h.a), gl2_mul(field, g.M, h.M)};
}

std::vector<GroupElement> stabilizer_f(const BiprojectivePoly& p) {
    const Field& F = *p.field;
    if (F.degree() > 5) {
        throw std::invalid_argument("exhaustive stabilizer search limited to m <= 5");
    }
    const std::uint32_t q = F.order();
    const Mat2 A = coeff_mat(p);
    std::vector<GroupElement> out;
    GL2 M;
    for (M.c1 = 0; M.c1 < q; ++M.c1)
        for (M.c2 = 0; M.c2 < q; ++M.c2)
            for (M.c3 = 0; M.c3 < q; ++M.c3)
                for (M.c4 = 0; M.c4 < q; ++M.c4) {
                    if (gl2_det(F, M) == 0) continue;
                    const Mat2 C = matrix_action(F, p.k, M, A);
                    if (auto a = scalar_matching(F, C, A)) {
                        out.push_back(GroupElement{*a, M});
                    }
                }
    return out;
}

std::optional<GroupElement> find_move(const BiprojectivePoly& p1,
                                      const BiprojectivePoly& p2) {
    require_compatible(p1, p2);
    const Field& F = *p1.field;
    const std::uint32_t q = F.order();
    const Mat2 A1 = coeff_mat(p1), A2 = coeff_mat(p2);

    auto try_matrix = [&](const GL2& M) -> std::optional<GroupElement> {
        const Mat2 C = matrix_action(F, p1.k, M, A1);
        if (auto a = scalar_matching(F, C, A2)) return GroupElement{*a, M};
        return std::nullopt;
    };

    // det(M) = 1 slice: moves come 3 per determinant value, so it suffices.
    GL2 M;
    for (M.c1 = 1; M.c1 < q; ++M.c1) {
        const std::uint32_t ic1 = F.inv(M.c1);
        for (M.c2 = 0; M.c2 < q; ++M.c2)
            for (M.c3 = 0; M.c3 < q; ++M.c3) {
                M.c4 = F.mul(ic1, 1u ^ F.mul(M.c2, M.c3));
                if (auto g = try_matrix(M)) return g;
            }
    }
    M.c1 = 0;
    for (M.c2 = 1; M.c2 < q; ++M.c2) {
        M.c3 = F.inv(M.c2);
        for (M.c4 = 0; M.c4 < q; ++M.c4) {
            if (auto g = try_matrix(M)) return g;
        }
    }

    if (F.degree() <= 4) {
        const auto all = find_all_moves(p1, p2);
        if (!all.empty()) return all.front();
    }
    return std::nullopt;
}

std::vector<GroupElement> find_all_moves(const BiprojectivePoly& p1,
                                         const BiprojectivePoly& p2) {
    require_compatible(p1, p2);
    const Field& F = *p1.field;
    if (F.degree() > 4) {
        throw std::invalid_argument("exhaustive move search limited to m <= 4");
    }
    const std::uint32_t q = F.order();
    const Mat2 A1 = coeff_mat(p1), A2 = coeff_mat(p2);
    std::vector<GroupElement> out;
    GL2 M;
    for (M.c1 = 0; M.c1 < q; ++M.c1)
        for (M.c2 = 0; M.c2 < q; ++M.c2)
            for (M.c3 = 0; M.c3 < q; ++M.c3)
                for (M.c4 = 0; M.c4 < q; ++M.c4) {
                    if (gl2_det(F, M) == 0) continue;
                    const Mat2 C = matrix_action(F, p1.k, M, A1);
                    if (auto a = scalar_matching(F, C, A2)) {
                        out.push_back(GroupElement{*a, M});
                    }
                }
    return out;
}

std::uint32_t lift_scalar(const Field& field, unsigned k, const GL2& M,
                          std::uint32_t alpha1, std::uint32_t alpha2) {
    const unsigned m = field.degree();
    auto pow_s_plus_1 = [&](std::uint32_t x, unsigned e) {
        return field.mul(field.frob(x, e), x);
    };
    const std::uint32_t det = gl2_det(field, M);
    const std::uint32_t lhs = field.mul(pow_s_plus_1(det, (2 * k) % m),
                                        pow_s_plus_1(alpha1, k));
    const std::uint32_t rhs = pow_s_plus_1(alpha2, k);
    return field.sqrt(field.mul(rhs, field.inv(lhs)));
}

GroupElement lift_to_g(const Field& field, unsigned k, const GroupElement& f_move,
                       std::uint32_t alpha1, std::uint32_t alpha2) {
    return GroupElement{lift_scalar(field, k, f_move.M, alpha1, alpha2), f_move.M};
}

std::vector<BlockAutomorphism> block_automorphisms(const FunctionTable& F,
                                                   const FamilyParams& params) {
    require_family_params(params);
    const Field& field = *params.field;
    if (field.degree() != F.m) throw std::invalid_argument("field/table degree mismatch");

    const auto stab =
        stabilizer_f(family_first_poly(field, params.k, params.alpha));
    std::vector<BlockAutomorphism> out;
    out.reserve(stab.size());
    for (const auto& g : stab) {
        const std::uint32_t a2 =
            lift_scalar(field, params.k, g.M, params.alpha, params.alpha);
        // Stabilizing means a * f(M(v)) = f(v), so on values L = diag of the
        // scalar inverses.
        BlockAutomorphism aut{g.M, field.inv(g.a), field.inv(a2)};
        for (std::uint64_t v = 0; v < F.size(); ++v) {
            const std::uint32_t lhs = pack_pair(
                F.m, field.mul(aut.l1, pair_lo(F.m, F.values[v])),
                field.mul(aut.l2, pair_hi(F.m, F.values[v])));
            const std::uint32_t rhs =
                F.values[gl2_apply_point(field, aut.M, static_cast<std::uint32_t>(v))];
            if (lhs != rhs) {
                throw std::logic_error("derived block automorphism failed pointwise");
            }
        }
        out.push_back(aut);
    }
    return out;
}

}  // namespace apnlab
