#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "apnlab/functions.hpp"
#include "apnlab/gf2m.hpp"

namespace apnlab {

// Invertible 2x2 matrix over K in the layout M = [[c1, c3], [c2, c4]], so the
// induced substitution on points is (x, y) -> (c1 x + c2 y, c3 x + c4 y).
struct GL2 {
    std::uint32_t c1 = 1, c2 = 0, c3 = 0, c4 = 1;

    bool operator==(const GL2& o) const {
        return c1 == o.c1 && c2 == o.c2 && c3 == o.c3 && c4 == o.c4;
    }
};

std::uint32_t gl2_det(const Field& field, const GL2& M);
GL2 gl2_mul(const Field& field, const GL2& a, const GL2& b);
GL2 gl2_inv(const Field& field, const GL2& M);

// Substitution image of a packed point (x low bits, y high bits).
std::uint32_t gl2_apply_point(const Field& field, const GL2& M, std::uint32_t v);

// Scalar-matrix pair of the K* x GL(2, K) action on biprojective polynomials.
struct GroupElement {
    std::uint32_t a = 1;
    GL2 M;

    bool operator==(const GroupElement& o) const { return a == o.a && M == o.M; }
};

// Action on coefficient matrices: (a, M) sends A to a * M A (M^s)^t, where s
// applies the polynomial's Frobenius exponent entrywise; on functions this is
// p -> a * p(c1 x + c2 y, c3 x + c4 y).
BiprojectivePoly act(const GroupElement& g, const BiprojectivePoly& p);

// Composition convention: apply h first, then g; the matrix part is the
// product M_g * M_h, so act(compose(g, h), p) == act(g, act(h, p)).
// Worked example over F_4 (x^2 + x + 1), writing matrices in row layout:
// [[2,1],[0,1]] * [[1,0],[3,2]] = [[2*1+1*3, 2*0+1*2], [0*1+1*3, 0*0+1*2]]
//                               = [[1,2],[3,2]].
GroupElement compose(const Field& field, const GroupElement& g, const GroupElement& h);

// All (a, M) fixing p, by exhaustive matrix search (the scalar is forced per
// matrix). Limited to m <= 5.
std::vector<GroupElement> stabilizer_f(const BiprojectivePoly& p);

// Some (a, M) with act((a, M), p1) == p2, or nullopt. Searches det(M) = 1
// first (any move implies one with unit determinant), then all of GL(2, K)
// for m <= 4.
std::optional<GroupElement> find_move(const BiprojectivePoly& p1,
                                      const BiprojectivePoly& p2);

// Every (a, M) with act((a, M), p1) == p2; full GL(2, K) scan, m <= 4.
std::vector<GroupElement> find_all_moves(const BiprojectivePoly& p1,
                                         const BiprojectivePoly& p2);

// The unique scalar a' such that (a', M) maps the second family component for
// alpha1 to the one for alpha2, given that (a, M) maps the first components;
// a'^2 det(M)^(s^2+1) alpha1^(s+1) = alpha2^(s+1) determines it.
std::uint32_t lift_scalar(const Field& field, unsigned k, const GL2& M,
                          std::uint32_t alpha1, std::uint32_t alpha2);

GroupElement lift_to_g(const Field& field, unsigned k, const GroupElement& f_move,
                       std::uint32_t alpha1, std::uint32_t alpha2);

// L o F = F o M with L = diag(l1, l2) acting coordinatewise on K^2.
struct BlockAutomorphism {
    GL2 M;
    std::uint32_t l1 = 1, l2 = 1;
};

// All such pairs for a family table, via the first-component stabilizer plus
// the forced second scalar; each pair is re-verified pointwise on the table.
std::vector<BlockAutomorphism> block_automorphisms(const FunctionTable& F,
                                                   const FamilyParams& params);

}  // namespace apnlab
