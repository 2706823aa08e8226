#pragma once

#include "weylith/kernel/matrix.hpp"
#include "weylith/kernel/poly.hpp"
#include "weylith/kernel/rational.hpp"
#include "weylith/kernel/wedge.hpp"

#include <vector>

namespace weylith {

/// Matrix of the comultiplication ^a K^ell -> ^b K^ell (x) ^{a-b} K^ell in wedge bases.
/// Row (J, J') has index rank(J) * C(ell, a-b) + rank(J'); column I is rank(I);
/// the entry is the shuffle sign of (J, J') when J u J' = I and zero otherwise.
DenseMatrix<Rational> comultiply(int a, int b, int ell);

/// Generic k x k minor det(x_{s_i, t_j}) for rows s in `rows` (subset of [0, ell))
/// and columns t in `cols` (subset of [0, dimW)).
PolyA generic_minor(const WedgeIndex& rows, const WedgeIndex& cols, PolyShape shape);

/// The Cauchy injection ^k K^ell (x) ^k W^* -> (A_ell)_k as a matrix.
struct CauchyEmbedding {
    std::vector<MonomialA> monomials;  // row basis: degree-k monomials, graded-lex
    DenseMatrix<Rational> matrix;      // column (S, T) at rank(S) * C(dimW, k) + rank(T)
};

CauchyEmbedding cauchy_embed(int k, int ell, int dimW);

}  // namespace weylith
