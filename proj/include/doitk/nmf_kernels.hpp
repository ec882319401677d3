#pragma once

#include "doitk/matrix.hpp"

// Multiplicative-update kernels for masked Frobenius NMF.
//
// Layout: Gamma is m x n, W is m x k (row-major), Ht is H transposed (n x k,
// one row per message). `observed` holds the nonzeros that take part in the
// fit; `heldout`, when non-null, holds the masked nonzeros (their original
// values). Masked coordinates are excluded from the objective; every other
// coordinate, including the structural zeros, is fitted.
//
// `parallel` works on the sparse structure with OpenMP. Every parallel loop
// writes disjoint outputs and all reductions run in a fixed order, so results
// are bitwise identical for any thread count. `reference` is the textbook
// dense formulation, O(m n k) per step, kept as the test oracle.
namespace doitk::nmf::kernels {

constexpr double kDenominatorEpsilon = 1e-12;

namespace reference {
void update_h(const SparseMatrix& observed, const SparseMatrix* heldout, const DenseMatrix& W, DenseMatrix& Ht);
void update_w(const SparseMatrix& observed, const SparseMatrix* heldout, DenseMatrix& W, const DenseMatrix& Ht);
/// Squared Frobenius error over the fitted coordinates.
double objective(const SparseMatrix& observed, const SparseMatrix* heldout, const DenseMatrix& W,
                 const DenseMatrix& Ht);
}  // namespace reference

namespace parallel {
/// k x k Gram matrix A^T A of a row-major matrix.
DenseMatrix gram(const DenseMatrix& A);
void update_h(const SparseMatrix& observed, const SparseMatrix* heldout, const DenseMatrix& W, DenseMatrix& Ht);
void update_w(const SparseMatrix& observed, const SparseMatrix* heldout, DenseMatrix& W, const DenseMatrix& Ht);
double objective(const SparseMatrix& observed, const SparseMatrix* heldout, const DenseMatrix& W,
                 const DenseMatrix& Ht);
}  // namespace parallel

/// Frobenius norm of Gamma - WH restricted to the entries of `entries`.
double masked_error(const SparseMatrix& entries, const DenseMatrix& W, const DenseMatrix& Ht);

}  // namespace doitk::nmf::kernels
