#include "doitk/nmf_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace doitk::nmf::kernels {

namespace {

inline double dot(const double* a, const double* b, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += a[i] * b[i];
  return s;
}

// Dense 0/1 mask of fitted coordinates.
std::vector<unsigned char> fitted_mask(std::size_t m, std::size_t n, const SparseMatrix* heldout) {
  std::vector<unsigned char> mask(m * n, 1);
  if (heldout) {
    for (const auto& t : heldout->triplets()) mask[t.row * n + t.col] = 0;
  }
  return mask;
}

DenseMatrix product(const DenseMatrix& W, const DenseMatrix& Ht) {
  const std::size_t m = W.rows(), n = Ht.rows(), k = W.cols();
  DenseMatrix WH(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) WH(i, j) = dot(W.row(i), Ht.row(j), k);
  return WH;
}

}  // namespace

namespace reference {

void update_h(const SparseMatrix& observed, const SparseMatrix* heldout, const DenseMatrix& W, DenseMatrix& Ht) {
  const std::size_t m = W.rows(), n = Ht.rows(), k = W.cols();
  const DenseMatrix G = observed.to_dense();
  const auto mask = fitted_mask(m, n, heldout);
  const DenseMatrix WH = product(W, Ht);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t a = 0; a < k; ++a) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (!mask[i * n + j]) continue;
        num += W(i, a) * G(i, j);
        den += W(i, a) * WH(i, j);
      }
      Ht(j, a) *= num / (den + kDenominatorEpsilon);
    }
  }
}

void update_w(const SparseMatrix& observed, const SparseMatrix* heldout, DenseMatrix& W, const DenseMatrix& Ht) {
  const std::size_t m = W.rows(), n = Ht.rows(), k = W.cols();
  const DenseMatrix G = observed.to_dense();
  const auto mask = fitted_mask(m, n, heldout);
  const DenseMatrix WH = product(W, Ht);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!mask[i * n + j]) continue;
        num += G(i, j) * Ht(j, a);
        den += WH(i, j) * Ht(j, a);
      }
      W(i, a) *= num / (den + kDenominatorEpsilon);
    }
  }
}

double objective(const SparseMatrix& observed, const SparseMatrix* heldout, const DenseMatrix& W,
                 const DenseMatrix& Ht) {
  const std::size_t m = W.rows(), n = Ht.rows();
  const DenseMatrix G = observed.to_dense();
  const auto mask = fitted_mask(m, n, heldout);
  const DenseMatrix WH = product(W, Ht);
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!mask[i * n + j]) continue;
      double r = G(i, j) - WH(i, j);
      s += r * r;
    }
  return s;
}

}  // namespace reference

namespace parallel {

DenseMatrix gram(const DenseMatrix& A) {
  const std::size_t rows = A.rows(), k = A.cols();
  DenseMatrix G(k, k);
  // One output entry per iteration; each sums over rows in order.
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t ab = 0; ab < static_cast<std::ptrdiff_t>(k * k); ++ab) {
    const std::size_t a = static_cast<std::size_t>(ab) / k, b = static_cast<std::size_t>(ab) % k;
    if (b < a) continue;
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += A(r, a) * A(r, b);
    G(a, b) = s;
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < a; ++b) G(a, b) = G(b, a);
  return G;
}

void update_h(const SparseMatrix& observed, const SparseMatrix* heldout, const DenseMatrix& W, DenseMatrix& Ht) {
  const std::size_t n = Ht.rows(), k = W.cols();
  const DenseMatrix WtW = gram(W);
  const auto& cp = observed.col_ptr();
  const auto& ri = observed.row_index();
  const auto& cv = observed.col_values();
#pragma omp parallel
  {
    std::vector<double> num(k), den(k);
#pragma omp for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(n); ++jj) {
      const auto j = static_cast<std::size_t>(jj);
      double* h = Ht.row(j);
      std::fill(num.begin(), num.end(), 0.0);
      for (std::size_t p = cp[j]; p < cp[j + 1]; ++p) {
        const double g = cv[p];
        const double* w = W.row(ri[p]);
        for (std::size_t a = 0; a < k; ++a) num[a] += g * w[a];
      }
      for (std::size_t a = 0; a < k; ++a) den[a] = dot(WtW.row(a), h, k);
      if (heldout) {
        const auto& hp = heldout->col_ptr();
        const auto& hr = heldout->row_index();
        for (std::size_t p = hp[j]; p < hp[j + 1]; ++p) {
          const double* w = W.row(hr[p]);
          const double pred = dot(w, h, k);
          for (std::size_t a = 0; a < k; ++a) den[a] -= w[a] * pred;
        }
      }
      for (std::size_t a = 0; a < k; ++a) h[a] *= num[a] / (std::max(den[a], 0.0) + kDenominatorEpsilon);
    }
  }
}

void update_w(const SparseMatrix& observed, const SparseMatrix* heldout, DenseMatrix& W, const DenseMatrix& Ht) {
  const std::size_t m = W.rows(), k = W.cols();
  const DenseMatrix HHt = gram(Ht);
  const auto& rp = observed.row_ptr();
  const auto& ci = observed.col_index();
  const auto& rv = observed.row_values();
#pragma omp parallel
  {
    std::vector<double> num(k), den(k);
#pragma omp for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(m); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      double* w = W.row(i);
      std::fill(num.begin(), num.end(), 0.0);
      for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
        const double g = rv[p];
        const double* h = Ht.row(ci[p]);
        for (std::size_t a = 0; a < k; ++a) num[a] += g * h[a];
      }
      for (std::size_t a = 0; a < k; ++a) den[a] = dot(HHt.row(a), w, k);
      if (heldout) {
        const auto& hp = heldout->row_ptr();
        const auto& hc = heldout->col_index();
        for (std::size_t p = hp[i]; p < hp[i + 1]; ++p) {
          const double* h = Ht.row(hc[p]);
          const double pred = dot(w, h, k);
          for (std::size_t a = 0; a < k; ++a) den[a] -= h[a] * pred;
        }
      }
      for (std::size_t a = 0; a < k; ++a) w[a] *= num[a] / (std::max(den[a], 0.0) + kDenominatorEpsilon);
    }
  }
}

double objective(const SparseMatrix& observed, const SparseMatrix* heldout, const DenseMatrix& W,
                 const DenseMatrix& Ht) {
  // ||WH||^2 over all coordinates = <W^T W, H H^T>; the sparse terms correct
  // it on the observed nonzeros and remove the held-out coordinates.
  const std::size_t n = Ht.rows(), k = W.cols();
  const DenseMatrix WtW = gram(W);
  const DenseMatrix HHt = gram(Ht);
  double total = 0.0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) total += WtW(a, b) * HHt(a, b);

  std::vector<double> partial(n, 0.0);
  const auto& cp = observed.col_ptr();
  const auto& ri = observed.row_index();
  const auto& cv = observed.col_values();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(n); ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const double* h = Ht.row(j);
    double s = 0.0;
    for (std::size_t p = cp[j]; p < cp[j + 1]; ++p) {
      const double pred = dot(W.row(ri[p]), h, k);
      const double g = cv[p];
      s += g * g - 2.0 * g * pred;
    }
    if (heldout) {
      const auto& hp = heldout->col_ptr();
      const auto& hr = heldout->row_index();
      for (std::size_t p = hp[j]; p < hp[j + 1]; ++p) {
        const double pred = dot(W.row(hr[p]), h, k);
        s -= pred * pred;
      }
    }
    partial[j] = s;
  }
  for (double s : partial) total += s;
  return std::max(total, 0.0);
}

}  // namespace parallel

double masked_error(const SparseMatrix& entries, const DenseMatrix& W, const DenseMatrix& Ht) {
  const std::size_t k = W.cols();
  double s = 0.0;
  for (const auto& t : entries.triplets()) {
    const double r = t.value - dot(W.row(t.row), Ht.row(t.col), k);
    s += r * r;
  }
  return std::sqrt(s);
}

}  // namespace doitk::nmf::kernels
