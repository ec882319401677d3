#include "doitk/nmf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "doitk/error.hpp"
#include "doitk/nmf_kernels.hpp"
#include "doitk/rng.hpp"

namespace doitk::nmf {

Init parse_init(std::string_view s) {
  if (s == "random_uniform" || s == "random") return Init::random_uniform;
  if (s == "nndsvd") return Init::nndsvd;
  throw ConfigError("nmf: unknown init '" + std::string(s) + "'");
}

std::string init_name(Init i) { return i == Init::nndsvd ? "nndsvd" : "random_uniform"; }

void NmfConfig::validate() const {
  if (max_iter < 1) throw ConfigError("nmf: max_iter must be >= 1");
  if (!(rel_tol > 0.0)) throw ConfigError("nmf: rel_tol must be > 0");
}

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Y = A X for a sparse A (via CSR) and a dense X.
RowMat sparse_times(const SparseMatrix& A, const RowMat& X) {
  RowMat Y = RowMat::Zero(static_cast<Eigen::Index>(A.rows()), X.cols());
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_index();
  const auto& rv = A.row_values();
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) Y.row(i) += rv[p] * X.row(ci[p]);
  return Y;
}

// Y = A^T X.
RowMat sparse_t_times(const SparseMatrix& A, const RowMat& X) {
  RowMat Y = RowMat::Zero(static_cast<Eigen::Index>(A.cols()), X.cols());
  const auto& cp = A.col_ptr();
  const auto& ri = A.row_index();
  const auto& cv = A.col_values();
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t p = cp[j]; p < cp[j + 1]; ++p) Y.row(j) += cv[p] * X.row(ri[p]);
  return Y;
}

void init_random(const SparseMatrix& g, std::size_t k, Rng& rng, DenseMatrix& W, DenseMatrix& Ht) {
  const double scale = std::sqrt(std::max(g.mean(), 1e-300) / static_cast<double>(k));
  // 1 - U lies in (0, 1].
  for (auto& x : W.data()) x = scale * (1.0 - uniform01(rng));
  for (auto& x : Ht.data()) x = scale * (1.0 - uniform01(rng));
}

// NNDSVD with zeros filled by the mean (NNDSVDa), on a randomized truncated SVD.
void init_nndsvd(const SparseMatrix& g, std::size_t k, Rng& rng, DenseMatrix& W, DenseMatrix& Ht) {
  const auto m = static_cast<Eigen::Index>(g.rows());
  const auto n = static_cast<Eigen::Index>(g.cols());
  const Eigen::Index l = std::min<Eigen::Index>(static_cast<Eigen::Index>(k) + 10, std::min(m, n));
  std::normal_distribution<double> normal(0.0, 1.0);
  RowMat omega(n, l);
  for (Eigen::Index i = 0; i < omega.size(); ++i) omega.data()[i] = normal(rng);
  RowMat Y = sparse_times(g, omega);
  for (int it = 0; it < 4; ++it) {
    RowMat Q = Eigen::HouseholderQR<RowMat>(Y).householderQ() * RowMat::Identity(m, l);
    RowMat Z = sparse_t_times(g, Q);
    RowMat Qz = Eigen::HouseholderQR<RowMat>(Z).householderQ() * RowMat::Identity(n, l);
    Y = sparse_times(g, Qz);
  }
  RowMat Q = Eigen::HouseholderQR<RowMat>(Y).householderQ() * RowMat::Identity(m, l);
  RowMat Bt = sparse_t_times(g, Q);  // (Q^T G)^T, n x l
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Bt.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::MatrixXd U = Q * svd.matrixU();
  Eigen::MatrixXd V = svd.matrixV();
  const auto& s = svd.singularValues();

  for (std::size_t a = 0; a < k; ++a) {
    const auto c = static_cast<Eigen::Index>(a);
    Eigen::VectorXd u = U.col(c), v = V.col(c);
    double sigma = 1.0;
    if (a == 0) {
      u = u.cwiseAbs();
      v = v.cwiseAbs();
    } else {
      Eigen::VectorXd up = u.cwiseMax(0.0), un = (-u).cwiseMax(0.0);
      Eigen::VectorXd vp = v.cwiseMax(0.0), vn = (-v).cwiseMax(0.0);
      const double pos = up.norm() * vp.norm(), neg = un.norm() * vn.norm();
      if (pos >= neg) {
        u = up / std::max(up.norm(), 1e-300);
        v = vp / std::max(vp.norm(), 1e-300);
        sigma = pos;
      } else {
        u = un / std::max(un.norm(), 1e-300);
        v = vn / std::max(vn.norm(), 1e-300);
        sigma = neg;
      }
    }
    u *= std::sqrt(s(c) * sigma);
    v *= std::sqrt(s(c) * sigma);
    for (Eigen::Index i = 0; i < m; ++i) W(i, a) = u(i);
    for (Eigen::Index j = 0; j < n; ++j) Ht(j, a) = v(j);
  }
  const double fill = g.mean();
  for (auto& x : W.data())
    if (x <= 0.0) x = fill;
  for (auto& x : Ht.data())
    if (x <= 0.0) x = fill;
}

void check_finite(const DenseMatrix& M, const char* name) {
  for (double x : M.data())
    if (!std::isfinite(x)) throw NumericalError(std::string("nmf: non-finite value in ") + name);
}

void floor_entries(DenseMatrix& A) {
  for (double& v : A.data()) v = std::max(v, kFactorFloor);
}

}  // namespace

FactorPair factorize_masked(const SparseMatrix& observed, const SparseMatrix* heldout, std::size_t k,
                            const NmfConfig& config) {
  config.validate();
  const std::size_t m = observed.rows(), n = observed.cols();
  if (k < 1 || k >= m || k >= n)
    throw ConfigError("nmf: k=" + std::to_string(k) + " out of range for a " + std::to_string(m) + "x" +
                      std::to_string(n) + " matrix");

  DenseMatrix W(m, k), Ht(n, k);
  Rng rng(derive_seed(config.seed, "init", k));
  if (config.init == Init::nndsvd)
    init_nndsvd(observed, k, rng, W, Ht);
  else
    init_random(observed, k, rng, W, Ht);

  namespace K = kernels;
  const bool ref = config.kernel == Kernel::reference;
  auto objective = [&] {
    return ref ? K::reference::objective(observed, heldout, W, Ht) : K::parallel::objective(observed, heldout, W, Ht);
  };

  FactorPair fp;
  fp.k = k;
  double prev = objective();
  fp.objective.push_back(prev);
  for (std::size_t it = 0; it < config.max_iter; ++it) {
    if (ref) {
      K::reference::update_h(observed, heldout, W, Ht);
      K::reference::update_w(observed, heldout, W, Ht);
    } else {
      K::parallel::update_h(observed, heldout, W, Ht);
      K::parallel::update_w(observed, heldout, W, Ht);
    }
    floor_entries(W);
    floor_entries(Ht);
    const double cur = objective();
    if (!std::isfinite(cur)) throw NumericalError("nmf: objective became non-finite");
    fp.objective.push_back(cur);
    fp.iterations = it + 1;
    if (prev <= 0.0 || (prev - cur) / prev < config.rel_tol) {
      fp.converged = true;
      prev = cur;
      break;
    }
    prev = cur;
  }
  check_finite(W, "W");
  check_finite(Ht, "H");
  fp.final_error = std::sqrt(prev);
  fp.W = std::move(W);
  fp.H = Ht.transposed();
  return fp;
}

FactorPair factorize(const SparseMatrix& gamma, std::size_t k, const NmfConfig& config) {
  return factorize_masked(gamma, nullptr, k, config);
}

SelectKResult select_k(const SparseMatrix& gamma, const std::vector<std::size_t>& k_grid,
                       double holdout_fraction, const NmfConfig& config) {
  if (k_grid.empty()) throw ConfigError("select_k: empty k grid");
  if (!(holdout_fraction > 0.0 && holdout_fraction < 0.5))
    throw ConfigError("select_k: holdout_fraction must lie in (0, 0.5)");
  for (std::size_t k : k_grid)
    if (k < 1 || k >= gamma.rows() || k >= gamma.cols())
      throw ConfigError("select_k: k=" + std::to_string(k) + " out of range");

  SelectKResult res;
  res.grid = k_grid;
  if (k_grid.size() == 1) {
    res.best_k = k_grid.front();
    res.heldout_error.push_back(0.0);
    return res;
  }

  auto all = gamma.triplets();
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(config.seed, "holdout"));
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t n_held = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(holdout_fraction * static_cast<double>(all.size()))));
  std::vector<unsigned char> is_held(all.size(), 0);
  for (std::size_t i = 0; i < n_held; ++i) is_held[order[i]] = 1;
  std::vector<Triplet> obs, held;
  for (std::size_t i = 0; i < all.size(); ++i) (is_held[i] ? held : obs).push_back(all[i]);
  const auto observed = SparseMatrix::from_triplets(gamma.rows(), gamma.cols(), std::move(obs));
  const auto heldout = SparseMatrix::from_triplets(gamma.rows(), gamma.cols(), std::move(held));
  res.heldout_entries = heldout.nnz();

  for (std::size_t k : k_grid) {
    auto fp = factorize_masked(observed, &heldout, k, config);
    res.heldout_error.push_back(kernels::masked_error(heldout, fp.W, fp.H.transposed()));
  }
  const double best = *std::min_element(res.heldout_error.begin(), res.heldout_error.end());
  const double tie = kSelectTieTolerance * heldout.frobenius_norm();
  for (std::size_t idx = 0; idx < k_grid.size(); ++idx)
    if (res.heldout_error[idx] <= best + tie && (res.best_k == 0 || k_grid[idx] < res.best_k))
      res.best_k = k_grid[idx];
  return res;
}

std::vector<BucketProb> representative_buckets(const DenseMatrix& H, std::size_t message, double theta) {
  if (message >= H.cols()) throw ConfigError("representative_buckets: message index out of range");
  double sum = 0.0;
  for (std::size_t b = 0; b < H.rows(); ++b) sum += H(b, message);
  if (!(sum > 0.0)) throw NumericalError("representative_buckets: zero column " + std::to_string(message));
  std::vector<BucketProb> out;
  std::size_t arg = 0;
  double mx = -1.0;
  for (std::size_t b = 0; b < H.rows(); ++b) {
    const double p = H(b, message) / sum;
    if (p > mx) {
      mx = p;
      arg = b;
    }
  }
  if (theta >= 1.0) return {{arg, mx}};
  for (std::size_t b = 0; b < H.rows(); ++b) {
    const double p = H(b, message) / sum;
    if (p >= theta * mx && p > 0.0) out.push_back({b, p});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const BucketProb& a, const BucketProb& b) { return a.probability > b.probability; });
  return out;
}

std::vector<std::vector<BucketProb>> assign_buckets(const DenseMatrix& H, double theta) {
  std::vector<std::vector<BucketProb>> out(H.cols());
  for (std::size_t j = 0; j < H.cols(); ++j) out[j] = representative_buckets(H, j, theta);
  return out;
}

std::vector<std::size_t> top_term_indices(const DenseMatrix& W, std::size_t bucket, std::size_t n_terms,
                                          const std::vector<std::string>& terms) {
  if (bucket >= W.cols()) throw ConfigError("top_terms: bucket index out of range");
  if (terms.size() != W.rows()) throw DataError("top_terms: vocabulary size does not match W");
  if (n_terms < 1 || n_terms > W.rows()) throw ConfigError("top_terms: n_terms out of range");
  std::vector<std::size_t> idx(W.rows());
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_terms), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double wa = W(a, bucket), wb = W(b, bucket);
                      if (wa != wb) return wa > wb;
                      return terms[a] < terms[b];
                    });
  idx.resize(n_terms);
  return idx;
}

std::vector<std::string> top_terms(const DenseMatrix& W, std::size_t bucket, std::size_t n_terms,
                                   const std::vector<std::string>& terms) {
  std::vector<std::string> out;
  for (std::size_t i : top_term_indices(W, bucket, n_terms, terms)) out.push_back(terms[i]);
  return out;
}

}  // namespace doitk::nmf
