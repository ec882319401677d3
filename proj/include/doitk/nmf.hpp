#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "doitk/matrix.hpp"

namespace doitk::nmf {

enum class Init { random_uniform, nndsvd };
enum class Kernel { parallel, reference };

Init parse_init(std::string_view s);
std::string init_name(Init i);

struct NmfConfig {
  std::uint64_t seed = 0;
  std::size_t max_iter = 500;
  double rel_tol = 1e-4;
  Init init = Init::random_uniform;
  Kernel kernel = Kernel::parallel;

  void validate() const;
};

struct FactorPair {
  DenseMatrix W;  // m x k
  DenseMatrix H;  // k x n
  std::size_t k = 0;
  double final_error = 0.0;        // Frobenius norm of the fitted residual
  std::vector<double> objective;   // squared error: initial value, then one per iteration
  std::size_t iterations = 0;
  bool converged = false;
};

/// Lee-Seung multiplicative updates on ||Gamma - WH||_F^2.
FactorPair factorize(const SparseMatrix& gamma, std::size_t k, const NmfConfig& config);

/// Same, fitting only the coordinates not present in `heldout`. `observed`
/// and `heldout` partition the nonzeros of Gamma.
FactorPair factorize_masked(const SparseMatrix& observed, const SparseMatrix* heldout, std::size_t k,
                            const NmfConfig& config);

struct SelectKResult {
  std::size_t best_k = 0;
  std::vector<std::size_t> grid;
  std::vector<double> heldout_error;   // per grid entry
  std::size_t heldout_entries = 0;
};

/// Lower bound applied to factor entries after every update.
constexpr double kFactorFloor = 1e-16;

/// Held-out errors closer than this fraction of the held-out norm count as ties.
constexpr double kSelectTieTolerance = 1e-2;

/// Held-out Frobenius error on a random mask of nonzeros, same mask for every k.
/// The smallest k whose error ties the minimum wins.
SelectKResult select_k(const SparseMatrix& gamma, const std::vector<std::size_t>& k_grid,
                       double holdout_fraction, const NmfConfig& config);

struct BucketProb {
  std::size_t bucket;
  double probability;
  bool operator==(const BucketProb&) const = default;
};

/// Function B over column `message` of H.
std::vector<BucketProb> representative_buckets(const DenseMatrix& H, std::size_t message, double theta);
std::vector<std::vector<BucketProb>> assign_buckets(const DenseMatrix& H, double theta);

/// Function T: indices of the n_terms largest entries of column `bucket` of W,
/// ties broken by the term string.
std::vector<std::size_t> top_term_indices(const DenseMatrix& W, std::size_t bucket, std::size_t n_terms,
                                          const std::vector<std::string>& terms);
std::vector<std::string> top_terms(const DenseMatrix& W, std::size_t bucket, std::size_t n_terms,
                                   const std::vector<std::string>& terms);

}  // namespace doitk::nmf
