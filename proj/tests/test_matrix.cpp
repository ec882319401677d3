#include <doctest.h>

#include <cmath>

#include "doitk/error.hpp"
#include "doitk/matrix.hpp"

using namespace doitk;

TEST_CASE("from_triplets sums duplicates and drops zeros") {
  auto m = SparseMatrix::from_triplets(3, 2, {{0, 0, 1.0}, {0, 0, 2.0}, {2, 1, 0.0}, {1, 1, 4.0}});
  CHECK(m.nnz() == 2);
  auto d = m.to_dense();
  CHECK(d(0, 0) == 3.0);
  CHECK(d(1, 1) == 4.0);
  CHECK(d(2, 1) == 0.0);
  CHECK(m.row_ptr().size() == 4);
  CHECK(m.mean() == doctest::Approx(7.0 / 6.0));
}

TEST_CASE("from_triplets validates input") {
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}), DataError);
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{0, 0, std::nan("")}}), DataError);
}

TEST_CASE("triplet text format round trips") {
  auto m = SparseMatrix::from_triplets(4, 3, {{3, 2, 0.125}, {0, 0, 1.0 / 3.0}, {1, 2, 7.0}});
  const auto text = write_triplets(m);
  CHECK(text.rfind("4 3 3\n", 0) == 0);
  CHECK(read_triplets(text) == m);

  DenseMatrix d(2, 2);
  d(0, 1) = 0.5;
  d(1, 0) = 1e-12;
  auto back = read_dense_triplets(write_triplets(d));
  CHECK(back(0, 1) == 0.5);
  CHECK(back(1, 0) == 0.0);
}
