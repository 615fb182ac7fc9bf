#pragma once

#include <random>
#include <vector>

#include "confseq/linalg.hpp"

namespace confseq::testing {

inline SparseVector random_vector(std::mt19937& rng, std::size_t dim, int density_percent = 40) {
  std::uniform_int_distribution<int> coin(0, 99);
  std::uniform_int_distribution<int> value(-3, 3);
  SparseVector v;
  for (std::size_t i = 0; i < dim; ++i)
    if (coin(rng) < density_percent) v.add(i, Scalar(value(rng)));
  return v;
}

inline Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int density_percent = 40) {
  std::vector<SparseVector> data;
  for (std::size_t i = 0; i < rows; ++i) data.push_back(random_vector(rng, cols, density_percent));
  return Matrix::from_rows(cols, std::move(data));
}

}  // namespace confseq::testing
