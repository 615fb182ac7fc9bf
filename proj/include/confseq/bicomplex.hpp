#pragma once

#include <map>
#include <string>
#include <utility>

#include "confseq/linalg.hpp"

namespace confseq {

using Bidegree = std::pair<int, int>;

/// First-quadrant bicomplex by blocks: horizontal d' : (p,q) -> (p+1,q) and
/// vertical d'' : (p,q) -> (p,q+1). Missing matrices are zero.
class Bicomplex {
 public:
  virtual ~Bicomplex() = default;

  std::string name;
  int p_max = 0;
  int q_max = 0;
  /// Largest total degree whose cohomology the stored blocks determine.
  int total_max = 0;
  std::map<Bidegree, std::size_t> dims;
  std::map<Bidegree, Matrix> dh;
  std::map<Bidegree, Matrix> dv;

  std::size_t dim(int p, int q) const;
  const Matrix* horizontal(int p, int q) const;
  const Matrix* vertical(int p, int q) const;
  std::size_t total_dim(int k) const;
  virtual std::string label(int p, int q, std::size_t i) const;

  /// First failing identity among d'd' = 0, d''d'' = 0, d'd'' + d''d' = 0, or empty.
  std::string check_d_squared() const;
};

}  // namespace confseq
