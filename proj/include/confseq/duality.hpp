#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "confseq/bgcomplex.hpp"
#include "confseq/ctcomplex.hpp"

namespace confseq {

/// Pairing between T(n,H) and Ebar(n,H): block T^{p,h} meets Ebar^{p,(n-p)m-h}.
struct PairingTable {
  int n = 0;
  int m = 0;
  std::shared_ptr<CTComplex> ct;
  std::shared_ptr<BGComplex> ebar;
  /// Rows: T quotient coordinates of block (p,h); columns: Ebar basis of the matched block.
  std::map<Bidegree, Matrix> blocks;

  static int matched_q(int n, int m, int p, int h) { return (n - p) * m - h; }
  /// delta_G = delta_{e_1} ... delta_{e_p} in H^{(x)n}, keyed by graph mask.
  std::map<std::uint32_t, TupleTerms> diagonals;

  /// <beta x_M ; b e_G>: zero unless M and G have the same edges, then the
  /// coefficient of w (x) ... (x) w in beta . s_G(b) . delta_G, where s_G(b)
  /// puts each component factor at the smallest vertex of its component.
  Scalar pair_free(const CTBasisElement& z, const BGBasisElement& w) const;
};

PairingTable build_pairing(int n, std::shared_ptr<const Algebra> h);

struct BlockSign {
  Bidegree ct_block;  // source (p,h) of d1
  int sign = 0;       // +1, -1, or 0 when both sides vanish
};

struct Theorem1Report {
  int n = 0;
  int m = 0;
  bool perfect = true;
  bool adjoint = true;
  bool dimensions_match = true;
  std::vector<BlockSign> signs;
  /// (p,h) -> (dim E2 on the CT side, dim E2 of the matched Ebar block).
  std::map<Bidegree, std::pair<std::size_t, std::size_t>> e2;
  std::vector<std::string> failures;
  bool ok() const { return perfect && adjoint && dimensions_match; }
};

/// Perfectness of each matched block, adjointness of d1 and d' up to a sign
/// per block, and equality of matched E2 dimensions.
Theorem1Report theorem1_check(const PairingTable& table);

}  // namespace confseq
