#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "confseq/algebra.hpp"

namespace confseq {

using Json = nlohmann::ordered_json;

/// Outcome of one verification suite.
struct CheckReport {
  std::string check;
  std::string algebra;
  int n = 0;
  std::string field;
  bool pass = true;
  /// One object per block or degree, keys in insertion order.
  std::vector<Json> blocks;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  double duration_ms = 0;

  std::string verdict() const { return pass ? "PASS" : "FAIL"; }
  void fail(std::string why);

  /// duration_ms is reported only when timing is requested.
  Json to_json(bool timing = false) const;
  std::string table(bool timing = false) const;
};

/// J(n,H) acyclic, and E(n,H), Ebar(n,H) with equal total cohomology.
CheckReport check_prop1(std::shared_ptr<const Algebra> h, int n);
/// phi-bar injective chain map with image killed by e_1r, and C(n,A), Ebar(n,A)
/// with equal total cohomology. q_max bounds truncated models.
CheckReport check_prop3(std::shared_ptr<const Algebra> a, int n, std::optional<int> q_max = std::nullopt);
/// Collapse at E2 on both sides for n <= 3.
CheckReport check_thm2(std::shared_ptr<const Algebra> h, int n);
/// ker and coker of d1 on C(3,H) against the total cohomology.
CheckReport check_prop5(std::shared_ptr<const Algebra> h);
/// dim E2^{2,q}(C(4,H)) = 2 dim Omega^1_q.
CheckReport check_prop6(std::shared_ptr<const Algebra> h);
/// Pairing perfectness, adjointness and E2 duality.
CheckReport check_theorem1(std::shared_ptr<const Algebra> h, int n);

/// Degree slices of d' : C(3,H)^{0,q} -> C(3,H)^{1,q}.
struct D1Slices {
  int m = 0;
  std::vector<std::size_t> kernel;    // index q
  std::vector<std::size_t> cokernel;  // index q: Omega^1 in degree q
};
D1Slices c3_slices(std::shared_ptr<const Algebra> h);
/// dim (I/I^2)_q with I the kernel of the multiplication H (x) H -> H.
std::vector<std::size_t> kaehler_dims(const Algebra& h);

/// Names accepted by run_check.
std::vector<std::string> check_names();
/// Dispatches by name; n is ignored by prop5 and prop6.
CheckReport run_check(const std::string& name, std::shared_ptr<const Algebra> h, int n);

}  // namespace confseq
