#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chordal/relations.hpp"
#include "chordal/report.hpp"

namespace chordal {

using ScalarMatrix = std::vector<DenseVector>;

// Basis e_0..e_{d-1}. bracket[i][j][k] is the coefficient of e_k in
// [e_i, e_j]; metric[i][j] = b(e_i, e_j).
struct MetricLieAlgebra {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<DenseVector>> bracket;
  ScalarMatrix metric;
  ScalarMatrix inverse_metric;                 // empty when the metric is singular
  std::vector<std::vector<DenseVector>> lowered;  // f_{ijk} = sum_l f^l_{ij} b_{lk}

  // Fills inverse_metric and lowered from bracket and metric.
  void complete();
};

struct Representation {
  std::string name;
  int dimension = 0;
  std::vector<ScalarMatrix> rho;  // one matrix per basis element
};

enum class LieFailure { none, shape, metric_asymmetric, metric_singular, antisymmetry, jacobi, invariance, representation };
std::string to_string(LieFailure f);

struct LieValidation {
  bool pass = true;
  LieFailure failure = LieFailure::none;
  std::string witness;
};

LieValidation validate_metric_lie(const MetricLieAlgebra& g);
LieValidation validate_representation(const MetricLieAlgebra& g, const Representation& r);

// Basis (h, e, f), trace form of the defining representation.
MetricLieAlgebra builtin_sl2();
// The (k+1)-dimensional irreducible: f v_j = v_{j+1}, e v_j = j(k-j+1) v_{j-1},
// h v_j = (k-2j) v_j.
Representation sl2_irrep(int k);

class LieDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text format, indices 1-based:
//   dim d
//   f i j k p/q     coefficient of e_k in [e_i, e_j]
//   b i j p/q       metric entry
//   rho k i r c p/q entry (r, c) of the matrix of e_k in representation i
// '#' starts a comment. Unlisted entries are zero; nothing is symmetrized.
struct LieData {
  MetricLieAlgebra algebra;
  std::map<int, Representation> representations;
};
LieData parse_lie_data(std::string_view text);
LieData load_lie_data(const std::string& path);

struct Tensor {
  int arity = 0;
  std::map<std::vector<int>, Scalar> entries;  // zero entries omitted

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

// One lowered bracket per trivalent vertex in slot order, one inverse metric
// per edge, contracted; the free indices are the legs in leg order.
Tensor tensor_T(const JacobiDiagram& d, const MetricLieAlgebra& g);

class NotCentral : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sum over the tensor of rho(e_{i_1}) ... rho(e_{i_m}); must be a scalar
// matrix, whose scalar is returned.
ScalarMatrix evaluate_matrix(const Tensor& t, const Representation& r);
Scalar central_scalar(const JacobiDiagram& d, const MetricLieAlgebra& g, const Representation& r);
Scalar central_scalar(const JacobiCombination& lc, const MetricLieAlgebra& g,
                      const Representation& r);
Scalar central_scalar(const ChordDiagram& d, const MetricLieAlgebra& g, const Representation& r);
Scalar weight_trace(const JacobiDiagram& d, const MetricLieAlgebra& g, const Representation& r);
Scalar weight_trace(const ChordDiagram& d, const MetricLieAlgebra& g, const Representation& r);

// Representations for k = 1..k_max: sl2 irreducibles, or the ones listed in
// a data file.
using RepFamily = std::vector<Representation>;

SuiteReport verify_relations_vanish(const MetricLieAlgebra& g, const RepFamily& reps, int n_max,
                                    int p_max);
// ad-invariance of T for all closed and open diagrams up to the given order.
SuiteReport verify_ad_invariance(const MetricLieAlgebra& g, int order);
// Scalar images, multiplicativity and rotation independence on basis classes.
SuiteReport verify_centrality(const MetricLieAlgebra& g, const RepFamily& reps, int p_max);

}  // namespace chordal
