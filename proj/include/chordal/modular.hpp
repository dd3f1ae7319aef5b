#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chordal/relations.hpp"
#include "chordal/report.hpp"

namespace chordal {

// Connected graphs whose legs carry the labels 0..legs-1, graded by loop
// order, modulo IHX.
std::shared_ptr<const JacobiSpace> space_M(int legs, int grade);

// Glues legs a and b into one edge. The remaining legs are renamed by
// `relabel` (old leg -> new label, entries for a and b ignored); the result
// must use labels 0..legs-3 exactly once.
JacobiDiagram contract_legs(const JacobiDiagram& d, int a, int b, const std::vector<int>& relabel);

// Joins leg ja of d1 to leg jb of d2. Leg i of d1 becomes label map1[i] and
// leg i of d2 becomes map2[i]; the joined legs' entries are ignored.
JacobiDiagram join_legs(const JacobiDiagram& d1, const std::vector<int>& map1, int ja,
                        const JacobiDiagram& d2, const std::vector<int>& map2, int jb);

// Renames the legs of a labeled diagram: leg i becomes label perm[i].
JacobiDiagram relabel_legs(const JacobiDiagram& d, const std::vector<int>& perm);

// Matrix (rows: target basis, columns: domain basis) of gluing legs n and
// n+1 : M^k(n+2 legs) -> M^{k+1}(n legs). X = {0..n-1}, n >= 1.
std::vector<DenseVector> contraction_matrix(int n, int k);

struct KernelGenerators {
  int legs = 0;   // |X|
  int grade = 0;  // k
  // Domain coordinates in M^k(X + {y, y'}); type (i) stored for both signs.
  std::vector<DenseVector> type_i_plus;
  std::vector<DenseVector> type_i_minus;
  std::vector<DenseVector> type_ii;
  std::vector<DenseVector> type_iii;
};

KernelGenerators kernel_generators(int n, int k);

// Kernel of the contraction against the span of the generators, for each
// sign of the type (i) family. The report names the sign(s) that give
// equality in the facts entry "type (i) sign".
SuiteReport verify_lemker(int n, int k);

// Composite gluings of (n, n+1) then (n+2, n+3), against the other order,
// M^k(n+4 legs) -> M^{k+2}(n legs).
SuiteReport verify_commuting_contractions(int n, int k);

struct DecompositionRow {
  int grade = 0;
  long vacuum = 0;   // symmetric algebra on connected vacuum classes
  long legged = 0;   // graphs whose every component has a leg
  long total = 0;    // convolution of the two columns
};

struct DecompositionReport {
  int legs = 0;
  int max_grade = 0;
  std::vector<long> connected_vacuum;  // per grade; the circle sits in grade 1
  std::vector<DecompositionRow> rows;
};

DecompositionReport decomposition_report(int n, int k_max);

}  // namespace chordal
