#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "chordal/relations.hpp"
#include "chordal/report.hpp"

namespace chordal {

// A graded element of the chord algebra: per degree, coordinates on the
// representative basis of that degree.
struct HopfElement {
  std::map<int, DenseVector> parts;

  static HopfElement unit();
  static HopfElement basis(int degree, int index);
  static HopfElement of(const ChordDiagram& d);

  bool is_zero() const;
  friend bool operator==(const HopfElement& a, const HopfElement& b);
  HopfElement& operator+=(const HopfElement& other);
  HopfElement operator*(const Scalar& s) const;
};

// Coefficients of e_i (x) e_j keyed by (deg_i, i, deg_j, j).
using HopfTensor2 = std::map<std::array<int, 4>, Scalar>;
using HopfTensor3 = std::map<std::array<int, 6>, Scalar>;

// Cut positions are gaps between consecutive legs, 0..legs; gap 0 is the
// base point.
JacobiDiagram connected_sum(const JacobiDiagram& d1, const JacobiDiagram& d2, int cut1, int cut2);
ChordDiagram connected_sum(const ChordDiagram& d1, const ChordDiagram& d2, int cut1, int cut2);

HopfElement product(const HopfElement& x, const HopfElement& y);

// Unreduced coproduct of a closed diagram: every ordered split of its
// components into two parts (empty parts allowed), merged by diagram pair.
struct CoproductTerm {
  JacobiDiagram left;
  JacobiDiagram right;
  Scalar coefficient;
};
std::vector<CoproductTerm> coproduct_terms(const JacobiDiagram& d);

struct ChordCoproductTerm {
  ChordDiagram left;
  ChordDiagram right;
  Scalar coefficient;
};
std::vector<ChordCoproductTerm> coproduct_terms(const ChordDiagram& d);

HopfTensor2 coproduct(const HopfElement& x);
HopfTensor2 coproduct(const ChordDiagram& d);

// Kernel of the reduced coproduct on degree p, as coordinate vectors.
std::vector<DenseVector> primitive_basis(int p);

// Images of the connected closed diagrams of order p, in chord coordinates.
std::vector<DenseVector> connected_span(int p);

// Average over all placements of the legs on the circle, in chord
// coordinates of degree = order of d.
DenseVector symmetrize(const JacobiDiagram& d);

SuiteReport verify_bialgebra(int p);
SuiteReport verify_primitives(int p);
SuiteReport verify_symmetrization_iso(int p);

}  // namespace chordal
