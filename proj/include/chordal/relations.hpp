#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chordal/chord.hpp"
#include "chordal/jacobi.hpp"
#include "chordal/linalg.hpp"

namespace chordal {

using ChordCombination = LinearCombination<ChordDiagram>;
using JacobiCombination = LinearCombination<JacobiDiagram>;
using ChordSpace = QuotientSpace<ChordDiagram>;
using JacobiSpace = QuotientSpace<JacobiDiagram>;

enum class RelationKind { four_term, stu, ihx };

template <class Key>
struct RelationFamily {
  RelationKind kind;
  int degree = 0;
  std::vector<LinearCombination<Key>> generators;
  long placements = 0;  // raw instances tried, before cancellation and dedup
};

// Adds coef * d with d replaced by its signed canonical form (nothing when d
// vanishes).
void add_canonical(JacobiCombination& lc, const JacobiDiagram& d, const Scalar& coef);

// Four-term relations among order-n chord diagrams: a chord a with ends p,q,
// a chord y with one end fixed anywhere and the other end placed just
// before p, just after p, just before q, just after q, with signs + - + -.
RelationFamily<ChordDiagram> four_term_generators(int n);

// STU relations D_Y - D_par + D_X for closed diagrams of order p.
RelationFamily<JacobiDiagram> stu_generators(int p);
std::vector<JacobiCombination> stu_relations_at(const JacobiDiagram& d);

// The STU pieces for legs i and j = i+1 (mod legs) of a closed diagram:
// D_Y merges the two legs into one leg on a new trivalent vertex with slots
// (new leg, edge of leg i, edge of leg j); D_X swaps the two legs.
JacobiDiagram stu_merge(const JacobiDiagram& d, int i);
JacobiDiagram stu_swap(const JacobiDiagram& d, int i);

// Three-term Jacobi relations on every edge joining two trivalent vertices.
// With the edge e at slots (e,a,b) and (e',c,d) the terms are
// (e,a,b)(e',c,d) + (e,a,c)(e',d,b) + (e,a,d)(e',b,c).
RelationFamily<JacobiDiagram> ihx_generators(DiagramKind kind, int p,
                                             std::optional<int> legs = std::nullopt);
std::vector<JacobiCombination> ihx_relations_at(const JacobiDiagram& d);

std::shared_ptr<const ChordSpace> space_A(int n);
std::shared_ptr<const JacobiSpace> space_G(int p);
std::shared_ptr<const JacobiSpace> space_B(int p, std::optional<int> legs = std::nullopt);
// Connected vacuum graphs with 2p trivalent vertices modulo IHX.
std::shared_ptr<const JacobiSpace> space_vacuum(int p);
// Connected graphs with labeled legs 0..legs-1 and the given loop order,
// modulo IHX.
std::shared_ptr<const JacobiSpace> space_labeled(int legs, int loop_order);

enum class SpaceKind { A, G, B, vacuum, M };
SpaceKind parse_space_kind(const std::string& text);
std::string to_string(SpaceKind kind);

struct SpaceSummary {
  SpaceKind kind;
  int degree = 0;
  std::optional<int> legs;
  int ambient = 0;
  int rank = 0;
  int dimension = 0;
  std::vector<std::string> basis;  // representative basis, printed
};

// For M the degree is the loop order and `legs` is required.
SpaceSummary build_space(SpaceKind kind, int degree, std::optional<int> legs = std::nullopt);

// Chord diagrams against closed diagrams modulo STU in one order.
struct PresentationReport {
  int degree = 0;
  int dim_chords = 0;
  int dim_closed = 0;
  int image_rank = 0;
  int ihx_generators = 0;
  int four_term_generators = 0;
  bool pass = false;
  std::string failure;
  std::string witness;
};

PresentationReport verify_presentation_iso(int p);

// The isomorphism between chord classes and closed classes in one order:
// columns are images of the chord representatives in closed coordinates.
struct Presentation {
  int degree = 0;
  std::shared_ptr<const ChordSpace> chords;
  std::shared_ptr<const JacobiSpace> closed;
  std::vector<DenseVector> chord_to_closed;  // dim x dim, column j = image of chord rep j
  std::vector<DenseVector> closed_to_chord;  // inverse

  DenseVector chord_coordinates(const JacobiCombination& closed_combination) const;
  DenseVector chord_coordinates(const ChordCombination& chords) const;
};

std::shared_ptr<const Presentation> presentation(int p);

}  // namespace chordal
