#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chordal/chord.hpp"

namespace chordal {

enum class DiagramKind : std::uint8_t {
  closed,   // legs on an oriented circle, up to rotation
  open,     // legs unordered
  vacuum,   // no legs
  labeled,  // legs carry fixed labels 0..legs-1
};

std::string_view to_string(DiagramKind kind);
DiagramKind parse_kind(std::string_view text);

class InvalidDiagram : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Half-edge layout: leg j owns half-edge j; internal vertex v owns
// half-edges legs + 3v + {0,1,2}, listed in the vertex's cyclic order.
// `mate` is the fixed-point-free involution pairing half-edges into edges.
struct JacobiDiagram {
  DiagramKind kind = DiagramKind::closed;
  int legs = 0;
  int internal = 0;
  std::vector<int> mate;

  int half_edges() const { return legs + 3 * internal; }
  int edges() const { return half_edges() / 2; }
  int vertices() const { return legs + internal; }
  int order() const { return (legs + internal) / 2; }
  int loop_order() const;

  bool is_leg(int h) const { return h < legs; }
  int vertex_of(int h) const { return (h - legs) / 3; }  // internal half-edges only
  int slot_of(int h) const { return (h - legs) % 3; }
  int half_edge(int vertex, int slot) const { return legs + 3 * vertex + slot; }

  auto operator<=>(const JacobiDiagram&) const = default;
};

// Structural checks: involution, degrees, leg count for the kind, and (for
// every kind except vacuum) that each component reaches a leg.
void validate(const JacobiDiagram& d);

// Vertex ids are legs 0..legs-1 then internal vertices legs..legs+internal-1.
std::vector<std::vector<int>> components(const JacobiDiagram& d);
bool is_connected(const JacobiDiagram& d);

// A canonical representative with the sign picked up on the way, or zero
// when some automorphism reverses the orientation.
struct SignedCanonical {
  std::optional<JacobiDiagram> representative;
  int sign = 0;

  bool is_zero() const { return !representative.has_value(); }
};

SignedCanonical canonical_jacobi(const JacobiDiagram& d);

// Canonical labeling even for diagrams that vanish; `degenerate` flags an
// orientation-reversing automorphism.
struct CanonicalForm {
  JacobiDiagram representative;
  int sign = 1;
  bool degenerate = false;
};
CanonicalForm canonical_form(const JacobiDiagram& d);

JacobiDiagram chord_to_jacobi(const ChordDiagram& c);
JacobiDiagram strut(DiagramKind kind = DiagramKind::open);

// new_mate[perm[h]] = perm[mate[h]]; perm must be a bijection on half-edges.
JacobiDiagram permute_half_edges(const JacobiDiagram& d, const std::vector<int>& perm);

// Same graph, different leg semantics (e.g. open -> closed placement).
JacobiDiagram with_kind(JacobiDiagram d, DiagramKind kind);

// Reorders legs: leg j of the result is leg order[j] of d.
JacobiDiagram reorder_legs(const JacobiDiagram& d, const std::vector<int>& order);

// Canonical representatives with nonzero canonical form, sorted. With
// keep_degenerate, classes that vanish are listed too.
// kind closed: order p, all leg counts, every component touches the circle.
// kind open / labeled: order p with exactly `legs` legs; labeled graphs are
// additionally required to be connected.
// kind vacuum: connected graphs with 2p trivalent vertices.
std::vector<JacobiDiagram> enumerate_jacobi(DiagramKind kind, int order,
                                            std::optional<int> legs = std::nullopt,
                                            bool keep_degenerate = false);

// Connected labeled graphs with the given legs and loop order.
std::vector<JacobiDiagram> enumerate_labeled_connected(int legs, int loop_order,
                                                       bool keep_degenerate = false);

// Textual record `kind; legs: l1,l2; vertex 0: (a,b,c); edge: a-b`.
std::string format_jacobi(const JacobiDiagram& d);
JacobiDiagram parse_jacobi(std::string_view text);

}  // namespace chordal
