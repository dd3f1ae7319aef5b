#pragma once

#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chordal {

class MalformedWord : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Chords on an oriented circle, stored as a double-occurrence word read
// counterclockwise from an implicit base point. The stored word is always
// canonical: symbols renamed 1,2,... by first occurrence, then the least
// such word over all rotations.
class ChordDiagram {
 public:
  ChordDiagram() = default;

  static ChordDiagram from_word(std::span<const int> word);
  // Digits ("1212"), or symbols separated by '.' or ',' for larger orders.
  static ChordDiagram parse(std::string_view text);

  const std::vector<int>& word() const { return word_; }
  int order() const { return static_cast<int>(word_.size() / 2); }
  std::string str() const;

  // Positions (0-based, in word order) of the two ends of chord c (1-based).
  std::pair<int, int> ends(int chord) const;

  auto operator<=>(const ChordDiagram&) const = default;

 private:
  std::vector<int> word_;
};

// Rename by first occurrence and minimize over rotations. Throws
// MalformedWord if some symbol does not occur exactly twice.
std::vector<int> canonical_word(std::span<const int> word);

// Word of the sub-diagram formed by the chords in `keep` (1-based labels),
// not canonicalized.
std::vector<int> restrict_word(std::span<const int> word, std::span<const int> keep);

// Concatenation at the base point, with the second word's symbols shifted.
std::vector<int> concat_words(std::span<const int> a, std::span<const int> b);

// Rotate so the circle is opened at gap `cut` (0 <= cut <= size).
std::vector<int> rotate_word(std::span<const int> word, int cut);

// One canonical representative per rotation class of perfect matchings of
// 2n circle points, in increasing word order.
std::vector<ChordDiagram> enumerate_chords(int n);

}  // namespace chordal
