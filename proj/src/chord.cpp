#include "chordal/chord.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace chordal {

namespace {

std::vector<int> rename_by_first_occurrence(std::span<const int> word) {
  std::map<int, int> names;
  std::vector<int> out;
  out.reserve(word.size());
  for (int s : word) {
    auto [it, inserted] = names.try_emplace(s, static_cast<int>(names.size()) + 1);
    out.push_back(it->second);
  }
  return out;
}

void check_double_occurrence(std::span<const int> word) {
  if (word.size() % 2 != 0) throw MalformedWord("chord word has odd length");
  std::map<int, int> count;
  for (int s : word) ++count[s];
  for (const auto& [s, c] : count)
    if (c != 2) throw MalformedWord("symbol " + std::to_string(s) + " occurs " +
                                    std::to_string(c) + " times");
}

void matchings(std::vector<int>& word, int next_symbol, std::set<std::vector<int>>& out) {
  auto first = std::find(word.begin(), word.end(), 0);
  if (first == word.end()) {
    out.insert(canonical_word(word));
    return;
  }
  *first = next_symbol;
  for (auto it = first + 1; it != word.end(); ++it) {
    if (*it != 0) continue;
    *it = next_symbol;
    matchings(word, next_symbol + 1, out);
    *it = 0;
  }
  *first = 0;
}

}  // namespace

std::vector<int> canonical_word(std::span<const int> word) {
  check_double_occurrence(word);
  std::vector<int> best = rename_by_first_occurrence(word);
  for (std::size_t r = 1; r < word.size(); ++r) {
    std::vector<int> rotated = rotate_word(word, static_cast<int>(r));
    std::vector<int> cand = rename_by_first_occurrence(rotated);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

std::vector<int> rotate_word(std::span<const int> word, int cut) {
  if (cut < 0 || cut > static_cast<int>(word.size())) throw std::out_of_range("cut position");
  std::vector<int> out(word.begin() + cut, word.end());
  out.insert(out.end(), word.begin(), word.begin() + cut);
  return out;
}

std::vector<int> restrict_word(std::span<const int> word, std::span<const int> keep) {
  std::vector<int> out;
  for (int s : word)
    if (std::find(keep.begin(), keep.end(), s) != keep.end()) out.push_back(s);
  return out;
}

std::vector<int> concat_words(std::span<const int> a, std::span<const int> b) {
  int shift = 0;
  for (int s : a) shift = std::max(shift, s);
  std::vector<int> out(a.begin(), a.end());
  for (int s : b) out.push_back(s + shift);
  return out;
}

ChordDiagram ChordDiagram::from_word(std::span<const int> word) {
  ChordDiagram d;
  d.word_ = canonical_word(word);
  return d;
}

ChordDiagram ChordDiagram::parse(std::string_view text) {
  std::vector<std::string> symbols;
  if (text.find_first_of(".,") != std::string_view::npos) {
    std::string cur;
    for (char ch : text) {
      if (ch == '.' || ch == ',') {
        symbols.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    symbols.push_back(cur);
  } else {
    for (char ch : text) symbols.emplace_back(1, ch);
  }
  std::map<std::string, int> ids;
  std::vector<int> word;
  for (const auto& s : symbols) {
    if (s.empty()) throw MalformedWord("empty chord symbol");
    word.push_back(ids.try_emplace(s, static_cast<int>(ids.size()) + 1).first->second);
  }
  return from_word(word);
}

std::string ChordDiagram::str() const {
  std::string out;
  const bool digits = order() <= 9;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (!digits && i > 0) out.push_back('.');
    out += std::to_string(word_[i]);
  }
  return out;
}

std::pair<int, int> ChordDiagram::ends(int chord) const {
  int first = -1;
  for (int i = 0; i < static_cast<int>(word_.size()); ++i) {
    if (word_[static_cast<std::size_t>(i)] != chord) continue;
    if (first < 0)
      first = i;
    else
      return {first, i};
  }
  throw std::out_of_range("no such chord");
}

std::vector<ChordDiagram> enumerate_chords(int n) {
  if (n < 0) throw std::invalid_argument("negative order");
  std::set<std::vector<int>> words;
  std::vector<int> word(static_cast<std::size_t>(2 * n), 0);
  matchings(word, 1, words);
  std::vector<ChordDiagram> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(ChordDiagram::from_word(w));
  return out;
}

}  // namespace chordal
