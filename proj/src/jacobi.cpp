#include "chordal/jacobi.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "chordal/parallel.hpp"

namespace chordal {

std::string_view to_string(DiagramKind kind) {
  switch (kind) {
    case DiagramKind::closed: return "closed";
    case DiagramKind::open: return "open";
    case DiagramKind::vacuum: return "vacuum";
    case DiagramKind::labeled: return "labeled";
  }
  return "closed";
}

DiagramKind parse_kind(std::string_view text) {
  if (text == "closed") return DiagramKind::closed;
  if (text == "open") return DiagramKind::open;
  if (text == "vacuum") return DiagramKind::vacuum;
  if (text == "labeled") return DiagramKind::labeled;
  throw InvalidDiagram("unknown diagram kind: " + std::string(text));
}

int JacobiDiagram::loop_order() const {
  return edges() - vertices() + static_cast<int>(components(*this).size());
}

namespace {

// Union-find over vertex ids.
struct Components {
  std::vector<int> parent;
  explicit Components(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

int vertex_id(const JacobiDiagram& d, int h) { return d.is_leg(h) ? h : d.legs + d.vertex_of(h); }

}  // namespace

std::vector<std::vector<int>> components(const JacobiDiagram& d) {
  Components uf(d.vertices());
  for (int h = 0; h < d.half_edges(); ++h)
    uf.unite(vertex_id(d, h), vertex_id(d, d.mate[static_cast<std::size_t>(h)]));
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < d.vertices(); ++v) groups[uf.find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const JacobiDiagram& d) { return components(d).size() <= 1; }

void validate(const JacobiDiagram& d) {
  if (d.legs < 0 || d.internal < 0) throw InvalidDiagram("negative vertex count");
  if (static_cast<int>(d.mate.size()) != d.half_edges())
    throw InvalidDiagram("pairing size does not match the vertex counts");
  for (int h = 0; h < d.half_edges(); ++h) {
    int m = d.mate[static_cast<std::size_t>(h)];
    if (m < 0 || m >= d.half_edges()) throw InvalidDiagram("half-edge paired out of range");
    if (m == h) throw InvalidDiagram("half-edge paired with itself");
    if (d.mate[static_cast<std::size_t>(m)] != h) throw InvalidDiagram("pairing is not an involution");
  }
  if ((d.legs + d.internal) % 2 != 0) throw InvalidDiagram("odd number of vertices");
  if (d.kind == DiagramKind::vacuum) {
    if (d.legs != 0) throw InvalidDiagram("vacuum diagram with legs");
    return;
  }
  for (const auto& comp : components(d))
    if (comp.front() >= d.legs) throw InvalidDiagram("component without a leg");
}

JacobiDiagram chord_to_jacobi(const ChordDiagram& c) {
  JacobiDiagram d;
  d.kind = DiagramKind::closed;
  const auto& w = c.word();
  d.legs = static_cast<int>(w.size());
  d.mate.assign(w.size(), -1);
  for (int ch = 1; ch <= c.order(); ++ch) {
    auto [a, b] = c.ends(ch);
    d.mate[static_cast<std::size_t>(a)] = b;
    d.mate[static_cast<std::size_t>(b)] = a;
  }
  return d;
}

JacobiDiagram strut(DiagramKind kind) { return JacobiDiagram{kind, 2, 0, {1, 0}}; }

JacobiDiagram permute_half_edges(const JacobiDiagram& d, const std::vector<int>& perm) {
  JacobiDiagram out = d;
  for (int h = 0; h < d.half_edges(); ++h)
    out.mate[static_cast<std::size_t>(perm[static_cast<std::size_t>(h)])] =
        perm[static_cast<std::size_t>(d.mate[static_cast<std::size_t>(h)])];
  return out;
}

JacobiDiagram with_kind(JacobiDiagram d, DiagramKind kind) {
  d.kind = kind;
  return d;
}

JacobiDiagram reorder_legs(const JacobiDiagram& d, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != d.legs) throw InvalidDiagram("leg order of wrong size");
  std::vector<int> perm(static_cast<std::size_t>(d.half_edges()));
  std::iota(perm.begin(), perm.end(), 0);
  for (int j = 0; j < d.legs; ++j) perm[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = j;
  return permute_half_edges(d, perm);
}

// ---------------------------------------------------------------------------
// Canonical form.
//
// A labeling is produced by a traversal: vertices are discovered in order and
// occupy consecutive blocks of positions (1 for a leg, 3 for a trivalent
// vertex, entry half-edge first). Positions are scanned in order and each
// scan emits the position of the mate, preceded by a marker when the mate's
// vertex is new. The remaining freedom (which root, and the order of the two
// non-entry slots of each new trivalent vertex) is searched exhaustively with
// prefix pruning; the least code wins. Ties between labelings are
// automorphisms, and a tie with opposite vertex-orientation sign means the
// diagram vanishes.

namespace {

constexpr int kNewLeg = -1;
constexpr int kNewVertex = -2;
constexpr int kRoot = -3;

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const JacobiDiagram& d) : d_(d) {}

  CanonicalForm run() {
    const std::size_t n = static_cast<std::size_t>(d_.half_edges());
    State init;
    init.pos_of.assign(n, -1);
    init.orig_at.reserve(n);
    switch (d_.kind) {
      case DiagramKind::closed:
        if (d_.legs == 0) {
          search(init);
        }
        for (int r = 0; r < d_.legs; ++r) {
          State s = init;
          for (int j = 0; j < d_.legs; ++j) discover_leg(s, (r + j) % d_.legs);
          search(std::move(s));
        }
        break;
      case DiagramKind::labeled: {
        State s = init;
        for (int j = 0; j < d_.legs; ++j) discover_leg(s, j);
        search(std::move(s));
        break;
      }
      case DiagramKind::open:
      case DiagramKind::vacuum:
        search(std::move(init));
        break;
    }
    return {build_representative(), best_sign_, zero_};
  }

 private:
  struct State {
    std::vector<int> pos_of;
    std::vector<int> orig_at;
    std::vector<int> blocks;  // start position of each discovered vertex
    std::vector<int> code;
    int sign = 1;
    std::size_t scan = 0;
    bool less = false;  // already strictly below the best code
  };

  bool emit(State& s, int x) {
    if (!have_best_ || s.less) {
      s.code.push_back(x);
      return true;
    }
    const std::size_t i = s.code.size();
    if (i < best_code_.size()) {
      if (x > best_code_[i]) return false;
      if (x < best_code_[i]) s.less = true;
    }
    s.code.push_back(x);
    return true;
  }

  void discover_leg(State& s, int leg) {
    s.blocks.push_back(static_cast<int>(s.orig_at.size()));
    s.pos_of[static_cast<std::size_t>(leg)] = static_cast<int>(s.orig_at.size());
    s.orig_at.push_back(leg);
  }

  // Enter trivalent vertex through half-edge `entry`; `flip` selects the
  // order of the two remaining slots.
  void discover_vertex(State& s, int entry, bool flip) {
    const int v = d_.vertex_of(entry);
    const int slot = d_.slot_of(entry);
    int a = d_.half_edge(v, (slot + 1) % 3);
    int b = d_.half_edge(v, (slot + 2) % 3);
    if (flip) {
      std::swap(a, b);
      s.sign = -s.sign;
    }
    s.blocks.push_back(static_cast<int>(s.orig_at.size()));
    for (int h : {entry, a, b}) {
      s.pos_of[static_cast<std::size_t>(h)] = static_cast<int>(s.orig_at.size());
      s.orig_at.push_back(h);
    }
  }

  void search(State s) {
    const std::size_t n = static_cast<std::size_t>(d_.half_edges());
    while (s.scan < s.orig_at.size()) {
      const int h = s.orig_at[s.scan];
      const int m = d_.mate[static_cast<std::size_t>(h)];
      if (s.pos_of[static_cast<std::size_t>(m)] < 0) {
        if (d_.is_leg(m)) {
          if (!emit(s, kNewLeg)) return;
          discover_leg(s, m);
        } else {
          for (bool flip : {false, true}) {
            State t = s;
            if (!emit(t, kNewVertex)) return;
            discover_vertex(t, m, flip);
            if (!emit(t, t.pos_of[static_cast<std::size_t>(m)])) continue;
            ++t.scan;
            search(std::move(t));
          }
          return;
        }
      }
      if (!emit(s, s.pos_of[static_cast<std::size_t>(m)])) return;
      ++s.scan;
    }
    if (s.orig_at.size() < n) {
      // A new root: a leg if one is left, otherwise any trivalent vertex.
      bool leg_left = false;
      for (int j = 0; j < d_.legs; ++j) {
        if (s.pos_of[static_cast<std::size_t>(j)] >= 0) continue;
        leg_left = true;
        State t = s;
        if (!emit(t, kRoot) || !emit(t, kNewLeg)) return;
        discover_leg(t, j);
        search(std::move(t));
      }
      if (leg_left) return;
      for (int h = d_.legs; h < static_cast<int>(n); ++h) {
        if (s.pos_of[static_cast<std::size_t>(h)] >= 0) continue;
        for (bool flip : {false, true}) {
          State t = s;
          if (!emit(t, kRoot) || !emit(t, kNewVertex)) return;
          discover_vertex(t, h, flip);
          search(std::move(t));
        }
      }
      return;
    }
    leaf(std::move(s));
  }

  // `less` can be stale once the best code has moved, so leaves compare in
  // full.
  void leaf(State s) {
    if (!have_best_ || s.code < best_code_) {
      have_best_ = true;
      best_code_ = std::move(s.code);
      best_sign_ = s.sign;
      best_orig_at_ = std::move(s.orig_at);
      best_blocks_ = std::move(s.blocks);
      zero_ = false;
    } else if (s.code == best_code_ && s.sign != best_sign_) {
      zero_ = true;
    }
  }

  JacobiDiagram build_representative() const {
    JacobiDiagram rep;
    rep.kind = d_.kind;
    rep.legs = d_.legs;
    rep.internal = d_.internal;
    std::vector<int> new_index(static_cast<std::size_t>(d_.half_edges()), -1);
    int next_leg = 0;
    int next_vertex = 0;
    for (int start : best_blocks_) {
      const int h = best_orig_at_[static_cast<std::size_t>(start)];
      if (d_.is_leg(h)) {
        new_index[static_cast<std::size_t>(h)] = next_leg++;
      } else {
        for (int k = 0; k < 3; ++k)
          new_index[static_cast<std::size_t>(best_orig_at_[static_cast<std::size_t>(start + k)])] =
              rep.half_edge(next_vertex, k);
        ++next_vertex;
      }
    }
    return permute_half_edges(d_, new_index);
  }

  const JacobiDiagram& d_;
  bool have_best_ = false;
  bool zero_ = false;
  int best_sign_ = 1;
  std::vector<int> best_code_;
  std::vector<int> best_orig_at_;
  std::vector<int> best_blocks_;
};

}  // namespace

CanonicalForm canonical_form(const JacobiDiagram& d) {
  validate(d);
  return CanonicalSearch(d).run();
}

SignedCanonical canonical_jacobi(const JacobiDiagram& d) {
  CanonicalForm f = canonical_form(d);
  if (f.degenerate) return {};
  return {std::move(f.representative), f.sign};
}

// ---------------------------------------------------------------------------
// Enumeration: build the pairing one half-edge at a time, always matching the
// smallest unmatched half-edge. Untouched trivalent vertices are
// interchangeable, as are the two free slots of a vertex entered once, and
// (for open diagrams) the unmatched legs; only one representative of each
// such choice is tried. Results are canonicalized and deduplicated.

namespace {

class PairingGenerator {
 public:
  PairingGenerator(DiagramKind kind, int legs, int internal)
      : kind_(kind), legs_(legs), internal_(internal) {
    d_.kind = kind;
    d_.legs = legs;
    d_.internal = internal;
    d_.mate.assign(static_cast<std::size_t>(d_.half_edges()), -1);
    touched_.assign(static_cast<std::size_t>(internal), 0);
  }

  std::vector<JacobiDiagram> run() {
    extend();
    return std::move(out_);
  }

 private:
  void link(int a, int b) {
    d_.mate[static_cast<std::size_t>(a)] = b;
    d_.mate[static_cast<std::size_t>(b)] = a;
    for (int h : {a, b})
      if (!d_.is_leg(h)) ++touched_[static_cast<std::size_t>(d_.vertex_of(h))];
  }
  void unlink(int a, int b) {
    d_.mate[static_cast<std::size_t>(a)] = -1;
    d_.mate[static_cast<std::size_t>(b)] = -1;
    for (int h : {a, b})
      if (!d_.is_leg(h)) --touched_[static_cast<std::size_t>(d_.vertex_of(h))];
  }
  bool free(int h) const { return d_.mate[static_cast<std::size_t>(h)] < 0; }

  void try_pair(int h, int t) {
    link(h, t);
    extend();
    unlink(h, t);
  }

  void extend() {
    const int n = d_.half_edges();
    int h = 0;
    while (h < n && !free(h)) ++h;
    if (h == n) {
      out_.push_back(d_);
      return;
    }
    const int hv = d_.is_leg(h) ? -1 : d_.vertex_of(h);
    if (hv >= 0 && touched_[static_cast<std::size_t>(hv)] == 0) {
      // Every vertex reachable so far is saturated: what is left would be a
      // separate component. Only the very first vertex of a vacuum graph
      // starts this way.
      bool any_touched = std::any_of(touched_.begin(), touched_.end(), [](int c) { return c > 0; });
      if (kind_ != DiagramKind::vacuum || any_touched || hv != 0) return;
    }
    // Legs.
    for (int t = h + 1; t < legs_; ++t) {
      if (!free(t)) continue;
      try_pair(h, t);
      if (kind_ == DiagramKind::open) break;
    }
    // Slots of vertices already entered, including h's own vertex.
    for (int w = 0; w < internal_; ++w) {
      const int count = touched_[static_cast<std::size_t>(w)];
      if (count == 0 && w != hv) continue;
      const bool twin_slots = w != hv && count == 1 && !free(d_.half_edge(w, 0));
      const bool fresh_own = w == hv && count == 0;
      for (int s = 0; s < 3; ++s) {
        const int t = d_.half_edge(w, s);
        if (t == h || !free(t)) continue;
        try_pair(h, t);
        if (twin_slots || fresh_own) break;
      }
    }
    // First untouched vertex.
    for (int w = 0; w < internal_; ++w) {
      if (w == hv || touched_[static_cast<std::size_t>(w)] != 0) continue;
      try_pair(h, d_.half_edge(w, 0));
      break;
    }
  }

  DiagramKind kind_;
  int legs_;
  int internal_;
  JacobiDiagram d_;
  std::vector<int> touched_;
  std::vector<JacobiDiagram> out_;
};

std::vector<JacobiDiagram> canonical_set(std::vector<JacobiDiagram> raw, bool require_connected,
                                         bool keep_degenerate) {
  auto reps = parallel_map<std::optional<JacobiDiagram>>(raw.size(), [&](std::size_t i) {
    std::optional<JacobiDiagram> r;
    if (require_connected && !is_connected(raw[i])) return r;
    CanonicalForm f = canonical_form(raw[i]);
    if (!f.degenerate || keep_degenerate) r = std::move(f.representative);
    return r;
  });
  std::set<JacobiDiagram> uniq;
  for (auto& r : reps)
    if (r) uniq.insert(std::move(*r));
  return {uniq.begin(), uniq.end()};
}

}  // namespace

std::vector<JacobiDiagram> enumerate_jacobi(DiagramKind kind, int order, std::optional<int> legs,
                                            bool keep_degenerate) {
  if (order < 0) throw std::invalid_argument("negative order");
  std::vector<int> leg_counts;
  switch (kind) {
    case DiagramKind::vacuum:
      if (legs && *legs != 0) throw std::invalid_argument("vacuum diagrams have no legs");
      if (order == 0) return {};
      leg_counts = {0};
      break;
    case DiagramKind::closed:
    case DiagramKind::open:
    case DiagramKind::labeled:
      if (legs) {
        if (*legs < 0 || *legs > 2 * order) return {};
        if (order > 0 && *legs == 0) return {};
        leg_counts = {*legs};
      } else if (order == 0) {
        leg_counts = {0};
      } else {
        for (int m = 1; m <= 2 * order; ++m) leg_counts.push_back(m);
      }
      break;
  }
  std::vector<JacobiDiagram> all;
  for (int m : leg_counts) {
    auto raw = PairingGenerator(kind, m, 2 * order - m).run();
    auto reps = canonical_set(std::move(raw), kind == DiagramKind::labeled, keep_degenerate);
    all.insert(all.end(), reps.begin(), reps.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<JacobiDiagram> enumerate_labeled_connected(int legs, int loop_order,
                                                       bool keep_degenerate) {
  const int internal = legs + 2 * loop_order - 2;
  if (legs < 1 || loop_order < 0 || internal < 0) return {};
  if ((legs + internal) % 2 != 0) return {};
  return enumerate_jacobi(DiagramKind::labeled, (legs + internal) / 2, legs, keep_degenerate);
}

// ---------------------------------------------------------------------------
// Text format.

std::string format_jacobi(const JacobiDiagram& d) {
  std::ostringstream os;
  os << to_string(d.kind) << "; legs:";
  for (int j = 0; j < d.legs; ++j) os << (j ? "," : " ") << j;
  for (int v = 0; v < d.internal; ++v)
    os << "; vertex " << v << ": (" << d.half_edge(v, 0) << "," << d.half_edge(v, 1) << ","
       << d.half_edge(v, 2) << ")";
  for (int h = 0; h < d.half_edges(); ++h) {
    int m = d.mate[static_cast<std::size_t>(h)];
    if (h < m) os << "; edge: " << h << "-" << m;
  }
  return os.str();
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

int parse_int(const std::string& s) {
  if (s.empty()) throw InvalidDiagram("expected an integer");
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw InvalidDiagram("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw InvalidDiagram("expected an integer, got '" + s + "'");
  return v;
}

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

JacobiDiagram parse_jacobi(std::string_view text) {
  auto fields = split(text, ';');
  if (fields.empty() || fields[0].empty()) throw InvalidDiagram("empty diagram record");
  JacobiDiagram d;
  d.kind = parse_kind(fields[0]);
  std::vector<int> leg_ids;
  std::map<int, std::vector<int>> vertex_ids;
  std::vector<std::pair<int, int>> edges;
  bool saw_legs = false;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const std::string& f = fields[i];
    if (starts_with(f, "legs:")) {
      if (saw_legs) throw InvalidDiagram("duplicate legs field");
      saw_legs = true;
      std::string rest = trim(f.substr(5));
      if (!rest.empty())
        for (const auto& tok : split(rest, ',')) leg_ids.push_back(parse_int(tok));
    } else if (starts_with(f, "vertex")) {
      auto colon = f.find(':');
      if (colon == std::string::npos) throw InvalidDiagram("vertex field without ':'");
      int v = parse_int(trim(f.substr(6, colon - 6)));
      std::string triple = trim(f.substr(colon + 1));
      if (triple.size() < 2 || triple.front() != '(' || triple.back() != ')')
        throw InvalidDiagram("vertex triple must be parenthesized");
      auto toks = split(triple.substr(1, triple.size() - 2), ',');
      if (toks.size() != 3) throw InvalidDiagram("internal vertex must have three half-edges");
      std::vector<int> ids;
      for (const auto& t : toks) ids.push_back(parse_int(t));
      if (!vertex_ids.emplace(v, ids).second) throw InvalidDiagram("duplicate vertex id");
    } else if (starts_with(f, "edge:")) {
      auto ends = split(trim(f.substr(5)), '-');
      if (ends.size() != 2) throw InvalidDiagram("edge must join two half-edges");
      edges.emplace_back(parse_int(ends[0]), parse_int(ends[1]));
    } else if (!f.empty()) {
      throw InvalidDiagram("unknown field: " + f);
    }
  }
  d.legs = static_cast<int>(leg_ids.size());
  d.internal = static_cast<int>(vertex_ids.size());
  std::map<int, int> position;
  for (int j = 0; j < d.legs; ++j)
    if (!position.emplace(leg_ids[static_cast<std::size_t>(j)], j).second)
      throw InvalidDiagram("half-edge declared twice");
  int expected = 0;
  for (const auto& [v, ids] : vertex_ids) {
    if (v != expected) throw InvalidDiagram("vertex ids must be 0..n-1");
    for (int s = 0; s < 3; ++s)
      if (!position.emplace(ids[static_cast<std::size_t>(s)], d.half_edge(v, s)).second)
        throw InvalidDiagram("half-edge declared twice");
    ++expected;
  }
  d.mate.assign(static_cast<std::size_t>(d.half_edges()), -1);
  for (auto [a, b] : edges) {
    auto ia = position.find(a);
    auto ib = position.find(b);
    if (ia == position.end() || ib == position.end())
      throw InvalidDiagram("edge references an undeclared half-edge");
    for (int h : {ia->second, ib->second})
      if (d.mate[static_cast<std::size_t>(h)] >= 0) throw InvalidDiagram("half-edge on two edges");
    if (ia->second == ib->second) throw InvalidDiagram("edge joins a half-edge to itself");
    d.mate[static_cast<std::size_t>(ia->second)] = ib->second;
    d.mate[static_cast<std::size_t>(ib->second)] = ia->second;
  }
  for (int m : d.mate)
    if (m < 0) throw InvalidDiagram("half-edge not on any edge");
  validate(d);
  return d;
}

}  // namespace chordal
