#include "chordal/relations.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "chordal/parallel.hpp"

namespace chordal {

void add_canonical(JacobiCombination& lc, const JacobiDiagram& d, const Scalar& coef) {
  SignedCanonical c = canonical_jacobi(d);
  if (c.is_zero()) return;
  add_term(lc, *c.representative, c.sign * coef);
}

namespace {

template <class Key>
void normalize_sign(LinearCombination<Key>& lc) {
  if (!lc.empty() && lc.begin()->second < 0)
    for (auto& [k, v] : lc) v = -v;
}

// Flattens per-source relation lists into a sorted, duplicate-free family.
template <class Key>
std::vector<LinearCombination<Key>> collect(std::vector<std::vector<LinearCombination<Key>>> parts) {
  std::set<LinearCombination<Key>> uniq;
  for (auto& part : parts)
    for (auto& lc : part) {
      if (lc.empty()) continue;
      normalize_sign(lc);
      uniq.insert(std::move(lc));
    }
  return {uniq.begin(), uniq.end()};
}

std::vector<int> insert_at(const std::vector<int>& word, std::size_t pos, int symbol) {
  std::vector<int> out(word);
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), symbol);
  return out;
}

std::vector<ChordCombination> four_term_at(const ChordDiagram& base) {
  std::vector<ChordCombination> out;
  const std::vector<int>& w = base.word();
  const int y = base.order() + 1;
  for (int a = 1; a <= base.order(); ++a) {
    for (std::size_t gap = 0; gap <= w.size(); ++gap) {
      std::vector<int> w1 = insert_at(w, gap, y);
      std::size_t p = 0;
      while (w1[p] != a) ++p;
      std::size_t q = p + 1;
      while (w1[q] != a) ++q;
      // Inserting before q shifts nothing before it; positions refer to w1.
      const std::size_t spots[4] = {p, p + 1, q, q + 1};
      const int signs[4] = {1, -1, 1, -1};
      ChordCombination lc;
      for (int t = 0; t < 4; ++t)
        add_term(lc, ChordDiagram::from_word(insert_at(w1, spots[t], y)), Scalar(signs[t]));
      out.push_back(std::move(lc));
    }
  }
  return out;
}

}  // namespace

RelationFamily<ChordDiagram> four_term_generators(int n) {
  RelationFamily<ChordDiagram> fam{RelationKind::four_term, n, {}};
  if (n < 2) return fam;
  auto bases = enumerate_chords(n - 1);
  auto parts = parallel_map<std::vector<ChordCombination>>(
      bases.size(), [&](std::size_t i) { return four_term_at(bases[i]); });
  for (const auto& part : parts) fam.placements += static_cast<long>(part.size());
  fam.generators = collect(std::move(parts));
  return fam;
}

JacobiDiagram stu_merge(const JacobiDiagram& d, int i) {
  const int L = d.legs;
  if (d.kind != DiagramKind::closed || L < 2 || i < 0 || i >= L)
    throw InvalidDiagram("STU needs two adjacent legs on the circle");
  const int j = (i + 1) % L;
  JacobiDiagram out;
  out.kind = DiagramKind::closed;
  out.legs = L - 1;
  out.internal = d.internal + 1;
  out.mate.assign(static_cast<std::size_t>(out.half_edges()), -1);
  std::vector<int> map(static_cast<std::size_t>(d.half_edges()), -1);
  int new_leg = -1;
  int next = 0;
  for (int k = 0; k < L; ++k) {
    if (k == j) continue;
    if (k == i)
      new_leg = next++;
    else
      map[static_cast<std::size_t>(k)] = next++;
  }
  for (int h = L; h < d.half_edges(); ++h) map[static_cast<std::size_t>(h)] = h - 1;
  const int s0 = out.half_edge(d.internal, 0);
  const int s1 = s0 + 1;
  const int s2 = s0 + 2;
  auto image = [&](int h) { return h == i ? s1 : h == j ? s2 : map[static_cast<std::size_t>(h)]; };
  for (int h = 0; h < d.half_edges(); ++h) {
    if (h == i || h == j) continue;
    out.mate[static_cast<std::size_t>(map[static_cast<std::size_t>(h)])] =
        image(d.mate[static_cast<std::size_t>(h)]);
  }
  out.mate[static_cast<std::size_t>(s0)] = new_leg;
  out.mate[static_cast<std::size_t>(new_leg)] = s0;
  out.mate[static_cast<std::size_t>(s1)] = image(d.mate[static_cast<std::size_t>(i)]);
  out.mate[static_cast<std::size_t>(s2)] = image(d.mate[static_cast<std::size_t>(j)]);
  return out;
}

JacobiDiagram stu_swap(const JacobiDiagram& d, int i) {
  const int L = d.legs;
  if (L < 2 || i < 0 || i >= L) throw InvalidDiagram("STU needs two adjacent legs on the circle");
  const int j = (i + 1) % L;
  std::vector<int> order(static_cast<std::size_t>(L));
  std::iota(order.begin(), order.end(), 0);
  std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  return reorder_legs(d, order);
}

std::vector<JacobiCombination> stu_relations_at(const JacobiDiagram& d) {
  std::vector<JacobiCombination> out;
  if (d.kind != DiagramKind::closed || d.legs < 2) return out;
  for (int i = 0; i < d.legs; ++i) {
    JacobiCombination lc;
    add_canonical(lc, stu_merge(d, i), Scalar(1));
    add_canonical(lc, d, Scalar(-1));
    add_canonical(lc, stu_swap(d, i), Scalar(1));
    out.push_back(std::move(lc));
  }
  return out;
}

RelationFamily<JacobiDiagram> stu_generators(int p) {
  RelationFamily<JacobiDiagram> fam{RelationKind::stu, p, {}};
  auto sources = enumerate_jacobi(DiagramKind::closed, p, std::nullopt, true);
  auto parts = parallel_map<std::vector<JacobiCombination>>(
      sources.size(), [&](std::size_t i) { return stu_relations_at(sources[i]); });
  for (const auto& part : parts) fam.placements += static_cast<long>(part.size());
  fam.generators = collect(std::move(parts));
  return fam;
}

std::vector<JacobiCombination> ihx_relations_at(const JacobiDiagram& d) {
  std::vector<JacobiCombination> out;
  for (int h = d.legs; h < d.half_edges(); ++h) {
    const int m = d.mate[static_cast<std::size_t>(h)];
    if (d.is_leg(m)) continue;
    const int u = d.vertex_of(h);
    const int w = d.vertex_of(m);
    if (u == w) continue;
    const int su = d.slot_of(h);
    const int sw = d.slot_of(m);
    const int u2 = d.half_edge(u, (su + 2) % 3);
    const int w1 = d.half_edge(w, (sw + 1) % 3);
    const int w2 = d.half_edge(w, (sw + 2) % 3);
    // The first term has a,b in the two free slots of u and c,d in those of w.
    auto rewire = [&](int at_u2, int at_w1, int at_w2) {
      std::vector<int> perm(static_cast<std::size_t>(d.half_edges()));
      std::iota(perm.begin(), perm.end(), 0);
      perm[static_cast<std::size_t>(at_u2)] = u2;
      perm[static_cast<std::size_t>(at_w1)] = w1;
      perm[static_cast<std::size_t>(at_w2)] = w2;
      return permute_half_edges(d, perm);
    };
    JacobiCombination lc;
    add_canonical(lc, d, Scalar(1));
    add_canonical(lc, rewire(w1, w2, u2), Scalar(1));  // (e,a,c)(e',d,b)
    add_canonical(lc, rewire(w2, u2, w1), Scalar(1));  // (e,a,d)(e',b,c)
    out.push_back(std::move(lc));
  }
  return out;
}

namespace {

std::vector<JacobiDiagram> ihx_sources(DiagramKind kind, int p, std::optional<int> legs) {
  if (kind == DiagramKind::labeled) {
    if (!legs) throw std::invalid_argument("labeled diagrams need a leg count");
    return enumerate_jacobi(kind, p, legs, true);
  }
  return enumerate_jacobi(kind, p, legs, true);
}

JacobiSpace make_jacobi_space(std::vector<JacobiDiagram> ambient,
                              const std::vector<JacobiDiagram>& sources) {
  auto rels = collect(parallel_map<std::vector<JacobiCombination>>(
      sources.size(), [&](std::size_t i) { return ihx_relations_at(sources[i]); }));
  return JacobiSpace(std::move(ambient), rels);
}

template <class Value>
class Cache {
 public:
  template <class Make>
  std::shared_ptr<const Value> get(const std::tuple<int, int, int>& key, Make&& make) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = entries_.find(key);
      if (it != entries_.end()) return it->second;
    }
    auto value = std::make_shared<const Value>(make());
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.emplace(key, std::move(value)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const Value>> entries_;
};

Cache<ChordSpace>& chord_cache() {
  static Cache<ChordSpace> c;
  return c;
}
Cache<JacobiSpace>& jacobi_cache() {
  static Cache<JacobiSpace> c;
  return c;
}
Cache<Presentation>& presentation_cache() {
  static Cache<Presentation> c;
  return c;
}

}  // namespace

RelationFamily<JacobiDiagram> ihx_generators(DiagramKind kind, int p, std::optional<int> legs) {
  RelationFamily<JacobiDiagram> fam{RelationKind::ihx, p, {}};
  auto sources = ihx_sources(kind, p, legs);
  auto parts = parallel_map<std::vector<JacobiCombination>>(
      sources.size(), [&](std::size_t i) { return ihx_relations_at(sources[i]); });
  for (const auto& part : parts) fam.placements += static_cast<long>(part.size());
  fam.generators = collect(std::move(parts));
  return fam;
}

std::shared_ptr<const ChordSpace> space_A(int n) {
  if (n < 0) throw std::invalid_argument("negative degree");
  return chord_cache().get({0, n, 0}, [&] {
    return ChordSpace(enumerate_chords(n), four_term_generators(n).generators);
  });
}

std::shared_ptr<const JacobiSpace> space_G(int p) {
  if (p < 0) throw std::invalid_argument("negative degree");
  return jacobi_cache().get({0, p, 0}, [&] {
    return JacobiSpace(enumerate_jacobi(DiagramKind::closed, p), stu_generators(p).generators);
  });
}

std::shared_ptr<const JacobiSpace> space_B(int p, std::optional<int> legs) {
  if (p < 0) throw std::invalid_argument("negative degree");
  return jacobi_cache().get({1, p, legs ? *legs : -1}, [&] {
    return make_jacobi_space(enumerate_jacobi(DiagramKind::open, p, legs),
                             enumerate_jacobi(DiagramKind::open, p, legs, true));
  });
}

std::shared_ptr<const JacobiSpace> space_vacuum(int p) {
  if (p < 0) throw std::invalid_argument("negative degree");
  return jacobi_cache().get({2, p, 0}, [&] {
    return make_jacobi_space(enumerate_jacobi(DiagramKind::vacuum, p),
                             enumerate_jacobi(DiagramKind::vacuum, p, std::nullopt, true));
  });
}

std::shared_ptr<const JacobiSpace> space_labeled(int legs, int loop_order) {
  if (legs < 0 || loop_order < 0) throw std::invalid_argument("negative leg count or loop order");
  return jacobi_cache().get({3, legs, loop_order}, [&] {
    return make_jacobi_space(enumerate_labeled_connected(legs, loop_order),
                             enumerate_labeled_connected(legs, loop_order, true));
  });
}

SpaceKind parse_space_kind(const std::string& text) {
  if (text == "A") return SpaceKind::A;
  if (text == "G") return SpaceKind::G;
  if (text == "B") return SpaceKind::B;
  if (text == "vacuum") return SpaceKind::vacuum;
  if (text == "M") return SpaceKind::M;
  throw std::invalid_argument("unsupported space kind: " + text);
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::A: return "A";
    case SpaceKind::G: return "G";
    case SpaceKind::B: return "B";
    case SpaceKind::vacuum: return "vacuum";
    case SpaceKind::M: return "M";
  }
  return "A";
}

SpaceSummary build_space(SpaceKind kind, int degree, std::optional<int> legs) {
  SpaceSummary s{kind, degree, legs, 0, 0, 0, {}};
  auto fill = [&](const auto& space, auto&& print) {
    s.ambient = space.ambient_dimension();
    s.rank = space.rank();
    s.dimension = space.dimension();
    for (const auto& b : space.representative_basis()) s.basis.push_back(print(b));
  };
  auto print_jacobi = [](const JacobiDiagram& d) { return format_jacobi(d); };
  switch (kind) {
    case SpaceKind::A:
      fill(*space_A(degree), [](const ChordDiagram& c) { return c.str(); });
      break;
    case SpaceKind::G:
      fill(*space_G(degree), print_jacobi);
      break;
    case SpaceKind::B:
      fill(*space_B(degree, legs), print_jacobi);
      break;
    case SpaceKind::vacuum:
      fill(*space_vacuum(degree), print_jacobi);
      break;
    case SpaceKind::M:
      if (!legs) throw std::invalid_argument("space M needs a leg count");
      fill(*space_labeled(*legs, degree), print_jacobi);
      break;
  }
  return s;
}

namespace {

std::string describe(const JacobiCombination& lc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : lc) {
    os << (first ? "" : " + ") << c.get_str() << " * [" << format_jacobi(d) << "]";
    first = false;
  }
  return os.str();
}

std::string describe(const ChordCombination& lc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : lc) {
    os << (first ? "" : " + ") << c.get_str() << " * [" << d.str() << "]";
    first = false;
  }
  return os.str();
}

bool is_zero(const DenseVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; });
}

JacobiCombination chords_to_closed(const ChordCombination& lc) {
  JacobiCombination out;
  for (const auto& [c, coef] : lc) add_canonical(out, chord_to_jacobi(c), coef);
  return out;
}

std::vector<DenseVector> chord_image_matrix(const ChordSpace& a, const JacobiSpace& g) {
  std::vector<DenseVector> m(static_cast<std::size_t>(g.dimension()),
                             DenseVector(static_cast<std::size_t>(a.dimension())));
  for (int j = 0; j < a.dimension(); ++j) {
    JacobiCombination lc;
    add_canonical(lc, chord_to_jacobi(a.representative(j)), Scalar(1));
    DenseVector col = g.reduce(lc);
    for (int i = 0; i < g.dimension(); ++i)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col[static_cast<std::size_t>(i)];
  }
  return m;
}

}  // namespace

PresentationReport verify_presentation_iso(int p) {
  PresentationReport r;
  r.degree = p;
  auto a = space_A(p);
  auto g = space_G(p);
  r.dim_chords = a->dimension();
  r.dim_closed = g->dimension();
  auto m = chord_image_matrix(*a, *g);
  r.image_rank = rank(Matrix::from_dense(m, a->dimension()));
  if (r.dim_chords != r.dim_closed || r.image_rank != r.dim_closed) {
    r.failure = "chord classes do not map isomorphically onto closed classes";
    return r;
  }
  auto ihx = ihx_generators(DiagramKind::closed, p);
  r.ihx_generators = static_cast<int>(ihx.generators.size());
  for (const auto& gen : ihx.generators) {
    if (!is_zero(g->reduce(gen))) {
      r.failure = "IHX generator outside the STU span";
      r.witness = describe(gen);
      return r;
    }
  }
  auto four = four_term_generators(p);
  r.four_term_generators = static_cast<int>(four.generators.size());
  for (const auto& gen : four.generators) {
    if (!is_zero(g->reduce(chords_to_closed(gen)))) {
      r.failure = "four-term generator outside the STU span";
      r.witness = describe(gen);
      return r;
    }
  }
  r.pass = true;
  return r;
}

DenseVector Presentation::chord_coordinates(const JacobiCombination& lc) const {
  return apply_matrix(closed_to_chord, closed->reduce(lc));
}

DenseVector Presentation::chord_coordinates(const ChordCombination& lc) const {
  return chords->reduce(lc);
}

std::shared_ptr<const Presentation> presentation(int p) {
  return presentation_cache().get({0, p, 0}, [&] {
    Presentation pr;
    pr.degree = p;
    pr.chords = space_A(p);
    pr.closed = space_G(p);
    if (pr.chords->dimension() != pr.closed->dimension())
      throw std::runtime_error("chord and closed presentations differ in dimension");
    pr.chord_to_closed = chord_image_matrix(*pr.chords, *pr.closed);
    pr.closed_to_chord = inverse(pr.chord_to_closed);
    return pr;
  });
}

}  // namespace chordal
