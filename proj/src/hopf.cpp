#include "chordal/hopf.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "chordal/parallel.hpp"

namespace chordal {

namespace {

int dim_A(int k) { return space_A(k)->dimension(); }

DenseVector zeros(int k) { return DenseVector(static_cast<std::size_t>(dim_A(k))); }

std::string vec_str(const DenseVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].get_str();
  os << ']';
  return os.str();
}

// Product of two basis elements, memoized.
const DenseVector& basis_product(int a, int i, int b, int j) {
  static std::mutex mu;
  static std::map<std::array<int, 4>, DenseVector> memo;
  const std::array<int, 4> key{a, i, b, j};
  {
    std::lock_guard lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const auto& x = space_A(a)->representative(i);
  const auto& y = space_A(b)->representative(j);
  DenseVector v = space_A(a + b)->reduce(ChordDiagram::from_word(concat_words(x.word(), y.word())));
  std::lock_guard lock(mu);
  return memo.emplace(key, std::move(v)).first->second;
}

const HopfTensor2& basis_coproduct(int k, int i) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, HopfTensor2> memo;
  {
    std::lock_guard lock(mu);
    auto it = memo.find({k, i});
    if (it != memo.end()) return it->second;
  }
  HopfTensor2 t = coproduct(space_A(k)->representative(i));
  std::lock_guard lock(mu);
  return memo.emplace(std::make_pair(k, i), std::move(t)).first->second;
}

template <class Map>
void prune(Map& m) {
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
}

// Diagram on the vertices flagged in `keep`, legs kept in circle order.
JacobiDiagram subdiagram(const JacobiDiagram& d, const std::vector<bool>& keep) {
  std::vector<int> map(static_cast<std::size_t>(d.half_edges()), -1);
  JacobiDiagram out;
  out.kind = d.kind;
  for (int l = 0; l < d.legs; ++l)
    if (keep[static_cast<std::size_t>(l)]) map[static_cast<std::size_t>(l)] = out.legs++;
  std::vector<int> kept_internal;
  for (int v = 0; v < d.internal; ++v)
    if (keep[static_cast<std::size_t>(d.legs + v)]) kept_internal.push_back(v);
  out.internal = static_cast<int>(kept_internal.size());
  for (std::size_t n = 0; n < kept_internal.size(); ++n)
    for (int s = 0; s < 3; ++s)
      map[static_cast<std::size_t>(d.half_edge(kept_internal[n], s))] =
          out.legs + 3 * static_cast<int>(n) + s;
  out.mate.assign(static_cast<std::size_t>(out.half_edges()), -1);
  for (int h = 0; h < d.half_edges(); ++h) {
    const int nh = map[static_cast<std::size_t>(h)];
    if (nh >= 0)
      out.mate[static_cast<std::size_t>(nh)] = map[static_cast<std::size_t>(d.mate[static_cast<std::size_t>(h)])];
  }
  return out;
}

SignedCanonical canonical_or_empty(const JacobiDiagram& d) {
  if (d.half_edges() == 0) return {d, 1};
  return canonical_jacobi(d);
}

void add_tensor(HopfTensor2& out, const Scalar& c, int a, const DenseVector& l, int b,
                const DenseVector& r) {
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] == 0) continue;
      out[{a, static_cast<int>(i), b, static_cast<int>(j)}] += c * l[i] * r[j];
    }
  }
}

HopfTensor3 delta_left(const HopfTensor2& t) {
  HopfTensor3 out;
  for (const auto& [k, c] : t)
    for (const auto& [k2, c2] : basis_coproduct(k[0], k[1]))
      out[{k2[0], k2[1], k2[2], k2[3], k[2], k[3]}] += c * c2;
  prune(out);
  return out;
}

HopfTensor3 delta_right(const HopfTensor2& t) {
  HopfTensor3 out;
  for (const auto& [k, c] : t)
    for (const auto& [k2, c2] : basis_coproduct(k[2], k[3]))
      out[{k[0], k[1], k2[0], k2[1], k2[2], k2[3]}] += c * c2;
  prune(out);
  return out;
}

HopfTensor2 tensor_product(const HopfTensor2& s, const HopfTensor2& t) {
  HopfTensor2 out;
  for (const auto& [a, x] : s)
    for (const auto& [b, y] : t) {
      const DenseVector& l = basis_product(a[0], a[1], b[0], b[1]);
      const DenseVector& r = basis_product(a[2], a[3], b[2], b[3]);
      add_tensor(out, x * y, a[0] + b[0], l, a[2] + b[2], r);
    }
  prune(out);
  return out;
}

struct Basis {
  int degree;
  int index;
};

std::vector<Basis> basis_up_to(int p) {
  std::vector<Basis> out;
  for (int k = 0; k <= p; ++k)
    for (int i = 0; i < dim_A(k); ++i) out.push_back({k, i});
  return out;
}

std::string basis_name(const Basis& b) {
  return space_A(b.degree)->representative(b.index).str();
}

}  // namespace

HopfElement HopfElement::unit() { return basis(0, 0); }

HopfElement HopfElement::basis(int degree, int index) {
  HopfElement e;
  DenseVector v = zeros(degree);
  v.at(static_cast<std::size_t>(index)) = 1;
  e.parts.emplace(degree, std::move(v));
  return e;
}

HopfElement HopfElement::of(const ChordDiagram& d) {
  HopfElement e;
  e.parts.emplace(d.order(), space_A(d.order())->reduce(d));
  return e;
}

bool HopfElement::is_zero() const {
  for (const auto& [k, v] : parts)
    for (const auto& x : v)
      if (x != 0) return false;
  return true;
}

bool operator==(const HopfElement& a, const HopfElement& b) {
  HopfElement diff = a;
  diff += b * Scalar(-1);
  return diff.is_zero();
}

HopfElement& HopfElement::operator+=(const HopfElement& other) {
  for (const auto& [k, v] : other.parts) {
    auto [it, inserted] = parts.try_emplace(k, v);
    if (!inserted)
      for (std::size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
  }
  return *this;
}

HopfElement HopfElement::operator*(const Scalar& s) const {
  HopfElement out = *this;
  for (auto& [k, v] : out.parts)
    for (auto& x : v) x *= s;
  return out;
}

JacobiDiagram connected_sum(const JacobiDiagram& d1, const JacobiDiagram& d2, int cut1, int cut2) {
  if (d1.kind != DiagramKind::closed || d2.kind != DiagramKind::closed)
    throw InvalidDiagram("connected sum needs closed diagrams");
  if (cut1 < 0 || cut1 > d1.legs || cut2 < 0 || cut2 > d2.legs)
    throw std::out_of_range("cut position");
  const int L1 = d1.legs;
  const int L2 = d2.legs;
  JacobiDiagram out;
  out.kind = DiagramKind::closed;
  out.legs = L1 + L2;
  out.internal = d1.internal + d2.internal;
  auto map1 = [&](int h) { return h < L1 ? (h - cut1 + L1) % L1 : L1 + L2 + (h - L1); };
  auto map2 = [&](int h) {
    return h < L2 ? L1 + (h - cut2 + L2) % L2 : L1 + L2 + 3 * d1.internal + (h - L2);
  };
  out.mate.assign(static_cast<std::size_t>(out.half_edges()), -1);
  for (int h = 0; h < d1.half_edges(); ++h)
    out.mate[static_cast<std::size_t>(map1(h))] = map1(d1.mate[static_cast<std::size_t>(h)]);
  for (int h = 0; h < d2.half_edges(); ++h)
    out.mate[static_cast<std::size_t>(map2(h))] = map2(d2.mate[static_cast<std::size_t>(h)]);
  return out;
}

ChordDiagram connected_sum(const ChordDiagram& d1, const ChordDiagram& d2, int cut1, int cut2) {
  if (cut1 < 0 || cut1 > 2 * d1.order() || cut2 < 0 || cut2 > 2 * d2.order())
    throw std::out_of_range("cut position");
  return ChordDiagram::from_word(
      concat_words(rotate_word(d1.word(), cut1), rotate_word(d2.word(), cut2)));
}

HopfElement product(const HopfElement& x, const HopfElement& y) {
  HopfElement out;
  for (const auto& [a, u] : x.parts)
    for (const auto& [b, v] : y.parts) {
      DenseVector acc = zeros(a + b);
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (v[j] == 0) continue;
          const DenseVector& p =
              basis_product(a, static_cast<int>(i), b, static_cast<int>(j));
          for (std::size_t k = 0; k < p.size(); ++k) acc[k] += u[i] * v[j] * p[k];
        }
      }
      HopfElement term;
      term.parts.emplace(a + b, std::move(acc));
      out += term;
    }
  return out;
}

std::vector<CoproductTerm> coproduct_terms(const JacobiDiagram& d) {
  validate(d);
  if (d.kind != DiagramKind::closed) throw InvalidDiagram("coproduct needs a closed diagram");
  const auto comps = components(d);
  const std::size_t n = comps.size();
  if (n > 20) throw std::invalid_argument("too many components");
  std::map<std::pair<JacobiDiagram, JacobiDiagram>, Scalar> merged;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<bool> left(static_cast<std::size_t>(d.vertices()), false);
    std::vector<bool> right(static_cast<std::size_t>(d.vertices()), false);
    for (std::size_t c = 0; c < n; ++c)
      for (int v : comps[c]) ((mask >> c) & 1 ? left : right)[static_cast<std::size_t>(v)] = true;
    SignedCanonical l = canonical_or_empty(subdiagram(d, left));
    SignedCanonical r = canonical_or_empty(subdiagram(d, right));
    if (l.is_zero() || r.is_zero()) continue;
    merged[{*l.representative, *r.representative}] += l.sign * r.sign;
  }
  std::vector<CoproductTerm> out;
  for (auto& [k, c] : merged)
    if (c != 0) out.push_back({k.first, k.second, c});
  return out;
}

std::vector<ChordCoproductTerm> coproduct_terms(const ChordDiagram& d) {
  const int n = d.order();
  if (n > 20) throw std::invalid_argument("too many chords");
  std::map<std::pair<ChordDiagram, ChordDiagram>, Scalar> merged;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> in, out;
    for (int c = 1; c <= n; ++c) ((mask >> (c - 1)) & 1 ? in : out).push_back(c);
    merged[{ChordDiagram::from_word(restrict_word(d.word(), in)),
            ChordDiagram::from_word(restrict_word(d.word(), out))}] += 1;
  }
  std::vector<ChordCoproductTerm> terms;
  for (auto& [k, c] : merged) terms.push_back({k.first, k.second, c});
  return terms;
}

HopfTensor2 coproduct(const ChordDiagram& d) {
  HopfTensor2 out;
  for (const auto& t : coproduct_terms(d)) {
    const int a = t.left.order();
    const int b = t.right.order();
    add_tensor(out, t.coefficient, a, space_A(a)->reduce(t.left), b, space_A(b)->reduce(t.right));
  }
  prune(out);
  return out;
}

HopfTensor2 coproduct(const HopfElement& x) {
  HopfTensor2 out;
  for (const auto& [k, v] : x.parts)
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      for (const auto& [key, c] : basis_coproduct(k, static_cast<int>(i))) out[key] += v[i] * c;
    }
  prune(out);
  return out;
}

std::vector<DenseVector> primitive_basis(int p) {
  if (p <= 0) return {};
  const int dim = dim_A(p);
  auto columns = parallel_map<HopfTensor2>(static_cast<std::size_t>(dim),
                                           [&](std::size_t j) { return basis_coproduct(p, static_cast<int>(j)); });
  std::map<std::array<int, 4>, int> row_of;
  for (const auto& col : columns)
    for (const auto& [k, c] : col)
      if (k[0] > 0 && k[2] > 0) row_of.try_emplace(k, 0);
  int r = 0;
  for (auto& [k, idx] : row_of) idx = r++;
  Matrix m(r, dim);
  for (int j = 0; j < dim; ++j)
    for (const auto& [k, c] : columns[static_cast<std::size_t>(j)])
      if (k[0] > 0 && k[2] > 0) m.set(row_of[k], j, c);
  return kernel_basis(m);
}

std::vector<DenseVector> connected_span(int p) {
  if (p <= 0) return {};
  auto pres = presentation(p);
  std::vector<JacobiDiagram> connected;
  for (auto& d : enumerate_jacobi(DiagramKind::closed, p))
    if (is_connected(d)) connected.push_back(std::move(d));
  return parallel_map<DenseVector>(connected.size(), [&](std::size_t i) {
    JacobiCombination lc;
    add_term(lc, connected[i], Scalar(1));
    return pres->chord_coordinates(lc);
  });
}

DenseVector symmetrize(const JacobiDiagram& d) {
  validate(d);
  if (d.kind != DiagramKind::open) throw InvalidDiagram("symmetrization needs an open diagram");
  std::vector<int> perm(static_cast<std::size_t>(d.legs));
  std::iota(perm.begin(), perm.end(), 0);
  const JacobiDiagram placed = with_kind(d, DiagramKind::closed);
  JacobiCombination lc;
  Scalar count = 0;
  do {
    add_canonical(lc, reorder_legs(placed, perm), Scalar(1));
    count += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& [k, c] : lc) c /= count;
  std::erase_if(lc, [](const auto& kv) { return kv.second == 0; });
  return presentation(d.order())->chord_coordinates(lc);
}

SuiteReport verify_bialgebra(int p) {
  SuiteReport rep;
  rep.suite = "hopf";
  rep.degree = p;
  const auto basis = basis_up_to(p);

  CheckResult grading = named_check("grading");
  CheckResult counit = named_check("counit");
  CheckResult coassoc = named_check("coassociativity");
  run_checks(grading, basis.size(), [&](std::size_t n) {
    const Basis& b = basis[n];
    for (const auto& [k, c] : basis_coproduct(b.degree, b.index))
      if (k[0] + k[2] != b.degree) return std::make_pair(false, basis_name(b));
    return std::make_pair(true, std::string());
  });
  run_checks(counit, basis.size(), [&](std::size_t n) {
    const Basis& b = basis[n];
    const auto& t = basis_coproduct(b.degree, b.index);
    Scalar left = 0, right = 0;
    bool stray = false;
    for (const auto& [k, c] : t) {
      if (k[0] == 0) {
        if (k[2] == b.degree && k[3] == b.index)
          left = c;
        else
          stray = true;
      }
      if (k[2] == 0) {
        if (k[0] == b.degree && k[1] == b.index)
          right = c;
        else
          stray = true;
      }
    }
    return std::make_pair(!stray && left == 1 && right == 1, basis_name(b));
  });
  run_checks(coassoc, basis.size(), [&](std::size_t n) {
    const Basis& b = basis[n];
    const auto& t = basis_coproduct(b.degree, b.index);
    return std::make_pair(delta_left(t) == delta_right(t), basis_name(b));
  });

  std::vector<std::pair<Basis, Basis>> pairs;
  for (const auto& x : basis)
    for (const auto& y : basis)
      if (x.degree + y.degree <= p) pairs.push_back({x, y});
  auto pair_name = [](const std::pair<Basis, Basis>& q) {
    return basis_name(q.first) + " * " + basis_name(q.second);
  };

  CheckResult unit = named_check("unit");
  CheckResult commut = named_check("commutativity");
  CheckResult multiplic = named_check("multiplicativity");
  CheckResult cuts = named_check("cut independence");
  CheckResult cuts_closed = named_check("cut independence (closed diagrams)");
  run_checks(unit, basis.size(), [&](std::size_t n) {
    const Basis& b = basis[n];
    DenseVector e = zeros(b.degree);
    e[static_cast<std::size_t>(b.index)] = 1;
    return std::make_pair(basis_product(0, 0, b.degree, b.index) == e &&
                              basis_product(b.degree, b.index, 0, 0) == e,
                          basis_name(b));
  });
  run_checks(commut, pairs.size(), [&](std::size_t n) {
    const auto& [x, y] = pairs[n];
    return std::make_pair(basis_product(x.degree, x.index, y.degree, y.index) ==
                              basis_product(y.degree, y.index, x.degree, x.index),
                          pair_name(pairs[n]));
  });
  run_checks(multiplic, pairs.size(), [&](std::size_t n) {
    const auto& [x, y] = pairs[n];
    HopfElement xy;
    xy.parts.emplace(x.degree + y.degree, basis_product(x.degree, x.index, y.degree, y.index));
    HopfTensor2 lhs = coproduct(xy);
    HopfTensor2 rhs = tensor_product(basis_coproduct(x.degree, x.index),
                                     basis_coproduct(y.degree, y.index));
    return std::make_pair(lhs == rhs, pair_name(pairs[n]));
  });
  run_checks(cuts, pairs.size(), [&](std::size_t n) {
    const auto& [x, y] = pairs[n];
    const auto& dx = space_A(x.degree)->representative(x.index);
    const auto& dy = space_A(y.degree)->representative(y.index);
    const DenseVector& expect = basis_product(x.degree, x.index, y.degree, y.index);
    const auto target = space_A(x.degree + y.degree);
    for (int c1 = 0; c1 <= 2 * x.degree; ++c1)
      for (int c2 = 0; c2 <= 2 * y.degree; ++c2)
        if (target->reduce(connected_sum(dx, dy, c1, c2)) != expect)
          return std::make_pair(false, pair_name(pairs[n]) + " at cuts " + std::to_string(c1) +
                                           "," + std::to_string(c2));
    return std::make_pair(true, std::string());
  });

  // The same on the closed side: every gluing of two closed representatives
  // lands on one class.
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> closed_pairs;
  for (int a = 1; a <= p; ++a)
    for (int b = 1; a + b <= p; ++b)
      for (int i = 0; i < space_G(a)->dimension(); ++i)
        for (int j = 0; j < space_G(b)->dimension(); ++j) closed_pairs.push_back({{a, i}, {b, j}});
  run_checks(cuts_closed, closed_pairs.size(), [&](std::size_t n) {
    const auto& [x, y] = closed_pairs[n];
    const JacobiDiagram& g1 = space_G(x.first)->representative(x.second);
    const JacobiDiagram& g2 = space_G(y.first)->representative(y.second);
    const auto pres = presentation(x.first + y.first);
    std::optional<DenseVector> first;
    for (int c1 = 0; c1 <= g1.legs; ++c1)
      for (int c2 = 0; c2 <= g2.legs; ++c2) {
        JacobiCombination lc;
        add_canonical(lc, connected_sum(g1, g2, c1, c2), Scalar(1));
        DenseVector v = pres->chord_coordinates(lc);
        if (!first)
          first = std::move(v);
        else if (v != *first)
          return std::make_pair(false, format_jacobi(g1) + " # " + format_jacobi(g2));
      }
    return std::make_pair(true, std::string());
  });

  CheckResult assoc = named_check("associativity");
  std::vector<std::array<Basis, 3>> triples;
  for (const auto& x : basis)
    for (const auto& y : basis)
      for (const auto& z : basis)
        if (x.degree + y.degree + z.degree <= p) triples.push_back({x, y, z});
  run_checks(assoc, triples.size(), [&](std::size_t n) {
    const auto& [x, y, z] = triples[n];
    HopfElement ex = HopfElement::basis(x.degree, x.index);
    HopfElement ey = HopfElement::basis(y.degree, y.index);
    HopfElement ez = HopfElement::basis(z.degree, z.index);
    return std::make_pair(product(product(ex, ey), ez) == product(ex, product(ey, ez)),
                          basis_name(x) + " * " + basis_name(y) + " * " + basis_name(z));
  });

  rep.checks = {grading, counit, coassoc, unit, commut, assoc, multiplic, cuts, cuts_closed};
  return finish(std::move(rep));
}

SuiteReport verify_primitives(int p) {
  SuiteReport rep;
  rep.suite = "primitives";
  rep.degree = p;
  CheckResult span = named_check("primitives equal connected span");
  for (int k = 1; k <= p; ++k) {
    auto prim = primitive_basis(k);
    auto conn = connected_span(k);
    const bool ok = subspace_equal(prim, conn, dim_A(k));
    record(span, ok, "degree " + std::to_string(k));
    std::ostringstream dims;
    dims << prim.size();
    rep.facts["dim P_" + std::to_string(k)] = dims.str();
    if (!ok && !conn.empty()) rep.facts["first connected image, degree " + std::to_string(k)] = vec_str(conn.front());
  }
  rep.checks = {span};
  return finish(std::move(rep));
}

SuiteReport verify_symmetrization_iso(int p) {
  SuiteReport rep;
  rep.suite = "sigma";
  rep.degree = p;
  CheckResult dims = named_check("dimensions agree");
  CheckResult iso = named_check("symmetrization is bijective");
  for (int k = 0; k <= p; ++k) {
    auto B = space_B(k);
    const int dA = dim_A(k);
    record(dims, B->dimension() == dA,
           "degree " + std::to_string(k) + ": " + std::to_string(B->dimension()) + " vs " +
               std::to_string(dA));
    auto images = parallel_map<DenseVector>(static_cast<std::size_t>(B->dimension()),
                                            [&](std::size_t j) {
                                              return symmetrize(B->representative(static_cast<int>(j)));
                                            });
    const int r = images.empty() ? 0 : rank(Matrix::from_dense(images, dA));
    record(iso, r == dA && B->dimension() == dA,
           "degree " + std::to_string(k) + ": rank " + std::to_string(r));
    rep.facts["dim B_" + std::to_string(k)] = std::to_string(B->dimension());
  }
  rep.checks = {dims, iso};
  return finish(std::move(rep));
}

}  // namespace chordal
