#include "chordal/weights.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>
#include <type_traits>

#include "chordal/hopf.hpp"

namespace chordal {

namespace {

ScalarMatrix zero_matrix(int n) {
  return ScalarMatrix(static_cast<std::size_t>(n), DenseVector(static_cast<std::size_t>(n)));
}

ScalarMatrix identity(int n) {
  ScalarMatrix m = zero_matrix(n);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

ScalarMatrix matmul(const ScalarMatrix& a, const ScalarMatrix& b) {
  const std::size_t n = a.size();
  ScalarMatrix out = zero_matrix(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

void add_scaled(ScalarMatrix& acc, const Scalar& c, const ScalarMatrix& m) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    for (std::size_t j = 0; j < acc.size(); ++j)
      if (m[i][j] != 0) acc[i][j] += c * m[i][j];
}

std::string idx(std::initializer_list<int> ids) {
  std::string s = "(";
  bool first = true;
  for (int i : ids) {
    s += (first ? "" : ",") + std::to_string(i + 1);
    first = false;
  }
  return s + ")";
}

std::optional<Scalar> scalar_of(const ScalarMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Scalar(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && m[i][j] != 0) return std::nullopt;
      if (i == j && m[i][j] != m[0][0]) return std::nullopt;
    }
  return m[0][0];
}

}  // namespace

void MetricLieAlgebra::complete() {
  const auto d = static_cast<std::size_t>(dim);
  try {
    inverse_metric = inverse(metric);
  } catch (const std::domain_error&) {
    inverse_metric.clear();
  }
  lowered.assign(d, std::vector<DenseVector>(d, DenseVector(d)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        if (bracket[i][j][l] == 0) continue;
        for (std::size_t k = 0; k < d; ++k) lowered[i][j][k] += bracket[i][j][l] * metric[l][k];
      }
}

std::string to_string(LieFailure f) {
  switch (f) {
    case LieFailure::none: return "none";
    case LieFailure::shape: return "shape";
    case LieFailure::metric_asymmetric: return "metric not symmetric";
    case LieFailure::metric_singular: return "metric singular";
    case LieFailure::antisymmetry: return "bracket not antisymmetric";
    case LieFailure::jacobi: return "Jacobi identity fails";
    case LieFailure::invariance: return "metric not invariant";
    case LieFailure::representation: return "not a representation";
  }
  return "unknown";
}

LieValidation validate_metric_lie(const MetricLieAlgebra& g) {
  const auto d = static_cast<std::size_t>(g.dim);
  auto fail = [](LieFailure f, std::string w) { return LieValidation{false, f, std::move(w)}; };
  if (g.bracket.size() != d || g.metric.size() != d || g.lowered.size() != d)
    return fail(LieFailure::shape, "dimension " + std::to_string(g.dim));
  for (std::size_t i = 0; i < d; ++i) {
    if (g.metric[i].size() != d || g.bracket[i].size() != d)
      return fail(LieFailure::shape, "row " + std::to_string(i + 1));
    for (const auto& v : g.bracket[i])
      if (v.size() != d) return fail(LieFailure::shape, "row " + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (g.metric[i][j] != g.metric[j][i])
        return fail(LieFailure::metric_asymmetric, "b" + idx({int(i), int(j)}));
  if (g.inverse_metric.size() != d || (d > 0 && g.inverse_metric.empty()))
    return fail(LieFailure::metric_singular, "rank deficient");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (g.bracket[i][j][k] != -g.bracket[j][i][k])
          return fail(LieFailure::antisymmetry, "f" + idx({int(i), int(j), int(k)}));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          Scalar s = 0;
          for (std::size_t m = 0; m < d; ++m)
            s += g.bracket[i][j][m] * g.bracket[m][k][l] + g.bracket[j][k][m] * g.bracket[m][i][l] +
                 g.bracket[k][i][m] * g.bracket[m][j][l];
          if (s != 0)
            return fail(LieFailure::jacobi, "indices " + idx({int(i), int(j), int(k), int(l)}));
        }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (g.lowered[i][j][k] != -g.lowered[i][k][j])
          return fail(LieFailure::invariance, "lowered f" + idx({int(i), int(j), int(k)}));
  return {};
}

LieValidation validate_representation(const MetricLieAlgebra& g, const Representation& r) {
  const auto d = static_cast<std::size_t>(g.dim);
  const auto n = static_cast<std::size_t>(r.dimension);
  if (r.rho.size() != d) return {false, LieFailure::shape, r.name + ": matrix count"};
  for (const auto& m : r.rho) {
    if (m.size() != n) return {false, LieFailure::shape, r.name + ": matrix size"};
    for (const auto& row : m)
      if (row.size() != n) return {false, LieFailure::shape, r.name + ": matrix size"};
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ScalarMatrix lhs = zero_matrix(r.dimension);
      for (std::size_t k = 0; k < d; ++k) add_scaled(lhs, g.bracket[i][j][k], r.rho[k]);
      ScalarMatrix rhs = matmul(r.rho[i], r.rho[j]);
      add_scaled(rhs, Scalar(-1), matmul(r.rho[j], r.rho[i]));
      if (lhs != rhs)
        return {false, LieFailure::representation, r.name + ": bracket " + idx({int(i), int(j)})};
    }
  return {};
}

MetricLieAlgebra builtin_sl2() {
  MetricLieAlgebra g;
  g.dim = 3;
  g.labels = {"h", "e", "f"};
  g.bracket.assign(3, std::vector<DenseVector>(3, DenseVector(3)));
  auto set = [&](int i, int j, int k, int c) {
    g.bracket[std::size_t(i)][std::size_t(j)][std::size_t(k)] = c;
    g.bracket[std::size_t(j)][std::size_t(i)][std::size_t(k)] = -c;
  };
  set(0, 1, 1, 2);
  set(0, 2, 2, -2);
  set(1, 2, 0, 1);
  g.metric = zero_matrix(3);
  g.metric[0][0] = 2;
  g.metric[1][2] = 1;
  g.metric[2][1] = 1;
  g.complete();
  return g;
}

Representation sl2_irrep(int k) {
  if (k < 0) throw std::invalid_argument("negative highest weight");
  Representation r;
  r.name = "V_" + std::to_string(k);
  r.dimension = k + 1;
  r.rho.assign(3, zero_matrix(k + 1));
  for (int j = 0; j <= k; ++j) {
    const auto J = static_cast<std::size_t>(j);
    r.rho[0][J][J] = k - 2 * j;
    if (j > 0) r.rho[1][J - 1][J] = j * (k - j + 1);
    if (j < k) r.rho[2][J + 1][J] = 1;
  }
  return r;
}

LieData parse_lie_data(std::string_view text) {
  LieData out;
  MetricLieAlgebra& g = out.algebra;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::map<int, std::vector<std::tuple<int, int, int, Scalar>>> rho_entries;
  auto error = [&](const std::string& msg) {
    return LieDataError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto index = [&](const std::string& s, int bound) {
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw error("bad index '" + s + "'");
      }
      if (v < 1 || v > bound) throw error("index out of range: " + s);
      return v - 1;
    };
    auto value = [&](const std::string& s) {
      try {
        return parse_scalar(s);
      } catch (const std::exception&) {
        throw error("bad number '" + s + "'");
      }
    };
    if (tok[0] == "dim") {
      if (tok.size() != 2 || g.dim != 0) throw error("expected a single 'dim d'");
      g.dim = index(tok[1], 1 << 12) + 1;
      const auto d = static_cast<std::size_t>(g.dim);
      g.bracket.assign(d, std::vector<DenseVector>(d, DenseVector(d)));
      g.metric = zero_matrix(g.dim);
      for (int i = 1; i <= g.dim; ++i) g.labels.push_back("e" + std::to_string(i));
      continue;
    }
    if (g.dim == 0) throw error("'dim' must come first");
    if (tok[0] == "f" && tok.size() == 5) {
      g.bracket[std::size_t(index(tok[1], g.dim))][std::size_t(index(tok[2], g.dim))]
               [std::size_t(index(tok[3], g.dim))] = value(tok[4]);
    } else if (tok[0] == "b" && tok.size() == 4) {
      g.metric[std::size_t(index(tok[1], g.dim))][std::size_t(index(tok[2], g.dim))] = value(tok[3]);
    } else if (tok[0] == "rho" && tok.size() == 6) {
      const int k = index(tok[1], g.dim);
      const int rep = index(tok[2], 1 << 12) + 1;
      const int r = index(tok[3], 1 << 12);
      const int c = index(tok[4], 1 << 12);
      rho_entries[rep].emplace_back(k, r, c, value(tok[5]));
    } else {
      throw error("unrecognized record '" + tok[0] + "'");
    }
  }
  if (g.dim == 0) throw LieDataError("missing 'dim' header");
  g.complete();
  for (const auto& [rep, entries] : rho_entries) {
    int n = 0;
    for (const auto& [k, r, c, v] : entries) n = std::max({n, r + 1, c + 1});
    Representation R;
    R.name = "rep " + std::to_string(rep);
    R.dimension = n;
    R.rho.assign(static_cast<std::size_t>(g.dim), zero_matrix(n));
    for (const auto& [k, r, c, v] : entries)
      R.rho[std::size_t(k)][std::size_t(r)][std::size_t(c)] = v;
    out.representations.emplace(rep, std::move(R));
  }
  return out;
}

LieData load_lie_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LieDataError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lie_data(ss.str());
}

// ---------------------------------------------------------------------------
// Contraction. Every half-edge carries an index; an edge (h, h') contributes
// b^{i_h i_h'} and a trivalent vertex contributes f_{i_0 i_1 i_2}. The edges
// are visited vertex by vertex so each vertex factor can be checked as soon
// as its three indices are set.

namespace {

class Contraction {
 public:
  Contraction(const JacobiDiagram& d, const MetricLieAlgebra& g) : d_(d), g_(g) {
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j)
        if (g.inverse_metric[std::size_t(i)][std::size_t(j)] != 0) support_.push_back({i, j});
    std::vector<bool> listed(static_cast<std::size_t>(d.half_edges()), false);
    auto list = [&](int h) {
      const int m = d.mate[std::size_t(h)];
      if (listed[std::size_t(h)]) return;
      listed[std::size_t(h)] = listed[std::size_t(m)] = true;
      edges_.push_back({h, m});
    };
    for (int l = 0; l < d.legs; ++l)
      if (d.is_leg(d.mate[std::size_t(l)])) list(l);
    for (int v = 0; v < d.internal; ++v)
      for (int s = 0; s < 3; ++s) list(d.half_edge(v, s));
    // A vertex is complete once its last incident edge is assigned.
    std::vector<int> last(static_cast<std::size_t>(d.internal), -1);
    for (std::size_t e = 0; e < edges_.size(); ++e)
      for (int h : {edges_[e].first, edges_[e].second})
        if (!d.is_leg(h)) last[std::size_t(d.vertex_of(h))] = static_cast<int>(e);
    completes_.resize(edges_.size());
    for (int v = 0; v < d.internal; ++v)
      if (last[std::size_t(v)] >= 0) completes_[std::size_t(last[std::size_t(v)])].push_back(v);
    index_.assign(static_cast<std::size_t>(d.half_edges()), -1);
  }

  Tensor run() {
    out_.arity = d_.legs;
    recurse(0, Scalar(1));
    return std::move(out_);
  }

 private:
  void recurse(std::size_t e, const Scalar& weight) {
    if (e == edges_.size()) {
      std::vector<int> key(index_.begin(), index_.begin() + d_.legs);
      Scalar& slot = out_.entries[key];
      slot += weight;
      if (slot == 0) out_.entries.erase(key);
      return;
    }
    const auto [h, m] = edges_[e];
    for (const auto& [i, j] : support_) {
      index_[std::size_t(h)] = i;
      index_[std::size_t(m)] = j;
      Scalar w = weight * g_.inverse_metric[std::size_t(i)][std::size_t(j)];
      for (int v : completes_[e]) {
        if (w == 0) break;
        w *= g_.lowered[std::size_t(index_[std::size_t(d_.half_edge(v, 0))])]
                       [std::size_t(index_[std::size_t(d_.half_edge(v, 1))])]
                       [std::size_t(index_[std::size_t(d_.half_edge(v, 2))])];
      }
      if (w != 0) recurse(e + 1, w);
    }
  }

  const JacobiDiagram& d_;
  const MetricLieAlgebra& g_;
  std::vector<std::pair<int, int>> support_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> completes_;
  std::vector<int> index_;
  Tensor out_;
};

}  // namespace

Tensor tensor_T(const JacobiDiagram& d, const MetricLieAlgebra& g) {
  validate(d);
  if (d.kind == DiagramKind::vacuum && d.internal > 0)
    throw InvalidDiagram("tensor of a diagram without legs on the circle or line");
  if (g.inverse_metric.size() != static_cast<std::size_t>(g.dim))
    throw std::invalid_argument("metric is singular");
  return Contraction(d, g).run();
}

ScalarMatrix evaluate_matrix(const Tensor& t, const Representation& r) {
  ScalarMatrix acc = zero_matrix(r.dimension);
  for (const auto& [key, c] : t.entries) {
    ScalarMatrix m = identity(r.dimension);
    for (int i : key) m = matmul(m, r.rho.at(static_cast<std::size_t>(i)));
    add_scaled(acc, c, m);
  }
  return acc;
}

Scalar central_scalar(const JacobiDiagram& d, const MetricLieAlgebra& g, const Representation& r) {
  if (d.kind != DiagramKind::closed) throw InvalidDiagram("central scalar needs a closed diagram");
  auto s = scalar_of(evaluate_matrix(tensor_T(d, g), r));
  if (!s) throw NotCentral("image of " + format_jacobi(d) + " in " + r.name + " is not scalar");
  return *s;
}

Scalar central_scalar(const JacobiCombination& lc, const MetricLieAlgebra& g,
                      const Representation& r) {
  Scalar total = 0;
  for (const auto& [d, c] : lc) total += c * central_scalar(d, g, r);
  return total;
}

Scalar central_scalar(const ChordDiagram& d, const MetricLieAlgebra& g, const Representation& r) {
  return central_scalar(chord_to_jacobi(d), g, r);
}

Scalar weight_trace(const JacobiDiagram& d, const MetricLieAlgebra& g, const Representation& r) {
  return central_scalar(d, g, r) * r.dimension;
}

Scalar weight_trace(const ChordDiagram& d, const MetricLieAlgebra& g, const Representation& r) {
  return weight_trace(chord_to_jacobi(d), g, r);
}

// ---------------------------------------------------------------------------

namespace {

// Memoized scalars per representation, shared by the worker threads.
class ScalarCache {
 public:
  ScalarCache(const MetricLieAlgebra& g, const Representation& r) : g_(g), r_(r) {}

  Scalar of(const JacobiDiagram& d) {
    {
      std::lock_guard lock(mu_);
      auto it = memo_.find(d);
      if (it != memo_.end()) return it->second;
    }
    Scalar s = central_scalar(d, g_, r_);
    std::lock_guard lock(mu_);
    return memo_.emplace(d, s).first->second;
  }

  template <class Key>
  Scalar of(const LinearCombination<Key>& lc) {
    Scalar total = 0;
    for (const auto& [k, c] : lc) {
      if constexpr (std::is_same_v<Key, ChordDiagram>)
        total += c * of(chord_to_jacobi(k));
      else
        total += c * of(k);
    }
    return total;
  }

 private:
  const MetricLieAlgebra& g_;
  const Representation& r_;
  std::mutex mu_;
  std::map<JacobiDiagram, Scalar> memo_;
};

template <class Key>
std::string combo_str(const LinearCombination<Key>& lc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : lc) {
    os << (first ? "" : " + ") << c.get_str() << " * ";
    if constexpr (std::is_same_v<Key, ChordDiagram>)
      os << k.str();
    else
      os << "[" << format_jacobi(k) << "]";
    first = false;
  }
  return os.str();
}

template <class Key>
std::pair<bool, std::string> vanishes(ScalarCache& cache, const LinearCombination<Key>& lc,
                                      const std::string& rep) {
  try {
    Scalar s = cache.of(lc);
    if (s == 0) return {true, {}};
    return {false, rep + ": " + combo_str(lc) + " -> " + s.get_str()};
  } catch (const NotCentral& e) {
    return {false, e.what()};
  }
}

}  // namespace

SuiteReport verify_relations_vanish(const MetricLieAlgebra& g, const RepFamily& reps, int n_max,
                                    int p_max) {
  SuiteReport rep;
  rep.suite = "ws-vanish";
  rep.degree = std::max(n_max, p_max);
  CheckResult four = named_check("four-term generators vanish");
  CheckResult stu = named_check("STU generators vanish");
  for (const auto& r : reps) {
    ScalarCache cache(g, r);
    for (int n = 1; n <= n_max; ++n) {
      auto fam = four_term_generators(n);
      run_checks(four, fam.generators.size(),
                 [&](std::size_t i) { return vanishes(cache, fam.generators[i], r.name); });
    }
    for (int p = 1; p <= p_max; ++p) {
      auto fam = stu_generators(p);
      run_checks(stu, fam.generators.size(),
                 [&](std::size_t i) { return vanishes(cache, fam.generators[i], r.name); });
    }
  }
  rep.checks = {four, stu};
  return finish(std::move(rep));
}

SuiteReport verify_ad_invariance(const MetricLieAlgebra& g, int order) {
  SuiteReport rep;
  rep.suite = "ad-invariance";
  rep.degree = order;
  CheckResult inv = named_check("tensor is ad-invariant");
  std::vector<JacobiDiagram> diagrams;
  for (int p = 0; p <= order; ++p) {
    for (auto& d : enumerate_jacobi(DiagramKind::closed, p)) diagrams.push_back(std::move(d));
    for (int m = 0; m <= 2 * p; ++m)
      for (auto& d : enumerate_jacobi(DiagramKind::open, p, m)) diagrams.push_back(std::move(d));
  }
  run_checks(inv, diagrams.size(), [&](std::size_t n) {
    const JacobiDiagram& d = diagrams[n];
    Tensor t = tensor_T(d, g);
    for (int a = 0; a < g.dim; ++a) {
      std::map<std::vector<int>, Scalar> acc;
      for (const auto& [key, c] : t.entries)
        for (std::size_t s = 0; s < key.size(); ++s)
          for (int k = 0; k < g.dim; ++k) {
            const Scalar& f = g.bracket[std::size_t(a)][std::size_t(key[s])][std::size_t(k)];
            if (f == 0) continue;
            std::vector<int> moved = key;
            moved[s] = k;
            acc[moved] += c * f;
          }
      for (const auto& [key, c] : acc)
        if (c != 0)
          return std::make_pair(false, format_jacobi(d) + " under " + g.labels[std::size_t(a)]);
    }
    return std::make_pair(true, std::string());
  });
  rep.facts["diagrams"] = std::to_string(diagrams.size());
  rep.checks = {inv};
  return finish(std::move(rep));
}

SuiteReport verify_centrality(const MetricLieAlgebra& g, const RepFamily& reps, int p_max) {
  SuiteReport rep;
  rep.suite = "centrality";
  rep.degree = p_max;
  CheckResult scalar = named_check("images are scalar");
  CheckResult rotation = named_check("independent of the base point");
  CheckResult mult = named_check("central characters are multiplicative");

  struct Item {
    int degree;
    int index;
  };
  std::vector<Item> basis;
  for (int p = 0; p <= p_max; ++p)
    for (int i = 0; i < space_A(p)->dimension(); ++i) basis.push_back({p, i});

  for (const auto& r : reps) {
    ScalarCache cache(g, r);
    run_checks(scalar, basis.size(), [&](std::size_t n) {
      const ChordDiagram& d = space_A(basis[n].degree)->representative(basis[n].index);
      try {
        cache.of(chord_to_jacobi(d));
        return std::make_pair(true, std::string());
      } catch (const NotCentral& e) {
        return std::make_pair(false, std::string(e.what()));
      }
    });
    run_checks(rotation, basis.size(), [&](std::size_t n) {
      const ChordDiagram& d = space_A(basis[n].degree)->representative(basis[n].index);
      const JacobiDiagram base = chord_to_jacobi(d);
      try {
        const Scalar s = cache.of(base);
        std::vector<int> order(static_cast<std::size_t>(base.legs));
        for (int cut = 1; cut < base.legs; ++cut) {
          for (int j = 0; j < base.legs; ++j) order[std::size_t(j)] = (j + cut) % base.legs;
          if (central_scalar(reorder_legs(base, order), g, r) != s)
            return std::make_pair(false, r.name + ": " + d.str() + " cut at " + std::to_string(cut));
        }
        return std::make_pair(true, std::string());
      } catch (const NotCentral& e) {
        return std::make_pair(false, std::string(e.what()));
      }
    });
    std::vector<std::pair<Item, Item>> pairs;
    for (const auto& x : basis)
      for (const auto& y : basis)
        if (x.degree + y.degree <= p_max) pairs.push_back({x, y});
    auto lambda = [&](const HopfElement& e) {
      Scalar total = 0;
      for (const auto& [k, v] : e.parts)
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i] != 0) total += v[i] * cache.of(chord_to_jacobi(space_A(k)->representative(int(i))));
      return total;
    };
    run_checks(mult, pairs.size(), [&](std::size_t n) {
      const auto& [x, y] = pairs[n];
      try {
        HopfElement ex = HopfElement::basis(x.degree, x.index);
        HopfElement ey = HopfElement::basis(y.degree, y.index);
        const bool ok = lambda(product(ex, ey)) == lambda(ex) * lambda(ey);
        return std::make_pair(ok, r.name + ": " + space_A(x.degree)->representative(x.index).str() +
                                      " * " + space_A(y.degree)->representative(y.index).str());
      } catch (const NotCentral& e) {
        return std::make_pair(false, std::string(e.what()));
      }
    });
  }
  rep.checks = {scalar, rotation, mult};
  return finish(std::move(rep));
}

}  // namespace chordal
