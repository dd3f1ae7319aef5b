#include "chordal/modular.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace chordal {

std::shared_ptr<const JacobiSpace> space_M(int legs, int grade) {
  if (legs < 1) throw std::invalid_argument("leg set must be nonempty");
  if (grade < 0) throw std::invalid_argument("negative grade");
  return space_labeled(legs, grade);
}

JacobiDiagram relabel_legs(const JacobiDiagram& d, const std::vector<int>& perm) {
  std::vector<int> full(static_cast<std::size_t>(d.half_edges()));
  std::iota(full.begin(), full.end(), 0);
  for (int l = 0; l < d.legs; ++l) full[std::size_t(l)] = perm.at(std::size_t(l));
  return permute_half_edges(d, full);
}

JacobiDiagram contract_legs(const JacobiDiagram& d, int a, int b, const std::vector<int>& relabel) {
  if (a == b || a < 0 || b < 0 || a >= d.legs || b >= d.legs)
    throw InvalidDiagram("contraction needs two distinct legs");
  const int ha = d.mate[std::size_t(a)];
  const int hb = d.mate[std::size_t(b)];
  if (ha == b) throw InvalidDiagram("contracting the two ends of a strut leaves a bare loop");
  JacobiDiagram out;
  out.kind = d.kind;
  out.legs = d.legs - 2;
  out.internal = d.internal;
  auto map = [&](int h) { return h < d.legs ? relabel.at(std::size_t(h)) : h - 2; };
  out.mate.assign(std::size_t(out.half_edges()), -1);
  for (int h = 0; h < d.half_edges(); ++h) {
    if (h == a || h == b) continue;
    int m = d.mate[std::size_t(h)];
    if (m == a)
      m = hb;
    else if (m == b)
      m = ha;
    out.mate.at(std::size_t(map(h))) = map(m);
  }
  validate(out);
  return out;
}

JacobiDiagram join_legs(const JacobiDiagram& d1, const std::vector<int>& map1, int ja,
                        const JacobiDiagram& d2, const std::vector<int>& map2, int jb) {
  if (ja < 0 || ja >= d1.legs || jb < 0 || jb >= d2.legs) throw InvalidDiagram("join needs legs");
  JacobiDiagram out;
  out.kind = d1.kind;
  out.legs = d1.legs + d2.legs - 2;
  out.internal = d1.internal + d2.internal;
  auto f1 = [&](int h) { return h < d1.legs ? map1.at(std::size_t(h)) : out.legs + (h - d1.legs); };
  auto f2 = [&](int h) {
    return h < d2.legs ? map2.at(std::size_t(h)) : out.legs + 3 * d1.internal + (h - d2.legs);
  };
  const int across1 = f2(d2.mate[std::size_t(jb)]);  // what d1's partner of ja now meets
  const int across2 = f1(d1.mate[std::size_t(ja)]);
  out.mate.assign(std::size_t(out.half_edges()), -1);
  for (int h = 0; h < d1.half_edges(); ++h) {
    if (h == ja) continue;
    const int m = d1.mate[std::size_t(h)];
    out.mate.at(std::size_t(f1(h))) = m == ja ? across1 : f1(m);
  }
  for (int h = 0; h < d2.half_edges(); ++h) {
    if (h == jb) continue;
    const int m = d2.mate[std::size_t(h)];
    out.mate.at(std::size_t(f2(h))) = m == jb ? across2 : f2(m);
  }
  validate(out);
  return out;
}

namespace {

DenseVector reduce_in(const JacobiSpace& space, const JacobiDiagram& d) {
  JacobiCombination lc;
  add_canonical(lc, d, Scalar(1));
  return space.reduce(lc);
}

DenseVector minus(DenseVector a, const DenseVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

bool is_zero(const DenseVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; });
}

std::vector<int> identity_labels(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::string vec_str(const DenseVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].get_str();
  os << ']';
  return os.str();
}

std::string instance(int n, int k) {
  return "|X|=" + std::to_string(n) + ", k=" + std::to_string(k);
}

// Coordinates in the target of the contraction of legs n, n+1 applied to
// coordinates in the domain.
DenseVector apply_columns(const std::vector<DenseVector>& m, const DenseVector& v) {
  if (m.empty()) return {};
  return apply_matrix(m, v);
}

}  // namespace

std::vector<DenseVector> contraction_matrix(int n, int k) {
  auto domain = space_M(n + 2, k);
  auto target = space_M(n, k + 1);
  const int rows = target->dimension();
  const int cols = domain->dimension();
  auto columns = parallel_map<DenseVector>(std::size_t(cols), [&](std::size_t j) {
    return reduce_in(*target, contract_legs(domain->representative(int(j)), n, n + 1,
                                            identity_labels(n + 2)));
  });
  std::vector<DenseVector> m(std::size_t(rows), DenseVector(static_cast<std::size_t>(cols)));
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m[std::size_t(i)][std::size_t(j)] = columns[std::size_t(j)][std::size_t(i)];
  return m;
}

KernelGenerators kernel_generators(int n, int k) {
  KernelGenerators out;
  out.legs = n;
  out.grade = k;
  auto domain = space_M(n + 2, k);
  const int y = n;
  const int y2 = n + 1;

  // (i) alpha +- sigma(alpha) over the ambient basis.
  std::vector<int> swap = identity_labels(n + 2);
  std::swap(swap[std::size_t(y)], swap[std::size_t(y2)]);
  const auto& ambient = domain->ambient_basis();
  auto pairs = parallel_map<std::pair<DenseVector, DenseVector>>(ambient.size(), [&](std::size_t i) {
    return std::make_pair(domain->reduce(ambient[i]), reduce_in(*domain, relabel_legs(ambient[i], swap)));
  });
  for (auto& [a, s] : pairs) {
    DenseVector plus = a;
    for (std::size_t i = 0; i < plus.size(); ++i) plus[i] += s[i];
    DenseVector diff = minus(a, s);
    if (!is_zero(plus)) out.type_i_plus.push_back(std::move(plus));
    if (!is_zero(diff)) out.type_i_minus.push_back(std::move(diff));
  }

  // (ii) alpha o_{zz'} beta - f_*(alpha o_{yy'} beta) over splits of X and
  // of the grade. Local legs of alpha: A in order, then y, z; of beta: B in
  // order, then y', z'.
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> A, B;
    for (int x = 0; x < n; ++x) ((mask >> x) & 1 ? A : B).push_back(x);
    const int a = static_cast<int>(A.size());
    const int b = static_cast<int>(B.size());
    for (int k1 = 0; k1 <= k; ++k1) {
      auto SA = space_M(a + 2, k1);
      auto SB = space_M(b + 2, k - k1);
      std::vector<int> zz_a(A), zz_b(B), yy_a(A), yy_b(B);
      // Joining z with z': y and y' survive under their own names.
      zz_a.push_back(y);
      zz_a.push_back(-1);
      zz_b.push_back(y2);
      zz_b.push_back(-1);
      // Joining y with y', then z -> y and z' -> y'.
      yy_a.push_back(-1);
      yy_a.push_back(y);
      yy_b.push_back(-1);
      yy_b.push_back(y2);
      const auto& la = SA->ambient_basis();
      const auto& lb = SB->ambient_basis();
      auto vecs = parallel_map<DenseVector>(la.size() * lb.size(), [&](std::size_t idx) {
        const JacobiDiagram& al = la[idx / lb.size()];
        const JacobiDiagram& be = lb[idx % lb.size()];
        DenseVector first = reduce_in(*domain, join_legs(al, zz_a, a + 1, be, zz_b, b + 1));
        DenseVector second = reduce_in(*domain, join_legs(al, yy_a, a, be, yy_b, b));
        return minus(std::move(first), second);
      });
      for (auto& v : vecs)
        if (!is_zero(v)) out.type_ii.push_back(std::move(v));
    }
  }

  // (iii) c_{zz'}(alpha) - theta c_{yy'}(alpha), alpha in M^{k-1}(X + 4).
  if (k >= 1) {
    auto src = space_M(n + 4, k - 1);
    std::vector<int> keep = identity_labels(n + 4);
    std::vector<int> theta = identity_labels(n + 4);
    theta[std::size_t(n + 2)] = y;
    theta[std::size_t(n + 3)] = y2;
    const auto& amb = src->ambient_basis();
    auto vecs = parallel_map<DenseVector>(amb.size(), [&](std::size_t i) {
      DenseVector c1 = reduce_in(*domain, contract_legs(amb[i], n + 2, n + 3, keep));
      DenseVector c2 = reduce_in(*domain, contract_legs(amb[i], y, y2, theta));
      return minus(std::move(c1), c2);
    });
    for (auto& v : vecs)
      if (!is_zero(v)) out.type_iii.push_back(std::move(v));
  }
  return out;
}

SuiteReport verify_lemker(int n, int k) {
  SuiteReport rep;
  rep.suite = "lemker";
  rep.degree = k;
  auto domain = space_M(n + 2, k);
  auto target = space_M(n, k + 1);
  const int dim = domain->dimension();
  const auto C = contraction_matrix(n, k);
  const auto kernel = kernel_basis(Matrix::from_dense(C, dim));
  const KernelGenerators gens = kernel_generators(n, k);

  CheckResult surj = named_check("contraction is surjective");
  const int r = C.empty() ? 0 : rank(Matrix::from_dense(C, dim));
  record(surj, r == target->dimension(),
         instance(n, k) + ": rank " + std::to_string(r) + " of " + std::to_string(target->dimension()));

  CheckResult annihilated = named_check("types (ii) and (iii) lie in the kernel");
  for (const auto* fam : {&gens.type_ii, &gens.type_iii})
    for (const auto& v : *fam) record(annihilated, is_zero(apply_columns(C, v)), vec_str(v));

  auto span_equal = [&](const std::vector<DenseVector>& type_i) {
    std::vector<DenseVector> all(type_i);
    all.insert(all.end(), gens.type_ii.begin(), gens.type_ii.end());
    all.insert(all.end(), gens.type_iii.begin(), gens.type_iii.end());
    return subspace_equal(kernel, all, dim);
  };
  const bool plus = span_equal(gens.type_i_plus);
  const bool minus_ok = span_equal(gens.type_i_minus);
  CheckResult equal = named_check("kernel equals the generated span");
  std::string witness = instance(n, k) + ": no sign of type (i) gives equality";
  if (!plus && !minus_ok) {
    std::vector<DenseVector> all(gens.type_i_minus);
    all.insert(all.end(), gens.type_ii.begin(), gens.type_ii.end());
    all.insert(all.end(), gens.type_iii.begin(), gens.type_iii.end());
    for (const auto& v : kernel)
      if (!in_span(all, v)) {
        witness += "; kernel vector outside span " + vec_str(v);
        break;
      }
  }
  record(equal, plus || minus_ok, witness);

  rep.facts["legs"] = std::to_string(n);
  rep.facts["domain dimension"] = std::to_string(dim);
  rep.facts["domain ambient"] = std::to_string(domain->ambient_dimension());
  rep.facts["target dimension"] = std::to_string(target->dimension());
  rep.facts["kernel dimension"] = std::to_string(kernel.size());
  rep.facts["type (i) generators"] = std::to_string(gens.type_i_minus.size());
  rep.facts["type (ii) generators"] = std::to_string(gens.type_ii.size());
  rep.facts["type (iii) generators"] = std::to_string(gens.type_iii.size());
  rep.facts["type (i) sign"] = plus && minus_ok ? "both" : plus ? "+" : minus_ok ? "-" : "neither";
  rep.checks = {surj, annihilated, equal};
  return finish(std::move(rep));
}

SuiteReport verify_commuting_contractions(int n, int k) {
  SuiteReport rep;
  rep.suite = "commuting-contractions";
  rep.degree = k;
  auto domain = space_M(n + 4, k);
  auto middle = space_M(n + 2, k + 1);
  const auto last = contraction_matrix(n, k + 1);
  std::vector<int> keep = identity_labels(n + 4);
  std::vector<int> theta = identity_labels(n + 4);
  theta[std::size_t(n + 2)] = n;
  theta[std::size_t(n + 3)] = n + 1;
  CheckResult check = named_check("independent contractions commute");
  run_checks(check, std::size_t(domain->dimension()), [&](std::size_t j) {
    const JacobiDiagram& a = domain->representative(int(j));
    DenseVector v1 = apply_columns(last, reduce_in(*middle, contract_legs(a, n + 2, n + 3, keep)));
    DenseVector v2 = apply_columns(last, reduce_in(*middle, contract_legs(a, n, n + 1, theta)));
    return std::make_pair(v1 == v2, instance(n, k) + ": " + format_jacobi(a));
  });
  rep.facts["domain dimension"] = std::to_string(domain->dimension());
  rep.checks = {check};
  return finish(std::move(rep));
}

DecompositionReport decomposition_report(int n, int k_max) {
  if (n < 0 || k_max < 0) throw std::invalid_argument("negative budget");
  DecompositionReport rep;
  rep.legs = n;
  rep.max_grade = k_max;
  const auto K = std::size_t(k_max);

  rep.connected_vacuum.assign(K + 1, 0);
  for (int g = 1; g <= k_max; ++g)
    rep.connected_vacuum[std::size_t(g)] = g == 1 ? 1 : space_vacuum(g - 1)->dimension();

  // Symmetric algebra: multiply by 1/(1-t^g) once per generator in grade g.
  std::vector<long> sym(K + 1, 0);
  sym[0] = 1;
  for (int g = 1; g <= k_max; ++g)
    for (long c = 0; c < rep.connected_vacuum[std::size_t(g)]; ++c)
      for (std::size_t t = std::size_t(g); t <= K; ++t) sym[t] += sym[t - std::size_t(g)];

  // Set partitions of the legs: the block holding the smallest remaining
  // leg has size t+1, chosen in C(s-1, t) ways.
  std::vector<std::vector<long>> binom(std::size_t(n + 1), std::vector<long>(std::size_t(n + 1), 0));
  for (int i = 0; i <= n; ++i) {
    binom[std::size_t(i)][0] = 1;
    for (int j = 1; j <= i; ++j)
      binom[std::size_t(i)][std::size_t(j)] =
          binom[std::size_t(i - 1)][std::size_t(j - 1)] + (j <= i - 1 ? binom[std::size_t(i - 1)][std::size_t(j)] : 0);
  }
  std::vector<std::vector<long>> dimM(std::size_t(n + 1), std::vector<long>(K + 1, 0));
  for (int m = 1; m <= n; ++m)
    for (int j = 0; j <= k_max; ++j) dimM[std::size_t(m)][std::size_t(j)] = space_M(m, j)->dimension();
  std::vector<std::vector<long>> legged(std::size_t(n + 1), std::vector<long>(K + 1, 0));
  legged[0][0] = 1;
  for (int s = 1; s <= n; ++s)
    for (int t = 0; t < s; ++t)
      for (std::size_t j = 0; j <= K; ++j)
        for (std::size_t r = 0; j + r <= K; ++r)
          legged[std::size_t(s)][j + r] += binom[std::size_t(s - 1)][std::size_t(t)] *
                                           dimM[std::size_t(t + 1)][j] *
                                           legged[std::size_t(s - t - 1)][r];

  for (std::size_t k = 0; k <= K; ++k) {
    DecompositionRow row;
    row.grade = int(k);
    row.vacuum = sym[k];
    row.legged = legged[std::size_t(n)][k];
    for (std::size_t i = 0; i <= k; ++i) row.total += sym[i] * legged[std::size_t(n)][k - i];
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace chordal
