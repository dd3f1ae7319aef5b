#include <doctest.h>

#include "chordal/relations.hpp"
#include "chordal/weights.hpp"

using namespace chordal;

namespace {

using Mat = std::vector<std::vector<Scalar>>;

Mat zero(int n) { return Mat(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n))); }

Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat c = zero(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

void add(Mat& a, const Mat& b, const Scalar& s) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += s * b[i][j];
}

// V_k in the basis v_0..v_k, for (h, e, f).
std::vector<Mat> irrep(int k) {
  std::vector<Mat> r(3, zero(k + 1));
  for (int j = 0; j <= k; ++j) {
    r[0][static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = k - 2 * j;
    if (j > 0) r[1][static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(j)] = j * (k - j + 1);
    if (j < k) r[2][static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(j)] = 1;
  }
  return r;
}

// Hand-entered sl2 data, order (h, e, f).
const Scalar binv[3][3] = {{make_scalar(1, 2), 0, 0}, {0, 0, 1}, {0, 1, 0}};
const Scalar bmat[3][3] = {{2, 0, 0}, {0, 0, 1}, {0, 1, 0}};

Scalar bracket(int i, int j, int k) {
  // [h,e] = 2e, [h,f] = -2f, [e,f] = h
  auto f = [](int a, int b, int c) -> Scalar {
    if (a == 0 && b == 1 && c == 1) return 2;
    if (a == 0 && b == 2 && c == 2) return -2;
    if (a == 1 && b == 2 && c == 0) return 1;
    return 0;
  };
  return f(i, j, k) - f(j, i, k);
}

Scalar lowered(int i, int j, int k) {
  Scalar s = 0;
  for (int l = 0; l < 3; ++l) s += bracket(i, j, l) * bmat[l][k];
  return s;
}

Scalar scalar_of(const Mat& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) REQUIRE(m[i][j] == (i == j ? m[0][0] : Scalar(0)));
  return m[0][0];
}

JacobiDiagram bubble() {
  JacobiDiagram d;
  d.kind = DiagramKind::open;
  d.legs = 2;
  d.internal = 2;
  // legs i=0, j=1; vertex 0 slots (s,k,l) = 2,3,4; vertex 1 slots (p,q,t) = 5,6,7
  d.mate = {2, 7, 0, 5, 6, 3, 4, 1};
  return d;
}

JacobiDiagram diagram_k() {
  JacobiDiagram d;
  d.kind = DiagramKind::closed;
  d.legs = 4;
  d.internal = 2;
  // legs i,j,k,l = 0..3; vertex 0 (n,p,q) = 4,5,6; vertex 1 (t,s,r) = 7,8,9
  d.mate = {4, 5, 7, 8, 0, 1, 9, 2, 3, 6};
  return d;
}

MetricLieAlgebra abelian() {
  MetricLieAlgebra g;
  g.dim = 1;
  g.labels = {"x"};
  g.bracket = {{{Scalar(0)}}};
  g.metric = {{Scalar(1)}};
  g.complete();
  return g;
}

const char* kSl2File = R"(# sl2 in the basis h, e, f
dim 3
f 1 2 2 2
f 2 1 2 -2
f 1 3 3 -2
f 3 1 3 2
f 2 3 1 1
f 3 2 1 -1
b 1 1 2
b 2 3 1
b 3 2 1
rho 1 1 1 1 1
rho 1 1 2 2 -1
rho 2 1 1 2 1
rho 3 1 2 1 1
)";

}  // namespace

TEST_CASE("sl2 data") {
  auto g = builtin_sl2();
  CHECK(validate_metric_lie(g).pass);
  REQUIRE(g.inverse_metric.size() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(g.inverse_metric[i][j] == binv[i][j]);
      for (int k = 0; k < 3; ++k) {
        CHECK(g.bracket[i][j][k] == bracket(i, j, k));
        CHECK(g.lowered[i][j][k] == lowered(i, j, k));
      }
    }
  for (int k = 1; k <= 4; ++k) {
    auto v = sl2_irrep(k);
    CHECK(v.dimension == k + 1);
    CHECK(validate_representation(g, v).pass);
  }
  CHECK(sl2_irrep(2).dimension == 3);
}

TEST_CASE("validation failures") {
  CHECK(validate_metric_lie(abelian()).pass);

  auto g = builtin_sl2();
  g.bracket[0][1][1] = 3;
  g.bracket[1][0][1] = -3;
  g.complete();
  auto v = validate_metric_lie(g);
  CHECK_FALSE(v.pass);
  CHECK(v.failure == LieFailure::jacobi);
  CHECK_FALSE(v.witness.empty());

  auto s = builtin_sl2();
  s.metric = {{Scalar(0), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(1)}, {Scalar(0), Scalar(1), Scalar(0)}};
  s.complete();
  CHECK(validate_metric_lie(s).failure == LieFailure::metric_singular);

  auto bad = sl2_irrep(1);
  bad.rho[0][0][0] = 2;
  CHECK(validate_representation(builtin_sl2(), bad).failure == LieFailure::representation);
}

TEST_CASE("Lie data file") {
  auto data = parse_lie_data(kSl2File);
  auto sl2 = builtin_sl2();
  CHECK(validate_metric_lie(data.algebra).pass);
  CHECK(data.algebra.bracket == sl2.bracket);
  CHECK(data.algebra.metric == sl2.metric);
  REQUIRE(data.representations.count(1));
  CHECK(data.representations.at(1).dimension == 2);
  CHECK(validate_representation(data.algebra, data.representations.at(1)).pass);
  CHECK(central_scalar(ChordDiagram::parse("1212"), data.algebra, data.representations.at(1)) ==
        central_scalar(ChordDiagram::parse("1212"), sl2, sl2_irrep(1)));

  auto half = parse_lie_data("dim 3\nf 1 2 2 2\nf 1 3 3 -2\nf 2 3 1 1\nb 1 1 2\nb 2 3 1\nb 3 2 1\n");
  CHECK(validate_metric_lie(half.algebra).failure == LieFailure::antisymmetry);
  CHECK_THROWS_AS(parse_lie_data("dim 2\nf 1 2 3 1\n"), LieDataError);
  CHECK_THROWS_AS(parse_lie_data("f 1 1 1 1\n"), LieDataError);
  CHECK_THROWS_AS(parse_lie_data("dim 1\nq 1\n"), LieDataError);
}

TEST_CASE("closed-form tensors for the strut, the bubble and K") {
  auto g = builtin_sl2();
  auto tc = tensor_T(strut(), g);
  CHECK(tc.arity == 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto it = tc.entries.find({i, j});
      CHECK((it == tc.entries.end() ? Scalar(0) : it->second) == binv[i][j]);
    }

  auto tb = tensor_T(bubble(), g);
  CHECK(tb.arity == 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Scalar want = 0;
      for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t)
          for (int k = 0; k < 3; ++k)
            for (int p = 0; p < 3; ++p)
              for (int l = 0; l < 3; ++l)
                for (int q = 0; q < 3; ++q)
                  want += binv[i][s] * binv[t][j] * binv[k][p] * binv[l][q] * lowered(s, k, l) * lowered(p, q, t);
      auto it = tb.entries.find({i, j});
      CHECK((it == tb.entries.end() ? Scalar(0) : it->second) == want);
    }

  auto tk = tensor_T(diagram_k(), g);
  CHECK(tk.arity == 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          Scalar want = 0;
          for (int n = 0; n < 3; ++n)
            for (int p = 0; p < 3; ++p)
              for (int q = 0; q < 3; ++q)
                for (int r = 0; r < 3; ++r)
                  for (int t = 0; t < 3; ++t)
                    for (int s = 0; s < 3; ++s)
                      want += binv[i][n] * binv[j][p] * binv[q][r] * binv[k][t] * binv[l][s] * lowered(n, p, q) *
                              lowered(t, s, r);
          auto it = tk.entries.find({i, j, k, l});
          CHECK((it == tk.entries.end() ? Scalar(0) : it->second) == want);
        }

  JacobiDiagram empty;
  auto te = tensor_T(empty, g);
  CHECK(te.arity == 0);
  CHECK(te.entries.at({}) == 1);
}

TEST_CASE("tensor does not depend on vertex numbering or cyclic slot rotation") {
  auto g = builtin_sl2();
  auto d = diagram_k();
  // swap the two vertices and rotate the first one's slots
  std::vector<int> perm = {0, 1, 2, 3, 8, 9, 7, 4, 5, 6};
  CHECK(tensor_T(permute_half_edges(d, perm), g) == tensor_T(d, g));
}

TEST_CASE("central scalars against direct matrix products") {
  auto g = builtin_sl2();
  CHECK(central_scalar(ChordDiagram{}, g, sl2_irrep(1)) == 1);
  CHECK(weight_trace(ChordDiagram{}, g, sl2_irrep(1)) == 2);
  CHECK(central_scalar(ChordDiagram::parse("11"), g, sl2_irrep(1)) == make_scalar(3, 2));
  CHECK(weight_trace(ChordDiagram::parse("11"), g, sl2_irrep(1)) == 3);

  for (int k = 1; k <= 4; ++k) {
    auto r = irrep(k);
    Mat cas = zero(k + 1), cross = zero(k + 1), par = zero(k + 1);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (binv[a][b] == 0) continue;
        add(cas, mul(r[a], r[b]), binv[a][b]);
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) {
            if (binv[c][d] == 0) continue;
            add(cross, mul(mul(r[a], r[c]), mul(r[b], r[d])), binv[a][b] * binv[c][d]);
            add(par, mul(mul(r[a], r[b]), mul(r[c], r[d])), binv[a][b] * binv[c][d]);
          }
      }
    const auto v = sl2_irrep(k);
    CHECK(central_scalar(ChordDiagram::parse("11"), g, v) == scalar_of(cas));
    CHECK(scalar_of(cas) == make_scalar(k * (k + 2), 2));
    CHECK(central_scalar(ChordDiagram::parse("1122"), g, v) == scalar_of(par));
    CHECK(central_scalar(ChordDiagram::parse("1212"), g, v) == scalar_of(cross));
    CHECK(weight_trace(ChordDiagram::parse("1212"), g, v) == scalar_of(cross) * (k + 1));
  }
}

TEST_CASE("non-scalar images are reported") {
  auto g = builtin_sl2();
  // V_0 + V_1: the Casimir acts by 0 and 3/2.
  Representation sum;
  sum.name = "V0+V1";
  sum.dimension = 3;
  auto v1 = sl2_irrep(1);
  for (int a = 0; a < 3; ++a) {
    ScalarMatrix m(3, DenseVector(3));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i + 1][j + 1] = v1.rho[a][i][j];
    sum.rho.push_back(m);
  }
  CHECK(validate_representation(g, sum).pass);
  CHECK_THROWS_AS(central_scalar(ChordDiagram::parse("11"), g, sum), NotCentral);
}

TEST_CASE("relations vanish") {
  auto g = builtin_sl2();
  RepFamily reps;
  for (int k = 1; k <= 4; ++k) reps.push_back(sl2_irrep(k));
  CHECK(verify_relations_vanish(g, reps, 0, 1).pass);
  CHECK(verify_relations_vanish(g, reps, 3, 3).pass);

  Representation one;
  one.name = "x -> 2";
  one.dimension = 1;
  one.rho = {{{Scalar(2)}}};
  auto ab = abelian();
  for (const auto& rel : stu_generators(2).generators) CHECK(central_scalar(rel, ab, one) == 0);
}

TEST_CASE("invariance and centrality suites") {
  auto g = builtin_sl2();
  CHECK(verify_ad_invariance(g, 2).pass);
  RepFamily reps = {sl2_irrep(1), sl2_irrep(2), sl2_irrep(3)};
  auto r = verify_centrality(g, reps, 3);
  CHECK(r.pass);
  CHECK(r.checks.size() >= 3);
}
