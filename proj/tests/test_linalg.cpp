#include <doctest.h>

#include <random>

#include "chordal/linalg.hpp"

using namespace chordal;

namespace {

Matrix dense(const std::vector<std::vector<long>>& rows) {
  std::vector<DenseVector> m;
  for (const auto& r : rows) {
    DenseVector v;
    for (long x : r) v.push_back(Scalar(x));
    m.push_back(v);
  }
  return Matrix::from_dense(m, rows.empty() ? 0 : static_cast<int>(rows[0].size()));
}

// Plain Gaussian elimination on a copy, for cross-checking rank.
int naive_rank(std::vector<DenseVector> m) {
  int r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    std::size_t p = static_cast<std::size_t>(r);
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[static_cast<std::size_t>(r)]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == static_cast<std::size_t>(r) || m[i][c] == 0) continue;
      const Scalar f = m[i][c] / m[static_cast<std::size_t>(r)][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[static_cast<std::size_t>(r)][j];
    }
    ++r;
  }
  return r;
}

Matrix random_matrix(std::mt19937& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (rng() % 3 == 0) m.set(i, j, make_scalar(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1));
  return m;
}

}  // namespace

TEST_CASE("scalars") {
  CHECK(parse_scalar("2/4") == make_scalar(1, 2));
  CHECK(to_string(parse_scalar("-6/3")) == "-2");
  CHECK_THROWS_AS(parse_scalar("3/-6"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("x"), std::invalid_argument);
}

TEST_CASE("rref examples") {
  auto a = rref(dense({{0, 1}, {1, 0}}));
  CHECK(a.rank == 2);
  CHECK(a.echelon == dense({{1, 0}, {0, 1}}));
  auto b = rref(dense({{1, 2}, {2, 4}}));
  CHECK(b.rank == 1);
  CHECK(b.echelon == dense({{1, 2}}));
  std::vector<DenseVector> half = {{make_scalar(1, 2), Scalar(1)}, {Scalar(1), Scalar(2)}};
  auto c = rref(Matrix::from_dense(half, 2));
  CHECK(c.rank == 1);
  CHECK(c.echelon == dense({{1, 2}}));
}

TEST_CASE("rref properties on random matrices") {
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    const int rows = 1 + static_cast<int>(rng() % 7), cols = 1 + static_cast<int>(rng() % 7);
    Matrix m = random_matrix(rng, rows, cols);
    auto r = rref(m);
    CHECK(r.rank == naive_rank(m.to_dense()));
    CHECK(rref(r.echelon).echelon == r.echelon);
    CHECK(rref_sparse(m).echelon == rref_dense(m).echelon);
    auto ker = kernel_basis(m);
    CHECK(static_cast<int>(ker.size()) + r.rank == cols);
    for (const auto& v : ker) {
      CHECK(v.size() == static_cast<std::size_t>(cols));
      for (int i = 0; i < rows; ++i) {
        Scalar s = 0;
        for (const auto& [c, x] : m.row(i)) s += x * v[static_cast<std::size_t>(c)];
        CHECK(s == 0);
      }
    }
    CHECK(naive_rank(ker) == static_cast<int>(ker.size()));
  }
}

TEST_CASE("kernel_basis and subspace_equal examples") {
  CHECK(kernel_basis(dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
  CHECK(kernel_basis(Matrix(2, 3)).size() == 3);
  DenseVector e1 = {Scalar(1), Scalar(0)}, e2 = {Scalar(0), Scalar(1)}, e1x2 = {Scalar(2), Scalar(0)};
  CHECK(subspace_equal({e1}, {e1x2}, 2));
  CHECK_FALSE(subspace_equal({e1}, {e2}, 2));
  CHECK_THROWS(subspace_equal({e1}, {DenseVector{Scalar(1)}}, 2));
  CHECK(in_span({e1}, e1x2));
  CHECK_FALSE(in_span({e1}, e2));
  auto inv = inverse({{Scalar(2), Scalar(0)}, {Scalar(0), Scalar(4)}});
  CHECK(inv[0][0] == make_scalar(1, 2));
  CHECK(inv[1][1] == make_scalar(1, 4));
  CHECK_THROWS_AS(inverse({{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}}), std::domain_error);
}

TEST_CASE("quotient spaces") {
  using Q = QuotientSpace<std::string>;
  LinearCombination<std::string> rel;
  add_term(rel, std::string("x"), Scalar(1));
  add_term(rel, std::string("y"), Scalar(-1));
  Q q({"x", "y"}, {rel});
  CHECK(q.dimension() == 1);
  CHECK(q.reduce(rel) == DenseVector{Scalar(0)});
  CHECK(q.reduce(q.representative(0)) == DenseVector{Scalar(1)});
  CHECK(q.reduce(std::string("x")) == q.reduce(std::string("y")));
  LinearCombination<std::string> bad;
  add_term(bad, std::string("z"), Scalar(1));
  CHECK_THROWS_AS(q.reduce(bad), OutsideAmbient);
  CHECK_THROWS_AS(Q({"a"}, {bad}), OutsideAmbient);

  std::vector<LinearCombination<std::string>> full;
  for (const char* s : {"a", "b", "c"}) {
    LinearCombination<std::string> r;
    add_term(r, std::string(s), Scalar(1));
    full.push_back(r);
  }
  CHECK(Q({"a", "b", "c"}, full).dimension() == 0);
}

TEST_CASE("reduce residues agree with dense elimination") {
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + static_cast<int>(rng() % 6);
    std::vector<int> ambient(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ambient[static_cast<std::size_t>(i)] = i;
    std::vector<LinearCombination<int>> rels;
    std::vector<DenseVector> rel_rows;
    for (int r = 0; r < static_cast<int>(rng() % 5); ++r) {
      LinearCombination<int> lc;
      DenseVector row(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        if (rng() % 2) {
          Scalar x(static_cast<long>(rng() % 5) - 2);
          add_term(lc, i, x);
          row[static_cast<std::size_t>(i)] = x;
        }
      rels.push_back(lc);
      rel_rows.push_back(row);
    }
    QuotientSpace<int> q(ambient, rels);
    CHECK(q.dimension() == n - naive_rank(rel_rows));

    LinearCombination<int> v;
    DenseVector vd(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      Scalar x = make_scalar(static_cast<long>(rng() % 9) - 4, 2);
      add_term(v, i, x);
      vd[static_cast<std::size_t>(i)] = x;
    }
    // v minus the lifted residue must lie in the relation span.
    DenseVector res = q.reduce(v);
    DenseVector diff = vd;
    for (int i = 0; i < q.dimension(); ++i)
      diff[static_cast<std::size_t>(q.representative(i))] -= res[static_cast<std::size_t>(i)];
    auto with = rel_rows;
    with.push_back(diff);
    CHECK(naive_rank(with) == naive_rank(rel_rows));
    for (const auto& r : rels) {
      for (const auto& x : q.reduce(r)) CHECK(x == 0);
    }
  }
}
