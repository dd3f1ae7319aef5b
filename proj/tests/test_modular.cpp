#include <doctest.h>

#include "chordal/modular.hpp"
#include "chordal/relations.hpp"

using namespace chordal;

namespace {

bool annihilated(const std::vector<DenseVector>& c, const DenseVector& v) {
  for (const auto& row : c) {
    Scalar s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * v[j];
    if (s != 0) return false;
  }
  return true;
}

// Dimensions of the symmetric algebra on generators with gens[g] of grade g.
std::vector<long> symmetric_dims(const std::vector<long>& gens, int max) {
  std::vector<long> dims(static_cast<std::size_t>(max + 1));
  dims[0] = 1;
  for (int g = 1; g <= max && g < static_cast<int>(gens.size()); ++g)
    for (long copy = 0; copy < gens[static_cast<std::size_t>(g)]; ++copy)
      for (int k = g; k <= max; ++k) dims[static_cast<std::size_t>(k)] += dims[static_cast<std::size_t>(k - g)];
  return dims;
}

}  // namespace

TEST_CASE("small labeled spaces") {
  CHECK(space_M(2, 0)->dimension() == 1);
  CHECK(space_M(3, 0)->dimension() == 1);
  CHECK(space_M(1, 1)->dimension() == 0);
  CHECK_THROWS(space_M(0, 1));
}

TEST_CASE("tree dimensions") {
  long fact = 1;
  for (int n = 3; n <= 5; ++n) {
    if (n > 3) fact *= n - 2;
    CHECK(space_M(n, 0)->dimension() == fact);
  }
}

TEST_CASE("contraction matrices") {
  auto c10 = contraction_matrix(1, 0);
  CHECK(c10.empty());
  CHECK(space_M(3, 0)->dimension() == 1);

  auto c20 = contraction_matrix(2, 0);
  const int target = space_M(2, 1)->dimension();
  REQUIRE(static_cast<int>(c20.size()) == target);
  CHECK(rank(Matrix::from_dense(c20, space_M(4, 0)->dimension())) == target);
  CHECK_THROWS(contraction_matrix(0, 0));
}

TEST_CASE("kernel generators") {
  auto k10 = kernel_generators(1, 0);
  CHECK(k10.type_iii.empty());
  CHECK(kernel_generators(2, 0).type_iii.empty());

  // Smallest instance with a nonempty type (ii) family.
  bool found = false;
  for (int n = 1; n <= 3 && !found; ++n)
    for (int k = 0; k <= 1 && !found; ++k) {
      auto gens = kernel_generators(n, k);
      if (gens.type_ii.empty()) continue;
      found = true;
      auto c = contraction_matrix(n, k);
      for (const auto& v : gens.type_ii) CHECK(annihilated(c, v));
      for (const auto& v : gens.type_iii) CHECK(annihilated(c, v));
      for (const auto& v : gens.type_i_minus) CHECK(annihilated(c, v));
    }
  CHECK(found);
}

TEST_CASE("kernel lemma on small instances") {
  for (int n = 1; n <= 3; ++n) {
    auto r = verify_lemker(n, 0);
    INFO("legs " << n);
    CHECK(r.pass);
  }
  auto one = verify_lemker(1, 0);
  CHECK(one.facts.at("type (i) sign") == "both");
  CHECK(verify_lemker(2, 1).facts.at("type (i) sign") == "-");
}

TEST_CASE("independent contractions commute") {
  CHECK(verify_commuting_contractions(1, 0).pass);
  CHECK(verify_commuting_contractions(2, 0).pass);
}

TEST_CASE("decomposition bookkeeping") {
  auto d0 = decomposition_report(0, 4);
  REQUIRE(d0.rows.size() == 5);
  REQUIRE(d0.connected_vacuum.size() >= 5);
  CHECK(d0.connected_vacuum[1] == 1);
  for (int p = 1; p <= 3; ++p) CHECK(d0.connected_vacuum[static_cast<std::size_t>(p + 1)] == space_vacuum(p)->dimension());
  auto sym = symmetric_dims(d0.connected_vacuum, 4);
  for (const auto& row : d0.rows) {
    CHECK(row.vacuum == sym[static_cast<std::size_t>(row.grade)]);
    CHECK(row.total == row.vacuum);
  }

  auto d2 = decomposition_report(2, 3);
  for (const auto& row : d2.rows) {
    long conv = 0;
    for (const auto& other : d2.rows)
      if (other.grade <= row.grade) conv += d2.rows[static_cast<std::size_t>(row.grade - other.grade)].vacuum * other.legged;
    CHECK(row.total == conv);
  }
  CHECK(d2.rows[0].legged == 1);
}
