#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chordal/scalar.hpp"

namespace chordal {

// Sorted by column, no stored zeros.
using SparseVector = std::vector<std::pair<int, Scalar>>;
using DenseVector = std::vector<Scalar>;

SparseVector to_sparse(const DenseVector& v);
DenseVector to_dense(const SparseVector& v, int dim);

// a += coef * b
void axpy(SparseVector& a, const Scalar& coef, const SparseVector& b);

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  static Matrix from_dense(const std::vector<DenseVector>& rows, int cols);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

  const SparseVector& row(int r) const { return rows_.at(static_cast<std::size_t>(r)); }
  void set_row(int r, SparseVector v);
  void append_row(SparseVector v);
  Scalar at(int r, int c) const;
  void set(int r, int c, const Scalar& value);

  std::vector<DenseVector> to_dense() const;
  Matrix transpose() const;
  std::size_t nonzeros() const;

  // Row-per-line debug dump, entries separated by spaces, fractions as p/q.
  std::string dump() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  int cols_ = 0;
  std::vector<SparseVector> rows_;
};

Matrix multiply(const Matrix& a, const Matrix& b);

// Incremental row-echelon basis. Pivot rows are normalized to a leading 1
// and have no entries in columns of earlier pivots; finalize() turns the
// stored rows into the reduced row-echelon form.
class EchelonBasis {
 public:
  explicit EchelonBasis(int cols) : cols_(cols), pivot_(static_cast<std::size_t>(cols)) {}

  int cols() const { return cols_; }
  int rank() const { return rank_; }

  // Returns true when v enlarged the span.
  bool add(const SparseVector& v);

  // Normal form of v: v minus the unique row-space element that cancels
  // every pivot column.
  SparseVector reduce(const SparseVector& v) const;

  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  void finalize();

  bool is_pivot(int col) const { return pivot_[static_cast<std::size_t>(col)].has_value(); }
  std::vector<int> pivot_columns() const;
  std::vector<int> free_columns() const;

  // Rows ordered by pivot column.
  Matrix rows() const;

 private:
  int cols_;
  int rank_ = 0;
  std::vector<std::optional<SparseVector>> pivot_;
};

struct RrefResult {
  Matrix echelon;  // nonzero rows only, ordered by pivot column
  int rank = 0;
  std::vector<int> pivots;
};

// Switches to dense Gauss-Jordan when more than half the entries are
// nonzero; both paths produce the same (unique) reduced form.
RrefResult rref(const Matrix& m);
RrefResult rref_sparse(const Matrix& m);
RrefResult rref_dense(const Matrix& m);

int rank(const Matrix& m);

// Basis of {x : m x = 0}, one vector per free column, with a 1 in that
// free column.
std::vector<DenseVector> kernel_basis(const Matrix& m);

// Row spaces of a and b coincide. Throws on vectors of length != dim.
bool subspace_equal(const std::vector<DenseVector>& a, const std::vector<DenseVector>& b,
                    int dim);

bool in_span(const std::vector<DenseVector>& basis, const DenseVector& v);

// Inverse of a square matrix; throws std::domain_error if singular.
std::vector<DenseVector> inverse(const std::vector<DenseVector>& m);

DenseVector apply_matrix(const std::vector<DenseVector>& m, const DenseVector& v);

// Formal linear combinations over an ordered key type.
template <class Key>
using LinearCombination = std::map<Key, Scalar>;

template <class Key>
void add_term(LinearCombination<Key>& lc, const Key& key, const Scalar& coef) {
  if (coef == 0) return;
  auto [it, inserted] = lc.try_emplace(key, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) lc.erase(it);
  }
}

template <class Key>
void add_scaled(LinearCombination<Key>& lc, const LinearCombination<Key>& other,
                const Scalar& coef) {
  for (const auto& [k, v] : other) add_term(lc, k, coef * v);
}

class OutsideAmbient : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Ambient basis modulo the span of a relation family. Representatives are
// the ambient elements sitting in non-pivot columns.
template <class Key>
class QuotientSpace {
 public:
  QuotientSpace() : relations_(0) {}

  QuotientSpace(std::vector<Key> ambient, const std::vector<LinearCombination<Key>>& relations)
      : ambient_(std::move(ambient)), relations_(static_cast<int>(ambient_.size())) {
    for (std::size_t i = 0; i < ambient_.size(); ++i) {
      if (!index_.emplace(ambient_[i], static_cast<int>(i)).second)
        throw std::invalid_argument("duplicate ambient basis element");
    }
    for (const auto& rel : relations) relations_.add(to_vector(rel));
    relations_.finalize();
    int col = 0;
    coordinate_of_.assign(ambient_.size(), -1);
    for (int c : relations_.free_columns()) {
      coordinate_of_[static_cast<std::size_t>(c)] = col++;
      representatives_.push_back(c);
    }
  }

  const std::vector<Key>& ambient_basis() const { return ambient_; }
  int ambient_dimension() const { return static_cast<int>(ambient_.size()); }
  int rank() const { return relations_.rank(); }
  int dimension() const { return ambient_dimension() - rank(); }
  const EchelonBasis& relation_rowspace() const { return relations_; }

  std::vector<Key> representative_basis() const {
    std::vector<Key> out;
    out.reserve(representatives_.size());
    for (int c : representatives_) out.push_back(ambient_[static_cast<std::size_t>(c)]);
    return out;
  }
  const Key& representative(int i) const {
    return ambient_[static_cast<std::size_t>(representatives_.at(static_cast<std::size_t>(i)))];
  }

  bool contains(const Key& k) const { return index_.count(k) != 0; }
  int index_of(const Key& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) throw OutsideAmbient("element outside the ambient basis");
    return it->second;
  }

  SparseVector to_vector(const LinearCombination<Key>& lc) const {
    SparseVector v;
    v.reserve(lc.size());
    for (const auto& [k, c] : lc) v.emplace_back(index_of(k), c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  // Coordinates on the representative basis.
  DenseVector reduce(const LinearCombination<Key>& lc) const {
    DenseVector out(static_cast<std::size_t>(dimension()));
    for (const auto& [c, val] : relations_.reduce(to_vector(lc)))
      out[static_cast<std::size_t>(coordinate_of_[static_cast<std::size_t>(c)])] = val;
    return out;
  }
  DenseVector reduce(const Key& k) const {
    LinearCombination<Key> lc;
    lc.emplace(k, Scalar(1));
    return reduce(lc);
  }

 private:
  std::vector<Key> ambient_;
  std::map<Key, int> index_;
  EchelonBasis relations_;
  std::vector<int> representatives_;
  std::vector<int> coordinate_of_;
};

}  // namespace chordal
