#include "chordal/linalg.hpp"

#include <sstream>

namespace chordal {

SparseVector to_sparse(const DenseVector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.emplace_back(static_cast<int>(i), v[i]);
  return out;
}

DenseVector to_dense(const SparseVector& v, int dim) {
  DenseVector out(static_cast<std::size_t>(dim));
  for (const auto& [c, x] : v) out.at(static_cast<std::size_t>(c)) = x;
  return out;
}

void axpy(SparseVector& a, const Scalar& coef, const SparseVector& b) {
  if (coef == 0 || b.empty()) return;
  SparseVector out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(std::move(*ia++));
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, coef * ib->second);
      ++ib;
    } else {
      Scalar s = ia->second + coef * ib->second;
      if (s != 0) out.emplace_back(ia->first, std::move(s));
      ++ia;
      ++ib;
    }
  }
  a = std::move(out);
}

Matrix::Matrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows)) {}

Matrix Matrix::from_dense(const std::vector<DenseVector>& rows, int cols) {
  Matrix m(0, cols);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols) throw std::invalid_argument("ragged matrix");
    m.rows_.push_back(to_sparse(r));
  }
  return m;
}

void Matrix::set_row(int r, SparseVector v) {
  for (const auto& [c, x] : v)
    if (c < 0 || c >= cols_) throw std::out_of_range("column index");
  rows_.at(static_cast<std::size_t>(r)) = std::move(v);
}

void Matrix::append_row(SparseVector v) {
  rows_.emplace_back();
  set_row(rows() - 1, std::move(v));
}

Scalar Matrix::at(int r, int c) const {
  for (const auto& [col, x] : row(r))
    if (col == c) return x;
  return 0;
}

void Matrix::set(int r, int c, const Scalar& value) {
  auto& v = rows_.at(static_cast<std::size_t>(r));
  auto it = std::lower_bound(v.begin(), v.end(), c,
                             [](const auto& e, int col) { return e.first < col; });
  if (it != v.end() && it->first == c) {
    if (value == 0)
      v.erase(it);
    else
      it->second = value;
  } else if (value != 0) {
    v.emplace(it, c, value);
  }
}

std::vector<DenseVector> Matrix::to_dense() const {
  std::vector<DenseVector> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(chordal::to_dense(r, cols_));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows());
  for (int r = 0; r < rows(); ++r)
    for (const auto& [c, x] : rows_[static_cast<std::size_t>(r)])
      t.rows_[static_cast<std::size_t>(c)].emplace_back(r, x);
  return t;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::string Matrix::dump() const {
  std::ostringstream os;
  for (const auto& r : to_dense()) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? " " : "") << r[c].get_str();
    os << '\n';
  }
  return os.str();
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in multiply");
  Matrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    SparseVector acc;
    for (const auto& [k, x] : a.row(r)) axpy(acc, x, b.row(k));
    out.set_row(r, std::move(acc));
  }
  return out;
}

namespace {

// Eliminates every pivot column from acc, walking columns in increasing
// order. Pivot rows only carry entries right of their pivot, so one sweep
// suffices.
void eliminate(std::map<int, Scalar>& acc, const std::vector<std::optional<SparseVector>>& pivot,
               int skip_col) {
  auto it = acc.begin();
  while (it != acc.end()) {
    const int col = it->first;
    const auto& prow = pivot[static_cast<std::size_t>(col)];
    if (col == skip_col || !prow) {
      ++it;
      continue;
    }
    Scalar coef = it->second;
    it = acc.erase(it);
    for (const auto& [c, x] : *prow) {
      if (c == col) continue;
      auto [jt, inserted] = acc.try_emplace(c, -coef * x);
      if (!inserted) {
        jt->second -= coef * x;
        if (jt->second == 0) acc.erase(jt);
      }
    }
    it = acc.upper_bound(col);
  }
}

SparseVector from_map(const std::map<int, Scalar>& acc) {
  SparseVector out;
  out.reserve(acc.size());
  for (const auto& [c, x] : acc)
    if (x != 0) out.emplace_back(c, x);
  return out;
}

}  // namespace

bool EchelonBasis::add(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  Scalar lead = r.front().second;
  for (auto& [c, x] : r) x /= lead;
  pivot_[static_cast<std::size_t>(r.front().first)] = std::move(r);
  ++rank_;
  return true;
}

SparseVector EchelonBasis::reduce(const SparseVector& v) const {
  std::map<int, Scalar> acc;
  for (const auto& [c, x] : v) {
    if (c < 0 || c >= cols_) throw std::out_of_range("vector longer than ambient");
    if (x != 0) acc.emplace(c, x);
  }
  eliminate(acc, pivot_, -1);
  return from_map(acc);
}

void EchelonBasis::finalize() {
  for (int col = cols_ - 1; col >= 0; --col) {
    auto& row = pivot_[static_cast<std::size_t>(col)];
    if (!row) continue;
    std::map<int, Scalar> acc(row->begin(), row->end());
    eliminate(acc, pivot_, col);
    *row = from_map(acc);
  }
}

std::vector<int> EchelonBasis::pivot_columns() const {
  std::vector<int> out;
  for (int c = 0; c < cols_; ++c)
    if (is_pivot(c)) out.push_back(c);
  return out;
}

std::vector<int> EchelonBasis::free_columns() const {
  std::vector<int> out;
  for (int c = 0; c < cols_; ++c)
    if (!is_pivot(c)) out.push_back(c);
  return out;
}

Matrix EchelonBasis::rows() const {
  Matrix m(0, cols_);
  for (const auto& row : pivot_)
    if (row) m.append_row(*row);
  return m;
}

RrefResult rref_sparse(const Matrix& m) {
  EchelonBasis basis(m.cols());
  for (int r = 0; r < m.rows(); ++r) basis.add(m.row(r));
  basis.finalize();
  return {basis.rows(), basis.rank(), basis.pivot_columns()};
}

RrefResult rref_dense(const Matrix& m) {
  auto a = m.to_dense();
  const int rows = m.rows();
  const int cols = m.cols();
  int r = 0;
  std::vector<int> pivots;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(r)]);
    auto& prow = a[static_cast<std::size_t>(r)];
    Scalar lead = prow[static_cast<std::size_t>(c)];
    for (auto& x : prow) x /= lead;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto& row = a[static_cast<std::size_t>(i)];
      Scalar f = row[static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = c; j < cols; ++j)
        row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(static_cast<std::size_t>(r));
  return {Matrix::from_dense(a, cols), r, pivots};
}

RrefResult rref(const Matrix& m) {
  const std::size_t cells = static_cast<std::size_t>(m.rows()) * static_cast<std::size_t>(m.cols());
  if (cells > 0 && 2 * m.nonzeros() > cells) return rref_dense(m);
  return rref_sparse(m);
}

int rank(const Matrix& m) { return rref(m).rank; }

std::vector<DenseVector> kernel_basis(const Matrix& m) {
  RrefResult red = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : red.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<DenseVector> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    DenseVector v(static_cast<std::size_t>(m.cols()));
    v[static_cast<std::size_t>(f)] = 1;
    for (int i = 0; i < red.rank; ++i) {
      Scalar x = red.echelon.at(i, f);
      if (x != 0) v[static_cast<std::size_t>(red.pivots[static_cast<std::size_t>(i)])] = -x;
    }
    out.push_back(std::move(v));
  }
  return out;
}

bool subspace_equal(const std::vector<DenseVector>& a, const std::vector<DenseVector>& b,
                    int dim) {
  for (const auto* side : {&a, &b})
    for (const auto& v : *side)
      if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("dimension mismatch");
  RrefResult ra = rref(Matrix::from_dense(a, dim));
  RrefResult rb = rref(Matrix::from_dense(b, dim));
  return ra.rank == rb.rank && ra.echelon == rb.echelon;
}

bool in_span(const std::vector<DenseVector>& basis, const DenseVector& v) {
  const int dim = static_cast<int>(v.size());
  EchelonBasis e(dim);
  for (const auto& b : basis) e.add(to_sparse(b));
  return e.contains(to_sparse(v));
}

std::vector<DenseVector> inverse(const std::vector<DenseVector>& m) {
  const std::size_t n = m.size();
  std::vector<DenseVector> aug;
  aug.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("inverse of a non-square matrix");
    DenseVector row = m[i];
    row.resize(2 * n);
    row[n + i] = 1;
    aug.push_back(std::move(row));
  }
  RrefResult red = rref_dense(Matrix::from_dense(aug, static_cast<int>(2 * n)));
  if (red.rank < static_cast<int>(n) || (n > 0 && red.pivots[n - 1] != static_cast<int>(n - 1)))
    throw std::domain_error("singular matrix");
  std::vector<DenseVector> inv(n, DenseVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv[i][j] = red.echelon.at(static_cast<int>(i), static_cast<int>(n + j));
  return inv;
}

DenseVector apply_matrix(const std::vector<DenseVector>& m, const DenseVector& v) {
  DenseVector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size()) throw std::invalid_argument("shape mismatch in apply");
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) out[i] += m[i][j] * v[j];
  }
  return out;
}

}  // namespace chordal
