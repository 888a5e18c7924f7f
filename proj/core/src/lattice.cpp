#include "stackyfan/lattice.hpp"

#include "stackyfan/error.hpp"
#include "stackyfan/linalg.hpp"

#include <algorithm>
#include <utility>

namespace stackyfan {

// ---------------------------------------------------------------- IntVector

IntVector::IntVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
IntVector::IntVector(std::initializer_list<Integer> entries) : entries_(entries) {}

IntVector IntVector::zero(std::size_t d) { return IntVector(std::vector<Integer>(d, Integer(0))); }

IntVector IntVector::unit(std::size_t d, std::size_t i) {
  IntVector v = zero(d);
  v[i] = 1;
  return v;
}

bool IntVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

Integer IntVector::sum() const {
  Integer s = 0;
  for (const auto& x : entries_) s += x;
  return s;
}

Integer IntVector::content() const {
  Integer g = 0;
  for (const auto& x : entries_) g = gcd(g, abs(x));
  return g;
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  std::vector<Integer> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return IntVector(std::move(out));
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  std::vector<Integer> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return IntVector(std::move(out));
}

IntVector operator*(const Integer& k, const IntVector& a) {
  std::vector<Integer> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = k * a[i];
  return IntVector(std::move(out));
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) throw DomainError("matrix needs at least one row");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<Integer>> rows) {
  std::vector<IntVector> vs;
  for (const auto& r : rows) vs.emplace_back(r);
  return from_rows(vs);
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(std::vector<Integer>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix dimension mismatch in product");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) {
  linalg::QMatrix q(a.rows(), linalg::QVector(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) q[i][j] = Rational(a(i, j));
  return linalg::rank(std::move(q));
}

// ---------------------------------------------------------------- Smith form

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += k * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw DomainError("smith_normal_form of an empty matrix");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Pivot: minimal absolute nonzero entry, first in row-major order.
      std::size_t pi = m, pj = n;
      Integer best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          const Integer x = abs(d(i, j));
          if (pi == m || x < best) {
            best = x;
            pi = i;
            pj = j;
          }
        }
      if (pi == m) break;  // remaining block is zero

      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        const Integer q = d(i, t) / d(t, t);
        add_row(d, i, t, -q);
        add_row(u, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        const Integer q = d(t, j) / d(t, t);
        add_col(d, j, t, -q);
        add_col(v, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::size_t bad_row = m;
      for (std::size_t i = t + 1; i < m && bad_row == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row != m) {
        add_row(d, t, bad_row, 1);
        add_row(u, t, bad_row, 1);
        continue;
      }
      if (d(t, t) < 0) {
        add_row(d, t, t, -2);
        add_row(u, t, t, -2);
      }
      break;
    }
  }

  SnfDecomposition out{u, d, v, {}};
  out.divisors.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) out.divisors.push_back(d(i, i));
  return out;
}

// ---------------------------------------------------------------- lattices

bool CongruenceLattice::contains(const IntVector& v) const {
  if (v.size() != ambient_dim) return false;
  return v.sum() % modulus == 0;
}

std::optional<IntVector> BasisLattice::coordinates(const IntVector& v) const {
  const std::size_t d = basis.rows();
  if (v.size() != basis.cols() || d != basis.cols()) return std::nullopt;
  // x * B = v  <=>  B^T x = v
  linalg::QMatrix bt(d, linalg::QVector(d));
  linalg::QVector rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) bt[i][j] = Rational(basis(j, i));
    rhs[i] = Rational(v[i]);
  }
  auto x = linalg::solve(std::move(bt), std::move(rhs));
  if (!x) return std::nullopt;
  std::vector<Integer> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (denominator((*x)[i]) != 1) return std::nullopt;
    out[i] = numerator((*x)[i]);
  }
  return IntVector(std::move(out));
}

IntMatrix congruence_basis(std::size_t d, const Integer& n) {
  if (d == 0 || n < 1) throw DomainError("congruence_basis needs d >= 1 and n >= 1");
  if (n == 1) return IntMatrix::identity(d);
  IntMatrix b(d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    b(i, i) = 1;
    b(i, d - 1) = -1;
  }
  b(d - 1, d - 1) = n;
  return b;
}

BasisLattice to_basis(const Lattice& lattice) {
  if (const auto* c = std::get_if<CongruenceLattice>(&lattice))
    return BasisLattice{congruence_basis(c->ambient_dim, c->modulus)};
  return std::get<BasisLattice>(lattice);
}

Integer primitive_scale(const IntVector& v, const CongruenceLattice& lattice) {
  if (v.size() != lattice.ambient_dim) throw DomainError("vector length does not match the lattice");
  if (v.is_zero()) throw DomainError("the zero vector has no primitive generator");
  if (!lattice.contains(v)) throw DomainError("vector is not in the lattice");
  const Integer g = v.content();
  const Integer s = v.sum();
  // v / k is in L_n iff k | g and n | s / k; scan divisors of g from the top.
  Integer best = 1;
  for (Integer k = 1; k * k <= g; ++k) {
    if (g % k != 0) continue;
    for (const Integer& c : {k, Integer(g / k)})
      if (c > best && (s / c) % lattice.modulus == 0) best = c;
  }
  return best;
}

bool is_primitive(const IntVector& v, const CongruenceLattice& lattice) {
  return lattice.contains(v) && primitive_scale(v, lattice) == 1;
}

std::optional<IntMatrix> coordinates_in(const IntMatrix& rows, const BasisLattice& lattice) {
  IntMatrix out(rows.rows(), lattice.basis.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    auto c = lattice.coordinates(rows.row(i));
    if (!c) return std::nullopt;
    for (std::size_t j = 0; j < c->size(); ++j) out(i, j) = (*c)[j];
  }
  return out;
}

Integer lattice_index(const Lattice& sub, const Lattice& sup) {
  const BasisLattice b_sub = to_basis(sub);
  const BasisLattice b_sup = to_basis(sup);
  for (const auto* b : {&b_sub, &b_sup})
    if (b->basis.rows() != b->basis.cols() || determinant(b->basis) == 0)
      throw DomainError("lattice_index needs full-rank lattices");
  if (b_sub.ambient_dim() != b_sup.ambient_dim()) throw DomainError("lattices live in different ambient spaces");
  const auto inclusion = coordinates_in(b_sub.basis, b_sup);
  if (!inclusion) throw DomainError("lattice_index: sub is not contained in sup");
  Integer index = 1;
  for (const auto& d : smith_normal_form(*inclusion).divisors) index *= d;
  return index;
}

}  // namespace stackyfan
