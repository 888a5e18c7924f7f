#pragma once

#include "stackyfan/integer.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <variant>
#include <vector>

namespace stackyfan {

/// A point of Z^d with exact entries.
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::vector<Integer> entries);
  IntVector(std::initializer_list<Integer> entries);
  /// The zero vector of length d.
  static IntVector zero(std::size_t d);
  static IntVector unit(std::size_t d, std::size_t i);

  std::size_t size() const { return entries_.size(); }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  Integer& operator[](std::size_t i) { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<Integer>& entries() const { return entries_; }

  bool is_zero() const;
  Integer sum() const;
  /// gcd of the entries (0 for the zero vector).
  Integer content() const;

  friend bool operator==(const IntVector&, const IntVector&) = default;
  friend bool operator<(const IntVector& a, const IntVector& b) { return a.entries_ < b.entries_; }

 private:
  std::vector<Integer> entries_;
};

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator*(const Integer& k, const IntVector& a);
Integer dot(const IntVector& a, const IntVector& b);

/// Dense rows x cols integer matrix; rows are the usual carrier of lattice
/// bases and of lattice maps (row i = image of the i-th basis vector).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<Integer>> rows);
  static IntMatrix diagonal(const std::vector<Integer>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntMatrix transpose() const;
  bool is_diagonal() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Determinant of a square matrix (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);

/// Result of U * A * V = D with U, V unimodular and D in Smith form.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  /// Diagonal of D: nonnegative, each dividing the next; zeros trail.
  std::vector<Integer> divisors;
};

SnfDecomposition smith_normal_form(const IntMatrix& a);

/// L_n = { a in Z^d : a_1 + ... + a_d = 0 (mod n) }.
struct CongruenceLattice {
  std::size_t ambient_dim = 1;
  Integer modulus = 1;

  bool contains(const IntVector& v) const;
  friend bool operator==(const CongruenceLattice&, const CongruenceLattice&) = default;
};

/// Full-rank lattice given by the rows of a square basis matrix.
struct BasisLattice {
  IntMatrix basis;

  std::size_t ambient_dim() const { return basis.cols(); }
  /// Coordinates of v in the basis, or nullopt when v is not in the lattice.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }
};

using Lattice = std::variant<CongruenceLattice, BasisLattice>;

/// Rows form a basis of L_n in Z^d: e_i - e_d (i < d) and n e_d; identity when n = 1.
IntMatrix congruence_basis(std::size_t d, const Integer& n);

/// Explicit conversion from congruence data to a basis.
BasisLattice to_basis(const Lattice& lattice);

/// True iff v is in L and no integer k >= 2 has v / k in L.
bool is_primitive(const IntVector& v, const CongruenceLattice& lattice);

/// Largest k with v / k in L; v / primitive_scale(v) is the primitive generator of the ray.
Integer primitive_scale(const IntVector& v, const CongruenceLattice& lattice);

/// [sup : sub] as the product of the Smith divisors of the inclusion matrix.
Integer lattice_index(const Lattice& sub, const Lattice& sup);

/// Coordinates of each row of `rows` in the basis of `lattice`; nullopt if some row
/// is outside the lattice.
std::optional<IntMatrix> coordinates_in(const IntMatrix& rows, const BasisLattice& lattice);

}  // namespace stackyfan
