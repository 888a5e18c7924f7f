#pragma once

#include "stackyfan/integer.hpp"

#include <cstddef>
#include <optional>
#include <vector>

// Small exact dense linear algebra over Q, used by the geometric modules.
namespace stackyfan::linalg {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

/// Solves the square system a * x = b; nullopt when a is singular.
std::optional<QVector> solve(QMatrix a, QVector b);

std::size_t rank(QMatrix a);

/// Basis of { x : a * x = 0 } (a has `cols` columns).
std::vector<QVector> nullspace(QMatrix a, std::size_t cols);

/// Affine rank (dimension of the affine hull) of a point set; -1 if empty.
int affine_rank(const std::vector<QVector>& points);

/// Scales a rational vector to a primitive integer vector with the same
/// direction (first nonzero entry keeps its sign).
std::vector<Integer> primitive_integer(const QVector& v);

Rational dot(const QVector& a, const QVector& b);

}  // namespace stackyfan::linalg
