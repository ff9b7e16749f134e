#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qsm/rational.hpp"

namespace qsm {

/// Dimension of the span of `rows`, by exact Gaussian elimination.
/// Throws DimensionError when the rows have different lengths.
std::size_t rank(std::span<const QVector> rows);
std::size_t rank(std::span<const IntVector> rows);

/// Basis of {x : row . x = 0 for every row}, each vector primitive integral.
/// `dim` is needed when `rows` is empty.
std::vector<IntVector> kernel(std::span<const QVector> rows, std::size_t dim);

/// Solves the square system M x = b. Throws DomainError when M is singular.
QVector solve(std::span<const QVector> m, const QVector& b);

/// v / gcd(v). Throws DomainError on the zero vector.
IntVector primitive(const IntVector& v);

/// Smallest positive rational multiple of `v` that is a primitive integer vector.
IntVector primitive(const QVector& v);

} // namespace qsm
