#pragma once

// Exact dense linear algebra over the rationals, sized for rank <= 6 ambient
// spaces: row reduction, kernels, linear solves, definiteness tests, and a
// Hermite normal form for integer lattice bases.

#include "horoke/rational.hpp"

#include <optional>
#include <vector>

namespace horoke {

// Row-major rational matrix.
struct QMat {
  std::vector<QVec> rows;

  QMat() = default;
  QMat(size_t r, size_t c) : rows(r, QVec(c, Rat(0))) {}

  size_t nrows() const { return rows.size(); }
  size_t ncols() const { return rows.empty() ? 0 : rows[0].size(); }
  Rat& at(size_t i, size_t j) { return rows[i][j]; }
  const Rat& at(size_t i, size_t j) const { return rows[i][j]; }

  static QMat identity(size_t n);
  QMat transpose() const;
};

QMat mat_mul(const QMat& a, const QMat& b);
QVec mat_vec(const QMat& a, const QVec& x);

// In-place Gauss-Jordan; returns pivot column indices.
std::vector<size_t> rref(QMat& m);

size_t rank(QMat m);

// Basis of the right kernel {x : Ax = 0}.
std::vector<QVec> kernel_basis(const QMat& a);

// Solves Ax = b; nullopt when inconsistent. Underdetermined systems return
// one solution (free variables set to zero).
std::optional<QVec> solve(const QMat& a, const QVec& b);

std::optional<QMat> inverse(const QMat& a);

Rat det(QMat m);

// Sylvester criterion with exact arithmetic. `on_span` restricts the form to
// the span of the given vectors first.
bool is_positive_definite(const QMat& gram);
bool is_positive_definite_on_span(const QMat& gram, const std::vector<QVec>& span);

// Column-style Hermite normal form of an integer matrix (entries must be
// integral rationals); returns a basis of the lattice generated by the
// columns, as columns of the result. Used for saturated sublattices.
QMat hnf_column_basis(const QMat& int_cols);

// Basis of the direction-space lattice Z^d ∩ span(dirs), for rational dirs.
std::vector<QVec> saturated_lattice_basis(const std::vector<QVec>& dirs, size_t dim);

}  // namespace horoke
