#pragma once

#include <complex>
#include <vector>

#include "braggsim/projection.hpp"

namespace braggsim {

/// Dense complex matrix, row-major. Small dimensions only (the two-mode
/// truncated spaces here are at most a few dozen states per side).
struct Cmat {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> data;

  Cmat() = default;
  Cmat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, cplx(0.0, 0.0)) {}

  cplx& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  const cplx& operator()(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

  static Cmat identity(int n);
};

/// Density matrix over the joint basis |m, n>, composite index
/// i = m * (n_max + 1) + n.
struct DensityMatrix {
  int n_max = 2;
  Cmat entries;

  int dim() const { return entries.rows; }
};

/// rho = |state><state|; requires the state normalized to 1e-9.
DensityMatrix density_matrix(const JointState& state);

/// Transpose on the second mode: out[(i,j),(m,n)] = in[(i,n),(m,j)].
/// The result is Hermitian and trace-one but may be indefinite.
DensityMatrix partial_transpose(const DensityMatrix& rho, int n_max);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Cmat vectors;                // columns match values
};

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// ascending. Throws std::invalid_argument when the input fails the
/// Hermiticity tolerance (1e-10 relative to the largest entry).
std::vector<double> hermitian_eigenvalues(const Cmat& matrix);

/// Eigenvalues plus the accumulated rotation matrix (columns = eigenvectors).
EigenSystem hermitian_eigensystem(const Cmat& matrix);

/// Singular values of the amplitude matrix, descending; sum of squares is 1
/// for a normalized state.
std::vector<double> schmidt_coefficients(const JointState& state);

/// Partial-transpose spectrum of a pure state predicted from its Schmidt
/// values: {lambda_i^2} plus {+-lambda_i lambda_j, i < j}, ascending (the
/// zero padding comes out of the formula itself).
std::vector<double> pt_spectrum_oracle(const std::vector<double>& schmidt);

/// Normal-ordered moment <A^dag^p A^q B^dag^r B^s>. Exact on the truncated
/// state because lowering happens before raising. Throws when any power
/// exceeds n_max (no representable transition).
cplx expectation(const JointState& state, int p, int q, int r, int s);

}  // namespace braggsim
