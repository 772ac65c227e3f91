#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "hillspec/potential.hpp"
#include "hillspec/spectrum.hpp"

namespace hillspec {

// Restriction of -d^2/dx^2 + q to span{exp(i w_k x)} with w_k = 2 k pi,
// |k| <= K (periodic, 2K+1 modes) or w_k = (2k+1) pi, -K <= k < K
// (anti-periodic, 2K modes). A[j,k] = w_j^2 delta_jk + c_{j-k}.
struct TruncatedOperator {
  Parity parity = Parity::periodic;
  int cutoff = 0;
  std::vector<int> modes;  // k per row
  Eigen::MatrixXcd matrix;

  int dimension() const { return static_cast<int>(modes.size()); }
  // w_k / pi for row r: 2k or 2k+1.
  int frequency(int row) const;
};

// Requires K >= M + 2.
TruncatedOperator assemble(const FourierPotential& q, Parity parity, int cutoff);

// K = max(2 * requested_index + 8, M + 8).
int default_cutoff(int requested_index, int degree);

struct EigenpairSet {
  Parity parity = Parity::periodic;
  int cutoff = 0;
  std::vector<int> modes;
  std::vector<double> values;      // ascending
  Eigen::MatrixXcd vectors;        // column i pairs with values[i]; unit norm
  std::vector<double> residuals;   // ||A v - theta v||
  double matrix_norm = 0.0;        // Frobenius norm of A

  int count() const { return static_cast<int>(values.size()); }
  // Row holding frequency w = sign * N pi, or -1 when outside the cutoff.
  int row_of_frequency(int signed_frequency) const;
};

// Lowest `count` eigenpairs. The phase of every eigenvector is fixed by
// making its first non-negligible component real and positive.
EigenpairSet eigen(const TruncatedOperator& op, int count);

// Expansion of the eigenfunctions of pair m on the two edge modes
// exp(+/- i N pi x): u = (Psi, e^{+}), v = (Psi, e^{-}), plus the weight on
// every other mode.
struct EdgeCoefficients {
  int index = 0;
  double eigenvalue = 0.0;
  cplx u;
  cplx v;
  double tail = 0.0;  // sum over the remaining modes of |(Psi, e_k)|^2

  double norm_defect() const { return std::norm(u) + std::norm(v) - 1.0; }
};

// Throws DomainError when either eigenvalue of the pair is not within
// 2 pi^2 (N - 1) of (N pi)^2 (pairing ambiguous; m too small).
std::array<EdgeCoefficients, 2> edge_coefficients(const EigenpairSet& pairs, int m);

// Galerkin spectrum table for both parities (no Floquet refinement).
SpectrumTable galerkin_spectrum(const FourierPotential& q, int count, int cutoff = 0);

// Offsets lambda_{pair} - (N pi)^2 of pair m, computed from the Schur
// complement onto the two edge modes so that they carry full relative
// precision even when (N pi)^2 is large. Same truncated operator as
// assemble(q, parity, cutoff). Returns {j = 1, j = 2} in ascending order.
std::array<double, 2> refine_pair_offsets(const FourierPotential& q, Parity parity, int m,
                                          int cutoff = 0);

// Replaces the pair offsets of pairs `ms` in the table by refined values.
void polish_pairs(SpectrumTable& table, const FourierPotential& q, Parity parity,
                  const std::vector<int>& ms, int cutoff = 0);

}  // namespace hillspec
