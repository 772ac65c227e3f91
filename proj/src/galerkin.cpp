#include "hillspec/galerkin.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hillspec/errors.hpp"

namespace hillspec {

namespace {

std::vector<int> basis_modes(Parity parity, int cutoff) {
  std::vector<int> modes;
  const int hi = parity == Parity::periodic ? cutoff : cutoff - 1;
  for (int k = -cutoff; k <= hi; ++k) modes.push_back(k);
  return modes;
}

int mode_frequency(Parity parity, int k) { return parity == Parity::periodic ? 2 * k : 2 * k + 1; }

// A - diag(w^2): the potential coupling c_{j-k}, c_0 on the diagonal.
Eigen::MatrixXcd coupling_matrix(const FourierPotential& q, const std::vector<int>& modes) {
  const int n = static_cast<int>(modes.size());
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) b(r, s) = q.coefficient(modes[r] - modes[s]);
  }
  return b;
}

std::array<double, 2> hermitian2_eigenvalues(const Eigen::Matrix2cd& h) {
  const double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double half = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double radius = std::hypot(half, std::abs(h(0, 1)));
  return {mean - radius, mean + radius};
}

Eigen::Vector2cd hermitian2_eigenvector(const Eigen::Matrix2cd& h, double value) {
  // Pick the better-conditioned row of (H - value I) v = 0.
  const cplx a = h(0, 0) - value;
  const cplx b = h(0, 1);
  const cplx c = h(1, 0);
  const cplx d = h(1, 1) - value;
  Eigen::Vector2cd v;
  if (std::abs(a) + std::abs(b) >= std::abs(c) + std::abs(d)) {
    v << b, -a;
  } else {
    v << d, -c;
  }
  const double norm = v.norm();
  if (norm == 0.0) return Eigen::Vector2cd(1.0, 0.0);
  return v / norm;
}

}  // namespace

int TruncatedOperator::frequency(int row) const { return mode_frequency(parity, modes.at(row)); }

int default_cutoff(int requested_index, int degree) {
  return std::max(2 * requested_index + 8, degree + 8);
}

TruncatedOperator assemble(const FourierPotential& q, Parity parity, int cutoff) {
  if (cutoff < q.degree() + 2) {
    throw DomainError("Galerkin cutoff K = " + std::to_string(cutoff) +
                      " must be at least M + 2 = " + std::to_string(q.degree() + 2));
  }
  TruncatedOperator op;
  op.parity = parity;
  op.cutoff = cutoff;
  op.modes = basis_modes(parity, cutoff);
  op.matrix = coupling_matrix(q, op.modes);
  for (int r = 0; r < op.dimension(); ++r) {
    const double w = op.frequency(r) * kPi;
    op.matrix(r, r) += w * w;
  }
  return op;
}

int EigenpairSet::row_of_frequency(int signed_frequency) const {
  const bool even = signed_frequency % 2 == 0;
  if (even != (parity == Parity::periodic)) return -1;
  const int k = parity == Parity::periodic ? signed_frequency / 2 : (signed_frequency - 1) / 2;
  const int hi = parity == Parity::periodic ? cutoff : cutoff - 1;
  if (k < -cutoff || k > hi) return -1;
  return k + cutoff;
}

EigenpairSet eigen(const TruncatedOperator& op, int count) {
  if (count < 0 || count > op.dimension()) {
    throw DomainError("requested " + std::to_string(count) + " eigenpairs from a matrix of dimension " +
                      std::to_string(op.dimension()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge (dimension " +
                         std::to_string(op.dimension()) + ")");
  }
  EigenpairSet out;
  out.parity = op.parity;
  out.cutoff = op.cutoff;
  out.modes = op.modes;
  out.matrix_norm = op.matrix.norm();
  out.vectors = solver.eigenvectors().leftCols(count);
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + count);

  for (int i = 0; i < count; ++i) {
    auto v = out.vectors.col(i);
    for (Eigen::Index r = 0; r < v.size(); ++r) {
      const double mag = std::abs(v(r));
      if (mag > 1e-12) {
        v *= std::conj(v(r)) / mag;
        v(r) = cplx{mag, 0.0};
        break;
      }
    }
    out.residuals.push_back((op.matrix * v - out.values[i] * v).norm());
  }
  return out;
}

std::array<EdgeCoefficients, 2> edge_coefficients(const EigenpairSet& pairs, int m) {
  if (m < 0) throw DomainError("edge_coefficients: m must be >= 0");
  const int n = pair_frequency(pairs.parity, m);
  const int row_plus = pairs.row_of_frequency(n);
  const int row_minus = pairs.row_of_frequency(-n);
  if (row_plus < 0 || row_minus < 0) {
    throw DomainError("edge modes of pair " + std::to_string(m) + " lie outside the cutoff");
  }
  const double centre = n * n * kPi * kPi;
  const double window = 2.0 * kPi * kPi * (n == 1 ? 2 : n - 1);

  std::array<EdgeCoefficients, 2> out;
  for (int j = 1; j <= 2; ++j) {
    const int idx = pair_index(pairs.parity, m, j);
    if (idx >= pairs.count()) {
      throw DomainError("eigenpair " + std::to_string(idx) + " was not computed");
    }
    const double theta = pairs.values[idx];
    if (std::abs(theta - centre) >= window) {
      throw DomainError("pairing ambiguous: eigenvalue " + std::to_string(theta) + " of index " +
                        std::to_string(idx) + " is not near (N pi)^2 = " + std::to_string(centre) +
                        "; m is too small");
    }
    const auto v = pairs.vectors.col(idx);
    EdgeCoefficients& e = out[j - 1];
    e.index = idx;
    e.eigenvalue = theta;
    e.u = v(row_plus);
    e.v = v(row_minus);
    for (Eigen::Index r = 0; r < v.size(); ++r) {
      if (r != row_plus && r != row_minus) e.tail += std::norm(v(r));
    }
  }
  return out;
}

SpectrumTable galerkin_spectrum(const FourierPotential& q, int count, int cutoff) {
  if (count < 1) throw DomainError("count must be positive");
  const int k = cutoff > 0 ? cutoff : default_cutoff(count, q.degree());
  SpectrumTable table;
  for (Parity parity : {Parity::periodic, Parity::antiperiodic}) {
    const EigenpairSet pairs = eigen(assemble(q, parity, k), count);
    auto& entries = table.of(parity);
    for (int i = 0; i < count; ++i) {
      entries.push_back(make_entry(parity, i, pairs.values[i] - free_eigenvalue(parity, i),
                                   pairs.residuals[i]));
    }
    merge_clusters(entries, parity, table.cluster_tol);
  }
  return table;
}

std::array<double, 2> refine_pair_offsets(const FourierPotential& q, Parity parity, int m,
                                          int cutoff) {
  if (m < 0) throw DomainError("refine_pair_offsets: m must be >= 0");
  const int n = pair_frequency(parity, m);
  // Modes beyond ~2M hops from the edge modes contribute below round-off.
  const int k = cutoff > 0 ? cutoff : std::max(n / 2 + 2 * q.degree() + 16, q.degree() + 2);
  const TruncatedOperator op = assemble(q, parity, k);
  const std::vector<int>& modes = op.modes;
  const int dim = op.dimension();

  std::vector<int> p_rows, q_rows;
  for (int r = 0; r < dim; ++r) {
    const int w = mode_frequency(parity, modes[r]);
    (std::abs(w) == n ? p_rows : q_rows).push_back(r);
  }
  if (p_rows.size() != 2) throw DomainError("edge modes outside the cutoff");
  if (mode_frequency(parity, modes[p_rows[0]]) < 0) std::swap(p_rows[0], p_rows[1]);  // (+N, -N)

  const Eigen::MatrixXcd b = coupling_matrix(q, modes);
  const int nq = static_cast<int>(q_rows.size());
  Eigen::Matrix2cd b_pp;
  Eigen::MatrixXcd b_qp(nq, 2), b_qq(nq, nq);
  Eigen::VectorXd d_q(nq);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) b_pp(i, j) = b(p_rows[i], p_rows[j]);
  }
  for (int a = 0; a < nq; ++a) {
    const long w = mode_frequency(parity, modes[q_rows[a]]);
    d_q(a) = static_cast<double>((w - n) * (w + n)) * kPi * kPi;  // exact integer product
    for (int j = 0; j < 2; ++j) b_qp(a, j) = b(q_rows[a], p_rows[j]);
    for (int c = 0; c < nq; ++c) b_qq(a, c) = b(q_rows[a], q_rows[c]);
  }

  // Seeds from the dense solve of the same truncation.
  const EigenpairSet dense = eigen(op, pair_index(parity, m, 2) + 1);
  std::array<double, 2> out{};
  for (int j = 1; j <= 2; ++j) {
    const double centre = static_cast<double>(n) * n * kPi * kPi;
    double delta = dense.values[pair_index(parity, m, j)] - centre;
    // Newton on f(delta) = delta - eig_j(H(delta)); f' = 1 + ||X v||^2 >= 1.
    for (int it = 0; it < 50; ++it) {
      Eigen::MatrixXcd r = -b_qq;
      r.diagonal().array() += delta - d_q.array();
      const Eigen::MatrixXcd x = r.partialPivLu().solve(b_qp);
      Eigen::Matrix2cd h = b_pp + b_qp.adjoint() * x;
      h = 0.5 * (h + h.adjoint()).eval();
      const double e = hermitian2_eigenvalues(h)[j - 1];
      const Eigen::Vector2cd v = hermitian2_eigenvector(h, e);
      const double f = delta - e;
      const double df = 1.0 + (x * v).squaredNorm();
      const double step = f / df;
      delta -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(delta))) {
        break;
      }
      if (it == 49) throw NumericalError("pair refinement did not converge for m = " + std::to_string(m));
    }
    out[j - 1] = delta;
  }
  if (out[0] > out[1]) std::swap(out[0], out[1]);
  return out;
}

void polish_pairs(SpectrumTable& table, const FourierPotential& q, Parity parity,
                  const std::vector<int>& ms, int cutoff) {
  auto& entries = table.of(parity);
  for (int m : ms) {
    const int i1 = pair_index(parity, m, 1);
    const int i2 = pair_index(parity, m, 2);
    if (i2 >= static_cast<int>(entries.size())) {
      throw DomainError("pair " + std::to_string(m) + " is beyond the spectrum table");
    }
    const auto offsets = refine_pair_offsets(q, parity, m, cutoff);
    entries[i1] = make_entry(parity, i1, offsets[0], entries[i1].residual);
    entries[i2] = make_entry(parity, i2, offsets[1], entries[i2].residual);
  }
}

}  // namespace hillspec
