#pragma once

#include <array>
#include <optional>

#include "hillspec/potential.hpp"
#include "hillspec/spectrum.hpp"

namespace hillspec {

// Fundamental solutions of -y'' + q y = lambda y at x = 1:
// y1(0) = 1, y1'(0) = 0 and y2(0) = 0, y2'(0) = 1.
struct FloquetState {
  double y1 = 1.0;
  double dy1 = 0.0;
  double y2 = 0.0;
  double dy2 = 1.0;
  // d/dlambda of (y1, y1', y2, y2') at x = 1, when requested.
  std::optional<std::array<double, 4>> dlambda;
  int steps = 0;
  int rejected = 0;

  // W - 1, evaluated in extended precision on the integrator's state.
  double wronskian_defect = 0.0;

  double wronskian() const { return 1.0 + wronskian_defect; }
  double discriminant() const { return y1 + dy2; }
};

// Adaptive Dormand-Prince 8(5,3) integration over [0, 1] with mixed
// absolute/relative local error control at `tol` (1e-14 < tol < 1e-4).
// Throws NumericalError on step-size underflow or step budget exhaustion.
FloquetState integrate_floquet(const FourierPotential& q, double lambda, double tol,
                               bool with_sensitivities = false);

// Fixed-step fourth-order Magnus integrator (two-point Gauss), used as an
// independent cross-check. The per-step propagator has determinant one.
FloquetState integrate_floquet_magnus(const FourierPotential& q, double lambda, int steps);

// Delta(lambda) = y1(1) + y2'(1).
double discriminant(const FourierPotential& q, double lambda, double tol);

// dDelta/dlambda from the augmented sensitivity system.
double discriminant_derivative(const FourierPotential& q, double lambda, double tol);

struct SpectrumOptions {
  double integrator_tol = 1e-13;
  // Refinement stops when the last correction is below refine_tol * (1 + |lambda|).
  double refine_tol = 1e-10;
  double cluster_tol = 1e-9;
  int max_iterations = 60;
  // Galerkin seed cutoff; 0 picks the default.
  int cutoff = 0;
  // 0 reads HILLSPEC_THREADS (default: hardware concurrency).
  int threads = 0;
};

// First `count` periodic and anti-periodic eigenvalues, seeded by the
// Galerkin truncation and refined on the monodromy matrix. Verifies
// interlacing before returning.
SpectrumTable compute_spectrum(const FourierPotential& q, int count,
                               const SpectrumOptions& options = {});

// Refines one eigenvalue from `seed_offset` (relative to the free value),
// staying within `trust_radius` of the seed.
SpectrumEntry refine_eigenvalue(const FourierPotential& q, Parity parity, int index,
                                double seed_offset, double trust_radius,
                                const SpectrumOptions& options);

}  // namespace hillspec
