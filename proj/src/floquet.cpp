#include "hillspec/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hillspec/errors.hpp"
#include "hillspec/galerkin.hpp"
#include "parallel.hpp"

namespace hillspec {

namespace {

// Root of det(T + t B) nearest to zero; T = M(lambda) - sigma I, B = dM/dlambda.
double pencil_step(const FloquetState& s, double sigma) {
  const auto& d = *s.dlambda;
  const double t11 = s.y1 - sigma, t12 = s.y2, t21 = s.dy1, t22 = s.dy2 - sigma;
  const double b11 = d[0], b12 = d[2], b21 = d[1], b22 = d[3];
  const double a = b11 * b22 - b12 * b21;
  const double b = t11 * b22 + t22 * b11 - t12 * b21 - t21 * b12;
  const double c = t11 * t22 - t12 * t21;
  if (c == 0.0) return 0.0;
  if (a == 0.0) return b == 0.0 ? 0.0 : -c / b;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return -b / (2.0 * a);  // nearly double root: vertex of the quadratic
  const double root = std::sqrt(disc);
  const double qv = -0.5 * (b + std::copysign(root, b));
  if (qv == 0.0) return 0.0;
  const double r1 = qv / a;
  const double r2 = c / qv;
  return std::abs(r1) < std::abs(r2) ? r1 : r2;
}

double seed_trust_radius(const std::vector<double>& seeds, Parity parity, int index) {
  const PairLabel own = pair_label(parity, index);
  double nearest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < static_cast<int>(seeds.size()); ++k) {
    if (k == index) continue;
    const PairLabel other = pair_label(parity, k);
    if (other.m == own.m && own.m >= 0) continue;  // partner may coincide
    nearest = std::min(nearest, std::abs(seeds[k] - seeds[index]));
  }
  if (!std::isfinite(nearest)) nearest = 4.0 * kPi * kPi;
  return 0.5 * nearest;
}

}  // namespace

SpectrumEntry refine_eigenvalue(const FourierPotential& q, Parity parity, int index,
                                double seed_offset, double trust_radius,
                                const SpectrumOptions& options) {
  const double sigma = parity == Parity::periodic ? 1.0 : -1.0;
  const double base = free_eigenvalue(parity, index);
  double offset = seed_offset;
  for (int it = 0; it < options.max_iterations; ++it) {
    const FloquetState s = integrate_floquet(q, base + offset, options.integrator_tol, true);
    const double t = pencil_step(s, sigma);
    offset = std::clamp(offset + t, seed_offset - trust_radius, seed_offset + trust_radius);
    const double lambda = base + offset;
    if (std::abs(t) < options.refine_tol * (1.0 + std::abs(lambda))) {
      const double residual = std::abs(discriminant(q, lambda, options.integrator_tol) - 2.0 * sigma);
      if (std::abs(offset - seed_offset) >= trust_radius) {
        throw NumericalError("refinement of index " + std::to_string(index) +
                             " left its trust region (missed root)");
      }
      return make_entry(parity, index, offset, residual);
    }
  }
  throw NumericalError("refinement of " + std::string(parity == Parity::periodic ? "periodic" : "anti-periodic") +
                       " index " + std::to_string(index) + " did not converge in " +
                       std::to_string(options.max_iterations) + " iterations");
}

SpectrumTable compute_spectrum(const FourierPotential& q, int count, const SpectrumOptions& options) {
  if (count < 1 || count > 400) {
    throw DomainError("count must lie in [1, 400], got " + std::to_string(count));
  }
  if (!(options.refine_tol > 0.0) || !(options.cluster_tol > 0.0)) {
    throw DomainError("tolerances must be positive");
  }
  const int cutoff = options.cutoff > 0 ? options.cutoff : default_cutoff(count, q.degree());

  SpectrumTable table;
  table.cluster_tol = options.cluster_tol;
  for (Parity parity : {Parity::periodic, Parity::antiperiodic}) {
    const EigenpairSet seeds_set = eigen(assemble(q, parity, cutoff), count);
    std::vector<double> seeds(seeds_set.values.begin(), seeds_set.values.end());

    std::vector<SpectrumEntry>& entries = table.of(parity);
    entries.resize(count);
    detail::parallel_for(count, options.threads, [&](int i) {
      const double radius = seed_trust_radius(seeds, parity, i);
      entries[i] = refine_eigenvalue(q, parity, i, seeds[i] - free_eigenvalue(parity, i), radius, options);
    });

    // Count cross-check: refined values must keep the Galerkin ordering.
    for (int i = 0; i + 1 < count; ++i) {
      const double slack = options.cluster_tol * (1.0 + std::abs(entries[i].lambda));
      if (entries[i + 1].lambda < entries[i].lambda - slack) {
        throw NumericalError("root ordering broken at index " + std::to_string(i) +
                             "; a root was missed or found twice");
      }
      if (entries[i + 1].lambda < entries[i].lambda) {
        std::swap(entries[i].offset, entries[i + 1].offset);
        entries[i] = make_entry(parity, i, entries[i].offset, entries[i].residual);
        entries[i + 1] = make_entry(parity, i + 1, entries[i + 1].offset, entries[i + 1].residual);
      }
    }
    merge_clusters(entries, parity, options.cluster_tol);
  }
  check_interlacing(table);
  return table;
}

}  // namespace hillspec
