#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "dop853_tableau.hpp"
#include "hillspec/errors.hpp"
#include "hillspec/floquet.hpp"

namespace hillspec {

namespace {

// y = (y1, y1', y2, y2'[, z1, z1', z2, z2']) with z = dy/dlambda.
template <std::size_t D>
struct HillSystem {
  const FourierPotential& q;
  double lambda;

  void operator()(double x, const std::array<long double, D>& y, std::array<long double, D>& f) const {
    const long double a = static_cast<long double>(q.evaluate(x)) - lambda;
    f[0] = y[1];
    f[1] = a * y[0];
    f[2] = y[3];
    f[3] = a * y[2];
    if constexpr (D == 8) {
      f[4] = y[5];
      f[5] = a * y[4] - y[0];
      f[6] = y[7];
      f[7] = a * y[6] - y[2];
    }
  }
};

template <std::size_t D>
FloquetState run_dop853(const FourierPotential& q, double lambda, double tol) {
  namespace tab = detail::dop853;
  // The state is carried in extended precision; at negative lambda the
  // Wronskian cancels products of size e^{2 sqrt(-lambda)}.
  using State = std::array<long double, D>;
  constexpr double kSafety = 0.9;
  constexpr double kMinFactor = 0.2;
  constexpr double kMaxFactor = 10.0;
  constexpr double kExponent = -1.0 / 8.0;
  constexpr long kMaxSteps = 5'000'000;

  const HillSystem<D> rhs{q, lambda};
  State y{};
  y[0] = 1.0;
  y[3] = 1.0;

  std::array<State, tab::kStages + 1> k{};
  rhs(0.0, y, k[0]);

  double x = 0.0;
  // Steps longer than half a period of the top harmonic alias the error estimate.
  const double h_max = 0.5 / (q.degree() + 1);
  double h = std::min(h_max, 0.05 / (1.0 + std::sqrt(std::abs(lambda) + q.l1_coefficients())));
  bool last_rejected = false;
  FloquetState out;

  while (x < 1.0) {
    const double min_step = 10.0 * std::abs(std::nextafter(x, 2.0) - x);
    if (h < min_step) {
      throw NumericalError("integrate_floquet: step size underflow at x = " + std::to_string(x) +
                           ", lambda = " + std::to_string(lambda));
    }
    if (out.steps + out.rejected > kMaxSteps) {
      throw NumericalError("integrate_floquet: step budget exhausted at lambda = " +
                           std::to_string(lambda));
    }
    h = std::min(h, h_max);
    const double x_new = std::min(1.0, x + h);
    const double step = x_new - x;

    for (int s = 1; s < tab::kStages; ++s) {
      State ys = y;
      for (int r = 0; r < s; ++r) {
        const long double a = tab::kA[s][r];
        if (a == 0.0L) continue;
        for (std::size_t i = 0; i < D; ++i) ys[i] += step * a * k[r][i];
      }
      rhs(x + tab::kC[s] * step, ys, k[s]);
    }
    State y_new = y;
    for (int s = 0; s < tab::kStages; ++s) {
      if (tab::kB[s] == 0.0) continue;
      const long double b = tab::kB[s];
      for (std::size_t i = 0; i < D; ++i) y_new[i] += step * b * k[s][i];
    }
    rhs(x_new, y_new, k[tab::kStages]);

    double e5 = 0.0;
    double e3 = 0.0;
    for (std::size_t i = 0; i < D; ++i) {
      const double scale = tol + tol * static_cast<double>(std::max(std::abs(y[i]), std::abs(y_new[i])));
      double s5 = 0.0;
      double s3 = 0.0;
      for (int s = 0; s <= tab::kStages; ++s) {
        s5 += tab::kE5[s] * static_cast<double>(k[s][i]);
        s3 += tab::kE3[s] * static_cast<double>(k[s][i]);
      }
      e5 += (s5 / scale) * (s5 / scale);
      e3 += (s3 / scale) * (s3 / scale);
    }
    double err = 0.0;
    if (e5 > 0.0 || e3 > 0.0) err = step * e5 / std::sqrt((e5 + 0.01 * e3) * D);

    if (err < 1.0) {
      double factor = err == 0.0 ? kMaxFactor : std::min(kMaxFactor, kSafety * std::pow(err, kExponent));
      if (last_rejected) factor = std::min(1.0, factor);
      h = step * factor;
      x = x_new;
      y = y_new;
      k[0] = k[tab::kStages];
      ++out.steps;
      last_rejected = false;
    } else {
      h = step * std::max(kMinFactor, kSafety * std::pow(err, kExponent));
      ++out.rejected;
      last_rejected = true;
    }
  }

  out.y1 = static_cast<double>(y[0]);
  out.dy1 = static_cast<double>(y[1]);
  out.y2 = static_cast<double>(y[2]);
  out.dy2 = static_cast<double>(y[3]);
  out.wronskian_defect = static_cast<double>(y[0] * y[3] - y[1] * y[2] - 1.0L);
  if constexpr (D == 8) {
    out.dlambda = std::array<double, 4>{static_cast<double>(y[4]), static_cast<double>(y[5]),
                                        static_cast<double>(y[6]), static_cast<double>(y[7])};
  }
  return out;
}

void check_tolerance(double tol) {
  if (!(tol > 1e-14 && tol < 1e-4)) {
    throw DomainError("integrator tolerance must lie in (1e-14, 1e-4), got " + std::to_string(tol));
  }
}

}  // namespace

FloquetState integrate_floquet(const FourierPotential& q, double lambda, double tol,
                               bool with_sensitivities) {
  check_tolerance(tol);
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
  return with_sensitivities ? run_dop853<8>(q, lambda, tol) : run_dop853<4>(q, lambda, tol);
}

FloquetState integrate_floquet_magnus(const FourierPotential& q, double lambda, int steps) {
  if (steps < 1) throw DomainError("Magnus integrator needs at least one step");
  const double h = 1.0 / steps;
  const double g1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double g2 = 0.5 + std::sqrt(3.0) / 6.0;
  // Omega = [[d, h], [h (a1 + a2) / 2, -d]], d = sqrt(3) h^2 (a1 - a2) / 12
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;  // columns (y1, y1') and (y2, y2')
  for (int n = 0; n < steps; ++n) {
    const double x = n * h;
    const double a1 = q.evaluate(x + g1 * h) - lambda;
    const double a2 = q.evaluate(x + g2 * h) - lambda;
    const double d = std::sqrt(3.0) * h * h * (a1 - a2) / 12.0;
    const double o12 = h;
    const double o21 = 0.5 * h * (a1 + a2);
    const double s = d * d + o12 * o21;  // Omega^2 = s I
    double c, sc;
    if (s > 0.0) {
      const double r = std::sqrt(s);
      c = std::cosh(r);
      sc = std::sinh(r) / r;
    } else if (s < 0.0) {
      const double r = std::sqrt(-s);
      c = std::cos(r);
      sc = std::sin(r) / r;
    } else {
      c = 1.0;
      sc = 1.0;
    }
    const double e11 = c + sc * d;
    const double e12 = sc * o12;
    const double e21 = sc * o21;
    const double e22 = c - sc * d;
    const double n11 = e11 * m11 + e12 * m21;
    const double n12 = e11 * m12 + e12 * m22;
    const double n21 = e21 * m11 + e22 * m21;
    const double n22 = e21 * m12 + e22 * m22;
    m11 = n11;
    m12 = n12;
    m21 = n21;
    m22 = n22;
  }
  FloquetState out;
  out.y1 = m11;
  out.y2 = m12;
  out.dy1 = m21;
  out.dy2 = m22;
  out.wronskian_defect =
      static_cast<double>(static_cast<long double>(m11) * m22 - static_cast<long double>(m21) * m12 - 1.0L);
  out.steps = steps;
  return out;
}

double discriminant(const FourierPotential& q, double lambda, double tol) {
  return integrate_floquet(q, lambda, tol).discriminant();
}

double discriminant_derivative(const FourierPotential& q, double lambda, double tol) {
  const FloquetState s = integrate_floquet(q, lambda, tol, true);
  return (*s.dlambda)[0] + (*s.dlambda)[3];
}

}  // namespace hillspec
