#pragma once

// Independent reference computations used by the tests: plain quadrature
// and direct enumeration, sharing no code paths with the library kernels.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "hillspec/potential.hpp"

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// Direct synthesis sum_m c_m e^{i 2 pi m x} with std::polar per term.
inline double synth(const hillspec::FourierPotential& q, double x) {
  cplx s{};
  for (int m = -q.degree(); m <= q.degree(); ++m) s += q.coefficient(m) * std::polar(1.0, 2.0 * pi * m * x);
  return s.real();
}

// Trapezoid (spectrally exact for trigonometric polynomials of degree < n):
// (1/n) sum_j f(j/n) e^{-i 2 pi k j / n}.
inline cplx project(const std::function<cplx(double)>& f, int k, int n) {
  cplx s{};
  for (int j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / n;
    s += f(x) * std::polar(1.0, -2.0 * pi * k * x);
  }
  return s / static_cast<double>(n);
}

inline double mean(const std::function<double(double)>& f, int n) {
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += f(static_cast<double>(j) / n);
  return s / n;
}

// Composite Simpson on [a, b] with 2n panels.
inline cplx simpson(const std::function<cplx(double)>& f, double a, double b, int n) {
  const double h = (b - a) / (2 * n);
  cplx s = f(a) + f(b);
  for (int i = 1; i < 2 * n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Fourth-order classical Runge-Kutta for -y'' + (q - lambda) y = 0 over [0,1].
struct Monodromy {
  double y1, dy1, y2, dy2;
};
inline Monodromy rk4(const hillspec::FourierPotential& q, double lambda, int steps) {
  auto f = [&](double x, const double* y, double* d) {
    const double a = synth(q, x) - lambda;
    d[0] = y[1];
    d[1] = a * y[0];
    d[2] = y[3];
    d[3] = a * y[2];
  };
  double y[4] = {1, 0, 0, 1};
  const double h = 1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    const double x = s * h;
    double k1[4], k2[4], k3[4], k4[4], t[4];
    f(x, y, k1);
    for (int i = 0; i < 4; ++i) t[i] = y[i] + 0.5 * h * k1[i];
    f(x + 0.5 * h, t, k2);
    for (int i = 0; i < 4; ++i) t[i] = y[i] + 0.5 * h * k2[i];
    f(x + 0.5 * h, t, k3);
    for (int i = 0; i < 4; ++i) t[i] = y[i] + h * k3[i];
    f(x + h, t, k4);
    for (int i = 0; i < 4; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return {y[0], y[1], y[2], y[3]};
}

}  // namespace oracle
