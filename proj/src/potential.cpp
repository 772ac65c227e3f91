#include "hillspec/potential.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "hillspec/errors.hpp"

namespace hillspec {

namespace {

cplx unit_phase(double x) { return std::polar(1.0, 2.0 * kPi * x); }

}  // namespace

FourierPotential::FourierPotential() : FourierPotential(0, {cplx{}}) {}

FourierPotential::FourierPotential(int degree, std::vector<cplx> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  for (const cplx& c : coeffs_) {
    sup_ = std::max(sup_, std::abs(c));
    l1_ += std::abs(c);
  }
}

FourierPotential FourierPotential::from_coefficients(const std::map<int, cplx>& table) {
  double scale = 1.0;
  int degree = 0;
  for (const auto& [m, c] : table) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("coefficient c_" + std::to_string(m) + " is not finite");
    }
    scale = std::max(scale, std::abs(c));
    if (c != cplx{}) degree = std::max(degree, std::abs(m));
  }
  auto lookup = [&](int m) {
    auto it = table.find(m);
    return it == table.end() ? cplx{} : it->second;
  };

  std::vector<cplx> coeffs(2 * degree + 1);
  for (int m = 0; m <= degree; ++m) {
    const cplx pos = lookup(m);
    const cplx neg = lookup(-m);
    if (std::abs(pos - std::conj(neg)) > kHermitianTolerance * scale) {
      throw DomainError("coefficients violate c_{-m} = conj(c_m) at m = " + std::to_string(m) +
                        " (potential would not be real)");
    }
    const cplx sym = 0.5 * (pos + std::conj(neg));
    if (m == 0) {
      coeffs[degree] = cplx{sym.real(), 0.0};
    } else {
      coeffs[degree + m] = sym;
      coeffs[degree - m] = std::conj(sym);
    }
  }
  return FourierPotential(degree, std::move(coeffs));
}

double FourierPotential::evaluate(double x) const {
  // c_0 + 2 Re sum_{m>0} c_m z^m; exactly real by construction.
  const cplx z = unit_phase(x);
  cplx zm{1.0, 0.0};
  double sum = 0.0;
  for (int m = 1; m <= degree_; ++m) {
    zm *= z;
    sum += (coeffs_[degree_ + m] * zm).real();
  }
  return coeffs_[degree_].real() + 2.0 * sum;
}

FourierPotential FourierPotential::shifted(double c) const {
  std::vector<cplx> coeffs = coeffs_;
  coeffs[degree_] += c;
  return FourierPotential(degree_, std::move(coeffs));
}

std::map<int, cplx> FourierPotential::table() const {
  std::map<int, cplx> out;
  for (int m = -degree_; m <= degree_; ++m) {
    if (coefficient(m) != cplx{}) out[m] = coefficient(m);
  }
  return out;
}

double l2_norm_squared(const FourierPotential& q) {
  double sum = 0.0;
  for (const cplx& c : q.coefficients()) sum += std::norm(c);
  return sum;
}

FourierPotential ingest_grid(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 4 || !std::has_single_bit(n)) {
    throw DomainError("grid length must be a power of two >= 4, got " + std::to_string(n));
  }
  for (double s : samples) {
    if (!std::isfinite(s)) throw DomainError("grid samples must be finite");
  }

  std::vector<double> in(samples.begin(), samples.end());
  std::vector<fftw_complex> out(n / 2 + 1);
  {
    std::unique_ptr<fftw_plan_s, decltype(&fftw_destroy_plan)> plan(
        fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(), FFTW_ESTIMATE),
        &fftw_destroy_plan);
    fftw_execute(plan.get());
  }

  // Drop pure round-off so the degree reflects the band of the samples.
  const int top = static_cast<int>(n / 2) - 1;
  double peak = 0.0;
  for (int m = 0; m <= top; ++m) peak = std::max(peak, std::hypot(out[m][0], out[m][1]) / n);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * peak;

  std::map<int, cplx> table;
  for (int m = 0; m <= top; ++m) {
    const cplx c{out[m][0] / n, out[m][1] / n};
    if (std::abs(c) <= floor) continue;
    table[m] = c;
    if (m != 0) table[-m] = std::conj(c);
  }
  return FourierPotential::from_coefficients(table);
}

double AntiderivativeTable::evaluate(double x) const {
  // Q(x) = c0 x + sum_{m != 0} Q_m (e^{i 2 pi m x} - 1)
  const cplx z = unit_phase(x);
  cplx zm{1.0, 0.0};
  double sum = 0.0;
  for (int m = 1; m <= degree; ++m) {
    zm *= z;
    sum += ((*this)[m] * (zm - 1.0)).real();
  }
  return c0 * x + 2.0 * sum;
}

AntiderivativeTable antiderivative(const FourierPotential& q) {
  AntiderivativeTable t;
  t.degree = q.degree();
  t.coeffs.assign(2 * t.degree + 1, cplx{});
  t.c0 = q.mean();
  cplx tail{};
  for (int m = -t.degree; m <= t.degree; ++m) {
    if (m == 0) continue;
    const cplx qm = q.coefficient(m) / cplx{0.0, 2.0 * kPi * m};
    t.coeffs[m + t.degree] = qm;
    tail += qm;
  }
  // int_0^1 [c0 x + sum Q_m (e^{..} - 1)] dx
  t.mean = 0.5 * t.c0 - tail.real();
  return t;
}

std::map<int, cplx> g_coefficients(const FourierPotential& q, int m, Shift sign, Parity parity) {
  if (m < 0) throw DomainError("g_coefficients: pair index m must be >= 0");
  const int shift = (sign == Shift::plus ? 1 : -1) * pair_frequency(parity, m);
  std::map<int, cplx> out;
  // c_{m1 + shift} nonzero only for |m1 + shift| <= M.
  for (int k = -q.degree(); k <= q.degree(); ++k) {
    const int m1 = k - shift;
    if (m1 == 0) continue;
    const cplx c = q.coefficient(k);
    if (c == cplx{}) continue;
    out[m1] = c / cplx{0.0, 2.0 * kPi * m1};
  }
  return out;
}

cplx g_function(const FourierPotential& q, int m, Shift sign, double x, Parity parity) {
  // G(x) = sum_{m1 != 0} G_{m1} (e^{i 2 pi m1 x} - 1)
  cplx sum{};
  for (const auto& [m1, g] : g_coefficients(q, m, sign, parity)) {
    sum += g * (unit_phase(m1 * x) - 1.0);
  }
  return sum;
}

}  // namespace hillspec
