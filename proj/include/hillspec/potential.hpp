#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

namespace hillspec {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Boundary condition family. Periodic eigenvalues cluster around (2k pi)^2,
// anti-periodic ones around ((2k+1) pi)^2.
enum class Parity { periodic, antiperiodic };

// Sign of the frequency shift in the G-functions G^{+/-}(x, m).
enum class Shift { plus, minus };

// Real 1-periodic potential q(x) = sum_{|m|<=M} c_m exp(i 2 pi m x),
// stored as its two-sided Fourier table with c_{-m} = conj(c_m).
class FourierPotential {
 public:
  // The zero potential.
  FourierPotential();

  // Rejects tables whose Hermitian defect exceeds kHermitianTolerance
  // (relative to the largest coefficient); smaller defects are symmetrized.
  static FourierPotential from_coefficients(const std::map<int, cplx>& table);

  static constexpr double kHermitianTolerance = 1e-12;

  int degree() const { return degree_; }

  // c_n; zero outside the band.
  cplx coefficient(int n) const {
    return (n < -degree_ || n > degree_) ? cplx{} : coeffs_[n + degree_];
  }

  // Coefficients c_{-M..M}.
  std::span<const cplx> coefficients() const { return coeffs_; }

  double mean() const { return coeffs_[degree_].real(); }

  // max_m |c_m|
  double sup_coefficient() const { return sup_; }

  // sum_m |c_m|; bounds |q(x)| from above.
  double l1_coefficients() const { return l1_; }

  double evaluate(double x) const;

  // q + c
  FourierPotential shifted(double c) const;

  // Coefficient table with exact zeros dropped.
  std::map<int, cplx> table() const;

  bool operator==(const FourierPotential&) const = default;

 private:
  FourierPotential(int degree, std::vector<cplx> coeffs);

  int degree_ = 0;
  std::vector<cplx> coeffs_;
  double sup_ = 0.0;
  double l1_ = 0.0;
};

// c_n = int_0^1 q(x) exp(-i 2 pi n x) dx.
inline cplx fourier_coefficient(const FourierPotential& q, int n) { return q.coefficient(n); }

inline double evaluate(const FourierPotential& q, double x) { return q.evaluate(x); }

// int_0^1 q^2 dx by Parseval.
double l2_norm_squared(const FourierPotential& q);

// FFT of N equispaced samples q(j/N), N a power of two >= 4, truncated at
// |m| <= N/2 - 1.
FourierPotential ingest_grid(std::span<const double> samples);

// Fourier data of the antiderivative Q(x) = int_0^x q(t) dt:
// Q_m = c_m / (i 2 pi m) for m != 0 and Q_0 = int_0^1 Q.
struct AntiderivativeTable {
  int degree = 0;
  std::vector<cplx> coeffs;  // index m + degree, entry at m = 0 unused (zero)
  double c0 = 0.0;
  double mean = 0.0;  // Q_0

  cplx operator[](int m) const {
    return (m == 0 || m < -degree || m > degree) ? cplx{} : coeffs[m + degree];
  }

  // Q(x) including the secular c0 * x part.
  double evaluate(double x) const;
};

AntiderivativeTable antiderivative(const FourierPotential& q);

// Centre frequency index N of the pair with index m: the pair sits at
// (N pi)^2 with N = 2m + 2 (periodic) or N = 2m + 1 (anti-periodic).
constexpr int pair_frequency(Parity parity, int m) {
  return parity == Parity::periodic ? 2 * m + 2 : 2 * m + 1;
}

// Fourier table of G^{+/-}(x, m) - G_0: entries c_{m1 +/- N} / (i 2 pi m1)
// for m1 != 0, with N = pair_frequency(parity, m). Keys with zero value are
// omitted.
std::map<int, cplx> g_coefficients(const FourierPotential& q, int m, Shift sign,
                                   Parity parity = Parity::periodic);

// G^{+/-}(x, m) = int_0^x q(t) exp(-/+ i 2 pi N t) dt - c_{+/-N} x, in closed form.
cplx g_function(const FourierPotential& q, int m, Shift sign, double x,
                Parity parity = Parity::periodic);

}  // namespace hillspec
