#pragma once

#include <string>
#include <vector>

#include "hillspec/potential.hpp"
#include "hillspec/spectrum.hpp"

namespace hillspec {

// Forbidden-index bookkeeping shared by every correction sum. Indices run
// over the band |k| <= M with k != 0 and k != forbidden (= N for the plain
// sums, -N for the primed ones).
struct AdmissibleIndices {
  int degree = 0;
  int forbidden = 0;

  bool admits(int k) const { return k != 0 && k != forbidden && k >= -degree && k <= degree; }

  // f(m1) over admissible m1.
  template <class F>
  void for_each(F&& f) const {
    for (int m1 = -degree; m1 <= degree; ++m1) {
      if (admits(m1)) f(m1);
    }
  }

  // f(m1, m2) over admissible m1 and admissible m1 + m2, |m2| <= M.
  template <class F>
  void for_each_pair(F&& f) const {
    for_each([&](int m1) {
      for_each([&](int s) {
        const int m2 = s - m1;
        if (m2 >= -degree && m2 <= degree) f(m1, m2);
      });
    });
  }
};

// Denominators of the correction sums for pair m at spectral parameter
// lambda = (N pi)^2 + offset:
//   plain   Lambda(k)  = lambda - (N - 2k)^2 pi^2 = offset + 4 pi^2 k (N - k)
//   primed  Lambda'(k) = lambda - (N + 2k)^2 pi^2 = offset - 4 pi^2 k (N + k)
class DenominatorContext {
 public:
  enum class Variant { at_unperturbed, at_eigenvalue };

  static DenominatorContext at_unperturbed(Parity parity, int m, int j = 1);
  // offset = lambda_{pair m, j} - (N pi)^2.
  static DenominatorContext at_eigenvalue(Parity parity, int m, int j, double offset);

  Parity parity() const { return parity_; }
  int m() const { return m_; }
  int j() const { return j_; }
  Variant variant() const { return variant_; }
  int frequency() const { return pair_frequency(parity_, m_); }
  double offset() const { return offset_; }
  double lambda() const;

  // Validated denominators. Throws DomainError when |Lambda(k)| <= |k| |N - k|
  // (validity window violated) and NumericalError when
  // |Lambda(k)| < 1e-8 (1 + |lambda|) (degenerate denominator).
  double plain(int k) const;
  double primed(int k) const;

  AdmissibleIndices plain_indices(int degree) const { return {degree, frequency()}; }
  AdmissibleIndices primed_indices(int degree) const { return {degree, -frequency()}; }

 private:
  DenominatorContext(Parity parity, int m, int j, double offset, Variant variant);
  double checked(double value, int k, int distance) const;

  Parity parity_;
  int m_;
  int j_;
  double offset_;
  Variant variant_;
};

cplx a1_sum(const FourierPotential& q, const DenominatorContext& ctx, bool primed = false);
cplx a2_sum(const FourierPotential& q, const DenominatorContext& ctx, bool primed = false);

struct BSums {
  cplx b1;
  cplx b2;
};
// Plain: c_{N - m1}, c_{N - m1 - m2}. Primed: c_{-N - m1}, c_{-N - m1 - m2}.
BSums b_sums(const FourierPotential& q, const DenominatorContext& ctx, bool primed = false);

// int q^2 / (2 pi N)^2. Requires c_0 = 0 (to 1e-12).
double a1_closed_form(const FourierPotential& q, int m, Parity parity = Parity::periodic);

// -sum_{m1 != 0, N} Q_{m1} Q_{N - m1}, the frequency-N coefficient of
// -(Q - Q_0)^2. Requires c_0 = 0.
cplx b1_integral_form(const FourierPotential& q, int m, Parity parity = Parity::periodic);

// S-sums over m1, m2 != 0, N with T = c_{m1} c_{m2-m1} c_{-m2}:
//   S1 = sum T / (m1 m2),          S2 = sum T / (m2 (N - m1)),
//   S3 = sum T / (m1 (N - m2)),    S4 = sum T / ((N - m1)(N - m2)).
// At the unperturbed point a2 = (S1 + S2 + S3 + S4) / ((2 pi)^4 N^2).
struct SSums {
  cplx s1, s2, s3, s4;
};
SSums s_identities(const FourierPotential& q, int m, Parity parity = Parity::periodic);

struct CorrectionSet {
  cplx a1, a2, b1, b2;
  cplx a1p, a2p, b1p, b2p;
  DenominatorContext::Variant variant = DenominatorContext::Variant::at_unperturbed;
  double remainder_budget = 0.0;
};

CorrectionSet corrections(const FourierPotential& q, const DenominatorContext& ctx);

struct PairPrediction {
  double center_offset = 0.0;  // center - (N pi)^2
  double center = 0.0;
  double splitting = 0.0;

  double lower() const { return center - 0.5 * splitting; }
  double upper() const { return center + 0.5 * splitting; }
};

// center = (N pi)^2 + c_0 + Re(a1 + a2), splitting = 2 |c_N|. Throws
// VerificationError when Im(a1 + a2) exceeds 1e-10.
PairPrediction predict_pair(const FourierPotential& q, int m, const CorrectionSet& corrections,
                            Parity parity = Parity::periodic);

// (ln m / m)^3, m >= 2.
double remainder_budget(double m);

struct RecoveryRow {
  int m = 0;
  double value = 0.0;     // per-m estimate
  double residual = 0.0;  // value - estimate
  double envelope = 0.0;
};

struct C0Recovery {
  double estimate = 0.0;
  double envelope_constant = 0.0;  // C in C ln m / m
  bool inside_envelope = true;
  std::vector<RecoveryRow> rows;
};

// Per m: mean over j of lambda_{pair m, j} - (N pi)^2. The estimate is the
// mean over the upper half of the range; C is fitted on the lower half and
// the upper half is checked against C ln m / m.
C0Recovery recover_c0(const SpectrumTable& spec, Parity parity, int m_lo, int m_hi);

struct L2Recovery {
  double estimate = 0.0;  // value at the largest m
  std::vector<RecoveryRow> rows;  // residual = value - estimate, envelope unused
};

// Per m: (2 pi N)^2 (mean_j offset - c0).
L2Recovery recover_l2norm(const SpectrumTable& spec, Parity parity, double c0,
                          const std::vector<int>& ms);

struct AsymptoticRow {
  int m = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double center_pred = 0.0;
  double split_pred = 0.0;
  double gap_meas = 0.0;
  double resid_center = 0.0;
  double resid_gap = 0.0;
  double m2_resid_center = 0.0;
  double budget = 0.0;
};

struct AsymptoticReport {
  Parity parity = Parity::periodic;
  DenominatorContext::Variant variant = DenominatorContext::Variant::at_unperturbed;
  std::vector<AsymptoticRow> rows;

  static std::vector<std::string> columns();
};

// Compares measured pairs m_lo..m_hi of `spec` against predict_pair.
AsymptoticReport asymptotic_report(const FourierPotential& q, const SpectrumTable& spec,
                                   Parity parity, int m_lo, int m_hi,
                                   DenominatorContext::Variant variant =
                                       DenominatorContext::Variant::at_unperturbed);

}  // namespace hillspec
