#pragma once

#include <string>
#include <vector>

#include "hillspec/asymptotics.hpp"
#include "hillspec/floquet.hpp"
#include "hillspec/potential.hpp"

namespace hillspec {

struct DecaySequence {
  int n_min = 0;
  std::vector<double> values;  // s_n for n = n_min, n_min + 1, ...
  int exponent = 2;

  int n_max() const { return n_min + static_cast<int>(values.size()) - 1; }
  double scaled(int n) const;  // n^p |s_n|
};

enum class DecayClass { small_o, big_O_only, not_big_O };

std::string to_string(DecayClass c);

struct DecayThresholds {
  double rho = 0.7;       // block-to-block decay factor for small_o
  double tau_abs = 1e-3;  // absolute floor on the final block maximum
  double gamma = 1.2;     // block-to-block growth bound for big_O
};

struct DyadicBlock {
  int lo = 0;
  int hi = 0;  // inclusive
  double max_scaled = 0.0;
  double ratio = 0.0;  // max / previous max; 0 for the first block
};

struct DecayVerdict {
  DecayClass classification = DecayClass::small_o;
  double tail_statistic = 0.0;  // largest ratio over the tested transitions
  std::vector<DyadicBlock> blocks;
  DecayThresholds thresholds;
};

// Dyadic blocks [n_min 2^k, n_min 2^{k+1}) of n^p |s_n|; a trailing block
// shorter than half its nominal length is merged into its predecessor.
// Over the last (up to) three block transitions:
//   small_o    every ratio <= rho, or the final block max < tau_abs
//   big_O_only every ratio <= gamma
//   not_big_O  otherwise
// Requires n_min >= 4 and n_max >= 4 n_min.
DecayVerdict classify(const DecaySequence& seq, const DecayThresholds& thresholds = {});

struct RatioRow {
  int n = 0;
  double gap = 0.0;
  double two_c = 0.0;
  double ratio = 0.0;
};

struct Theorem1Report {
  int n_min = 0;
  int n_max = 0;
  DecayVerdict gaps;
  DecayVerdict coefficients;
  bool o_implication_holds = true;  // gaps small_o => coefficients small_o
  bool O_implication_holds = true;  // gaps O => coefficients O
  std::vector<RatioRow> ratios;     // n with |c_n| above 10x solver resolution

  bool holds() const { return o_implication_holds && O_implication_holds; }
};

// Gap and coefficient sequences over [n_min, n_max], n_min = max(4, n_max / 8).
Theorem1Report theorem1_harness(const FourierPotential& q, int n_max,
                                 const SpectrumOptions& options = {},
                                 const DecayThresholds& thresholds = {});

struct Theorem2Options {
  double c0_tol = 1e-6;
  double l2_tol = 1e-3;
};

struct Theorem2Report {
  int n0 = 0;
  double eps = 0.0;
  bool hypothesis_holds = true;  // l_n < eps n^-2 for n0 < n <= 2 n0
  int first_hypothesis_failure = 0;
  bool membership_holds = true;  // (n pi)^2 in the spectrum for n0 < n <= 2 n0
  int first_membership_failure = 0;
  C0Recovery c0;
  double c0_resolution = 0.0;  // max(c0_tol, C ln m_hi / m_hi)
  L2Recovery l2;
  std::string conclusion;  // "consistent with q = 0" | "no conclusion" | "contradiction"

  bool contradiction() const { return conclusion == "contradiction"; }
};

// Membership tolerance: 10 refine_tol (1 + (n pi)^2). Recoveries use the
// Galerkin spectrum with Schur-refined pairs over m in [n0/2, n0 - 1]; a
// recovered c0 within c0_resolution is taken as 0 in the int q^2 recovery.
Theorem2Report theorem2_harness(const FourierPotential& q, int n0, double eps,
                                const SpectrumOptions& options = {},
                                const Theorem2Options& recovery = {});

}  // namespace hillspec
