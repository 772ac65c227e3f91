#include "hillspec/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hillspec/errors.hpp"
#include "hillspec/galerkin.hpp"

namespace hillspec {

double DecaySequence::scaled(int n) const {
  return std::pow(static_cast<double>(n), exponent) * std::abs(values.at(n - n_min));
}

std::string to_string(DecayClass c) {
  switch (c) {
    case DecayClass::small_o: return "small_o";
    case DecayClass::big_O_only: return "big_O_only";
    case DecayClass::not_big_O: return "not_big_O";
  }
  return "unknown";
}

DecayVerdict classify(const DecaySequence& seq, const DecayThresholds& thresholds) {
  if (seq.n_min < 4 || seq.values.empty() || seq.n_max() < 4 * seq.n_min) {
    throw DomainError("classify needs n_min >= 4 and n_max >= 4 n_min (got " + std::to_string(seq.n_min) +
                      ".." + std::to_string(seq.n_max()) + ")");
  }
  if (!(thresholds.rho > 0.0) || !(thresholds.tau_abs > 0.0) || !(thresholds.gamma > 0.0)) {
    throw DomainError("decay thresholds must be positive");
  }
  DecayVerdict v;
  v.thresholds = thresholds;
  for (int lo = seq.n_min; lo <= seq.n_max(); lo *= 2) {
    const int hi = std::min(2 * lo - 1, seq.n_max());
    if (!v.blocks.empty() && 2 * (hi - lo + 1) < lo) {
      v.blocks.back().hi = hi;
    } else {
      v.blocks.push_back({lo, hi, 0.0, 0.0});
    }
  }
  for (auto& b : v.blocks) {
    for (int n = b.lo; n <= b.hi; ++n) b.max_scaled = std::max(b.max_scaled, seq.scaled(n));
  }
  for (std::size_t k = 1; k < v.blocks.size(); ++k) {
    const double prev = v.blocks[k - 1].max_scaled;
    const double cur = v.blocks[k].max_scaled;
    v.blocks[k].ratio = cur == 0.0 ? 0.0 : (prev == 0.0 ? std::numeric_limits<double>::infinity() : cur / prev);
  }

  const std::size_t first = v.blocks.size() > 4 ? v.blocks.size() - 3 : 1;
  double worst = 0.0;
  for (std::size_t k = first; k < v.blocks.size(); ++k) worst = std::max(worst, v.blocks[k].ratio);
  v.tail_statistic = worst;

  if (worst <= thresholds.rho || v.blocks.back().max_scaled < thresholds.tau_abs) {
    v.classification = DecayClass::small_o;
  } else if (worst <= thresholds.gamma) {
    v.classification = DecayClass::big_O_only;
  } else {
    v.classification = DecayClass::not_big_O;
  }
  return v;
}

Theorem1Report theorem1_harness(const FourierPotential& q, int n_max, const SpectrumOptions& options,
                                const DecayThresholds& thresholds) {
  if (n_max < 16 || n_max > 200) throw DomainError("theorem 1 harness needs 16 <= n_max <= 200");
  Theorem1Report r;
  r.n_max = n_max;
  r.n_min = std::max(4, n_max / 8);

  const SpectrumTable spec = compute_spectrum(q, n_max + 1, options);
  const GapTable gaps = gap_table(spec);

  DecaySequence gap_seq{r.n_min, {}, 2};
  DecaySequence coeff_seq{r.n_min, {}, 2};
  for (int n = r.n_min; n <= n_max; ++n) {
    gap_seq.values.push_back(gaps.at(n).length);
    coeff_seq.values.push_back(std::abs(q.coefficient(n)));
  }
  r.gaps = classify(gap_seq, thresholds);
  r.coefficients = classify(coeff_seq, thresholds);

  const auto rank = [](DecayClass c) { return static_cast<int>(c); };
  if (r.gaps.classification == DecayClass::small_o && r.coefficients.classification != DecayClass::small_o) {
    r.o_implication_holds = false;
  }
  if (rank(r.gaps.classification) <= rank(DecayClass::big_O_only) &&
      r.coefficients.classification == DecayClass::not_big_O) {
    r.O_implication_holds = false;
  }

  for (int n = 1; n <= n_max; ++n) {
    const double two_c = 2.0 * std::abs(q.coefficient(n));
    const double resolution = spec.cluster_tol * (1.0 + n * n * kPi * kPi);
    if (0.5 * two_c > 10.0 * resolution) {
      const double gap = gaps.at(n).length;
      r.ratios.push_back({n, gap, two_c, gap / two_c});
    }
  }
  return r;
}

Theorem2Report theorem2_harness(const FourierPotential& q, int n0, double eps, const SpectrumOptions& options,
                                const Theorem2Options& recovery) {
  if (n0 < 4 || 2 * n0 + 1 > 400) throw DomainError("theorem 2 harness needs 4 <= n0 <= 199");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  Theorem2Report r;
  r.n0 = n0;
  r.eps = eps;

  const int count = 2 * n0 + 1;
  const SpectrumTable spec = compute_spectrum(q, count, options);
  const GapTable gaps = gap_table(spec);
  for (int n = n0 + 1; n <= 2 * n0; ++n) {
    if (!(gaps.at(n).length < eps / (static_cast<double>(n) * n)) && r.hypothesis_holds) {
      r.hypothesis_holds = false;
      r.first_hypothesis_failure = n;
    }
    const Parity parity = n % 2 == 0 ? Parity::periodic : Parity::antiperiodic;
    const double target = n * n * kPi * kPi;
    const double tol = 10.0 * options.refine_tol * (1.0 + target);
    bool found = false;
    for (const auto& e : spec.of(parity)) found = found || std::abs(e.lambda - target) < tol;
    if (!found && r.membership_holds) {
      r.membership_holds = false;
      r.first_membership_failure = n;
    }
  }

  const int m_lo = std::max(2, n0 / 2);
  const int m_hi = n0 - 1;
  SpectrumTable fine = galerkin_spectrum(q, count, options.cutoff);
  std::vector<int> ms;
  for (int m = m_lo; m <= m_hi; ++m) ms.push_back(m);
  polish_pairs(fine, q, Parity::periodic, ms);
  r.c0 = recover_c0(fine, Parity::periodic, m_lo, m_hi);
  // The chain first settles c0 = 0, then recovers int q^2 with that value.
  r.c0_resolution = std::max(recovery.c0_tol, r.c0.envelope_constant * std::log(m_hi) / m_hi);
  const bool c0_zero = std::abs(r.c0.estimate) <= r.c0_resolution;
  const double c0 = c0_zero ? 0.0 : r.c0.estimate;
  r.l2 = recover_l2norm(fine, Parity::periodic, c0, ms);

  if (r.hypothesis_holds && r.membership_holds) {
    const bool zero = c0_zero && std::abs(r.l2.estimate) < recovery.l2_tol;
    r.conclusion = zero ? "consistent with q = 0" : "contradiction";
  } else {
    r.conclusion = "no conclusion";
  }
  return r;
}

}  // namespace hillspec
