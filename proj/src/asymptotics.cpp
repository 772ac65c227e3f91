#include "hillspec/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hillspec/errors.hpp"

namespace hillspec {

namespace {

constexpr double kFourPiSq = 4.0 * kPi * kPi;

void require_zero_mean(const FourierPotential& q, const char* what) {
  if (std::abs(q.mean()) > 1e-12) {
    throw DomainError(std::string(what) + " requires c_0 = 0, got c_0 = " + std::to_string(q.mean()));
  }
}

double centre(int n) { return static_cast<double>(n) * n * kPi * kPi; }

}  // namespace

DenominatorContext::DenominatorContext(Parity parity, int m, int j, double offset, Variant variant)
    : parity_(parity), m_(m), j_(j), offset_(offset), variant_(variant) {
  if (m < 0) throw DomainError("pair index m must be >= 0");
  if (j != 1 && j != 2) throw DomainError("j must be 1 or 2");
  if (!std::isfinite(offset)) throw DomainError("eigenvalue offset must be finite");
}

DenominatorContext DenominatorContext::at_unperturbed(Parity parity, int m, int j) {
  return {parity, m, j, 0.0, Variant::at_unperturbed};
}

DenominatorContext DenominatorContext::at_eigenvalue(Parity parity, int m, int j, double offset) {
  return {parity, m, j, offset, Variant::at_eigenvalue};
}

double DenominatorContext::lambda() const { return centre(frequency()) + offset_; }

double DenominatorContext::checked(double value, int k, int distance) const {
  if (std::abs(value) < 1e-8 * (1.0 + std::abs(lambda()))) {
    throw NumericalError("degenerate denominator Lambda(" + std::to_string(k) + ") = " +
                         std::to_string(value) + " for m = " + std::to_string(m_));
  }
  if (!(std::abs(value) > static_cast<double>(std::abs(k)) * std::abs(distance))) {
    throw DomainError("lambda outside the validity window for m = " + std::to_string(m_) +
                      ": |Lambda(" + std::to_string(k) + ")| = " + std::to_string(std::abs(value)));
  }
  return value;
}

double DenominatorContext::plain(int k) const {
  const int n = frequency();
  return checked(offset_ + kFourPiSq * k * static_cast<double>(n - k), k, n - k);
}

double DenominatorContext::primed(int k) const {
  const int n = frequency();
  return checked(offset_ - kFourPiSq * k * static_cast<double>(n + k), k, n + k);
}

cplx a1_sum(const FourierPotential& q, const DenominatorContext& ctx, bool primed) {
  const AdmissibleIndices idx = primed ? ctx.primed_indices(q.degree()) : ctx.plain_indices(q.degree());
  cplx sum{};
  idx.for_each([&](int m1) {
    const double d = primed ? ctx.primed(m1) : ctx.plain(m1);
    sum += q.coefficient(m1) * q.coefficient(-m1) / d;
  });
  return sum;
}

cplx a2_sum(const FourierPotential& q, const DenominatorContext& ctx, bool primed) {
  const AdmissibleIndices idx = primed ? ctx.primed_indices(q.degree()) : ctx.plain_indices(q.degree());
  cplx sum{};
  idx.for_each_pair([&](int m1, int m2) {
    const double d1 = primed ? ctx.primed(m1) : ctx.plain(m1);
    const double d2 = primed ? ctx.primed(m1 + m2) : ctx.plain(m1 + m2);
    sum += q.coefficient(m1) * q.coefficient(m2) * q.coefficient(-m1 - m2) / (d1 * d2);
  });
  return sum;
}

BSums b_sums(const FourierPotential& q, const DenominatorContext& ctx, bool primed) {
  const int n = ctx.frequency();
  const int target = primed ? -n : n;
  const AdmissibleIndices idx = primed ? ctx.primed_indices(q.degree()) : ctx.plain_indices(q.degree());
  BSums out;
  idx.for_each([&](int m1) {
    const double d = primed ? ctx.primed(m1) : ctx.plain(m1);
    out.b1 += q.coefficient(m1) * q.coefficient(target - m1) / d;
  });
  // m1 + m2 is not confined to the band here: c_{+/-N - m1 - m2} reaches |m1 + m2| <= 2M.
  const AdmissibleIndices wide{2 * q.degree(), idx.forbidden};
  idx.for_each([&](int m1) {
    const double d1 = primed ? ctx.primed(m1) : ctx.plain(m1);
    for (int m2 = -q.degree(); m2 <= q.degree(); ++m2) {
      const int s = m1 + m2;
      if (!wide.admits(s)) continue;
      const cplx c = q.coefficient(target - s);
      if (c == cplx{}) continue;
      const double d2 = primed ? ctx.primed(s) : ctx.plain(s);
      out.b2 += q.coefficient(m1) * q.coefficient(m2) * c / (d1 * d2);
    }
  });
  return out;
}

double a1_closed_form(const FourierPotential& q, int m, Parity parity) {
  require_zero_mean(q, "a1_closed_form");
  if (m < 0) throw DomainError("pair index m must be >= 0");
  const double w = 2.0 * kPi * pair_frequency(parity, m);
  return l2_norm_squared(q) / (w * w);
}

cplx b1_integral_form(const FourierPotential& q, int m, Parity parity) {
  require_zero_mean(q, "b1_integral_form");
  if (m < 0) throw DomainError("pair index m must be >= 0");
  const int n = pair_frequency(parity, m);
  const AntiderivativeTable qt = antiderivative(q);
  cplx sum{};
  AdmissibleIndices{q.degree(), n}.for_each([&](int m1) { sum -= qt[m1] * qt[n - m1]; });
  return sum;
}

SSums s_identities(const FourierPotential& q, int m, Parity parity) {
  require_zero_mean(q, "s_identities");
  if (m < 0) throw DomainError("pair index m must be >= 0");
  const int n = pair_frequency(parity, m);
  SSums s;
  const AdmissibleIndices idx{q.degree(), n};
  idx.for_each([&](int m1) {
    idx.for_each([&](int m2) {
      const cplx t = q.coefficient(m1) * q.coefficient(m2 - m1) * q.coefficient(-m2);
      if (t == cplx{}) return;
      const double p1 = m1, p2 = m2, r1 = n - m1, r2 = n - m2;
      s.s1 += t / (p1 * p2);
      s.s2 += t / (p2 * r1);
      s.s3 += t / (p1 * r2);
      s.s4 += t / (r1 * r2);
    });
  });
  return s;
}

double remainder_budget(double m) {
  if (!(m >= 2.0)) throw DomainError("remainder_budget requires m >= 2");
  const double r = std::log(m) / m;
  return r * r * r;
}

CorrectionSet corrections(const FourierPotential& q, const DenominatorContext& ctx) {
  CorrectionSet c;
  c.a1 = a1_sum(q, ctx);
  c.a2 = a2_sum(q, ctx);
  const BSums b = b_sums(q, ctx);
  c.b1 = b.b1;
  c.b2 = b.b2;
  c.a1p = a1_sum(q, ctx, true);
  c.a2p = a2_sum(q, ctx, true);
  const BSums bp = b_sums(q, ctx, true);
  c.b1p = bp.b1;
  c.b2p = bp.b2;
  c.variant = ctx.variant();
  c.remainder_budget = remainder_budget(std::max(2, ctx.m()));
  return c;
}

PairPrediction predict_pair(const FourierPotential& q, int m, const CorrectionSet& corr, Parity parity) {
  const cplx a = corr.a1 + corr.a2;
  if (std::abs(a.imag()) >= 1e-10) {
    throw VerificationError("Im(a1 + a2) = " + std::to_string(a.imag()) + " for m = " + std::to_string(m) +
                            "; index bookkeeping is inconsistent");
  }
  const int n = pair_frequency(parity, m);
  PairPrediction p;
  p.center_offset = q.mean() + a.real();
  p.center = centre(n) + p.center_offset;
  p.splitting = 2.0 * std::abs(q.coefficient(n));
  return p;
}

namespace {

std::array<double, 2> pair_offsets(const SpectrumTable& spec, Parity parity, int m) {
  const auto& entries = spec.of(parity);
  const int i2 = pair_index(parity, m, 2);
  if (m < 0 || i2 >= static_cast<int>(entries.size())) {
    throw DomainError("pair " + std::to_string(m) + " is not in the spectrum table");
  }
  return {entries[pair_index(parity, m, 1)].offset, entries[i2].offset};
}

}  // namespace

C0Recovery recover_c0(const SpectrumTable& spec, Parity parity, int m_lo, int m_hi) {
  if (m_lo < 2 || m_hi < m_lo + 1) throw DomainError("recover_c0 needs 2 <= m_lo < m_hi");
  C0Recovery out;
  for (int m = m_lo; m <= m_hi; ++m) {
    const auto o = pair_offsets(spec, parity, m);
    out.rows.push_back({m, 0.5 * (o[0] + o[1]), 0.0, 0.0});
  }
  const std::size_t half = out.rows.size() / 2;
  double sum = 0.0;
  for (std::size_t i = half; i < out.rows.size(); ++i) sum += out.rows[i].value;
  out.estimate = sum / static_cast<double>(out.rows.size() - half);

  for (auto& r : out.rows) r.residual = r.value - out.estimate;
  for (std::size_t i = 0; i < half; ++i) {
    const RecoveryRow& r = out.rows[i];
    out.envelope_constant = std::max(out.envelope_constant, std::abs(r.residual) * r.m / std::log(r.m));
  }
  for (auto& r : out.rows) {
    r.envelope = out.envelope_constant * std::log(r.m) / r.m;
    if (&r - out.rows.data() >= static_cast<std::ptrdiff_t>(half) && std::abs(r.residual) > r.envelope) {
      out.inside_envelope = false;
    }
  }
  return out;
}

L2Recovery recover_l2norm(const SpectrumTable& spec, Parity parity, double c0, const std::vector<int>& ms) {
  if (ms.empty()) throw DomainError("recover_l2norm needs a non-empty m range");
  L2Recovery out;
  for (int m : ms) {
    const auto o = pair_offsets(spec, parity, m);
    const double w = 2.0 * kPi * pair_frequency(parity, m);
    out.rows.push_back({m, w * w * (0.5 * (o[0] + o[1]) - c0), 0.0, 0.0});
  }
  out.estimate = out.rows.back().value;
  for (auto& r : out.rows) r.residual = r.value - out.estimate;
  return out;
}

std::vector<std::string> AsymptoticReport::columns() {
  return {"m",          "lambda1",   "lambda2",   "center_pred",     "split_pred",
          "gap_meas",   "resid_center", "resid_gap", "m2_resid_center", "budget"};
}

AsymptoticReport asymptotic_report(const FourierPotential& q, const SpectrumTable& spec, Parity parity,
                                   int m_lo, int m_hi, DenominatorContext::Variant variant) {
  if (m_lo < 0 || m_hi < m_lo) throw DomainError("invalid m range");
  AsymptoticReport report;
  report.parity = parity;
  report.variant = variant;
  const auto& entries = spec.of(parity);
  for (int m = m_lo; m <= m_hi; ++m) {
    const auto o = pair_offsets(spec, parity, m);
    double centre_pred = 0.0;
    double split = 0.0;
    for (int j = 1; j <= 2; ++j) {
      const DenominatorContext ctx = variant == DenominatorContext::Variant::at_unperturbed
                                         ? DenominatorContext::at_unperturbed(parity, m, j)
                                         : DenominatorContext::at_eigenvalue(parity, m, j, o[j - 1]);
      CorrectionSet c;
      c.a1 = a1_sum(q, ctx);
      c.a2 = a2_sum(q, ctx);
      const PairPrediction p = predict_pair(q, m, c, parity);
      centre_pred += 0.5 * p.center_offset;
      split = p.splitting;
    }
    AsymptoticRow row;
    row.m = m;
    row.lambda1 = entries[pair_index(parity, m, 1)].lambda;
    row.lambda2 = entries[pair_index(parity, m, 2)].lambda;
    row.center_pred = centre(pair_frequency(parity, m)) + centre_pred;
    row.split_pred = split;
    row.gap_meas = o[1] - o[0];
    row.resid_center = 0.5 * (o[0] + o[1]) - centre_pred;
    row.resid_gap = row.gap_meas - split;
    row.m2_resid_center = static_cast<double>(m) * m * row.resid_center;
    row.budget = remainder_budget(std::max(2, m));
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace hillspec
