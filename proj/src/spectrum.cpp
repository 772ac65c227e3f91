#include "hillspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "hillspec/errors.hpp"

namespace hillspec {

PairLabel pair_label(Parity parity, int index) {
  if (parity == Parity::periodic) {
    if (index == 0) return {-1, 0};
    return {(index - 1) / 2, (index - 1) % 2 + 1};
  }
  return {index / 2, index % 2 + 1};
}

int pair_index(Parity parity, int m, int j) {
  return parity == Parity::periodic ? 2 * m + j : 2 * m + j - 1;
}

int free_frequency(Parity parity, int index) {
  if (parity == Parity::periodic) return 2 * ((index + 1) / 2);
  return 2 * (index / 2) + 1;
}

double free_eigenvalue(Parity parity, int index) {
  const double k = free_frequency(parity, index) * kPi;
  return k * k;
}

SpectrumEntry make_entry(Parity parity, int index, double offset, double residual) {
  SpectrumEntry e;
  e.index = index;
  e.offset = offset;
  e.lambda = free_eigenvalue(parity, index) + offset;
  e.residual = residual;
  e.label = pair_label(parity, index);
  return e;
}

void merge_clusters(std::vector<SpectrumEntry>& entries, Parity parity, double cluster_tol) {
  const std::size_t first = parity == Parity::periodic ? 1 : 0;
  for (std::size_t i = first; i + 1 < entries.size(); i += 2) {
    SpectrumEntry& a = entries[i];
    SpectrumEntry& b = entries[i + 1];
    if (std::abs(b.offset - a.offset) < cluster_tol * (1.0 + std::abs(a.lambda))) {
      const double mid = 0.5 * (a.offset + b.offset);
      a = make_entry(parity, a.index, mid, a.residual);
      b = make_entry(parity, b.index, mid, b.residual);
    }
  }
}

void check_interlacing(const SpectrumTable& spectrum) {
  // Interleave into the order lambda_0, mu_0, mu_1, lambda_1, lambda_2, mu_2, ...
  struct Item {
    double value;
    const char* name;
    int index;
  };
  std::vector<Item> seq;
  const auto& per = spectrum.periodic;
  const auto& anti = spectrum.antiperiodic;
  if (per.empty()) return;
  seq.push_back({per[0].lambda, "lambda", 0});
  for (std::size_t k = 0;; k += 2) {
    // mu_k, mu_{k+1}, lambda_{k+1}, lambda_{k+2}
    if (k < anti.size()) seq.push_back({anti[k].lambda, "mu", static_cast<int>(k)});
    if (k + 1 < anti.size()) seq.push_back({anti[k + 1].lambda, "mu", static_cast<int>(k + 1)});
    if (k + 1 < per.size()) seq.push_back({per[k + 1].lambda, "lambda", static_cast<int>(k + 1)});
    if (k + 2 < per.size()) seq.push_back({per[k + 2].lambda, "lambda", static_cast<int>(k + 2)});
    if (k + 2 >= anti.size() || k + 3 >= per.size()) break;
  }

  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const Item& a = seq[i];
    const Item& b = seq[i + 1];
    // Within a pair (same family) the link is non-strict; across families strict.
    const bool same_family = std::string(a.name) == b.name;
    const double slack = same_family ? spectrum.cluster_tol * (1.0 + std::abs(a.value)) : 0.0;
    const bool ok = same_family ? (b.value - a.value >= -slack) : (b.value > a.value);
    if (!ok) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "interlacing violated: " << a.name << '_' << a.index << " = " << a.value
          << (same_family ? " > " : " >= ") << b.name << '_' << b.index << " = " << b.value;
      throw VerificationError(msg.str());
    }
  }
}

GapTable gap_table(const SpectrumTable& spectrum) {
  GapTable table;
  const auto& per = spectrum.periodic;
  const auto& anti = spectrum.antiperiodic;
  for (int n = 1;; ++n) {
    const std::vector<SpectrumEntry>& src = (n % 2 == 1) ? anti : per;
    const int lo = n - 1;  // mu_{2m} for n = 2m+1, lambda_{2m+1} for n = 2m+2
    if (lo + 1 >= static_cast<int>(src.size())) break;
    GapEntry g;
    g.n = n;
    g.left = src[lo].lambda;
    g.right = src[lo + 1].lambda;
    g.length = g.right - g.left;
    table.entries.push_back(g);
  }
  return table;
}

}  // namespace hillspec
