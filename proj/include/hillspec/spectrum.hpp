#pragma once

#include <vector>

#include "hillspec/potential.hpp"

namespace hillspec {

// Label (m, j) of an eigenvalue inside its asymptotic pair: periodic
// lambda_{2m+j}, anti-periodic mu_{2m+j-1}. The isolated ground state
// lambda_0 carries m = -1, j = 0.
struct PairLabel {
  int m = 0;
  int j = 0;
};

PairLabel pair_label(Parity parity, int index);

// Index of the j-th (1 or 2) member of pair m.
int pair_index(Parity parity, int m, int j);

// N with free eigenvalue (N pi)^2 for the given index (q = 0 spectrum).
int free_frequency(Parity parity, int index);

double free_eigenvalue(Parity parity, int index);

struct SpectrumEntry {
  int index = 0;
  double lambda = 0.0;
  // lambda - free_eigenvalue(index), carried separately so that small
  // corrections survive at large lambda.
  double offset = 0.0;
  // |Delta(lambda) -/+ 2| for Floquet entries, ||A v - theta v|| for Galerkin.
  double residual = 0.0;
  PairLabel label;
};

struct SpectrumTable {
  std::vector<SpectrumEntry> periodic;
  std::vector<SpectrumEntry> antiperiodic;
  // Relative tolerance below which a pair is reported as a closed gap.
  double cluster_tol = 1e-9;

  const std::vector<SpectrumEntry>& of(Parity parity) const {
    return parity == Parity::periodic ? periodic : antiperiodic;
  }
  std::vector<SpectrumEntry>& of(Parity parity) {
    return parity == Parity::periodic ? periodic : antiperiodic;
  }
};

// Rebuilds an entry's lambda from its offset and fills the pair label.
SpectrumEntry make_entry(Parity parity, int index, double offset, double residual);

// Pairs whose members are closer than cluster_tol * (1 + |lambda|) are
// collapsed onto their mean.
void merge_clusters(std::vector<SpectrumEntry>& entries, Parity parity, double cluster_tol);

// Checks lambda_0 < mu_0 <= mu_1 < lambda_1 <= lambda_2 < mu_2 <= ...,
// the non-strict links up to the clustering tolerance. Throws
// VerificationError on violation.
void check_interlacing(const SpectrumTable& spectrum);

// Finite instability interval n: odd n = 2m+1 is (mu_{2m}, mu_{2m+1}),
// even n = 2m+2 is (lambda_{2m+1}, lambda_{2m+2}).
struct GapEntry {
  int n = 0;
  double left = 0.0;
  double right = 0.0;
  double length = 0.0;
};

struct GapTable {
  std::vector<GapEntry> entries;  // entries[n - 1] is gap n

  int size() const { return static_cast<int>(entries.size()); }
  const GapEntry& at(int n) const { return entries.at(n - 1); }
};

GapTable gap_table(const SpectrumTable& spectrum);

}  // namespace hillspec
