#pragma once

#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "hillspec/potential.hpp"

namespace hillspec::cli {

inline constexpr const char* kVersion = "0.1.0";

// Everything that determines a run's numeric output.
struct RunConfig {
  std::string command;  // spectrum | gaps | coeffs | galerkin | asym | verify-thm1 | verify-thm2 | corpus
  std::string potential_path;
  std::string potential_kind;  // filled once the file is read
  std::string potential_digest;
  Parity parity = Parity::periodic;
  int count = 20;
  int cutoff = 0;
  int m_lo = 8;
  int m_hi = 64;
  int n_max = 128;
  int n0 = 32;
  double eps = 1.0;
  double integrator_tol = 1e-13;
  double refine_tol = 1e-10;
  double cluster_tol = 1e-9;
  double rho = 0.7;
  double tau_abs = 1e-3;
  double gamma = 1.2;
  std::string variant = "unperturbed";  // unperturbed | eigenvalue
  std::string source = "galerkin";      // galerkin | floquet
  std::string out;
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& doc);
  // FNV-1a of the canonical JSON form.
  std::string hash() const;
  // Throws DomainError on non-positive tolerances or empty ranges.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

// Entry point. Returns 0 (ok), 1 (bad input or numerical failure) or
// 2 (verification failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hillspec::cli
