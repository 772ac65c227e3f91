#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "hillspec/potential.hpp"

namespace hillspec {

// Potential file schema:
//   {"kind": "coeffs",  "coeffs": {"1": [re, im], "-1": [re, im], ...}}
//   {"kind": "samples", "samples": [q(0), q(1/N), ..., q((N-1)/N)]}
struct PotentialFile {
  std::string kind;
  FourierPotential potential;
};

PotentialFile parse_potential(const nlohmann::json& doc);
// Throws DomainError("cannot read potential file ...") on I/O failure.
PotentialFile load_potential(const std::filesystem::path& path);

nlohmann::json coeffs_document(const FourierPotential& q);
nlohmann::json samples_document(std::span<const double> samples);

// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

// Writes via a sibling temporary file and rename, so that readers never
// observe partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Shortest round-trip decimal form of a double.
std::string format_double(double x);

// CSV with a leading "# config=<hash>" line.
class CsvTable {
 public:
  CsvTable(std::string config_hash, std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::string hash_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace hillspec
