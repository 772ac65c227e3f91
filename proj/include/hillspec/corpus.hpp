#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hillspec/potential.hpp"

namespace hillspec {

struct CorpusEntry {
  std::string name;  // file stem
  std::string description;
  nlohmann::json document;  // potential file contents
  FourierPotential potential;
};

// Zero, constants, single cosines, a sine, multi-mode and seeded random
// trigonometric polynomials, and grid-sampled c_n = n^-s families
// (s = 2.5, 3, 4; 1 <= |n| <= 48, N = 128). Deterministic given the seed.
std::vector<CorpusEntry> builtin_corpus(std::uint64_t seed = 1);

// c_n = n^-s for 1 <= |n| <= degree.
FourierPotential power_law_potential(double s, int degree);

// Writes <name>.cfg for every entry plus manifest.txt; returns the paths.
std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir, std::uint64_t seed);

}  // namespace hillspec
