#include "hillspec/corpus.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "hillspec/errors.hpp"
#include "hillspec/io.hpp"

namespace hillspec {

namespace {

CorpusEntry from_table(std::string name, std::string description, const std::map<int, cplx>& table) {
  FourierPotential q = FourierPotential::from_coefficients(table);
  return {std::move(name), std::move(description), coeffs_document(q), q};
}

CorpusEntry random_entry(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::map<int, cplx> table;
  for (int k = 1; k <= degree; ++k) {
    const cplx c{unit(rng) / k, unit(rng) / k};
    table[k] = c;
    table[-k] = std::conj(c);
  }
  return from_table("random_m" + std::to_string(degree), "seeded random trigonometric polynomial", table);
}

CorpusEntry sampled_power_law(const std::string& tag, double s) {
  constexpr int kGrid = 128;
  const FourierPotential exact = power_law_potential(s, 48);
  std::vector<double> samples(kGrid);
  for (int j = 0; j < kGrid; ++j) samples[j] = exact.evaluate(static_cast<double>(j) / kGrid);
  return {"decay_s" + tag, "grid-sampled c_n = n^-" + tag + ", |n| <= 48, N = 128",
          samples_document(samples), ingest_grid(samples)};
}

}  // namespace

FourierPotential power_law_potential(double s, int degree) {
  std::map<int, cplx> table;
  for (int n = 1; n <= degree; ++n) {
    const double c = std::pow(static_cast<double>(n), -s);
    table[n] = c;
    table[-n] = c;
  }
  return FourierPotential::from_coefficients(table);
}

std::vector<CorpusEntry> builtin_corpus(std::uint64_t seed) {
  const cplx i{0.0, 1.0};
  std::vector<CorpusEntry> out;
  out.push_back(from_table("zero", "q = 0", {}));
  out.push_back(from_table("constant_3", "q = 3", {{0, 3.0}}));
  out.push_back(from_table("constant_5", "q = 5", {{0, 5.0}}));
  out.push_back(from_table("constant_m2", "q = -2", {{0, -2.0}}));
  out.push_back(from_table("cos_half", "q = cos(2 pi x)", {{1, 0.5}, {-1, 0.5}}));
  out.push_back(from_table("mathieu", "q = 2 cos(2 pi x)", {{1, 1.0}, {-1, 1.0}}));
  out.push_back(from_table("cos_4", "q = 4 cos(2 pi x)", {{1, 2.0}, {-1, 2.0}}));
  out.push_back(from_table("sine", "q = -2 sin(2 pi x)", {{1, i}, {-1, -i}}));
  out.push_back(from_table("two_mode", "q = 2 cos(2 pi x) + 0.5 cos(4 pi x)",
                           {{1, 1.0}, {-1, 1.0}, {2, 0.25}, {-2, 0.25}}));
  out.push_back(from_table("shifted_mathieu", "q = 3 + 2 cos(2 pi x)", {{0, 3.0}, {1, 1.0}, {-1, 1.0}}));
  std::mt19937_64 rng(seed);
  out.push_back(random_entry(rng, 3));
  out.push_back(random_entry(rng, 4));
  out.push_back(sampled_power_law("2.5", 2.5));
  out.push_back(sampled_power_law("3", 3.0));
  out.push_back(sampled_power_law("4", 4.0));
  return out;
}

std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir, std::uint64_t seed) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DomainError("cannot create corpus directory " + dir.string());
  std::vector<std::filesystem::path> paths;
  std::ostringstream manifest;
  manifest << "# seed=" << seed << '\n';
  for (const auto& e : builtin_corpus(seed)) {
    const auto path = dir / (e.name + ".cfg");
    write_file_atomic(path, e.document.dump(2) + "\n");
    manifest << e.name << ".cfg\t" << e.description << '\n';
    paths.push_back(path);
  }
  const auto manifest_path = dir / "manifest.txt";
  write_file_atomic(manifest_path, manifest.str());
  paths.push_back(manifest_path);
  return paths;
}

}  // namespace hillspec
