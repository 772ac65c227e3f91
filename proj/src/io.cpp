#include "hillspec/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "hillspec/errors.hpp"

namespace hillspec {

using nlohmann::json;

namespace {

int parse_key(const std::string& key) {
  int value = 0;
  const auto* end = key.data() + key.size();
  const auto [ptr, ec] = std::from_chars(key.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DomainError("potential file: coefficient key '" + key + "' is not an integer");
  }
  return value;
}

}  // namespace

PotentialFile parse_potential(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw DomainError("potential file: missing string field 'kind' (expected \"coeffs\" or \"samples\")");
  }
  PotentialFile out;
  out.kind = doc["kind"].get<std::string>();
  if (out.kind == "coeffs") {
    if (!doc.contains("coeffs") || !doc["coeffs"].is_object()) {
      throw DomainError("potential file: kind \"coeffs\" needs an object field 'coeffs'");
    }
    std::map<int, cplx> table;
    for (const auto& [key, value] : doc["coeffs"].items()) {
      if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
        throw DomainError("potential file: coefficient '" + key + "' must be [re, im]");
      }
      const int m = parse_key(key);
      if (table.count(m)) throw DomainError("potential file: duplicate coefficient key " + key);
      table[m] = cplx{value[0].get<double>(), value[1].get<double>()};
    }
    out.potential = FourierPotential::from_coefficients(table);
  } else if (out.kind == "samples") {
    if (!doc.contains("samples") || !doc["samples"].is_array()) {
      throw DomainError("potential file: kind \"samples\" needs an array field 'samples'");
    }
    std::vector<double> samples;
    for (const auto& v : doc["samples"]) {
      if (!v.is_number()) throw DomainError("potential file: samples must be numbers");
      samples.push_back(v.get<double>());
    }
    out.potential = ingest_grid(samples);
  } else {
    throw DomainError("potential file: unknown kind '" + out.kind + "' (expected \"coeffs\" or \"samples\")");
  }
  return out;
}

PotentialFile load_potential(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read potential file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DomainError("potential file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_potential(doc);
}

json coeffs_document(const FourierPotential& q) {
  json coeffs = json::object();
  for (const auto& [m, c] : q.table()) coeffs[std::to_string(m)] = json::array({c.real(), c.imag()});
  return {{"kind", "coeffs"}, {"coeffs", coeffs}};
}

json samples_document(std::span<const double> samples) {
  return {{"kind", "samples"}, {"samples", std::vector<double>(samples.begin(), samples.end())}};
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + path.string());
    out << contents;
    if (!out) throw DomainError("write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DomainError("cannot write " + path.string());
  }
}

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

CsvTable::CsvTable(std::string config_hash, std::vector<std::string> columns)
    : hash_(std::move(config_hash)), columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("CSV row width mismatch");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  out << "# config=" << hash_ << '\n';
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

}  // namespace hillspec
