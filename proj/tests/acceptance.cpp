// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero
// when any selected criterion fails. Usage: acceptance [--only N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hillspec/asymptotics.hpp"
#include "hillspec/cli.hpp"
#include "hillspec/corpus.hpp"
#include "hillspec/decay.hpp"
#include "hillspec/errors.hpp"
#include "hillspec/floquet.hpp"
#include "hillspec/galerkin.hpp"
#include "hillspec/io.hpp"

using namespace hillspec;
namespace fs = std::filesystem;

namespace {

constexpr double pi2 = kPi * kPi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

FourierPotential cosine_pair(std::map<int, cplx> t) { return FourierPotential::from_coefficients(t); }

FourierPotential mathieu() { return cosine_pair({{1, 1.0}, {-1, 1.0}}); }

fs::path scratch_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("hillspec_acceptance_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hillspec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 1. Free operator.
Outcome free_operator() {
  const auto t0 = Clock::now();
  const auto spec = compute_spectrum(FourierPotential{}, 20);
  double worst = 0.0;
  for (Parity par : {Parity::periodic, Parity::antiperiodic}) {
    for (const auto& e : spec.of(par)) worst = std::max(worst, std::abs(e.lambda - free_eigenvalue(par, e.index)));
  }
  double gap = 0.0;
  for (const auto& g : gap_table(spec).entries) gap = std::max(gap, g.length);
  const double t = seconds_since(t0);
  return {worst < 1e-9 && gap == 0.0 && t < 10.0,
          "max error " + sci(worst) + ", max gap " + sci(gap) + ", " + sci(t) + " s"};
}

// 2. Floquet vs Galerkin on the corpus members with M <= 4.
Outcome cross_oracle() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string where;
  int used = 0;
  for (const auto& e : builtin_corpus(1)) {
    if (e.potential.degree() > 4) continue;
    ++used;
    const auto fl = compute_spectrum(e.potential, 20);
    const auto ga = galerkin_spectrum(e.potential, 20);
    for (Parity par : {Parity::periodic, Parity::antiperiodic}) {
      for (int i = 0; i < 20; ++i) {
        const double d = std::abs(fl.of(par)[i].lambda - ga.of(par)[i].lambda);
        if (d > worst) {
          worst = d;
          where = e.name;
        }
      }
    }
  }
  const double t = seconds_since(t0);
  return {worst < 1e-8 && t < 120.0,
          std::to_string(used) + " potentials, max |diff| " + sci(worst) + " (" + where + "), " + sci(t) + " s"};
}

// 3. Wronskian over 200 lambda per corpus potential.
Outcome wronskian() {
  const int count = 20;
  const double top = (2.0 * count + 4) * (2.0 * count + 4) * pi2;
  double worst = 0.0;
  std::string where;
  for (const auto& e : builtin_corpus(1)) {
    for (int i = 0; i < 200; ++i) {
      const double lambda = -50.0 + (top + 50.0) * i / 199.0;
      const double d = std::abs(integrate_floquet(e.potential, lambda, 1e-12).wronskian() - 1.0);
      if (d > worst) {
        worst = d;
        where = e.name + " at lambda " + sci(lambda);
      }
    }
  }
  return {worst < 1e-10, "max |W - 1| " + sci(worst) + " (" + where + ")"};
}

// 4. Interlacing on every corpus spectrum; a broken table must be rejected.
Outcome interlacing() {
  int checked = 0;
  for (const auto& e : builtin_corpus(1)) {
    try {
      const auto spec = compute_spectrum(e.potential, 40);
      check_interlacing(spec);
      ++checked;
    } catch (const VerificationError& err) {
      return {false, e.name + ": " + err.what()};
    }
  }
  SpectrumTable broken;
  for (int i = 0; i < 3; ++i) {
    broken.periodic.push_back(make_entry(Parity::periodic, i, 0.0, 0.0));
    broken.antiperiodic.push_back(make_entry(Parity::antiperiodic, i, 0.0, 0.0));
  }
  broken.periodic[1] = make_entry(Parity::periodic, 1, -30.0, 0.0);  // lambda_1 below mu_1
  bool rejected = false;
  try {
    check_interlacing(broken);
  } catch (const VerificationError&) {
    rejected = true;
  }
  return {rejected, std::to_string(checked) + " spectra interlace; violation " +
                        (rejected ? "rejected" : "NOT rejected")};
}

// 5. Dyadic sweep of m^2 |a1 - closed form| and m^2 |a2|.
Outcome lemma_sweep() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<std::string, FourierPotential>> qs = {
      {"2cos", mathieu()}, {"2cos+0.5cos2", cosine_pair({{1, 1.0}, {-1, 1.0}, {2, 0.25}, {-2, 0.25}})}};
  for (const auto& [name, q] : qs) {
    double p1 = INFINITY, p2 = INFINITY;
    bool a2_identically_zero = true;
    std::string row = name + ":";
    for (int m : {8, 16, 32, 64}) {
      const auto ctx = DenominatorContext::at_unperturbed(Parity::periodic, m);
      const double s = static_cast<double>(m) * m;
      const double d1 = s * std::abs(a1_sum(q, ctx) - a1_closed_form(q, m));
      const double d2 = s * std::abs(a2_sum(q, ctx));
      ok = ok && d1 < p1;
      if (d2 != 0.0) a2_identically_zero = false;
      if (!a2_identically_zero) ok = ok && d2 < p2;
      row += " " + sci(d1) + "/" + sci(d2);
      p1 = d1;
      p2 = d2;
    }
    detail += row + (a2_identically_zero ? " (a2 = 0 exactly)" : "") + "; ";
  }
  const double t = seconds_since(t0);
  return {ok && t < 60.0, detail + sci(t) + " s"};
}

// 6. S1 = 0 on every c0 = 0 corpus potential.
Outcome s1_vanishes() {
  double worst = 0.0;
  int used = 0;
  for (const auto& e : builtin_corpus(1)) {
    if (std::abs(e.potential.mean()) > 1e-12) continue;
    ++used;
    // Evaluated at the first pair with N > M, where no c_{m1} sits on N.
    const int m = e.potential.degree() / 2 + 1;
    worst = std::max(worst, std::abs(s_identities(e.potential, m).s1));
  }
  return {worst < 1e-10, std::to_string(used) + " potentials, max |S1| " + sci(worst)};
}

// 7. Splitting 2|c_N| for q = eps cos(2 N pi x) + 2 cos(2 pi x), m = 10.
Outcome splitting() {
  const int m = 10;
  const int n = pair_frequency(Parity::periodic, m);
  bool ok = true;
  double prev_rel = INFINITY;
  std::string detail;
  for (double eps : {1e-2, 1e-3}) {
    const auto q = cosine_pair({{1, 1.0}, {-1, 1.0}, {n, eps / 2}, {-n, eps / 2}});
    const auto o = refine_pair_offsets(q, Parity::periodic, m);
    const double gap = o[1] - o[0];
    // Dense Galerkin eigenvalues as the calibration route.
    const auto dense = eigen(assemble(q, Parity::periodic, 64), 2 * m + 3);
    const double dense_gap = dense.values[2 * m + 2] - dense.values[2 * m + 1];
    const double rel = std::abs(gap - eps) / eps;
    ok = ok && gap >= 0.5 * eps && gap <= 1.5 * eps && rel < prev_rel &&
         std::abs(dense_gap - gap) < 1e-9 * n * n * pi2;
    char rel_text[32];
    std::snprintf(rel_text, sizeof rel_text, "%.10e", rel);
    detail += "eps " + sci(eps) + ": gap " + sci(gap) + " (dense " + sci(dense_gap) + "), |gap - eps| " +
              sci(std::abs(gap - eps)) + ", rel " + rel_text + "; ";
    prev_rel = rel;
  }
  return {ok, detail};
}

SpectrumTable polished(const FourierPotential& q, int m_hi, const std::vector<int>& ms) {
  auto spec = galerkin_spectrum(q, pair_index(Parity::periodic, m_hi, 2) + 1);
  polish_pairs(spec, q, Parity::periodic, ms);
  return spec;
}

// 8. c0 recovery for q = 3 + 2 cos(2 pi x) over m in [20, 40].
Outcome c0_recovery() {
  const auto q = mathieu().shifted(3.0);
  std::vector<int> ms;
  for (int m = 20; m <= 40; ++m) ms.push_back(m);
  const auto r = recover_c0(polished(q, 40, ms), Parity::periodic, 20, 40);
  return {std::abs(r.estimate - 3.0) <= 0.1 && r.inside_envelope,
          "estimate " + sci(r.estimate) + ", C " + sci(r.envelope_constant) +
              (r.inside_envelope ? ", inside envelope" : ", OUTSIDE envelope")};
}

// 9. int q^2 recovery for q = 2 cos(2 pi x).
Outcome l2_recovery() {
  const auto q = mathieu();
  const std::vector<int> ms = {8, 16, 30, 32, 64};
  const auto r = recover_l2norm(polished(q, 64, ms), Parity::periodic, 0.0, ms);
  double at30 = 0.0;
  double prev = INFINITY;
  bool monotone = true;
  std::string detail;
  for (const auto& row : r.rows) {
    const double rel = std::abs(row.value - 2.0) / 2.0;
    if (row.m == 30) {
      at30 = rel;
      continue;
    }
    monotone = monotone && rel < prev;
    prev = rel;
    detail += "m=" + std::to_string(row.m) + " " + sci(row.value) + " ";
  }
  return {at30 < 0.1 && monotone, detail + "; rel error at m=30 " + sci(at30)};
}

// 10. Theorem 1.1 harness on the corpus.
Outcome theorem1() {
  bool implication = true;
  bool ratios = true;
  std::string detail;
  for (const auto& e : builtin_corpus(1)) {
    const auto r = theorem1_harness(e.potential, 64);
    if (!r.holds()) {
      implication = false;
      detail += e.name + " implication violated; ";
    }
    for (const auto& x : r.ratios) {
      if (x.ratio < 0.8 || x.ratio > 1.2) {
        ratios = false;
        detail += e.name + " n=" + std::to_string(x.n) + " ratio " + sci(x.ratio) + "; ";
      }
    }
  }
  if (detail.empty()) detail = "implication holds and ratios in [0.8, 1.2] on all potentials";
  return {implication && ratios, detail};
}

// 11. Theorem 1.2 harness through the CLI exit-code contract.
Outcome theorem2() {
  const fs::path dir = scratch_dir("thm2");
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const std::string zero = write("zero.cfg", R"({"kind": "coeffs", "coeffs": {}})");
  const std::string mat = write("mathieu.cfg", R"({"kind": "coeffs", "coeffs": {"1": [1, 0], "-1": [1, 0]}})");
  const std::string c5 = write("c5.cfg", R"({"kind": "coeffs", "coeffs": {"0": [5, 0]}})");

  const auto r0 = theorem2_harness(FourierPotential{}, 32, 1.0);
  const auto r1 = theorem2_harness(mathieu(), 32, 1.0);
  const auto r2 = theorem2_harness(FourierPotential{}.shifted(5.0), 32, 1.0);
  const int e0 = invoke({"verify", "thm2", "--potential", zero, "--n0", "32", "--out", (dir / "a.json").string()});
  const int e1 = invoke({"verify", "thm2", "--potential", mat, "--n0", "32", "--out", (dir / "b.json").string()});
  const int e2 = invoke({"verify", "thm2", "--potential", c5, "--n0", "32", "--out", (dir / "c.json").string()});
  fs::remove_all(dir);

  const bool ok = r0.hypothesis_holds && r0.membership_holds && r0.conclusion == "consistent with q = 0" &&
                  !r1.membership_holds && r1.conclusion == "no conclusion" && !r2.membership_holds &&
                  r2.conclusion == "no conclusion" && e0 == 0 && e1 == 0 && e2 == 0;
  return {ok, "zero: " + r0.conclusion + "; 2cos: membership " + (r1.membership_holds ? "holds" : "fails") +
                  "; 5: membership " + (r2.membership_holds ? "holds" : "fails") + "; exit codes " +
                  std::to_string(e0) + std::to_string(e1) + std::to_string(e2)};
}

// 12. Determinism of CLI outputs.
Outcome determinism() {
  const fs::path dir = scratch_dir("det");
  const std::string p = (dir / "two_mode.cfg").string();
  std::ofstream(p) << R"({"kind": "coeffs", "coeffs": {"1": [1, 0], "-1": [1, 0], "2": [0.25, 0], "-2": [0.25, 0]}})";
  const std::string out = (dir / "result").string();
  const std::vector<std::vector<std::string>> cmds = {
      {"spectrum", "--potential", p, "--count", "20"},
      {"gaps", "--potential", p, "--count", "20"},
      {"galerkin", "--potential", p, "--count", "20"},
      {"asym", "--potential", p, "--m-range", "8:32"},
      {"verify", "thm1", "--potential", p, "--n-max", "32"},
      {"verify", "thm2", "--potential", p, "--n0", "16"}};
  bool ok = true;
  int compared = 0;
  for (auto cmd : cmds) {
    cmd.insert(cmd.end(), {"--out", out});
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      fs::remove(out);
      if (invoke(cmd) != 0) ok = false;
      const std::string bytes = slurp(out);
      if (rep == 0) {
        first = bytes;
      } else {
        ok = ok && !bytes.empty() && bytes == first;
      }
    }
    ++compared;
  }
  fs::remove_all(dir);
  return {ok, std::to_string(compared) + " commands, byte-identical reruns: " + (ok ? "yes" : "NO")};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"free operator exactness", free_operator},
      {"Floquet vs Galerkin agreement", cross_oracle},
      {"Wronskian invariant", wronskian},
      {"interlacing invariant", interlacing},
      {"dyadic correction sweeps", lemma_sweep},
      {"S1 vanishes", s1_vanishes},
      {"pair splitting", splitting},
      {"c0 recovery", c0_recovery},
      {"int q^2 recovery", l2_recovery},
      {"gap/coefficient implication harness", theorem1},
      {"free-spectrum subset harness", theorem2},
      {"determinism", determinism}};

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (only != 0 && id != only) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
