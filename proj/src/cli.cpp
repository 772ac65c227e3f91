#include "hillspec/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hillspec/asymptotics.hpp"
#include "hillspec/corpus.hpp"
#include "hillspec/decay.hpp"
#include "hillspec/errors.hpp"
#include "hillspec/floquet.hpp"
#include "hillspec/galerkin.hpp"
#include "hillspec/io.hpp"

namespace hillspec::cli {

using nlohmann::json;

namespace {

const char* parity_name(Parity p) { return p == Parity::periodic ? "periodic" : "antiperiodic"; }

Parity parse_parity(const std::string& s) {
  if (s == "periodic") return Parity::periodic;
  if (s == "antiperiodic") return Parity::antiperiodic;
  throw DomainError("parity must be 'periodic' or 'antiperiodic', got '" + s + "'");
}

}  // namespace

json RunConfig::to_json() const {
  return {{"command", command},
          {"potential_path", potential_path},
          {"potential_kind", potential_kind},
          {"potential_digest", potential_digest},
          {"parity", parity_name(parity)},
          {"count", count},
          {"cutoff", cutoff},
          {"m_lo", m_lo},
          {"m_hi", m_hi},
          {"n_max", n_max},
          {"n0", n0},
          {"eps", eps},
          {"integrator_tol", integrator_tol},
          {"refine_tol", refine_tol},
          {"cluster_tol", cluster_tol},
          {"rho", rho},
          {"tau_abs", tau_abs},
          {"gamma", gamma},
          {"variant", variant},
          {"source", source},
          {"out", out},
          {"seed", seed}};
}

RunConfig RunConfig::from_json(const json& doc) {
  RunConfig c;
  try {
    c.command = doc.at("command").get<std::string>();
    c.potential_path = doc.at("potential_path").get<std::string>();
    c.potential_kind = doc.at("potential_kind").get<std::string>();
    c.potential_digest = doc.at("potential_digest").get<std::string>();
    c.parity = parse_parity(doc.at("parity").get<std::string>());
    c.count = doc.at("count").get<int>();
    c.cutoff = doc.at("cutoff").get<int>();
    c.m_lo = doc.at("m_lo").get<int>();
    c.m_hi = doc.at("m_hi").get<int>();
    c.n_max = doc.at("n_max").get<int>();
    c.n0 = doc.at("n0").get<int>();
    c.eps = doc.at("eps").get<double>();
    c.integrator_tol = doc.at("integrator_tol").get<double>();
    c.refine_tol = doc.at("refine_tol").get<double>();
    c.cluster_tol = doc.at("cluster_tol").get<double>();
    c.rho = doc.at("rho").get<double>();
    c.tau_abs = doc.at("tau_abs").get<double>();
    c.gamma = doc.at("gamma").get<double>();
    c.variant = doc.at("variant").get<std::string>();
    c.source = doc.at("source").get<std::string>();
    c.out = doc.at("out").get<std::string>();
    c.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("run config: ") + e.what());
  }
  return c;
}

std::string RunConfig::hash() const { return fnv1a_hex(to_json().dump()); }

void RunConfig::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw DomainError(std::string(name) + " must be positive");
  };
  positive(integrator_tol, "--integrator-tol");
  positive(refine_tol, "--tol");
  positive(cluster_tol, "--cluster-tol");
  positive(rho, "--rho");
  positive(tau_abs, "--tau-abs");
  positive(gamma, "--gamma");
  positive(eps, "--eps");
  if (count < 1) throw DomainError("--count must be at least 1");
  if (cutoff < 0) throw DomainError("--cutoff must be non-negative");
  if (m_lo < 0 || m_hi < m_lo) throw DomainError("--m-range must be a non-empty range lo:hi with 0 <= lo <= hi");
  if (variant != "unperturbed" && variant != "eigenvalue") {
    throw DomainError("--variant must be 'unperturbed' or 'eigenvalue'");
  }
  if (source != "galerkin" && source != "floquet") throw DomainError("--source must be 'galerkin' or 'floquet'");
}

namespace {

struct Context {
  RunConfig config;
  FourierPotential q;
  int threads = 0;
  std::ostream& out;
  std::ostream& err;
};

SpectrumOptions spectrum_options(const Context& ctx) {
  SpectrumOptions o;
  o.integrator_tol = ctx.config.integrator_tol;
  o.refine_tol = ctx.config.refine_tol;
  o.cluster_tol = ctx.config.cluster_tol;
  o.cutoff = ctx.config.cutoff;
  o.threads = ctx.threads;
  return o;
}

void emit(Context& ctx, const std::string& contents) {
  if (ctx.config.out.empty()) {
    ctx.out << contents;
  } else {
    write_file_atomic(ctx.config.out, contents);
  }
}

std::string fmt(double x) { return format_double(x); }

int cmd_spectrum(Context& ctx) {
  const SpectrumTable spec = compute_spectrum(ctx.q, ctx.config.count, spectrum_options(ctx));
  CsvTable csv(ctx.config.hash(), {"kind", "index", "lambda", "residual"});
  for (Parity p : {Parity::periodic, Parity::antiperiodic}) {
    for (const auto& e : spec.of(p)) {
      csv.add_row({parity_name(p), std::to_string(e.index), fmt(e.lambda), fmt(e.residual)});
    }
  }
  emit(ctx, csv.str());
  return 0;
}

int cmd_gaps(Context& ctx) {
  const SpectrumTable spec = compute_spectrum(ctx.q, ctx.config.count, spectrum_options(ctx));
  CsvTable csv(ctx.config.hash(), {"n", "left", "right", "length"});
  for (const auto& g : gap_table(spec).entries) {
    csv.add_row({std::to_string(g.n), fmt(g.left), fmt(g.right), fmt(g.length)});
  }
  emit(ctx, csv.str());
  return 0;
}

int cmd_coeffs(Context& ctx) {
  CsvTable csv(ctx.config.hash(), {"n", "re", "im", "abs"});
  for (int n = -ctx.q.degree(); n <= ctx.q.degree(); ++n) {
    const cplx c = ctx.q.coefficient(n);
    csv.add_row({std::to_string(n), fmt(c.real()), fmt(c.imag()), fmt(std::abs(c))});
  }
  emit(ctx, csv.str());
  return 0;
}

int cmd_galerkin(Context& ctx) {
  const int cutoff = ctx.config.cutoff > 0 ? ctx.config.cutoff : default_cutoff(ctx.config.count, ctx.q.degree());
  const EigenpairSet pairs = eigen(assemble(ctx.q, ctx.config.parity, cutoff), ctx.config.count);
  CsvTable csv(ctx.config.hash(), {"kind", "index", "lambda", "residual"});
  for (int i = 0; i < pairs.count(); ++i) {
    csv.add_row({parity_name(ctx.config.parity), std::to_string(i), fmt(pairs.values[i]), fmt(pairs.residuals[i])});
  }
  emit(ctx, csv.str());
  return 0;
}

int cmd_asym(Context& ctx) {
  const RunConfig& c = ctx.config;
  const int count = pair_index(c.parity, c.m_hi, 2) + 1;
  SpectrumTable spec;
  if (c.source == "galerkin") {
    spec = galerkin_spectrum(ctx.q, count, c.cutoff);
    std::vector<int> ms;
    for (int m = c.m_lo; m <= c.m_hi; ++m) ms.push_back(m);
    polish_pairs(spec, ctx.q, c.parity, ms, c.cutoff);
  } else {
    spec = compute_spectrum(ctx.q, count, spectrum_options(ctx));
  }
  const auto variant = c.variant == "unperturbed" ? DenominatorContext::Variant::at_unperturbed
                                                  : DenominatorContext::Variant::at_eigenvalue;
  const AsymptoticReport report = asymptotic_report(ctx.q, spec, c.parity, c.m_lo, c.m_hi, variant);
  CsvTable csv(c.hash(), AsymptoticReport::columns());
  for (const auto& r : report.rows) {
    csv.add_row({std::to_string(r.m), fmt(r.lambda1), fmt(r.lambda2), fmt(r.center_pred), fmt(r.split_pred),
                 fmt(r.gap_meas), fmt(r.resid_center), fmt(r.resid_gap), fmt(r.m2_resid_center), fmt(r.budget)});
  }
  emit(ctx, csv.str());
  return 0;
}

json verdict_json(const DecayVerdict& v) {
  json blocks = json::array();
  for (const auto& b : v.blocks) {
    blocks.push_back({{"lo", b.lo}, {"hi", b.hi}, {"max_scaled", b.max_scaled}, {"ratio", b.ratio}});
  }
  return {{"classification", to_string(v.classification)}, {"tail_statistic", v.tail_statistic}, {"blocks", blocks}};
}

json provenance(const Context& ctx) {
  return {{"config_hash", ctx.config.hash()}, {"config", ctx.config.to_json()}, {"version", kVersion}};
}

void finish_verdict(Context& ctx, const json& doc, const std::string& summary) {
  if (ctx.config.out.empty()) {
    ctx.out << doc.dump(2) << '\n';
    ctx.err << summary;
  } else {
    write_file_atomic(ctx.config.out, doc.dump(2) + "\n");
    ctx.out << summary;
  }
}

int cmd_thm1(Context& ctx) {
  const RunConfig& c = ctx.config;
  const Theorem1Report r =
      theorem1_harness(ctx.q, c.n_max, spectrum_options(ctx), DecayThresholds{c.rho, c.tau_abs, c.gamma});
  json ratios = json::array();
  for (const auto& x : r.ratios) {
    ratios.push_back({{"n", x.n}, {"gap", x.gap}, {"two_c", x.two_c}, {"ratio", x.ratio}});
  }
  json doc = provenance(ctx);
  doc["harness"] = "thm1";
  doc["n_min"] = r.n_min;
  doc["n_max"] = r.n_max;
  doc["gaps"] = verdict_json(r.gaps);
  doc["coefficients"] = verdict_json(r.coefficients);
  doc["o_implication"] = r.o_implication_holds ? "holds" : "violated";
  doc["O_implication"] = r.O_implication_holds ? "holds" : "violated";
  doc["implication"] = r.holds() ? "holds" : "violated";
  doc["ratios"] = ratios;

  std::ostringstream s;
  s << "gaps:         " << to_string(r.gaps.classification) << " (tail " << r.gaps.tail_statistic << ")\n"
    << "coefficients: " << to_string(r.coefficients.classification) << " (tail " << r.coefficients.tail_statistic
    << ")\n"
    << "implication:  " << (r.holds() ? "holds" : "VIOLATED") << '\n';
  if (!r.ratios.empty()) {
    s << "     n          l_n       2|c_n|    ratio\n";
    for (const auto& x : r.ratios) {
      char line[96];
      std::snprintf(line, sizeof line, "%6d %12.5e %12.5e %8.4f\n", x.n, x.gap, x.two_c, x.ratio);
      s << line;
    }
  }
  finish_verdict(ctx, doc, s.str());
  return r.holds() ? 0 : 2;
}

int cmd_thm2(Context& ctx) {
  const RunConfig& c = ctx.config;
  const Theorem2Report r = theorem2_harness(ctx.q, c.n0, c.eps, spectrum_options(ctx));
  const auto rows = [](const std::vector<RecoveryRow>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back({{"m", x.m}, {"value", x.value}, {"residual", x.residual}});
    return a;
  };
  json doc = provenance(ctx);
  doc["harness"] = "thm2";
  doc["n0"] = r.n0;
  doc["eps"] = r.eps;
  doc["hypothesis_holds"] = r.hypothesis_holds;
  doc["first_hypothesis_failure"] = r.first_hypothesis_failure;
  doc["membership_holds"] = r.membership_holds;
  doc["first_membership_failure"] = r.first_membership_failure;
  doc["c0"] = {{"estimate", r.c0.estimate},
               {"envelope_constant", r.c0.envelope_constant},
               {"inside_envelope", r.c0.inside_envelope},
               {"resolution", r.c0_resolution},
               {"rows", rows(r.c0.rows)}};
  doc["l2"] = {{"estimate", r.l2.estimate}, {"rows", rows(r.l2.rows)}};
  doc["conclusion"] = r.conclusion;

  std::ostringstream s;
  s << "hypothesis l_n < eps n^-2: " << (r.hypothesis_holds ? "holds" : "fails");
  if (!r.hypothesis_holds) s << " (first at n = " << r.first_hypothesis_failure << ")";
  s << "\nmembership (n pi)^2:       " << (r.membership_holds ? "holds" : "fails");
  if (!r.membership_holds) s << " (first at n = " << r.first_membership_failure << ")";
  s << "\nrecovered c0:              " << r.c0.estimate << "\nrecovered int q^2:         " << r.l2.estimate
    << "\nconclusion:                " << r.conclusion << '\n';
  finish_verdict(ctx, doc, s.str());
  return r.contradiction() ? 2 : 0;
}

int cmd_corpus(Context& ctx) {
  if (ctx.config.out.empty()) throw DomainError("corpus needs --out <directory>");
  const auto paths = write_corpus(ctx.config.out, ctx.config.seed);
  for (const auto& p : paths) ctx.out << p.string() << '\n';
  return 0;
}

void load(Context& ctx) {
  const PotentialFile file = load_potential(ctx.config.potential_path);
  ctx.q = file.potential;
  ctx.config.potential_kind = file.kind;
  ctx.config.potential_digest = fnv1a_hex(coeffs_document(ctx.q).dump());
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  int threads = 0;
  std::string parity = "periodic";
  std::string m_range = "8:64";

  CLI::App app{"Spectral toolkit for the Hill operator -y'' + q y on [0, 1]", "hillspec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const auto add_potential = [&](CLI::App* sub) {
    sub->add_option("--potential", config.potential_path, "Potential file (JSON: kind coeffs|samples)")->required();
  };
  const auto add_out = [&](CLI::App* sub, const char* what) { sub->add_option("--out", config.out, what); };
  const auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--tol", config.refine_tol, "Eigenvalue refinement tolerance (relative)");
    sub->add_option("--integrator-tol", config.integrator_tol, "ODE local error tolerance");
    sub->add_option("--cluster-tol", config.cluster_tol, "Closed-gap clustering tolerance (relative)");
    sub->add_option("--cutoff", config.cutoff, "Galerkin cutoff K (0: default)");
    sub->add_option("--threads", threads, "Worker threads (0: HILLSPEC_THREADS or all cores)");
  };

  auto* spectrum = app.add_subcommand("spectrum", "Periodic and anti-periodic eigenvalues");
  add_potential(spectrum);
  spectrum->add_option("--count", config.count, "Eigenvalues per parity");
  add_solver(spectrum);
  add_out(spectrum, "CSV output (default: stdout)");

  auto* gaps = app.add_subcommand("gaps", "Instability interval table");
  add_potential(gaps);
  gaps->add_option("--count", config.count, "Eigenvalues per parity");
  add_solver(gaps);
  add_out(gaps, "CSV output (default: stdout)");

  auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficients of the potential");
  add_potential(coeffs);
  add_out(coeffs, "CSV output (default: stdout)");

  auto* galerkin = app.add_subcommand("galerkin", "Truncated Fourier-basis eigenvalues");
  add_potential(galerkin);
  galerkin->add_option("--parity", parity, "periodic | antiperiodic");
  galerkin->add_option("--cutoff", config.cutoff, "Cutoff K (0: default)");
  galerkin->add_option("--count", config.count, "Number of eigenvalues");
  add_out(galerkin, "CSV output (default: stdout)");

  auto* asym = app.add_subcommand("asym", "Pair predictions against measured eigenvalues");
  add_potential(asym);
  asym->add_option("--m-range", m_range, "Pair range lo:hi");
  asym->add_option("--parity", parity, "periodic | antiperiodic");
  asym->add_option("--variant", config.variant, "Denominators at 'unperturbed' or 'eigenvalue'");
  asym->add_option("--source", config.source, "Measured spectrum: 'galerkin' (refined pairs) or 'floquet'");
  add_solver(asym);
  add_out(asym, "CSV output (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Theorem harnesses");
  verify->require_subcommand(1);
  auto* thm1 = verify->add_subcommand("thm1", "Gap decay implies coefficient decay");
  add_potential(thm1);
  thm1->add_option("--n-max", config.n_max, "Largest gap index");
  thm1->add_option("--rho", config.rho, "small_o block decay factor");
  thm1->add_option("--tau-abs", config.tau_abs, "small_o absolute floor");
  thm1->add_option("--gamma", config.gamma, "big_O block growth bound");
  add_solver(thm1);
  add_out(thm1, "Verdict JSON (default: stdout)");
  auto* thm2 = verify->add_subcommand("thm2", "Free periodic spectrum subset implies q = 0");
  add_potential(thm2);
  thm2->add_option("--n0", config.n0, "Hypothesis start index");
  thm2->add_option("--eps", config.eps, "Gap bound eps in l_n < eps n^-2");
  add_solver(thm2);
  add_out(thm2, "Verdict JSON (default: stdout)");

  auto* corpus = app.add_subcommand("corpus", "Write the built-in potential corpus");
  corpus->add_option("--out", config.out, "Output directory")->required();
  corpus->add_option("--seed", config.seed, "Seed for the random members");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (spectrum->parsed()) config.command = "spectrum";
    if (gaps->parsed()) config.command = "gaps";
    if (coeffs->parsed()) config.command = "coeffs";
    if (galerkin->parsed()) config.command = "galerkin";
    if (asym->parsed()) config.command = "asym";
    if (thm1->parsed()) config.command = "verify-thm1";
    if (thm2->parsed()) config.command = "verify-thm2";
    if (corpus->parsed()) config.command = "corpus";
    config.parity = parse_parity(parity);
    if (asym->parsed()) {
      const auto colon = m_range.find(':');
      if (colon == std::string::npos) throw DomainError("--m-range must look like lo:hi");
      try {
        config.m_lo = std::stoi(m_range.substr(0, colon));
        config.m_hi = std::stoi(m_range.substr(colon + 1));
      } catch (const std::exception&) {
        throw DomainError("--m-range must look like lo:hi, got '" + m_range + "'");
      }
    }
    config.validate();

    Context ctx{config, {}, threads, out, err};
    if (config.command != "corpus") load(ctx);
    if (config.command == "spectrum") return cmd_spectrum(ctx);
    if (config.command == "gaps") return cmd_gaps(ctx);
    if (config.command == "coeffs") return cmd_coeffs(ctx);
    if (config.command == "galerkin") return cmd_galerkin(ctx);
    if (config.command == "asym") return cmd_asym(ctx);
    if (config.command == "verify-thm1") return cmd_thm1(ctx);
    if (config.command == "verify-thm2") return cmd_thm2(ctx);
    return cmd_corpus(ctx);
  } catch (const VerificationError& e) {
    err << "hillspec: verification failed: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "hillspec: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "hillspec: numerical failure: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hillspec::cli
