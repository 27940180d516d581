#pragma once

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobtrace/frobtrace.hpp"
#include "frobtrace/json_io.hpp"

namespace frobtrace::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

struct CliConfig {
  Residue p = 2;
  unsigned ext_degree = 1;
  std::string modulus;
  std::vector<std::string> vars;
  std::string chart;
  std::string output = "table";
  std::uint64_t seed = 42;
  unsigned threads = 1;

  bool json() const { return output == "json"; }
};

inline FieldRef make_field(const CliConfig& cfg) {
  if (cfg.ext_degree <= 1 && cfg.modulus.empty()) return FieldSpec::prime(cfg.p);
  if (cfg.modulus.empty()) throw UsageError("--ext-degree " + std::to_string(cfg.ext_degree) + " requires --modulus");
  auto coeffs = parse_modulus(cfg.modulus, cfg.p);
  if (coeffs.size() != cfg.ext_degree + 1)
    throw UsageError("modulus '" + cfg.modulus + "' does not have degree " + std::to_string(cfg.ext_degree));
  return FieldSpec::extension(cfg.p, coeffs);
}

/// Declared variables, or the ones inferred from the inputs when none were declared.
inline std::vector<std::string> resolve_vars(const CliConfig& cfg, const std::vector<std::string>& inputs) {
  std::vector<std::string> vars = cfg.vars.empty() ? infer_vars(inputs) : cfg.vars;
  if (vars.empty()) throw UsageError("no variables declared; pass --vars");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) throw UsageError("empty variable name in --vars");
    if (!seen.insert(v).second) throw UsageError("variable '" + v + "' declared twice");
  }
  return vars;
}

inline std::size_t resolve_chart(const CliConfig& cfg, const std::vector<std::string>& vars) {
  if (cfg.chart.empty()) return vars.size() - 1;
  auto it = std::find(vars.begin(), vars.end(), cfg.chart);
  if (it == vars.end()) throw UsageError("chart variable '" + cfg.chart + "' is not among --vars");
  return static_cast<std::size_t>(it - vars.begin());
}

inline nlohmann::json envelope(const std::string& command) {
  return {{"version", kJsonSchemaVersion}, {"command", command}};
}

inline std::string differential(const std::vector<std::string>& vars) {
  std::string out;
  for (const auto& v : vars) out += (out.empty() ? "d" : "^d") + v;
  return out;
}

/// "0", "dx", "x dx", "(x + 1) dx^dy" or "(h)/(g) dx^dy".
inline std::string render_top(const TopForm& w, const std::vector<std::string>& vars) {
  if (w.is_zero()) return "0";
  const std::string diff = differential(vars);
  if (w.coeff().is_polynomial()) {
    const Poly f = *w.coeff().as_polynomial();
    if (f.is_constant() && f.constant_term().is_one()) return diff;
    const std::string c = to_string(f, vars);
    return f.num_terms() == 1 ? c + " " + diff : "(" + c + ") " + diff;
  }
  return to_string(w.coeff(), vars) + " " + diff;
}

inline int cmd_trace(const CliConfig& cfg, const std::string& form_text, unsigned e, std::ostream& out) {
  const auto field = make_field(cfg);
  const auto vars = resolve_vars(cfg, {form_text});
  const DiffForm form = parse_form(form_text, vars, field);
  if (form.degree() != vars.size())
    throw UsageError("trace needs a top-degree form in all " + std::to_string(vars.size()) + " variables");
  const TopForm traced = trace_rational_top(TopForm::from_form(form), e);
  if (cfg.json()) {
    auto j = envelope("trace");
    j["e"] = e;
    j["num"] = to_string(traced.coeff().num(), vars);
    j["den"] = to_string(traced.coeff().den(), vars);
    out << j.dump(2) << "\n";
  } else {
    out << render_top(traced, vars) << "\n";
  }
  return kSuccess;
}

inline void print_space(const SectionSpace& space, const std::vector<std::string>& vars, std::ostream& out) {
  const auto names = chart_names(vars, space.chart());
  out << "H^0(P^" << space.divisor().n() << ", omega(" << space.divisor().describe(vars) << "))"
      << "  bound " << space.bound() << "  dim " << space.dim() << "\n";
  out << "  denominator: " << to_string(space.den(), names) << "\n";
  out << "  basis numerators:";
  if (space.dim() == 0) out << " (none)";
  for (std::size_t b = 0; b < space.dim(); ++b)
    out << (b ? ", " : " ") << monomial_to_string(space.basis()[b], names);
  out << "\n";
}

inline int cmd_sections(const CliConfig& cfg, const std::string& divisor_text, std::ostream& out) {
  const auto field = make_field(cfg);
  const auto vars = resolve_vars(cfg, {divisor_text});
  const std::size_t chart = resolve_chart(cfg, vars);
  const SectionSpace space = section_space(parse_divisor(divisor_text, vars, field), chart);
  if (cfg.json()) {
    auto j = envelope("sections");
    j["chart"] = vars[chart];
    j["space"] = to_json(space, vars);
    out << j.dump(2) << "\n";
  } else {
    out << "chart: " << vars[chart] << " != 0\n";
    print_space(space, vars, out);
  }
  return kSuccess;
}

inline int cmd_trace_matrix(const CliConfig& cfg, const std::string& e_text, const std::string& d_text, unsigned e,
                            std::ostream& out) {
  const auto field = make_field(cfg);
  const auto vars = resolve_vars(cfg, {e_text, d_text});
  const std::size_t chart = resolve_chart(cfg, vars);
  const DivisorSpec effective = parse_divisor(e_text, vars, field);
  const DivisorSpec divisor = parse_divisor(d_text, vars, field);
  const SemilinearMap map = trace_matrix(effective, divisor, e, chart, cfg.threads);
  const MapVerdict verdict = map_verdict(map);
  if (cfg.json()) {
    auto j = envelope("trace-matrix");
    j["map"] = to_json(map, vars);
    out << j.dump(2) << "\n";
    return kSuccess;
  }
  out << "trace Tr^" << e << " over " << field->describe() << ", chart " << vars[chart] << " != 0\n";
  out << "E = " << effective.describe(vars) << ",  D = " << divisor.describe(vars) << "\n";
  out << "source: ";
  print_space(map.src(), vars, out);
  out << "target: ";
  print_space(map.tgt(), vars, out);
  out << "matrix (" << map.matrix().rows() << " x " << map.matrix().cols() << "):\n";
  for (std::size_t r = 0; r < map.matrix().rows(); ++r) {
    out << "  [";
    for (std::size_t c = 0; c < map.matrix().cols(); ++c) out << (c ? " " : "") << map.matrix()(r, c);
    out << "]\n";
  }
  out << "verdict: rank " << verdict.rank << ", surjective: " << (verdict.surjective ? "yes" : "no")
      << ", zero: " << (verdict.zero ? "yes" : "no") << "\n";
  return kSuccess;
}

inline int cmd_fedder(const CliConfig& cfg, const std::string& f_text, std::ostream& out) {
  const auto field = make_field(cfg);
  const auto vars = resolve_vars(cfg, {f_text});
  const Poly f = parse_poly(f_text, vars, field);
  if (f.is_zero()) throw UsageError("fedder needs a non-zero polynomial");
  if (!f.is_homogeneous()) throw UsageError("polynomial '" + f_text + "' is not homogeneous");
  const FsplitVerdict verdict = fedder_hypersurface(f);
  if (cfg.json()) {
    auto j = envelope("fedder");
    j["p"] = field->p();
    j["f"] = to_string(f, vars);
    j["verdict"] = to_json(verdict, vars);
    out << j.dump(2) << "\n";
  } else if (verdict.split) {
    out << "split (cone over V(" << to_string(f, vars) << ") is F-split at the origin)\n";
    out << "witness: " << monomial_to_string(verdict.witness->monomial, vars) << " with coefficient "
        << verdict.witness->coefficient << " in f^" << (field->p() - 1) << "\n";
  } else {
    out << "not split (f^" << (field->p() - 1) << " lies in the ideal of p-th powers of the variables)\n";
  }
  return kSuccess;
}

inline int cmd_demo(const CliConfig& cfg, const std::string& name, std::ostream& out) {
  if (name != "fermat-cubic") throw UsageError("unknown demo '" + name + "' (available: fermat-cubic)");
  const FermatReport report = fermat_cubic_report(cfg.threads);
  if (cfg.json()) {
    auto j = envelope("demo fermat-cubic");
    j["p"] = 2;
    j["cubic"] = report.cubic;
    j["source"] = {{"dim", report.source_dim}, {"den", report.source_den}, {"basis", report.source_basis}};
    j["vanishing"] = {{"omega(-K-X)", report.dim_minus_k_minus_x}, {"omega(-2K-2X)", report.dim_minus_2k_minus_2x}};
    nlohmann::json etas = nlohmann::json::object();
    for (const auto& [label, value] : report.eta_traces) etas[label] = value;
    j["eta_traces"] = etas;
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : report.levels) {
      levels.push_back({{"e", l.e},
                        {"rows", l.rows},
                        {"cols", l.cols},
                        {"verdict", to_json(l.verdict)},
                        {"iterated_all_zero", l.iterated_all_zero}});
    }
    j["levels"] = levels;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : report.steps)
      steps.push_back({{"id", s.id}, {"title", s.title}, {"passed", s.passed}, {"detail", s.detail}});
    j["checks"] = steps;
    j["passed"] = report.passed();
    out << j.dump(2) << "\n";
  } else {
    out << "Fermat cubic X = V(" << report.cubic << ") in P^3 over F_2, chart w != 0\n";
    out << "H^0(omega(X+2H)) = span of (m / (" << report.source_den << ")) dX^dY^dZ for m in {";
    for (std::size_t i = 0; i < report.source_basis.size(); ++i) out << (i ? ", " : "") << report.source_basis[i];
    out << "}\n";
    for (const auto& [label, value] : report.eta_traces) out << "  Tr(" << label << ") = " << value << "\n";
    for (const auto& l : report.levels) {
      out << "  e = " << l.e << ": " << l.rows << " x " << l.cols << " matrix, rank " << l.verdict.rank
          << (l.verdict.zero ? ", zero map" : ", NOT zero") << "\n";
    }
    for (const auto& s : report.steps) {
      out << "[" << (s.passed ? "PASS" : "FAIL") << "] (" << s.id << ") " << s.title;
      if (!s.detail.empty()) out << " -- " << s.detail;
      out << "\n";
    }
  }
  return report.passed() ? kSuccess : kFailure;
}

inline int cmd_check(const CliConfig& cfg, const std::string& suite, std::size_t cases, std::ostream& out) {
  const auto reports = run_property_suite(suite, cases, cfg.seed);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  if (cfg.json()) {
    auto j = envelope("check");
    j["seed"] = cfg.seed;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
      arr.push_back({{"suite", r.suite},
                     {"cases", r.cases},
                     {"failures", r.failures},
                     {"counterexample", r.counterexample ? nlohmann::json(*r.counterexample) : nlohmann::json()}});
    }
    j["suites"] = arr;
    j["passed"] = ok;
    out << j.dump(2) << "\n";
  } else {
    out << "seed " << cfg.seed << "\n";
    for (const auto& r : reports) {
      out << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.cases << " cases, " << r.failures
          << " failures\n";
      if (r.counterexample) out << "  first counterexample: " << *r.counterexample << "\n";
    }
  }
  return ok ? kSuccess : kFailure;
}

/// Runs the command line; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace of Frobenius, Cartier operator and F-splitting in positive characteristic", "frobtrace"};
  app.require_subcommand(1);
  app.footer(
      "Divisors: \"poly:mult[,poly:mult...][,H:k]\", e.g. \"x^3+y^3+z^3+w^3:1,H:2\".\n"
      "  poly is homogeneous in --vars, H is the hyperplane class and k may be negative.\n"
      "Forms: \"(num/den) dx^dy\" summed with + and -.\n"
      "Exit status: 0 success, 1 verdict or property failure, 2 usage or parse error.");
  app.fallthrough();

  CliConfig cfg;
  std::string vars_text;
  app.add_option("--char", cfg.p, "characteristic p (prime, < 65536)")->capture_default_str();
  app.add_option("--ext-degree", cfg.ext_degree, "extension degree s of F_{p^s}")->capture_default_str();
  app.add_option("--modulus", cfg.modulus, "monic irreducible modulus for F_{p^s}, e.g. \"t^2+t+1\"");
  app.add_option("--vars", vars_text, "comma-separated variable names; the last one is the default chart");
  app.add_option("--chart", cfg.chart, "chart variable (default: last variable)");
  app.add_option("--output", cfg.output, "table or json")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for the property checks")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads for trace-matrix columns")->capture_default_str();

  std::string form_text, e_text, d_text, divisor_text, poly_text, demo_name, suite;
  unsigned e = 1;
  std::size_t cases = 200;

  auto* trace = app.add_subcommand("trace", "trace a top form, e.g. \"(x/(x^2+1)) dx\"");
  trace->add_option("form", form_text, "top form")->required();
  trace->add_option("--e", e, "Frobenius exponent")->capture_default_str()->check(CLI::PositiveNumber);

  auto* tm = app.add_subcommand("trace-matrix", "matrix of Tr^e_{P^n,E}(D) between section spaces");
  tm->add_option("--E", e_text, "effective part E, e.g. \"x^3+y^3+z^3+w^3:1\" (default: 0)");
  tm->add_option("--D", d_text, "twist D, e.g. \"H:1\" or \"f:a,H:k\"")->required();
  tm->add_option("--e", e, "Frobenius exponent")->capture_default_str()->check(CLI::PositiveNumber);

  auto* sections = app.add_subcommand("sections", "basis of H^0(P^n, omega(D)) on the chart");
  sections->add_option("divisor", divisor_text, "divisor, e.g. \"x^3+y^3+z^3+w^3:1,H:2\"")->required();

  auto* fedder = app.add_subcommand("fedder", "Fedder's criterion for the cone over V(f)");
  fedder->add_option("poly", poly_text, "homogeneous polynomial")->required();

  auto* demo = app.add_subcommand("demo", "worked examples (fermat-cubic)");
  demo->add_option("name", demo_name, "fermat-cubic")->required();

  auto* check = app.add_subcommand("check", "randomized property suites");
  check->add_option("suite", suite, "semilinearity, composition, kernel-exact, cartier-roundtrip, oracle, "
                                    "fedder-cert or all")
      ->required();
  check->add_option("--cases", cases, "cases per suite")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& ex) {
    const auto extra = app.remaining();
    if (app.get_subcommands().empty() && !extra.empty())
      err << "error: unknown command '" << extra.front() << "'\n";
    else
      err << "error: " << ex.what() << "\n";
    return kUsage;
  }

  if (!vars_text.empty()) {
    std::stringstream ss(vars_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      cfg.vars.push_back(item);
    }
  }

  try {
    if (*trace) return cmd_trace(cfg, form_text, e, out);
    if (*tm) return cmd_trace_matrix(cfg, e_text, d_text, e, out);
    if (*sections) return cmd_sections(cfg, divisor_text, out);
    if (*fedder) return cmd_fedder(cfg, poly_text, out);
    if (*demo) return cmd_demo(cfg, demo_name, out);
    if (*check) return cmd_check(cfg, suite, cases, out);
  } catch (const ParseError& ex) {
    err << "parse error: " << ex.what() << "\n";
    return kUsage;
  } catch (const ConsistencyError& ex) {
    err << "internal error: " << ex.what() << "\n";
    return kFailure;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace frobtrace::cli
