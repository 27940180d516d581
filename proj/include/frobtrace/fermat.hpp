#pragma once

#include <string>
#include <vector>

#include "frobtrace/cartier.hpp"
#include "frobtrace/parse.hpp"
#include "frobtrace/projective.hpp"

namespace frobtrace {

/// The Fermat cubic surface X = V(x^3 + y^3 + z^3 + w^3) in P^3 over F_2,
/// whose anticanonical trace map Tr^e_X(-K_X) vanishes for every e.
///
/// The check runs on P^3: on the chart w != 0 the trace
/// Tr_{P^3,X}(H): H^0(omega(X + 2^e H)) -> H^0(omega(X + H)) is the zero
/// map, and restriction to X identifies both ends with the sections on X.
struct FermatReport {
  struct Step {
    std::string id;
    std::string title;
    bool passed;
    std::string detail;
  };
  struct Level {
    unsigned e;
    std::size_t rows;
    std::size_t cols;
    MapVerdict verdict;
    bool iterated_all_zero;
  };

  std::vector<std::string> vars{"x", "y", "z", "w"};
  std::string cubic = "x^3+y^3+z^3+w^3";
  std::size_t source_dim = 0;
  std::vector<std::string> source_basis;  // numerators over the cubic
  std::string source_den;
  std::size_t dim_minus_k_minus_x = 0;    // omega(-K - X) = O(-3)
  std::size_t dim_minus_2k_minus_2x = 0;  // omega(-2K - 2X) = O(-2)
  std::vector<std::pair<std::string, std::string>> eta_traces;
  std::vector<Level> levels;  // e = 1, 2, 3
  std::vector<Step> steps;

  bool passed() const {
    for (const auto& s : steps)
      if (!s.passed) return false;
    return !steps.empty();
  }
};

inline FermatReport fermat_cubic_report(unsigned threads = 1) {
  FermatReport report;
  const auto field = FieldSpec::prime(2);
  const auto& vars = report.vars;
  const std::size_t chart = 3;
  const auto names = std::vector<std::string>{"X", "Y", "Z"};

  const DivisorSpec cubic = parse_divisor(report.cubic + ":1", vars, field);
  const DivisorSpec hyperplane = parse_divisor("H:1", vars, field);

  // (a) H^0(omega(X + 2H)) with the basis eta_1, eta_X, eta_Y, eta_Z.
  const SectionSpace source = section_space(pe_twist(hyperplane, cubic, 1), chart);
  report.source_dim = source.dim();
  report.source_den = to_string(source.den(), names);
  for (const auto& m : source.basis()) report.source_basis.push_back(monomial_to_string(m, names));
  const bool basis_ok = source.dim() == 4 && report.source_basis == std::vector<std::string>{"1", "X", "Y", "Z"} &&
                        report.source_den == "X^3 + Y^3 + Z^3 + 1";
  report.steps.push_back({"a", "h0(omega(X+2H)) = 4 with basis eta_1, eta_X, eta_Y, eta_Z", basis_ok,
                          "dim " + std::to_string(source.dim()) + " over " + report.source_den});

  // (b) -K - X ~ 4H - 3H = H and -2K - 2X ~ 8H - 6H = 2H.
  report.dim_minus_k_minus_x = section_space(parse_divisor("H:1", vars, field), chart).dim();
  report.dim_minus_2k_minus_2x = section_space(parse_divisor("H:2", vars, field), chart).dim();
  report.steps.push_back({"b", "omega(-K-X) = O(-3) and omega(-2K-2X) = O(-2) have no sections",
                          report.dim_minus_k_minus_x == 0 && report.dim_minus_2k_minus_2x == 0,
                          "dims " + std::to_string(report.dim_minus_k_minus_x) + ", " +
                              std::to_string(report.dim_minus_2k_minus_2x)});

  // (c) Tr(eta) for each basis form.
  bool etas_zero = true;
  for (std::size_t b = 0; b < source.dim(); ++b) {
    const TopForm traced = trace_rational_top(source.form(b), 1);
    etas_zero = etas_zero && traced.is_zero();
    const std::string label = "eta_" + (report.source_basis[b] == "1" ? std::string("1") : report.source_basis[b]);
    report.eta_traces.emplace_back(label, to_string(traced.coeff(), names));
  }
  report.steps.push_back({"c", "Tr(eta_1) = Tr(eta_X) = Tr(eta_Y) = Tr(eta_Z) = 0", etas_zero, ""});

  // (d) and (e): the trace matrix for e = 1, 2, 3, plus per-form iterated traces.
  for (unsigned e = 1; e <= 3; ++e) {
    const SemilinearMap map = trace_matrix(cubic, hyperplane, e, chart, threads);
    bool iterated_zero = true;
    for (std::size_t b = 0; b < map.src().dim(); ++b)
      iterated_zero = iterated_zero && trace_iterated(map.src().form(b), e).is_zero();
    report.levels.push_back({e, map.matrix().rows(), map.matrix().cols(), map_verdict(map), iterated_zero});
  }
  const auto& first = report.levels.front();
  report.steps.push_back({"d", "Tr_{P3,X}(H) is the 1x4 zero matrix",
                          first.rows == 1 && first.cols == 4 && first.verdict.zero && first.verdict.rank == 0,
                          std::to_string(first.rows) + "x" + std::to_string(first.cols)});
  bool higher = true;
  std::string detail;
  for (std::size_t i = 1; i < report.levels.size(); ++i) {
    const auto& l = report.levels[i];
    higher = higher && l.rows == 1 && l.verdict.zero && l.iterated_all_zero;
    detail += (detail.empty() ? "" : ", ") + std::string("e=") + std::to_string(l.e) + ": " + std::to_string(l.rows) +
              "x" + std::to_string(l.cols);
  }
  report.steps.push_back({"e", "zero trace for e = 2, 3 (direct and iterated)", higher, detail});
  return report;
}

}  // namespace frobtrace
