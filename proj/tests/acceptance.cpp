// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "frobtrace/frobtrace.hpp"

using namespace frobtrace;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out{false, ""};
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    out.ok = false;
    out.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s limit)";
  }
  if (!out.ok) ++failures;
  std::printf("criterion %d: %s  %s -- %s [%.2f s]\n", id, out.ok ? "PASS" : "FAIL", title.c_str(),
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

Outcome suites(const std::vector<std::string>& names, std::size_t cases) {
  bool ok = true;
  std::string detail;
  for (const auto& name : names) {
    for (const auto& r : run_property_suite(name, cases, 42)) {
      ok = ok && r.passed();
      detail += (detail.empty() ? "" : "; ") + r.suite + " " + std::to_string(r.cases - r.failures) + "/" +
                std::to_string(r.cases);
      if (r.counterexample) detail += " first failure: " + *r.counterexample;
    }
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::string> xyzw{"x", "y", "z", "w"};

  criterion(1, "Fermat cubic trace Tr_{P3,X}(H) is zero over F_2 for e = 1, 2, 3", 5.0, [&] {
    const auto f2 = FieldSpec::prime(2);
    const DivisorSpec x = parse_divisor("x^3+y^3+z^3+w^3:1", xyzw, f2);
    const DivisorSpec h = parse_divisor("H:1", xyzw, f2);
    bool ok = true;
    std::string detail;
    for (unsigned e = 1; e <= 3; ++e) {
      const SemilinearMap map = trace_matrix(x, h, e, 3);
      const MapVerdict v = map_verdict(map);
      bool iterated = true;
      for (std::size_t b = 0; b < map.src().dim(); ++b)
        iterated = iterated && trace_iterated(map.src().form(b), e).is_zero();
      const std::size_t expected_cols = e == 1 ? 4 : (e == 2 ? 20 : 120);
      ok = ok && map.matrix().rows() == 1 && map.matrix().cols() == expected_cols && v.zero && v.rank == 0 && iterated;
      detail += (detail.empty() ? "" : ", ") + std::string("e=") + std::to_string(e) + " " +
                std::to_string(map.matrix().rows()) + "x" + std::to_string(map.matrix().cols()) +
                (v.zero ? " zero" : " NON-ZERO");
    }
    // The e = 1 matrix is the 1x4 matrix on eta_1, eta_X, eta_Y, eta_Z.
    return Outcome{ok, detail};
  });

  criterion(2, "section dimensions 4, 0, 0", 0, [&] {
    const auto f2 = FieldSpec::prime(2);
    const auto src = section_space(parse_divisor("x^3+y^3+z^3+w^3:1,H:2", xyzw, f2), 3);
    const auto a = section_space(parse_divisor("H:1", xyzw, f2), 3);
    const auto b = section_space(parse_divisor("H:2", xyzw, f2), 3);
    return Outcome{src.dim() == 4 && a.dim() == 0 && b.dim() == 0,
                   "h0(omega(X+2H)) = " + std::to_string(src.dim()) + ", omega(-K-X) model " +
                       std::to_string(a.dim()) + ", omega(-2K-2X) model " + std::to_string(b.dim())};
  });

  criterion(3, "local trace rule, exhaustive for p in {2,3}, e in {1,2}, n in {1,2,3}", 0, [&] {
    std::size_t checked = 0, bad = 0;
    for (Residue p : {2u, 3u}) {
      const auto field = FieldSpec::prime(p);
      for (unsigned e = 1; e <= 2; ++e) {
        const auto q = static_cast<std::uint32_t>(prime_power(p, e));
        for (std::size_t n = 1; n <= 3; ++n) {
          for (const auto& m : monomials_up_to(n, static_cast<int>(n * (q - 1)))) {
            bool in_box = true, top = true;
            for (auto x : m.exps) {
              in_box = in_box && x <= q - 1;
              top = top && x == q - 1;
            }
            if (!in_box) continue;
            const Poly t = trace_poly_top(Poly::term(field, m, Scalar::one(field)), e);
            const bool good = top ? t == Poly::constant(field, n, 1) : t.is_zero();
            ++checked;
            if (!good) ++bad;
          }
        }
      }
    }
    return Outcome{bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " monomials"};
  });

  criterion(4, "semilinearity and composition suites", 30.0,
            [&] { return suites({"semilinearity", "composition"}, 200); });

  criterion(5, "kernel/exactness and Cartier round-trip suites", 0,
            [&] { return suites({"kernel-exact", "cartier-roundtrip"}, 200); });

  criterion(6, "linear-algebra Cartier oracle agrees with Tr^1 (p=2, n=2, degree <= 6)", 60.0,
            [&] { return suites({"oracle"}, 50); });

  criterion(7, "F-split checks", 0, [&] {
    bool ok = true;
    std::string detail;
    for (Residue p : {2u, 5u, 7u}) {
      const auto field = FieldSpec::prime(p);
      const Poly f = parse_poly("x^3+y^3+z^3+w^3", xyzw, field);
      const FsplitVerdict v = fedder_hypersurface(f);
      const bool expected = p != 2;
      ok = ok && v.split == expected && verify_fedder_certificate(f, v);
      detail += "p=" + std::to_string(p) + (v.split ? " split" : " not split") + ", ";
    }
    std::size_t grid = 0, surjective = 0;
    for (std::size_t n = 1; n <= 2; ++n)
      for (int k = static_cast<int>(n) + 1; k <= static_cast<int>(n) + 3; ++k)
        for (Residue p : {2u, 3u, 5u})
          for (unsigned e = 1; e <= 2; ++e) {
            ++grid;
            if (pn_trace_surjectivity(n, k, p, e)) ++surjective;
          }
    ok = ok && grid == surjective;
    detail += "P^n trace surjective on " + std::to_string(surjective) + "/" + std::to_string(grid) + " grid points";
    return Outcome{ok, detail};
  });

  std::printf("criterion 8: NOTE  surface and threefold extension results are existence statements "
              "over algebraically closed fields; criteria 1-7 are the computable substitute\n");
  std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria FAILED");
  return failures == 0 ? 0 : 1;
}
