#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frobtrace/cartier.hpp"
#include "frobtrace/forms.hpp"
#include "frobtrace/fsplit.hpp"
#include "frobtrace/oracle.hpp"
#include "frobtrace/poly.hpp"

// Randomized property suites for the trace map, the Cartier operator and the
// Fedder check. They are shared by the `check` command and the test suites.

namespace frobtrace {

struct PropertyReport {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<std::string> counterexample;  // first failure, verbatim

  bool passed() const noexcept { return failures == 0; }
};

/// Deterministic random source; reductions use plain modulo so the stream is
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  bool coin() { return below(2) == 1; }
  template <typename T>
  const T& pick(const std::vector<T>& items) { return items[below(items.size())]; }

  Scalar nonzero_scalar(const FieldRef& field) {
    while (true) {
      std::vector<Residue> c(field->s());
      for (auto& x : c) x = static_cast<Residue>(below(field->p()));
      Scalar s = Scalar::from_coeffs(field, c);
      if (!s.is_zero()) return s;
    }
  }

  /// Up to `max_terms` terms with each exponent in [0, max_exp]; never zero.
  Poly poly(const FieldRef& field, std::size_t nvars, std::size_t max_terms, std::uint32_t max_exp) {
    while (true) {
      Poly f(field, nvars);
      const auto terms = 1 + below(max_terms);
      for (std::uint64_t t = 0; t < terms; ++t) {
        Monomial m(nvars);
        for (auto& x : m.exps) x = static_cast<std::uint32_t>(below(max_exp + 1));
        f.add_term(std::move(m), nonzero_scalar(field));
      }
      if (!f.is_zero()) return f;
    }
  }

  /// Terms of total degree <= max_degree.
  Poly poly_bounded(const FieldRef& field, std::size_t nvars, std::size_t max_terms, int max_degree) {
    const auto monomials = monomials_up_to(nvars, max_degree);
    while (true) {
      Poly f(field, nvars);
      const auto terms = 1 + below(max_terms);
      for (std::uint64_t t = 0; t < terms; ++t) f.add_term(pick(monomials), nonzero_scalar(field));
      if (!f.is_zero()) return f;
    }
  }

  /// Homogeneous of the given degree.
  Poly homogeneous(const FieldRef& field, std::size_t nvars, std::size_t max_terms, int degree) {
    std::vector<Monomial> pool;
    for (auto& m : monomials_up_to(nvars, degree))
      if (static_cast<int>(m.degree()) == degree) pool.push_back(m);
    while (true) {
      Poly f(field, nvars);
      const auto terms = 1 + below(max_terms);
      for (std::uint64_t t = 0; t < terms; ++t) f.add_term(pick(pool), nonzero_scalar(field));
      if (!f.is_zero()) return f;
    }
  }

  DiffForm form(const FieldRef& field, std::size_t nvars, std::size_t degree, std::size_t max_terms,
                std::uint32_t max_exp) {
    DiffForm out(field, nvars, degree);
    for (const auto& index : index_subsets(nvars, degree))
      if (coin()) out.add(index, RationalFn(poly(field, nvars, max_terms, max_exp)));
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

/// Small fields used by the suites: F_2, F_3, F_5, F_4 = F_2[t]/(t^2+t+1), F_9 = F_3[t]/(t^2+1).
inline std::vector<FieldRef> test_fields() {
  return {FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(5), FieldSpec::extension(2, {1, 1, 1}),
          FieldSpec::extension(3, {1, 0, 1})};
}

namespace detail {

inline std::string field_tag(const FieldRef& f) { return f->describe(); }

inline std::string describe_top(const TopForm& w) {
  return "(" + to_string(w.coeff(), default_names(w.nvars())) + ") dx";
}

inline std::string describe_form(const DiffForm& w) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [index, f] : w.coeffs()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(f, default_names(w.nvars())) << ")";
    for (auto j : index) os << " dx" << j;
  }
  if (first) os << "0";
  return os.str();
}

// Largest e tried for p so that p^e stays small enough for rational powers.
inline unsigned max_rational_e(Residue p) { return p == 2 ? 3 : (p == 3 ? 2 : 1); }

using CaseFn = std::function<std::optional<std::string>(Rng&)>;

inline PropertyReport run_cases(const std::string& name, std::size_t cases, std::uint64_t seed, const CaseFn& fn) {
  PropertyReport report;
  report.suite = name;
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    ++report.cases;
    auto failure = fn(rng);
    if (failure) {
      ++report.failures;
      if (!report.counterexample) report.counterexample = "case " + std::to_string(i) + ": " + *failure;
    }
  }
  return report;
}

}  // namespace detail

/// Tr^e(u^{p^e} w) = u Tr^e(w) and Tr^e(w1 + w2) = Tr^e(w1) + Tr^e(w2).
inline PropertyReport check_semilinearity(std::size_t cases, std::uint64_t seed) {
  const auto fields = test_fields();
  return detail::run_cases("semilinearity", cases, seed, [&](Rng& rng) -> std::optional<std::string> {
    const auto field = rng.pick(fields);
    const auto p = field->p();
    const std::size_t n = 1 + rng.below(3);
    const unsigned e = 1 + static_cast<unsigned>(rng.below(p == 5 ? 1 : 2));
    const auto q = static_cast<std::uint32_t>(prime_power(p, e));
    auto small_den = [&] {
      return rng.coin() ? Poly::constant(field, n, rng.nonzero_scalar(field)) : rng.poly(field, n, 2, 1);
    };
    const TopForm w1(rng.poly(field, n, 4, 2 * q), small_den());
    const TopForm w2(rng.poly(field, n, 3, 2 * q), small_den());
    const RationalFn u(rng.poly(field, n, 2, 2), small_den());

    const TopForm lhs = trace_rational_top(TopForm(u.pow(q) * w1.coeff()), e);
    const RationalFn rhs = u * trace_rational_top(w1, e).coeff();
    if (!(lhs.coeff() == rhs)) {
      return field->describe() + " e=" + std::to_string(e) + " w=" + detail::describe_top(w1) +
             " u=" + to_string(u, default_names(n)) + ": Tr(u^q w) != u Tr(w)";
    }
    const TopForm sum = trace_rational_top(w1 + w2, e);
    const TopForm parts = trace_rational_top(w1, e) + trace_rational_top(w2, e);
    if (!(sum == parts)) {
      return field->describe() + " e=" + std::to_string(e) + " w1=" + detail::describe_top(w1) +
             " w2=" + detail::describe_top(w2) + ": Tr(w1+w2) != Tr(w1)+Tr(w2)";
    }
    return std::nullopt;
  });
}

/// Tr^e computed as e single steps agrees with the direct e-step trace.
inline PropertyReport check_composition(std::size_t cases, std::uint64_t seed) {
  const auto fields = test_fields();
  return detail::run_cases("composition", cases, seed, [&](Rng& rng) -> std::optional<std::string> {
    const auto field = rng.pick(fields);
    const auto p = field->p();
    const std::size_t n = 1 + rng.below(3);
    const unsigned e = 1 + static_cast<unsigned>(rng.below(p == 2 ? 3 : 2));
    const auto q = static_cast<std::uint32_t>(prime_power(p, e));
    Poly den = Poly::constant(field, n, 1);
    if (e <= detail::max_rational_e(p) && rng.coin()) den = rng.poly(field, n, 2, 1);
    const TopForm w(rng.poly(field, n, 4, 2 * q), den);
    if (!(trace_iterated(w, e) == trace_rational_top(w, e))) {
      return field->describe() + " e=" + std::to_string(e) + " w=" + detail::describe_top(w) +
             ": iterated trace differs from direct trace";
    }
    return std::nullopt;
  });
}

/// Exact top forms lie in the kernel of Tr^1, and d(eta) is recognised as exact.
inline PropertyReport check_kernel_exact(std::size_t cases, std::uint64_t seed) {
  const auto fields = test_fields();
  return detail::run_cases("kernel-exact", cases, seed, [&](Rng& rng) -> std::optional<std::string> {
    const auto field = rng.pick(fields);
    const std::size_t n = 1 + rng.below(3);
    const auto max_exp = static_cast<std::uint32_t>(2 * field->p() + 1);
    DiffForm eta = rng.form(field, n, n - 1, 4, max_exp);
    const DiffForm d_eta = exterior_derivative(eta);
    const Poly top = d_eta.is_zero() ? Poly(field, n) : require_polynomial(TopForm::from_form(d_eta).coeff(), "check");
    if (!trace_poly_top(top, 1).is_zero()) {
      return field->describe() + " eta=" + detail::describe_form(eta) + ": Tr(d eta) != 0";
    }
    // The bounded exactness solver is cubic in the basis size; keep it to small shapes.
    if (n <= 2) {
      int deg = 0;
      for (const auto& [index, f] : eta.coeffs()) deg = std::max(deg, f.num().total_degree());
      if (!is_exact_bounded(d_eta, std::max(deg - 1, 0))) {
        return field->describe() + " eta=" + detail::describe_form(eta) + ": d eta not recognised as exact";
      }
    }
    return std::nullopt;
  });
}

/// Tr^1(C^{-1}(w)) = w on top forms and d(C^{-1}(w)) = 0 for i-forms with i < n.
inline PropertyReport check_cartier_roundtrip(std::size_t cases, std::uint64_t seed) {
  const auto fields = test_fields();
  return detail::run_cases("cartier-roundtrip", cases, seed, [&](Rng& rng) -> std::optional<std::string> {
    const auto field = rng.pick(fields);
    const std::size_t n = 1 + rng.below(3);
    const Poly f = rng.poly(field, n, 4, 4);
    const DiffForm top = TopForm(f).to_form();
    const Poly back = trace_poly_top(require_polynomial(TopForm::from_form(inverse_cartier(top)).coeff(), "check"), 1);
    if (!(back == f)) {
      return field->describe() + " w=" + detail::describe_form(top) + ": Tr(C^{-1} w) != w";
    }
    const std::size_t i = rng.below(n);
    const DiffForm w = rng.form(field, n, i, 3, 4);
    if (!exterior_derivative(inverse_cartier(w)).is_zero()) {
      return field->describe() + " w=" + detail::describe_form(w) + ": d(C^{-1} w) != 0";
    }
    return std::nullopt;
  });
}

/// The linear-algebra decomposition w = d(eta) + C^{-1}(tau dx) recovers tau = Tr^1(w).
/// Characteristic 2, two variables, degree <= 6.
inline PropertyReport check_oracle(std::size_t cases, std::uint64_t seed) {
  const std::vector<FieldRef> fields{FieldSpec::prime(2), FieldSpec::extension(2, {1, 1, 1})};
  return detail::run_cases("oracle", cases, seed, [&](Rng& rng) -> std::optional<std::string> {
    const auto field = rng.pick(fields);
    const Poly w = rng.poly_bounded(field, 2, 8, 6);
    const auto split = cartier_decomposition(w, 6);
    if (!split) return field->describe() + " w=(" + to_string(w) + ") dx: no decomposition found";
    const Poly traced = trace_poly_top(w, 1);
    if (!(split->tau == traced)) {
      return field->describe() + " w=(" + to_string(w) + ") dx: oracle tau=" + to_string(split->tau) +
             " but Tr(w)=" + to_string(traced);
    }
    return std::nullopt;
  });
}

/// Fedder verdicts on random homogeneous polynomials re-check against f^{p-1}.
inline PropertyReport check_fedder_certificates(std::size_t cases, std::uint64_t seed) {
  const std::vector<Residue> primes{2, 3, 5, 7};
  return detail::run_cases("fedder-cert", cases, seed, [&](Rng& rng) -> std::optional<std::string> {
    const auto field = FieldSpec::prime(rng.pick(primes));
    const std::size_t nvars = 1 + rng.below(4);
    const int degree = 1 + static_cast<int>(rng.below(3));
    const Poly f = rng.homogeneous(field, nvars, 4, degree);
    const auto verdict = fedder_hypersurface(f);
    if (!verify_fedder_certificate(f, verdict)) {
      return field->describe() + " f=" + to_string(f) + ": certificate rejected";
    }
    return std::nullopt;
  });
}

inline const std::vector<std::string>& property_suite_names() {
  static const std::vector<std::string> names{"semilinearity", "composition", "kernel-exact",
                                              "cartier-roundtrip", "oracle", "fedder-cert"};
  return names;
}

/// Runs one named suite, or every suite for "all". Unknown names throw UsageError.
inline std::vector<PropertyReport> run_property_suite(const std::string& name, std::size_t cases,
                                                      std::uint64_t seed) {
  std::vector<PropertyReport> out;
  auto one = [&](const std::string& suite) {
    if (suite == "semilinearity") out.push_back(check_semilinearity(cases, seed));
    else if (suite == "composition") out.push_back(check_composition(cases, seed));
    else if (suite == "kernel-exact") out.push_back(check_kernel_exact(cases, seed));
    else if (suite == "cartier-roundtrip") out.push_back(check_cartier_roundtrip(cases, seed));
    else if (suite == "oracle") out.push_back(check_oracle(cases, seed));
    else if (suite == "fedder-cert") out.push_back(check_fedder_certificates(cases, seed));
    else throw UsageError("unknown check suite '" + suite + "'");
  };
  if (name == "all") {
    for (const auto& suite : property_suite_names()) one(suite);
  } else {
    one(name);
  }
  return out;
}

}  // namespace frobtrace
