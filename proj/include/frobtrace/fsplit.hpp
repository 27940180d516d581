#pragma once

#include <optional>

#include "frobtrace/poly.hpp"
#include "frobtrace/projective.hpp"

namespace frobtrace {

struct FedderWitness {
  Monomial monomial;  // every exponent <= p-1
  Scalar coefficient;  // its coefficient in f^{p-1}, non-zero
};

struct FsplitVerdict {
  bool split = false;
  std::optional<FedderWitness> witness;  // present exactly when split
};

/// Fedder's criterion for the cone over V(f): k[x]/(f) is F-split at the
/// origin iff f^{p-1} has a monomial with every exponent <= p-1, i.e.
/// f^{p-1} is not in (x_0^p, ..., x_n^p).
///
/// f^{p-1} is formed by repeated multiplication. The witness is the largest
/// such monomial in graded-lex order.
inline FsplitVerdict fedder_hypersurface(const Poly& f) {
  if (f.is_zero()) throw UsageError("Fedder's criterion needs a non-zero polynomial");
  const auto p = f.field()->p();
  Poly power = Poly::constant(f.field(), f.nvars(), 1);
  for (Residue i = 0; i + 1 < p; ++i) power = power * f;
  for (const auto& [m, c] : power.terms()) {
    bool small = true;
    for (auto x : m.exps) small = small && x <= p - 1;
    if (small) return {true, FedderWitness{m, c}};
  }
  return {false, std::nullopt};
}

/// Re-checks a Fedder verdict against f^{p-1} recomputed by repeated squaring.
///
/// A split verdict must carry a witness whose coefficient matches; a non-split
/// verdict is confirmed by scanning every monomial.
inline bool verify_fedder_certificate(const Poly& f, const FsplitVerdict& verdict) {
  const auto p = f.field()->p();
  const Poly power = f.pow(p - 1);
  if (verdict.split) {
    if (!verdict.witness) return false;
    const auto& w = *verdict.witness;
    for (auto x : w.monomial.exps)
      if (x > p - 1) return false;
    const Scalar c = power.coefficient(w.monomial);
    return !c.is_zero() && c == w.coefficient;
  }
  if (verdict.witness) return false;
  for (const auto& [m, c] : power.terms()) {
    bool small = true;
    for (auto x : m.exps) small = small && x <= p - 1;
    if (small) return false;
  }
  return true;
}

/// Surjectivity of Tr^e(kH): H^0(P^n, omega(p^e k H)) -> H^0(P^n, omega(kH)).
/// P^n is F-split, so this is expected to hold for every k >= n+1.
inline bool pn_trace_surjectivity(std::size_t n, int k, Residue p, unsigned e) {
  if (k < static_cast<int>(n) + 1) throw UsageError("omega(kH) on P^n vanishes unless k >= n+1");
  const auto field = FieldSpec::prime(p);
  const DivisorSpec effective(field, n, 0);
  const DivisorSpec divisor(field, n, k);
  return map_verdict(trace_matrix(effective, divisor, e, n)).surjective;
}

}  // namespace frobtrace
