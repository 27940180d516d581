#pragma once

#include <cstddef>

#include "frobtrace/forms.hpp"
#include "frobtrace/poly.hpp"

namespace frobtrace {

/// Trace of Frobenius on a polynomial top form: Tr^e(f dx) = g dx.
///
/// Writing f = sum_r g_r^{p^e} x^r, the trace keeps only the residue
/// r = (p^e-1, ..., p^e-1) and returns its root g_r; every other residue maps
/// to zero.
inline Poly trace_poly_top(const Poly& f, unsigned e) {
  if (e == 0) throw UsageError("Frobenius exponent must be positive");
  const auto q = prime_power(f.field()->p(), e);
  Monomial top(f.nvars());
  for (auto& x : top.exps) x = static_cast<std::uint32_t>(q - 1);
  const auto buckets = frobenius_decompose(f, e);
  auto it = buckets.find(top);
  return it == buckets.end() ? Poly(f.field(), f.nvars()) : it->second;
}

/// Tr^e((h/g) dx) = Tr^e(h g^{p^e-1} dx) / g.
///
/// The denominator is always cleared to the p^e-th power of the given g.
inline TopForm trace_rational_top(const TopForm& form, unsigned e) {
  const auto q = prime_power(form.field()->p(), e);
  const Poly& h = form.coeff().num();
  const Poly& g = form.coeff().den();
  return TopForm(RationalFn(trace_poly_top(h * g.pow(q - 1), e), g));
}

/// Tr^e computed as e successive applications of Tr^1.
inline TopForm trace_iterated(const TopForm& form, unsigned e) {
  if (e == 0) throw UsageError("Frobenius exponent must be positive");
  TopForm out = form;
  for (unsigned i = 0; i < e; ++i) out = trace_rational_top(out, 1);
  return out;
}

/// Inverse Cartier operator on polynomial forms, returning the representative
/// C^{-1}(f dx_J) = f^p * prod_{j in J} x_j^{p-1} dx_J of its class in Z^i/B^i.
inline DiffForm inverse_cartier(const DiffForm& form) {
  const auto p = form.field()->p();
  DiffForm out(form.field(), form.nvars(), form.degree());
  for (const auto& [index, coeff] : form.coeffs()) {
    const Poly f = require_polynomial(coeff, "inverse_cartier");
    Monomial shift(form.nvars());
    for (auto j : index) shift.exps[j] = p - 1;
    out.add(index, RationalFn(f.frobenius_power(1).times_monomial(shift)));
  }
  return out;
}

}  // namespace frobtrace
