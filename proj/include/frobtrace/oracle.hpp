#pragma once

#include <optional>
#include <vector>

#include "frobtrace/cartier.hpp"
#include "frobtrace/forms.hpp"
#include "frobtrace/linalg.hpp"

namespace frobtrace {

struct CartierDecomposition {
  DiffForm eta;  // (n-1)-form
  Poly tau;      // omega = d(eta) + C^{-1}(tau dx)
};

/// Splits a polynomial top form as omega = d(eta) + C^{-1}(tau dx) by solving
/// a bounded-degree linear system.
///
/// This uses only the exterior derivative and the inverse Cartier operator,
/// never the residue decomposition behind trace_poly_top, so it serves as an
/// independent check of Tr^1. Coefficients of omega must have degree <= dbound.
inline std::optional<CartierDecomposition> cartier_decomposition(const Poly& omega, int dbound) {
  const auto& field = omega.field();
  const std::size_t n = omega.nvars();
  if (n == 0) throw UsageError("top forms need at least one variable");
  const auto p = static_cast<int>(field->p());

  const FormBasis eta_basis(n, n - 1, dbound + 1);
  const FormBasis target(n, n, dbound);
  const int tau_bound = dbound < static_cast<int>(n) * (p - 1) ? -1 : (dbound - static_cast<int>(n) * (p - 1)) / p;
  const auto tau_monomials = monomials_up_to(n, tau_bound);

  const auto rhs = target.coordinates(TopForm(omega).to_form());
  if (!rhs) throw UsageError("top form exceeds the degree bound");

  Matrix system(field, target.size(), eta_basis.size() + tau_monomials.size());
  for (std::size_t k = 0; k < eta_basis.size(); ++k) {
    const auto col = target.coordinates(exterior_derivative(eta_basis.form(field, k)));
    if (!col) throw ConsistencyError("d(eta) left the bounded-degree target");
    for (std::size_t r = 0; r < col->size(); ++r) system(r, k) = (*col)[r];
  }
  // The unknown for tau's monomial m is t_m^p, which enters linearly.
  for (std::size_t k = 0; k < tau_monomials.size(); ++k) {
    const auto basis_form = TopForm(Poly::term(field, tau_monomials[k], Scalar::one(field))).to_form();
    const auto col = target.coordinates(inverse_cartier(basis_form));
    if (!col) throw ConsistencyError("C^{-1}(tau) left the bounded-degree target");
    for (std::size_t r = 0; r < col->size(); ++r) system(r, eta_basis.size() + k) = (*col)[r];
  }

  const auto solution = solve(system, *rhs);
  if (!solution) return std::nullopt;

  DiffForm eta(field, n, n - 1);
  for (std::size_t k = 0; k < eta_basis.size(); ++k) {
    if ((*solution)[k].is_zero()) continue;
    auto [index, m] = eta_basis.element(k);
    eta.add(std::move(index), RationalFn(Poly::term(field, std::move(m), (*solution)[k])));
  }
  Poly tau(field, n);
  for (std::size_t k = 0; k < tau_monomials.size(); ++k) {
    tau.add_term(tau_monomials[k], (*solution)[eta_basis.size() + k].inverse_frobenius(1));
  }
  return CartierDecomposition{std::move(eta), std::move(tau)};
}

}  // namespace frobtrace
