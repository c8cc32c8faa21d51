#pragma once

#include "asep/kernel.hpp"
#include "asep/localfn.hpp"

#include <span>
#include <vector>

namespace asep {

// forward: law p; adjoint: law p*(z) = p(-z); symmetric: law a.
enum class GeneratorKind { Forward, Adjoint, Symmetric };

constexpr GeneratorKind adjoint_of(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Forward: return GeneratorKind::Adjoint;
    case GeneratorKind::Adjoint: return GeneratorKind::Forward;
    case GeneratorKind::Symmetric: return GeneratorKind::Symmetric;
  }
  return kind;
}

const char* to_string(GeneratorKind kind);

// Jump rate of the chosen law at displacement z, split into its symmetric and
// antisymmetric parts.
template <class S>
struct PairRate {
  Site z;
  S sym;
  S anti;
};

template <class S>
std::vector<PairRate<S>> pair_rates(const JumpKernel& k, GeneratorKind kind) {
  std::vector<PairRate<S>> out;
  out.reserve(k.terms().size());
  for (const auto& t : k.terms()) {
    PairRate<S> r;
    r.z = t.z;
    if constexpr (is_exact_v<S>) {
      r.sym = t.a_exact;
      r.anti = t.b_exact;
    } else {
      r.sym = t.a;
      r.anti = t.b;
    }
    if (kind == GeneratorKind::Adjoint) r.anti = -r.anti;
    if (kind == GeneratorKind::Symmetric) r.anti = S(0);
    out.push_back(r);
  }
  return out;
}

// Jump probability of the chosen law at z (p, p* or a).
template <class S>
S law_weight(const KernelTerm& t, GeneratorKind kind) {
  if constexpr (is_exact_v<S>) {
    switch (kind) {
      case GeneratorKind::Forward: return t.p_exact;
      case GeneratorKind::Adjoint: return t.p_rev_exact;
      case GeneratorKind::Symmetric: return t.a_exact;
    }
  } else {
    switch (kind) {
      case GeneratorKind::Forward: return t.p;
      case GeneratorKind::Adjoint: return t.p_rev;
      case GeneratorKind::Symmetric: return t.a;
    }
  }
  return S(0);
}

// Exclusion generator applied to a local function in the eta basis.
//
// Grouping the two orientations of each unordered pair {x, y}, and using that
// f(xi^{x,y}) - f(xi) vanishes unless xi(x) != xi(y),
//
//   L f = sum_{x,y} [a(y-x) + b(y-x) (xi(x) - xi(y))] (f(xi^{x,y}) - f(xi)) / 2.
//
// For eta_A only pairs with x in A, y not in A contribute, and with A' = A - {x}
//
//   a-part:  a(z) (eta_{A'+y} - eta_A)
//   b-part: -b(z) [(1-2rho)(eta_A + eta_{A'+y}) + 2 chi eta_{A'} - 2 eta_{A+y}]
//
// where z = y - x. The a-part preserves degree; the b-part moves it by -1, 0, +1.
template <class S>
LocalFunction<S> apply_generator(const JumpKernel& k, GeneratorKind kind, const LocalFunction<S>& f) {
  const auto rates = pair_rates<S>(k, kind);
  const auto& dens = f.density();
  const S lin = dens.square_linear();
  const S two_chi = S(2) * dens.chi();
  LocalFunction<S> out(dens);
  for (const auto& [m, c] : f.terms()) {
    for (const Site& x : m.sites()) {
      for (const auto& r : rates) {
        const Site y = x + r.z;
        if (m.contains(y)) continue;
        const Monomial moved = m.replaced(x, y);
        if (!is_zero(r.sym)) {
          const S s = c * r.sym;
          out.add_term(moved, s);
          out.add_term(m, S(-s));
        }
        if (!is_zero(r.anti)) {
          const S s = c * r.anti;
          out.add_term(m, S(-s * lin));
          out.add_term(moved, S(-s * lin));
          out.add_term(m.without(x), S(-s * two_chi));
          out.add_term(m.with(y), S(S(2) * s));
        }
      }
    }
  }
  return out;
}

// The current observables along one axis (0-based).
template <class S>
struct Currents {
  LocalFunction<S> W;       // particle current
  LocalFunction<S> W_sym;   // current of the symmetric process
  LocalFunction<S> h;       // sum_z z_i b(z) eta_0 eta_z
  LocalFunction<S> w;       // normalized current, project_to_G(W)
  LocalFunction<S> w_star;  // W_sym + h
};

template <class S>
Currents<S> make_currents(const JumpKernel& k, const Density<S>& dens, int axis) {
  if (axis < 0 || axis >= k.dimension()) throw std::out_of_range("make_currents: axis out of range");
  const Site origin{};
  const auto xi0 = LocalFunction<S>::occupation(dens, origin);
  const auto one = LocalFunction<S>::constant(dens, S(1));
  Currents<S> c{LocalFunction<S>(dens), LocalFunction<S>(dens), LocalFunction<S>(dens), LocalFunction<S>(dens),
                LocalFunction<S>(dens)};
  for (const auto& t : k.terms()) {
    const int zi = t.z[axis];
    if (zi == 0) continue;
    const auto xiz = LocalFunction<S>::occupation(dens, t.z);
    const S p = law_weight<S>(t, GeneratorKind::Forward);
    const S p_rev = law_weight<S>(t, GeneratorKind::Adjoint);
    const S a = law_weight<S>(t, GeneratorKind::Symmetric);
    const S b = (p - p_rev) / S(2);
    const S half(S(1) / S(2));
    // 1/2 [p(z) z_i xi(0)(1 - xi(z)) - p(-z) z_i xi(z)(1 - xi(0))]
    c.W += (half * p * S(zi)) * multiply(xi0, one - xiz);
    c.W -= (half * p_rev * S(zi)) * multiply(xiz, one - xi0);
    c.W_sym += (half * a * S(zi)) * (xi0 - xiz);
    c.h.add_term(Monomial{origin, t.z}, b * S(zi));
  }
  c.w = project_to_G(c.W);
  c.w_star = c.W_sym + c.h;
  return c;
}

// Largest coefficient of R(L f) - L*(R f) over the test set.
template <class S>
S check_commutation(const JumpKernel& k, std::span<const LocalFunction<S>> testset) {
  S worst(0);
  for (const auto& f : testset) {
    const auto lhs = reflect(apply_generator(k, GeneratorKind::Forward, f));
    const auto rhs = apply_generator(k, GeneratorKind::Adjoint, reflect(f));
    const auto diff = lhs - rhs;
    for (const auto& [m, c] : diff.terms()) worst = std::max(worst, abs_value(c));
  }
  return worst;
}

}  // namespace asep
