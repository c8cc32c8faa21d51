#pragma once

// Brute-force ground truth. Everything here works on configurations directly
// and never uses the eta-basis rules of localfn/generator, so it can certify
// them. Exponentially slow by construction.

#include "asep/generator.hpp"
#include "asep/kernel.hpp"
#include "asep/localfn.hpp"

#include <functional>
#include <set>
#include <utility>
#include <vector>

namespace asep::oracle {

inline constexpr std::size_t kMaxBoxSites = 24;

inline void require_box(std::size_t n) {
  if (n > kMaxBoxSites)
    throw Error(ErrorCode::BoxTooLarge, std::to_string(n) + " sites exceeds the enumeration limit of " +
                                            std::to_string(kMaxBoxSites));
}

// Product Bernoulli(theta) weight of a configuration.
template <class S>
S bernoulli_weight(const Configuration& c, const S& theta) {
  S w(1);
  for (const auto& x : c.box()) w *= c.at(x) ? theta : S(S(1) - theta);
  return w;
}

// Sum over all 2^n configurations of the box of F(xi) * weight(xi).
template <class S, class F>
S enumerate(const std::vector<Site>& sorted_box, const S& theta, F&& fn) {
  require_box(sorted_box.size());
  S total(0);
  const unsigned long long count = 1ULL << sorted_box.size();
  for (unsigned long long bits = 0; bits < count; ++bits) {
    const auto c = Configuration::from_bits(sorted_box, bits);
    total += S(fn(c)) * bernoulli_weight(c, theta);
  }
  return total;
}

template <class S>
S exact_expectation(const LocalFunction<S>& f, const S& theta) {
  return enumerate(f.support(), theta, [&](const Configuration& c) { return evaluate(f, c); });
}

// Ordered pairs (x, y) with x or y in supp(f) and a nonzero jump rate y - x.
template <class S>
std::set<std::pair<Site, Site>> touching_pairs(const JumpKernel& k, GeneratorKind kind, const std::vector<Site>& support) {
  std::set<std::pair<Site, Site>> pairs;
  for (const auto& t : k.terms()) {
    if (is_zero(law_weight<S>(t, kind))) continue;
    for (const auto& s : support) {
      pairs.emplace(s, s + t.z);
      pairs.emplace(s - t.z, s);
    }
  }
  return pairs;
}

// Literal evaluation of
//   sum_{x,y} p(y-x) xi(x) (1 - xi(y)) (f(xi^{x,y}) - f(xi))
// over the pairs that touch supp(f); every other term vanishes identically.
template <class S>
S generator_pointwise(const JumpKernel& k, GeneratorKind kind, const LocalFunction<S>& f, const Configuration& config) {
  const auto support = f.support();
  const S base = evaluate(f, config);
  S total(0);
  for (const auto& [x, y] : touching_pairs<S>(k, kind, support)) {
    const Site z = y - x;
    S rate(0);
    for (const auto& t : k.terms())
      if (t.z == z) rate = law_weight<S>(t, kind);
    if (config.at(x) != 1 || config.at(y) != 0) continue;
    total += rate * (evaluate(f, config.exchanged(x, y)) - base);
  }
  return total;
}

// Sites needed by generator_pointwise: supp(f) enlarged by the kernel range.
template <class S>
std::vector<Site> generator_box(const JumpKernel& k, const LocalFunction<S>& f) {
  std::vector<Site> box = f.support();
  for (const auto& s : f.support())
    for (const auto& t : k.terms()) {
      box.push_back(s + t.z);
      box.push_back(s - t.z);
    }
  std::sort(box.begin(), box.end());
  box.erase(std::unique(box.begin(), box.end()), box.end());
  return box;
}

// Recovers the eta-expansion of a function given only pointwise on a box:
// c_A = <F eta_A>_rho / chi^{|A|}, computed by a per-site butterfly over the
// 2^n configurations.
template <class S>
LocalFunction<S> expand_pointwise(const std::vector<Site>& sorted_box, const Density<S>& dens,
                                  const std::function<S(const Configuration&)>& fn) {
  const std::size_t n = sorted_box.size();
  require_box(n);
  const std::size_t count = std::size_t{1} << n;
  std::vector<S> v(count);
  for (std::size_t bits = 0; bits < count; ++bits) {
    const auto c = Configuration::from_bits(sorted_box, bits);
    v[bits] = fn(c) * bernoulli_weight(c, dens.rho());
  }
  // After processing site i, slot bit i means "eta_i factor taken" instead of
  // "xi_i = 1".
  const S rho = dens.rho();
  const S one_minus = S(1) - rho;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t idx = 0; idx < count; ++idx) {
      if (idx & bit) continue;
      const S v0 = v[idx];
      const S v1 = v[idx | bit];
      v[idx] = v0 + v1;
      v[idx | bit] = S(-rho) * v0 + one_minus * v1;
    }
  }
  LocalFunction<S> out(dens);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<Site> sites;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) sites.push_back(sorted_box[i]);
    const int deg = static_cast<int>(sites.size());
    S c = v[mask] / power(dens.chi(), deg);
    if constexpr (!is_exact_v<S>) {
      if (std::abs(c) < 1e-13) continue;
    }
    out.add_term(Monomial(std::move(sites)), c);
  }
  return out;
}

// <g, tau_x f>_rho for a single shift, by enumeration over the union of
// supports. Products are formed pointwise.
template <class S>
S shifted_pairing(const LocalFunction<S>& g, const LocalFunction<S>& f, const Site& shift) {
  const auto ft = translate(f, shift);
  std::vector<Site> box = g.support();
  const auto fs = ft.support();
  box.insert(box.end(), fs.begin(), fs.end());
  std::sort(box.begin(), box.end());
  box.erase(std::unique(box.begin(), box.end()), box.end());
  return enumerate(box, g.density().rho(), [&](const Configuration& c) { return evaluate(g, c) * evaluate(ft, c); });
}

// Shifts x with supp(g) and supp(tau_x f) intersecting.
template <class S>
std::vector<Site> overlapping_shifts(const LocalFunction<S>& g, const LocalFunction<S>& f) {
  std::vector<Site> shifts;
  for (const auto& a : g.support())
    for (const auto& b : f.support()) shifts.push_back(a - b);
  std::sort(shifts.begin(), shifts.end());
  shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
  return shifts;
}

// sum_x <g, tau_x f>_rho over the overlapping shifts. Both inputs mean zero.
template <class S>
S pair_rho0_bruteforce(const LocalFunction<S>& g, const LocalFunction<S>& f) {
  S total(0);
  for (const auto& x : overlapping_shifts(g, f)) total += shifted_pairing(g, f, x);
  return total;
}

}  // namespace asep::oracle
