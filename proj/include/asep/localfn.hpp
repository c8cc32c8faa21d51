#pragma once

#include "asep/error.hpp"
#include "asep/lattice.hpp"
#include "asep/scalar.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace asep {

// Bernoulli product density 0 < rho < 1 together with chi = rho (1 - rho).
template <class S>
class Density {
 public:
  explicit Density(S rho) : rho_(rho), chi_(rho * (S(1) - rho)) {
    if (!(rho_ > S(0) && rho_ < S(1)))
      throw Error(ErrorCode::InvalidDensity, "rho must lie strictly between 0 and 1");
  }

  const S& rho() const { return rho_; }
  const S& chi() const { return chi_; }
  // Coefficient of eta_x in eta_x^2 = (1 - 2 rho) eta_x + chi.
  S square_linear() const { return S(1) - S(2) * rho_; }

  friend bool operator==(const Density&, const Density&) = default;

 private:
  S rho_;
  S chi_;
};

// A finite occupation configuration. Sites are kept sorted for lookup.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::vector<Site> box, std::vector<int> occupancy);

  // Every configuration of the box, indexed by bit pattern.
  static Configuration from_bits(const std::vector<Site>& sorted_box, unsigned long long bits);

  const std::vector<Site>& box() const { return box_; }
  bool covers(const Site& x) const { return std::binary_search(box_.begin(), box_.end(), x); }
  // Throws UncoveredSite when x is outside the box.
  int at(const Site& x) const;
  void set(const Site& x, int value);
  // xi^{x,y}
  Configuration exchanged(const Site& x, const Site& y) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::size_t index_of(const Site& x) const;
  std::vector<Site> box_;
  std::vector<int> occ_;
};

// A local function sum_A c_A eta_A, eta_A = prod_{x in A} (xi(x) - rho).
// Zero coefficients are never stored.
template <class S>
class LocalFunction {
 public:
  using Terms = std::map<Monomial, S>;

  explicit LocalFunction(Density<S> density) : density_(std::move(density)) {}

  static LocalFunction constant(const Density<S>& density, const S& value) {
    LocalFunction f(density);
    f.add_term(Monomial{}, value);
    return f;
  }
  static LocalFunction monomial(const Density<S>& density, Monomial m, const S& coef = S(1)) {
    LocalFunction f(density);
    f.add_term(m, coef);
    return f;
  }
  // xi(x) = eta_{x} + rho
  static LocalFunction occupation(const Density<S>& density, const Site& x) {
    LocalFunction f(density);
    f.add_term(Monomial{x}, S(1));
    f.add_term(Monomial{}, density.rho());
    return f;
  }

  const Density<S>& density() const { return density_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const Monomial& m, const S& coef) {
    if (asep::is_zero(coef)) return;
    auto [it, inserted] = terms_.try_emplace(m, coef);
    if (!inserted) {
      it->second += coef;
      if (asep::is_zero(it->second)) terms_.erase(it);
    }
  }

  int degree() const {
    int deg = 0;
    for (const auto& [m, c] : terms_) deg = std::max(deg, m.degree());
    return deg;
  }

  // Sorted distinct sites appearing in any term.
  std::vector<Site> support() const {
    std::vector<Site> out;
    for (const auto& [m, c] : terms_) out.insert(out.end(), m.sites().begin(), m.sites().end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Sum of the degree-one coefficients, i.e. d/dtheta <f>_theta at rho.
  S linear_sum() const {
    S s(0);
    for (const auto& [m, c] : terms_)
      if (m.degree() == 1) s += c;
    return s;
  }

  double max_abs_coefficient() const {
    double out = 0.0;
    for (const auto& [m, c] : terms_) out = std::max(out, std::abs(to_double(c)));
    return out;
  }

  LocalFunction& operator+=(const LocalFunction& g) {
    require_same_density(g);
    for (const auto& [m, c] : g.terms_) add_term(m, c);
    return *this;
  }
  LocalFunction& operator-=(const LocalFunction& g) {
    require_same_density(g);
    for (const auto& [m, c] : g.terms_) add_term(m, S(-c));
    return *this;
  }
  LocalFunction& operator*=(const S& s) {
    if (asep::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend LocalFunction operator+(LocalFunction f, const LocalFunction& g) { return f += g; }
  friend LocalFunction operator-(LocalFunction f, const LocalFunction& g) { return f -= g; }
  friend LocalFunction operator-(LocalFunction f) { return f *= S(-1); }
  friend LocalFunction operator*(const S& s, LocalFunction f) { return f *= s; }

  friend bool operator==(const LocalFunction& f, const LocalFunction& g) {
    return f.density_ == g.density_ && f.terms_ == g.terms_;
  }

  void require_same_density(const LocalFunction& g) const {
    if (!(density_ == g.density_))
      throw Error(ErrorCode::DensityMismatch, "local functions over different densities cannot be combined");
  }

 private:
  Density<S> density_;
  Terms terms_;
};

// f(xi) on a configuration covering supp(f). Throws UncoveredSite.
template <class S>
S evaluate(const LocalFunction<S>& f, const Configuration& config) {
  S total(0);
  const S& rho = f.density().rho();
  for (const auto& [m, c] : f.terms()) {
    S term = c;
    for (const auto& x : m.sites()) term *= S(config.at(x)) - rho;
    total += term;
  }
  return total;
}

template <class S>
struct ExpectationCurve {
  S value;       // <f>_theta
  S derivative;  // d/dtheta <f>_theta
};

// <eta_A>_theta = (theta - rho)^{|A|}, extended linearly.
template <class S>
ExpectationCurve<S> expectation_curve(const LocalFunction<S>& f, const S& theta) {
  const S shift = theta - f.density().rho();
  ExpectationCurve<S> out{S(0), S(0)};
  for (const auto& [m, c] : f.terms()) {
    const int k = m.degree();
    out.value += c * power(shift, k);
    if (k > 0) out.derivative += c * S(k) * power(shift, k - 1);
  }
  return out;
}

// Zero constant term. Exact types compare with zero; doubles allow tol times
// the largest coefficient, since generator output carries roundoff in its
// cancelled constant.
template <class S>
bool is_centered(const LocalFunction<S>& f, double tol = 1e-12) {
  const S c0 = f.coefficient(Monomial{});
  if constexpr (is_exact_v<S>) {
    return is_zero(c0);
  } else {
    return std::abs(c0) <= tol * std::max(1.0, f.max_abs_coefficient());
  }
}

// Membership in G_rho: zero mean and zero density-derivative of the mean at rho.
// In floating mode both conditions are compared against tol times the size
// of the coefficients involved.
template <class S>
bool in_G_rho(const LocalFunction<S>& f, double tol = 1e-12) {
  if (!is_centered(f, tol)) return false;
  if constexpr (is_exact_v<S>) {
    return is_zero(f.linear_sum());
  } else {
    double scale = 0.0;
    for (const auto& [m, c] : f.terms())
      if (m.degree() == 1) scale += std::abs(c);
    return std::abs(f.linear_sum()) <= tol * std::max(1.0, scale);
  }
}

// g = f - <f>_rho - (xi(0) - rho) d/dtheta <f>_theta |_rho
template <class S>
LocalFunction<S> project_to_G(const LocalFunction<S>& f) {
  LocalFunction<S> g = f;
  const S mean = f.coefficient(Monomial{});
  const S slope = f.linear_sum();
  g.add_term(Monomial{}, S(-mean));
  g.add_term(Monomial{Site{}}, S(-slope));
  return g;
}

// tau_h f: eta_A -> eta_{A+h}. Note tau_h f(xi) = f(tau_h xi) with
// tau_h xi(z) = xi(z + h) maps eta_A to eta_{A+h}.
template <class S>
LocalFunction<S> translate(const LocalFunction<S>& f, const Site& h) {
  LocalFunction<S> g(f.density());
  for (const auto& [m, c] : f.terms()) g.add_term(m.translated(h), c);
  return g;
}

// R f(xi) = f(R xi), R xi(z) = xi(-z): eta_A -> eta_{-A}.
template <class S>
LocalFunction<S> reflect(const LocalFunction<S>& f) {
  LocalFunction<S> g(f.density());
  for (const auto& [m, c] : f.terms()) g.add_term(m.reflected(), c);
  return g;
}

// Pointwise product re-expanded with eta_x^2 = (1 - 2 rho) eta_x + chi.
template <class S>
LocalFunction<S> multiply(const LocalFunction<S>& f, const LocalFunction<S>& g) {
  f.require_same_density(g);
  const auto& dens = f.density();
  const S lin = dens.square_linear();
  const S& chi = dens.chi();
  LocalFunction<S> out(dens);
  std::vector<Site> common, sym;
  for (const auto& [ma, ca] : f.terms()) {
    for (const auto& [mb, cb] : g.terms()) {
      common.clear();
      sym.clear();
      std::set_intersection(ma.sites().begin(), ma.sites().end(), mb.sites().begin(), mb.sites().end(),
                            std::back_inserter(common));
      std::set_symmetric_difference(ma.sites().begin(), ma.sites().end(), mb.sites().begin(), mb.sites().end(),
                                    std::back_inserter(sym));
      const S coef = ca * cb;
      const std::size_t n = common.size();
      // Each coincident site contributes either lin * eta_x or chi.
      for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
        std::vector<Site> sites = sym;
        S c = coef;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1ULL << i)) {
            sites.push_back(common[i]);
            c *= lin;
          } else {
            c *= chi;
          }
        }
        out.add_term(Monomial(std::move(sites)), c);
      }
    }
  }
  return out;
}

// "c · η{sites}" terms joined by " + ", in canonical monomial order.
template <class S>
std::string to_string(const LocalFunction<S>& f, int dim) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  if constexpr (!is_exact_v<S>) out.precision(17);
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    if (!first) out << " + ";
    first = false;
    if constexpr (is_exact_v<S>)
      out << c.str();
    else
      out << c;
    out << " · η" << to_string(m, dim);
  }
  return out.str();
}

// Converts an exact function to floating point.
LocalFunction<double> to_double(const LocalFunction<Rational>& f);

}  // namespace asep
