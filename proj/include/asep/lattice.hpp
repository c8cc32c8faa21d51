#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace asep {

inline constexpr int kMaxDim = 4;

// A point of Z^d. Coordinates past the active dimension are kept at zero, so
// the defaulted lexicographic ordering is the canonical ordering on Z^d.
struct Site {
  std::array<int, kMaxDim> c{};

  Site() = default;
  Site(std::initializer_list<int> coords) {
    int i = 0;
    for (int v : coords) c[static_cast<std::size_t>(i++)] = v;
  }

  static Site unit(int axis) {
    Site s;
    s.c[static_cast<std::size_t>(axis)] = 1;
    return s;
  }

  int operator[](int axis) const { return c[static_cast<std::size_t>(axis)]; }
  int& operator[](int axis) { return c[static_cast<std::size_t>(axis)]; }

  bool is_origin() const { return c == std::array<int, kMaxDim>{}; }

  friend Site operator+(Site a, const Site& b) {
    for (int i = 0; i < kMaxDim; ++i) a[i] += b[i];
    return a;
  }
  friend Site operator-(Site a, const Site& b) {
    for (int i = 0; i < kMaxDim; ++i) a[i] -= b[i];
    return a;
  }
  friend Site operator-(Site a) {
    for (int i = 0; i < kMaxDim; ++i) a[i] = -a[i];
    return a;
  }
  friend auto operator<=>(const Site&, const Site&) = default;
  friend bool operator==(const Site&, const Site&) = default;
};

std::string to_string(const Site& s, int dim);

// The index set A of an eta-monomial prod_{x in A} (xi(x) - rho). Sites are kept
// sorted and distinct; the empty set is the constant 1.
class Monomial {
 public:
  Monomial() = default;
  // Sorts the input; throws std::invalid_argument on repeated sites.
  explicit Monomial(std::vector<Site> sites);
  Monomial(std::initializer_list<Site> sites) : Monomial(std::vector<Site>(sites)) {}

  std::span<const Site> sites() const { return sites_; }
  int degree() const { return static_cast<int>(sites_.size()); }
  bool empty() const { return sites_.empty(); }
  bool contains(const Site& x) const { return std::binary_search(sites_.begin(), sites_.end(), x); }

  Monomial translated(const Site& h) const;  // A + h
  Monomial reflected() const;                // -A
  Monomial with(const Site& x) const;        // A + {x}, x not in A
  Monomial without(const Site& x) const;     // A - {x}, x in A
  Monomial replaced(const Site& x, const Site& y) const;  // A - {x} + {y}
  // Translate so the lexicographically least site sits at the origin.
  Monomial anchored() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  struct Sorted {};
  Monomial(Sorted, std::vector<Site> sites) : sites_(std::move(sites)) {}
  std::vector<Site> sites_;
};

std::string to_string(const Monomial& m, int dim);

}  // namespace asep
