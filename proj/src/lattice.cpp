#include "asep/lattice.hpp"

#include <stdexcept>

namespace asep {

std::string to_string(const Site& s, int dim) {
  if (dim == 1) return std::to_string(s[0]);
  std::string out = "(";
  for (int i = 0; i < dim; ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

Monomial::Monomial(std::vector<Site> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end())
    throw std::invalid_argument("Monomial: repeated site");
}

Monomial Monomial::translated(const Site& h) const {
  std::vector<Site> out(sites_);
  for (auto& s : out) s = s + h;
  return Monomial(Sorted{}, std::move(out));
}

Monomial Monomial::reflected() const {
  std::vector<Site> out(sites_.rbegin(), sites_.rend());
  for (auto& s : out) s = -s;
  return Monomial(Sorted{}, std::move(out));
}

Monomial Monomial::with(const Site& x) const {
  std::vector<Site> out;
  out.reserve(sites_.size() + 1);
  auto pos = std::lower_bound(sites_.begin(), sites_.end(), x);
  out.insert(out.end(), sites_.begin(), pos);
  out.push_back(x);
  out.insert(out.end(), pos, sites_.end());
  return Monomial(Sorted{}, std::move(out));
}

Monomial Monomial::without(const Site& x) const {
  std::vector<Site> out;
  out.reserve(sites_.size());
  for (const auto& s : sites_)
    if (s != x) out.push_back(s);
  return Monomial(Sorted{}, std::move(out));
}

Monomial Monomial::replaced(const Site& x, const Site& y) const {
  std::vector<Site> out;
  out.reserve(sites_.size());
  bool inserted = false;
  for (const auto& s : sites_) {
    if (s == x) continue;
    if (!inserted && y < s) {
      out.push_back(y);
      inserted = true;
    }
    out.push_back(s);
  }
  if (!inserted) out.push_back(y);
  return Monomial(Sorted{}, std::move(out));
}

Monomial Monomial::anchored() const {
  if (sites_.empty() || sites_.front().is_origin()) return *this;
  return translated(-sites_.front());
}

std::string to_string(const Monomial& m, int dim) {
  std::string out = "{";
  bool first = true;
  for (const auto& s : m.sites()) {
    if (!first) out += ",";
    first = false;
    out += to_string(s, dim);
  }
  return out + "}";
}

}  // namespace asep
