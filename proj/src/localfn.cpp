#include "asep/localfn.hpp"

namespace asep {

Configuration::Configuration(std::vector<Site> box, std::vector<int> occupancy) {
  if (box.size() != occupancy.size()) throw std::invalid_argument("Configuration: box/occupancy size mismatch");
  std::vector<std::size_t> order(box.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return box[i] < box[j]; });
  for (std::size_t i : order) {
    if (!box_.empty() && box_.back() == box[i]) throw std::invalid_argument("Configuration: repeated site");
    if (occupancy[i] != 0 && occupancy[i] != 1) throw std::invalid_argument("Configuration: occupancy must be 0 or 1");
    box_.push_back(box[i]);
    occ_.push_back(occupancy[i]);
  }
}

Configuration Configuration::from_bits(const std::vector<Site>& sorted_box, unsigned long long bits) {
  Configuration c;
  c.box_ = sorted_box;
  c.occ_.resize(sorted_box.size());
  for (std::size_t i = 0; i < sorted_box.size(); ++i) c.occ_[i] = static_cast<int>((bits >> i) & 1ULL);
  return c;
}

std::size_t Configuration::index_of(const Site& x) const {
  auto it = std::lower_bound(box_.begin(), box_.end(), x);
  if (it == box_.end() || *it != x) throw Error(ErrorCode::UncoveredSite, "configuration does not cover site");
  return static_cast<std::size_t>(it - box_.begin());
}

int Configuration::at(const Site& x) const { return occ_[index_of(x)]; }

void Configuration::set(const Site& x, int value) { occ_[index_of(x)] = value; }

Configuration Configuration::exchanged(const Site& x, const Site& y) const {
  Configuration c = *this;
  std::swap(c.occ_[index_of(x)], c.occ_[index_of(y)]);
  return c;
}

LocalFunction<double> to_double(const LocalFunction<Rational>& f) {
  LocalFunction<double> g(Density<double>(to_double(f.density().rho())));
  for (const auto& [m, c] : f.terms()) g.add_term(m, to_double(c));
  return g;
}

}  // namespace asep
