#include "asep/sampling.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace asep::sampling {

std::vector<Site> box_sites(int dim, int radius) {
  std::vector<Site> out;
  Site s;
  std::function<void(int)> rec = [&](int axis) {
    if (axis == dim) {
      out.push_back(s);
      return;
    }
    for (int v = -radius; v <= radius; ++v) {
      s[axis] = v;
      rec(axis + 1);
    }
    s[axis] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

Rational dyadic(Rng& rng) {
  std::uniform_int_distribution<int> num(1, 8), sign(0, 1), shift(0, 3);
  Rational c(num(rng), 1 << shift(rng));
  return sign(rng) ? Rational(-c) : c;
}

LocalFunction<Rational> random_local(Rng& rng, const Density<Rational>& dens, int dim, int radius, int max_degree,
                                     int terms, bool with_constant) {
  const auto sites = box_sites(dim, radius);
  std::uniform_int_distribution<int> deg(1, max_degree);
  LocalFunction<Rational> f(dens);
  for (int t = 0; t < terms; ++t) {
    std::vector<Site> pick = sites;
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(std::min<std::size_t>(pick.size(), static_cast<std::size_t>(deg(rng))));
    f.add_term(Monomial(pick), dyadic(rng));
  }
  if (with_constant) f.add_term(Monomial{}, dyadic(rng));
  return f;
}

LocalFunction<Rational> random_G(Rng& rng, const Density<Rational>& dens, int dim, int radius, int max_degree,
                                 int terms) {
  return project_to_G(random_local(rng, dens, dim, radius, max_degree, terms, false));
}

Configuration random_configuration(Rng& rng, const std::vector<Site>& sorted_box) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<int> occ(sorted_box.size());
  for (auto& o : occ) o = bit(rng);
  return Configuration(sorted_box, std::move(occ));
}

JumpKernel random_kernel(Rng& rng, int dim, int range) {
  auto cands = box_sites(dim, range);
  cands.erase(std::remove(cands.begin(), cands.end(), Site{}), cands.end());
  std::shuffle(cands.begin(), cands.end(), rng);
  std::uniform_int_distribution<std::size_t> count(1, std::min<std::size_t>(cands.size(), 5));
  const std::size_t n = count(rng);
  // Split 16 sixteenths into n positive parts.
  std::vector<int> cuts;
  std::set<int> used;
  std::uniform_int_distribution<int> cut(1, 15);
  while (used.size() + 1 < n) used.insert(cut(rng));
  cuts.assign(used.begin(), used.end());
  cuts.insert(cuts.begin(), 0);
  cuts.push_back(16);
  std::vector<JumpSpec> jumps;
  for (std::size_t i = 0; i < n; ++i)
    jumps.push_back({cands[i], shortest_decimal((cuts[i + 1] - cuts[i]) / 16.0)});
  return build_kernel(dim, jumps);
}

}  // namespace asep::sampling
