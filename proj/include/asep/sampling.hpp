#pragma once

// Seeded random inputs for property checks. Coefficients are small dyadic
// rationals so the double and exact paths see the same numbers.

#include "asep/kernel.hpp"
#include "asep/localfn.hpp"

#include <random>
#include <vector>

namespace asep::sampling {

using Rng = std::mt19937_64;

// Sites of the box [-radius, radius]^dim in lexicographic order.
std::vector<Site> box_sites(int dim, int radius);

// Random c / 2^k with |c| <= 8, k in [0, 3], never zero.
Rational dyadic(Rng& rng);

// Up to `terms` monomials of degree [1, max_degree] on the box, plus an
// optional constant.
LocalFunction<Rational> random_local(Rng& rng, const Density<Rational>& dens, int dim, int radius, int max_degree,
                                     int terms, bool with_constant = false);

// random_local projected into G_rho.
LocalFunction<Rational> random_G(Rng& rng, const Density<Rational>& dens, int dim, int radius, int max_degree,
                                 int terms);

// Random occupation of the given sorted box.
Configuration random_configuration(Rng& rng, const std::vector<Site>& sorted_box);

// Random normalized kernel with weights that are multiples of 1/16 on
// displacements of sup-norm <= range.
JumpKernel random_kernel(Rng& rng, int dim, int range);

}  // namespace asep::sampling
