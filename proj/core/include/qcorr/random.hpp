// Seeded generators for randomized checks and the verify subcommand.

#pragma once

#include <random>

#include "qcorr/states.hpp"

namespace qcorr {

using Rng = std::mt19937_64;

// A A^dagger / tr(A A^dagger) with i.i.d. complex Gaussian A.
DensityMatrix random_density_matrix(Rng& rng);

// Dirichlet populations; coherences with uniform modulus inside the
// positivity bound and uniform phase.
XState random_x_state(Rng& rng);

// Haar-random 2x2 unitary.
CMat2 random_unitary(Rng& rng);

// Product state rho_a (x) rho_b from two random qubit states.
DensityMatrix random_product_state(Rng& rng, CMat2* rho_a = nullptr, CMat2* rho_b = nullptr);

}  // namespace qcorr
