#pragma once

#include <cstdint>
#include <random>

#include "schles/fuchsian.hpp"
#include "schles/heun.hpp"
#include "schles/hypergeometric.hpp"

namespace schles {

/// Seed used whenever a caller does not pick one.
inline constexpr std::uint64_t kDefaultSeed = 20240611;

using Rng = std::mt19937_64;

/// g diag(lambda, -lambda) g^-1 with g = I + noise, so eigenlines are generic
/// but well conditioned.
Mat2 random_sl2_residue(Rng& rng, cplx lambda);

/// Marked eigenvalue drawn from (0.05, 0.45), away from resonance.
cplx random_exponent(Rng& rng);

/// n poles: 0, 1, further finite points at mutual distance >= 0.4, and
/// infinity last. Residues at finite poles are random_sl2_residue; the residue
/// at infinity closes the sum. Default marking. With `infinity` false all n
/// poles are finite and the last residue closes the sum instead.
FuchsianSystem random_system(Rng& rng, int n, bool infinity = true);

/// Complex a, b with |Re| < 1.5 and c with Re c in (0.3, 2.3); exponent
/// differences kept away from integers.
HypergeomParams random_gauss_params(Rng& rng);

/// Generic Heun parameters with the given singular point a.
HeunParams random_heun_params(Rng& rng, cplx a);

}  // namespace schles
