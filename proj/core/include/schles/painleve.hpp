#pragma once

#include <array>
#include <optional>
#include <vector>

#include "schles/fuchsian.hpp"
#include "schles/integrator.hpp"

namespace schles {

/// Parameters of the Hamiltonian form of P_VI. The four values are the
/// exponent differences theta_0, theta_1, theta_t, theta_inf that appear in
/// H; derived quantities are always recomputed.
struct PviParams {
  cplx l0, l1, lt, linf;

  cplx alpha() const { return 0.5 * linf * linf; }
  cplx beta() const { return 0.5 * l0 * l0; }
  cplx gamma() const { return 0.5 * l1 * l1; }
  cplx delta() const { return 0.5 * lt * lt; }
  /// 1/4 [(l0 + l1 + lt - 1)^2 - linf^2]
  cplx kappa() const {
    const cplx s = l0 + l1 + lt - 1.0;
    return 0.25 * (s * s - linf * linf);
  }
};

struct HamiltonianState {
  cplx x, p, t;
};

/// H = [x(x-1)(x-t) p^2 - {l0 (x-1)(x-t) + l1 x(x-t) + (lt-1) x(x-1)} p + kappa (x-t)] / (t(t-1)).
cplx hamiltonian(const HamiltonianState& s, const PviParams& P);

/// (dH/dp, -dH/dx), i.e. (dx/dt, dp/dt).
std::pair<cplx, cplx> hamilton_vector(const HamiltonianState& s, const PviParams& P);

/// d^2x/dt^2 along the Hamiltonian flow, from the partial derivatives of H.
cplx hamilton_acceleration(const HamiltonianState& s, const PviParams& P);

/// Right side of the second-order P_VI as printed, with alpha = l_inf^2/2,
/// beta = l0^2/2, gamma = l1^2/2, delta = lt^2/2 and coefficient (1/2 - delta)
/// on the t(t-1)/(x-t)^2 term.
cplx pvi_rhs(cplx x, cplx dx, cplx t, const PviParams& P);

struct FlowOptions {
  IntegrateOptions integrate{};
  std::size_t samples = 31;  // states recorded at equally spaced times
  double margin = 1e-6;      // minimal distance of t from 0 and 1
};

struct HamiltonTrajectory {
  std::vector<cplx> t;
  std::vector<HamiltonianState> states;
  // Set when the flow hit a movable pole; the last accepted time.
  std::optional<cplx> blowup_t;
};

/// Integrates Hamilton's equations along the straight segment s0.t -> t1.
HamiltonTrajectory hamilton_flow(const HamiltonianState& s0, const PviParams& P, cplx t1,
                                 const FlowOptions& opts = {});

/// x fixed, p -> p + c (1/(x-1) - 1/x), l0 -> l0 + 1/2, l1 -> l1 - 1/2. The
/// printed map has c = 1.
std::pair<HamiltonianState, PviParams> backlund_pair01(const HamiltonianState& s, const PviParams& P,
                                                       double c = 1.0);

/// Mapped trajectory against Hamilton's equations with the shifted
/// parameters: max over samples of |dx/dt - H'_p| + |dp~/dt + H'_x|, relative
/// to 1 + |dx/dt| + |dp/dt|.
double backlund_residual(const HamiltonTrajectory& traj, const PviParams& P, double c);

struct BacklundFit {
  double c_fit = 0.0;
  double residual_fit = 0.0;
  double residual_printed = 0.0;  // at c = 1
};
/// Minimizes the summed squared residual over c.
BacklundFit fit_backlund_coefficient(const HamiltonTrajectory& traj, const PviParams& P);

// ---------------------------------------------------------------------------
// Matrix side: sl2 systems with poles 0, 1, t, infinity (in that order).

/// Builds the system with B_inf = -(B_0 + B_1 + B_t). Marking: the given
/// values, or the default marking when empty.
FuchsianSystem schlesinger_system(cplx t, const Mat2& b0, const Mat2& b1, const Mat2& bt,
                                  const std::vector<cplx>& marking = {});

/// Throws InvalidSystem unless the system has the layout above.
void check_schlesinger_layout(const FuchsianSystem& S);

/// dB_0/dt = [B_t, B_0]/t, dB_1/dt = [B_t, B_1]/(t-1), dB_t/dt = -(dB_0/dt + dB_1/dt).
std::array<Mat2, 3> schlesinger_rhs(const FuchsianSystem& S);

struct SchlesingerTrajectory {
  std::vector<cplx> t;
  std::vector<FuchsianSystem> systems;
};

/// Moves the pole t along the straight segment to t1; the marking follows the
/// eigenvalues continuously. Throws PoleCollision when the segment comes
/// within opts.margin of 0 or 1.
SchlesingerTrajectory schlesinger_flow(const FuchsianSystem& S, cplx t1, const FlowOptions& opts = {});

/// Parameters read from the marking: theta_i = 2 lambda_i (i = 0, 1, t) and
/// theta_inf = 2 lambda_inf - 1, lambda_inf the marked eigenvalue at infinity.
PviParams pvi_params(const FuchsianSystem& S);

/// In the frame where B_inf = diag(lambda_inf, -lambda_inf): x is the zero of
/// the numerator of B(z)_12 (a polynomial of degree 1), p = B(x)_11 +
/// lambda_0/x + lambda_1/(x-1) + lambda_t/(x-t). Throws DegenerateOffDiagonal
/// when B(z)_12 vanishes identically or its zero is undetermined.
HamiltonianState xp_coordinates(const FuchsianSystem& S);

/// dx/dt along the Schlesinger flow, by differentiating the formula for x.
cplx x_velocity(const FuchsianSystem& S);

/// The Schlesinger transformation at poles 0 and 1 (pair_modify(0, 1)).
FuchsianSystem matrix_backlund(const FuchsianSystem& S);

}  // namespace schles
