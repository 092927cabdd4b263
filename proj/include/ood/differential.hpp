#pragma once

// Kinematics and torque balance of the three-output open differential.
//
// Gear numbering: the input U drives three ring gears R1..R3 (ratio 1/k).
// Each ring Ri carries a side-gear pair (S1,S2), (S3,S4), (S5,S6). Those side
// gears are rigidly coupled to the side gears S7..S12 of three two-input
// differentials whose rings R4..R6 drive the outputs O1..O3 (ratio j):
//
//   S7 = S1, S8 = S3   -> R4 -> O1
//   S9 = S4, S10 = S6  -> R5 -> O2
//   S11 = S5, S12 = S2 -> R6 -> O3
//
// The last three pairings follow from requiring the output equations to agree
// with the averaging law of each ring; see docs/differential.md.
//
// Angular speeds are in rpm. Accelerations passed to output_torques() are in
// rpm/s and are converted to rad/s^2 before multiplying inertias.

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "ood/errors.hpp"
#include "ood/types.hpp"

namespace ood {

template <typename Scalar>
struct GearTrainParams {
  /// Input-to-ring speed reduction (ring speed = input / k).
  Scalar k = Scalar(20);
  /// Ring-to-output multiplication (output = j * ring speed of R4..R6).
  Scalar j = Scalar(2);
  /// Side-gear inertias I1..I6, indexed exactly as in the torque balance.
  Vector6<Scalar> inertias = Vector6<Scalar>::Ones();

  void validate() const {
    if (!(k > Scalar(0))) throw ValidationError("gear train: k must be > 0");
    if (!(j > Scalar(0))) throw ValidationError("gear train: j must be > 0");
    if ((inertias.array() < Scalar(0)).any())
      throw ValidationError("gear train: inertias must be >= 0");
  }

  /// Output speed when all three outputs carry equal load.
  Scalar equal_load_output(Scalar omega_u) const { return j * omega_u / k; }
};

template <typename Scalar>
struct RingKinematics {
  Scalar speed;   // rpm, each ring
  Scalar torque;  // each ring
};

template <typename Scalar>
struct DifferentialState {
  Scalar omega_u = Scalar(0);
  Vector3<Scalar> omega_ring = Vector3<Scalar>::Zero();
  Vector12<Scalar> omega_side = Vector12<Scalar>::Zero();
  Vector3<Scalar> omega_out = Vector3<Scalar>::Zero();
  Scalar tau_u = Scalar(0);
  Vector3<Scalar> tau_out = Vector3<Scalar>::Zero();
};

/// Demanded output speeds as ratios of the equal-load output speed.
template <typename Scalar>
struct OutputDemand {
  Vector3<Scalar> ratios = Vector3<Scalar>::Ones();

  bool reachable(Scalar tol = Scalar(kConstraintTol)) const {
    using std::abs;
    return abs(ratios.mean() - Scalar(1)) <= tol;
  }
};

template <typename Scalar>
RingKinematics<Scalar> ring_kinematics(Scalar omega_u, Scalar tau_u,
                                       const GearTrainParams<Scalar>& params) {
  return {omega_u / params.k, params.k * tau_u / Scalar(3)};
}

namespace detail {

// Rows: three ring averaging sums (S1+S2, S3+S4, S5+S6), then the side-gear
// sums entering each output (S2+S4, S3+S5, S1+S6).
template <typename Scalar>
Matrix6<Scalar> side_gear_constraints() {
  Matrix6<Scalar> a;
  // clang-format off
  a << 1, 1, 0, 0, 0, 0,
       0, 0, 1, 1, 0, 0,
       0, 0, 0, 0, 1, 1,
       0, 1, 0, 1, 0, 0,
       0, 0, 1, 0, 1, 0,
       1, 0, 0, 0, 0, 1;
  // clang-format on
  return a;
}

template <typename Derived>
void check_ring_sums(const Eigen::MatrixBase<Derived>& side,
                     typename Derived::Scalar omega_u,
                     const GearTrainParams<typename Derived::Scalar>& params) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  const Scalar target = Scalar(2) * omega_u / params.k;
  for (int pair = 0; pair < 3; ++pair) {
    const Scalar sum = side(2 * pair) + side(2 * pair + 1);
    if (abs(sum - target) > Scalar(kConstraintTol))
      throw ConstraintViolation("side gears S" + std::to_string(2 * pair + 1) + "+S" +
                                std::to_string(2 * pair + 2) + " do not average to the ring speed");
  }
}

}  // namespace detail

/// Expands S1..S6 to S1..S12 using the rigid couplings.
template <typename Derived>
Vector12<typename Derived::Scalar> expand_side_gears(const Eigen::MatrixBase<Derived>& side) {
  Vector12<typename Derived::Scalar> all;
  all.template head<6>() = side;
  all(6) = side(0);   // S7  = S1
  all(7) = side(2);   // S8  = S3
  all(8) = side(3);   // S9  = S4
  all(9) = side(5);   // S10 = S6
  all(10) = side(4);  // S11 = S5
  all(11) = side(1);  // S12 = S2
  return all;
}

/// Forward map: side gears S1..S6 to the three output speeds.
template <typename Derived>
Vector3<typename Derived::Scalar> outputs_from_side_gears(
    const Eigen::MatrixBase<Derived>& side, typename Derived::Scalar omega_u,
    const GearTrainParams<typename Derived::Scalar>& params) {
  using Scalar = typename Derived::Scalar;
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 6);
  detail::check_ring_sums(side, omega_u, params);
  const Scalar base = Scalar(2) * params.j * omega_u / params.k;
  const Scalar half_j = params.j / Scalar(2);
  return {base - half_j * (side(1) + side(3)),
          base - half_j * (side(2) + side(4)),
          base - half_j * (side(0) + side(5))};
}

/// Inverse map: output speeds to all twelve side-gear speeds.
///
/// The six linear constraints have rank 5. The returned assignment is the
/// minimum-norm deviation from the uniform state omega_u / k.
template <typename Derived>
Vector12<typename Derived::Scalar> side_gears_from_outputs(
    const Eigen::MatrixBase<Derived>& omega_out, typename Derived::Scalar omega_u,
    const GearTrainParams<typename Derived::Scalar>& params) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);

  const Scalar mean_target = params.equal_load_output(omega_u);
  if (abs(omega_out.mean() - mean_target) > Scalar(kConstraintTol))
    throw UnreachableDemand("output mean differs from j*omega_u/k");

  const Scalar uniform = omega_u / params.k;
  const Matrix6<Scalar> a = detail::side_gear_constraints<Scalar>();
  Vector6<Scalar> rhs;
  const Scalar ring_sum = Scalar(2) * uniform;
  rhs.template head<3>().setConstant(ring_sum);
  rhs.template tail<3>() =
      (Scalar(4) * omega_u / params.k) * Vector3<Scalar>::Ones() - (Scalar(2) / params.j) * omega_out;

  const Vector6<Scalar> base = Vector6<Scalar>::Constant(uniform);
  const Eigen::CompleteOrthogonalDecomposition<Matrix6<Scalar>> cod(a);
  const Vector6<Scalar> side = base + cod.solve(rhs - a * base);
  return expand_side_gears(side);
}

/// Output torques from the input torque and the accelerations of S7..S12.
template <typename Derived>
Vector3<typename Derived::Scalar> output_torques(
    typename Derived::Scalar tau_u, const Eigen::MatrixBase<Derived>& side_accel_7_to_12,
    const GearTrainParams<typename Derived::Scalar>& params) {
  using Scalar = typename Derived::Scalar;
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 6);
  const Scalar to_rad = Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(60);
  const Vector6<Scalar> a = to_rad * side_accel_7_to_12;  // index 0 -> S7
  const Vector6<Scalar>& inertia = params.inertias;       // index 0 -> I1
  const Scalar steady = params.k * tau_u / (Scalar(3) * params.j);
  return {steady - (inertia(0) * a(0) + inertia(2) * a(1)) / params.j,
          steady - (inertia(3) * a(2) + inertia(5) * a(3)) / params.j,
          steady - (inertia(1) * a(5) + inertia(4) * a(4)) / params.j};
}

/// State when all outputs carry equal load. `side_accel` is the common
/// acceleration of every side gear (rpm/s), zero in steady state.
template <typename Scalar>
DifferentialState<Scalar> equal_load_state(Scalar omega_u, Scalar tau_u,
                                           const GearTrainParams<Scalar>& params,
                                           Scalar side_accel = Scalar(0)) {
  const RingKinematics<Scalar> ring = ring_kinematics(omega_u, tau_u, params);
  DifferentialState<Scalar> state;
  state.omega_u = omega_u;
  state.tau_u = tau_u;
  state.omega_ring.setConstant(ring.speed);
  state.omega_side.setConstant(ring.speed);
  state.omega_out.setConstant(params.equal_load_output(omega_u));
  state.tau_out = output_torques(tau_u, Vector6<Scalar>::Constant(side_accel), params);
  return state;
}

/// Full state for a demanded ratio set at steady state.
template <typename Scalar>
DifferentialState<Scalar> solve_demand(const OutputDemand<Scalar>& demand, Scalar omega_u,
                                       Scalar tau_u, const GearTrainParams<Scalar>& params) {
  if (!demand.reachable()) throw UnreachableDemand("demand ratios must average to 1");
  DifferentialState<Scalar> state;
  state.omega_u = omega_u;
  state.tau_u = tau_u;
  state.omega_ring.setConstant(ring_kinematics(omega_u, tau_u, params).speed);
  // Rescale so the mean is exact; the ratio check above allows 1e-9 of drift.
  const Vector3<Scalar> ratios = demand.ratios / demand.ratios.mean();
  state.omega_out = params.equal_load_output(omega_u) * ratios;
  state.omega_side = side_gears_from_outputs(state.omega_out, omega_u, params);
  state.tau_out = output_torques(tau_u, Vector6<Scalar>::Zero(), params);
  return state;
}

template <typename Scalar>
bool check_mean_invariant(const DifferentialState<Scalar>& state,
                          const GearTrainParams<Scalar>& params,
                          Scalar tol = Scalar(kConstraintTol)) {
  using std::abs;
  return abs(state.omega_out.mean() - params.equal_load_output(state.omega_u)) <= tol;
}

}  // namespace ood
