#pragma once

#include <Eigen/Dense>

namespace ood {

template <typename Scalar> using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar> using Vector12 = Eigen::Matrix<Scalar, 12, 1>;
template <typename Scalar> using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;

/// Per-track triple (modules A, B, C).
using Triple = Vector3<double>;

inline constexpr int kModuleCount = 3;

/// Constraint tolerance for pure linear-algebra checks.
inline constexpr double kConstraintTol = 1e-9;

}  // namespace ood
