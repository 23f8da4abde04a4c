#ifndef GENHESS_SAMPLING_HPP
#define GENHESS_SAMPLING_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "genhess/analysis.hpp"
#include "genhess/linear_system.hpp"

namespace genhess {

/// Raised when the sampling radius could flip the sign of an inactive row.
class RadiusTooLarge : public std::runtime_error {
 public:
  RadiusTooLarge(double radius, double safe_radius);
  double radius;
  double safe_radius;  // largest admissible radius at this point
};

inline constexpr int kNoMatch = -1;

struct HessianSample {
  Eigen::VectorXd point;
  Eigen::VectorXi local_pattern;  // residual signs at the sample, as 0/1
  Eigen::MatrixXd exact_hessian;  // A^T diag(local_pattern) A
  Eigen::MatrixXd fd_hessian;
  int matched_extreme = kNoMatch;
  double match_distance = 0.0;
};

struct SampleBatch {
  Eigen::VectorXd center;
  double radius = 0.0;
  int count = 0;
  uint64_t seed = 0;
  std::vector<HessianSample> samples;
  std::optional<HessianHull> hull;  // absent when enumeration is capped out
};

/// Central-difference gradient of f, componentwise with step h.
Eigen::VectorXd fd_gradient(const LinearSystem& sys, const Eigen::VectorXd& x,
                            double h);

/// Central-difference Hessian of f on the symmetric four-point stencil.
Eigen::MatrixXd fd_hessian(const LinearSystem& sys, const Eigen::VectorXd& x,
                           double h);

/// Draw points uniformly from the inf-norm ball around x, keeping only
/// points where f is safely twice differentiable (no row near active, no
/// inactive row flipping sign), and record at each the exact piecewise
/// Hessian, a finite-difference Hessian and the nearest hull extreme.
/// Deterministic for a fixed seed.
SampleBatch sample_limiting_hessians(const LinearSystem& sys,
                                     const Eigen::VectorXd& x, double radius,
                                     int count, uint64_t seed,
                                     int max_active = kDefaultMaxActive);

}  // namespace genhess

#endif  // GENHESS_SAMPLING_HPP
