#include "genhess/sampling.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace genhess {

namespace {

std::string radius_message(double radius, double safe_radius) {
  std::ostringstream msg;
  msg << "sampling radius " << radius << " exceeds the safe bound "
      << safe_radius << " at this point";
  return msg.str();
}

// Uniform double in [0, 1) from the top 53 bits, independent of the
// standard library's distribution implementation.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

RadiusTooLarge::RadiusTooLarge(double radius_, double safe_radius_)
    : std::runtime_error(radius_message(radius_, safe_radius_)),
      radius(radius_),
      safe_radius(safe_radius_) {}

Eigen::VectorXd fd_gradient(const LinearSystem& sys, const Eigen::VectorXd& x,
                            double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: h must be > 0");
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd p = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    p[j] = x[j] + h;
    const double fp = eval_f(sys, p);
    p[j] = x[j] - h;
    const double fm = eval_f(sys, p);
    p[j] = x[j];
    g[j] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const LinearSystem& sys, const Eigen::VectorXd& x,
                           double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_hessian: h must be > 0");
  const Eigen::Index n = x.size();
  Eigen::MatrixXd H(n, n);
  Eigen::VectorXd p = x;
  auto f_at = [&](Eigen::Index j, double dj, Eigen::Index k, double dk) {
    p[j] += dj;
    p[k] += dk;
    const double val = eval_f(sys, p);
    p[j] = x[j];
    p[k] = x[k];
    return val;
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j; k < n; ++k) {
      const double val = (f_at(j, h, k, h) - f_at(j, h, k, -h) -
                          f_at(j, -h, k, h) + f_at(j, -h, k, -h)) /
                         (4.0 * h * h);
      H(j, k) = val;
      H(k, j) = val;
    }
  }
  return H;
}

SampleBatch sample_limiting_hessians(const LinearSystem& sys,
                                     const Eigen::VectorXd& x, double radius,
                                     int count, uint64_t seed,
                                     int max_active) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("sample_limiting_hessians: radius must be > 0");
  }
  if (count < 0) {
    throw std::invalid_argument("sample_limiting_hessians: count must be >= 0");
  }
  const ActivityPartition part = classify_indices(sys, x);

  // The ball must keep every inactive row on its side of the hyperplane.
  double safe_radius = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sys.rows(); ++i) {
    const bool active =
        std::abs(part.residuals[i]) <= sys.activity_bound(i);
    if (active || sys.is_zero_row(i)) continue;
    safe_radius =
        std::min(safe_radius, std::abs(part.residuals[i]) / sys.row_norm(i));
  }
  if (radius >= safe_radius) throw RadiusTooLarge(radius, safe_radius);

  SampleBatch batch;
  batch.center = x;
  batch.radius = radius;
  batch.count = count;
  batch.seed = seed;

  int nonzero_active_count = 0;
  for (int i : part.active) {
    if (!sys.is_zero_row(i)) ++nonzero_active_count;
  }
  if (nonzero_active_count <= max_active) {
    const auto patterns = enumerate_achievable_patterns(sys, part, max_active);
    batch.hull = limiting_hessians(sys, part, patterns);
  }

  const double h = 1e-5 * (1.0 + x.norm());
  std::mt19937_64 rng(seed);

  for (int s = 0; s < count; ++s) {
    Eigen::VectorXd p(x.size());
    bool accepted = false;
    for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        p[j] = x[j] + radius * (2.0 * uniform01(rng) - 1.0);
      }
      const Eigen::VectorXd r = sys.A() * p - sys.b();
      accepted = true;
      for (int i = 0; i < sys.rows() && accepted; ++i) {
        if (sys.is_zero_row(i)) continue;
        // Keep the FD stencil strictly inside one cell and the inactive
        // rows on their nominal side.
        const double keep_out =
            std::max(10.0 * h * sys.row_norm(i), sys.activity_bound(i));
        if (std::abs(r[i]) <= keep_out) accepted = false;
        const bool was_violated = part.residuals[i] > sys.activity_bound(i);
        const bool was_satisfied = part.residuals[i] < -sys.activity_bound(i);
        if ((was_violated && r[i] < 0.0) || (was_satisfied && r[i] > 0.0)) {
          accepted = false;
        }
      }
    }
    if (!accepted) {
      throw std::runtime_error(
          "sample_limiting_hessians: rejection rate too high; the radius is "
          "too small relative to the finite-difference step");
    }

    HessianSample sample;
    sample.point = p;
    const Eigen::VectorXd r = sys.A() * p - sys.b();
    sample.local_pattern = Eigen::VectorXi::Zero(sys.rows());
    for (int i = 0; i < sys.rows(); ++i) {
      if (r[i] > 0.0) sample.local_pattern[i] = 1;
    }
    sample.exact_hessian =
        candidate_from_binary(sys, sample.local_pattern).matrix;
    sample.fd_hessian = fd_hessian(sys, p, h);

    if (batch.hull) {
      double best = std::numeric_limits<double>::infinity();
      int best_idx = kNoMatch;
      for (size_t e = 0; e < batch.hull->extremes.size(); ++e) {
        const double dist =
            (sample.exact_hessian - batch.hull->extremes[e].matrix).norm();
        if (dist < best) {
          best = dist;
          best_idx = static_cast<int>(e);
        }
      }
      sample.match_distance = best;
      sample.matched_extreme = best <= 1e-5 ? best_idx : kNoMatch;
    }
    batch.samples.push_back(std::move(sample));
  }
  return batch;
}

}  // namespace genhess
