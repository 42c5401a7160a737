#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "minubench/rng.hpp"
#include "minubench/types.hpp"

namespace minubench {

struct GenParams {
  double count_mean = 45.0;
  double count_std = 10.0;
  int count_min = 20;
  int count_max = 80;
  double min_separation = 10.0;  // ~ one ridge period at 500 dpi
  int width = 416;
  int height = 560;
  int orientation_smoothness = 6;  // coefficient count of the flow polynomial
};

/// Rotation about `center` followed by a translation.
struct RigidTransform {
  double rotation = 0.0;
  Eigen::Vector2d shift = Eigen::Vector2d::Zero();
  Eigen::Vector2d center = Eigen::Vector2d::Zero();

  Eigen::Vector2d apply(const Eigen::Vector2d& p) const {
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    const Eigen::Vector2d d = p - center;
    return {center.x() + c * d.x() - s * d.y() + shift.x(),
            center.y() + s * d.x() + c * d.y() + shift.y()};
  }
};

struct ImpressionParams {
  double rotation_std = 0.09;  // radians
  double shift_std = 10.0;     // pixels, per axis
  double retain_min = 0.8;
  double retain_max = 1.0;
};

/// An impression plus the provenance needed to map it back onto its master:
/// the sampled rigid transform and, per surviving minutia, the index of the
/// master minutia it came from.
struct Derivation {
  MinutiaeTemplate impression;
  RigidTransform transform;
  std::vector<int> source_index;
};

/// Synthesizes a ground-truth master template: count from a clamped normal,
/// positions uniform in the inscribed ellipse with pairwise separation >=
/// min_separation, orientations from a smooth synthetic ridge-flow field
/// (plus a uniform 0/pi flip), kind uniform over ending/bifurcation, quality
/// fixed at 60. Deterministic for a fixed seed. Throws DataError when
/// rejection sampling cannot place the requested count within 10000 attempts.
MinutiaeTemplate generate_master(std::uint64_t seed, const GenParams& params = {},
                                 std::string finger_id = "");

/// Applies one sampled rigid transform to all minutiae, drops a uniformly
/// chosen subset down to the sampled retain fraction, and discards minutiae
/// that land out of bounds. finger_id is preserved.
Derivation derive_impression_detailed(const MinutiaeTemplate& master,
                                      std::uint64_t seed,
                                      const ImpressionParams& params = {},
                                      std::string impression_id = "i");

MinutiaeTemplate derive_impression(const MinutiaeTemplate& master,
                                   std::uint64_t seed,
                                   const ImpressionParams& params = {},
                                   std::string impression_id = "i");

}  // namespace minubench
