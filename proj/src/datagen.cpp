#include "minubench/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minubench {

namespace {

constexpr int kPlacementBudget = 10000;

// Smooth ridge-flow orientation field: a fixed arch-like term plus a random
// low-order polynomial in centered normalized coordinates. Values are ridge
// orientations; minutia directions add a 0/pi flip on top.
class OrientationField {
 public:
  OrientationField(Rng& rng, int coefficient_count) {
    coefficients_.resize(std::max(0, coefficient_count));
    for (double& c : coefficients_) c = rng.normal(0.0, 0.35);
  }

  double at(double u, double v) const {
    const double basis[10] = {1.0,       u,         v,     u * u, u * v,
                              v * v,     u * u * u, u * u * v,
                              u * v * v, v * v * v};
    double value = 1.1 * u * (1.0 - 1.2 * v);  // arch term
    const std::size_t terms = std::min(coefficients_.size(), std::size_t{10});
    for (std::size_t i = 0; i < terms; ++i) value += coefficients_[i] * basis[i];
    return value;
  }

 private:
  std::vector<double> coefficients_;
};

void check_params(const GenParams& p) {
  if (p.count_min < 1 || p.count_max < p.count_min) {
    throw DataError("generate_master: invalid count range");
  }
  if (p.min_separation <= 0.0) {
    throw DataError("generate_master: min_separation must be positive");
  }
  if (p.width <= 0 || p.height <= 0) {
    throw DataError("generate_master: width and height must be positive");
  }
}

}  // namespace

MinutiaeTemplate generate_master(std::uint64_t seed, const GenParams& params,
                                 std::string finger_id) {
  check_params(params);
  Rng rng(seed);

  const long drawn = std::lround(rng.normal(params.count_mean, params.count_std));
  const int count = static_cast<int>(
      std::clamp<long>(drawn, params.count_min, params.count_max));

  const OrientationField flow(rng, params.orientation_smoothness);

  const double cx = params.width / 2.0;
  const double cy = params.height / 2.0;
  const double ax = 0.4 * params.width;
  const double ay = 0.45 * params.height;
  const double min_sep2 = params.min_separation * params.min_separation;

  std::vector<std::pair<int, int>> positions;
  positions.reserve(count);
  int attempts = 0;
  while (static_cast<int>(positions.size()) < count) {
    if (++attempts > kPlacementBudget) {
      throw DataError(
          "generate_master: could not place requested minutiae count within "
          "10000 attempts");
    }
    const int x = static_cast<int>(rng.uniform_int(0, params.width - 1));
    const int y = static_cast<int>(rng.uniform_int(0, params.height - 1));
    const double eu = (x - cx) / ax;
    const double ev = (y - cy) / ay;
    if (eu * eu + ev * ev > 1.0) continue;
    const bool too_close = std::any_of(
        positions.begin(), positions.end(), [&](const std::pair<int, int>& q) {
          const double dx = q.first - x;
          const double dy = q.second - y;
          return dx * dx + dy * dy < min_sep2;
        });
    if (too_close) continue;
    positions.emplace_back(x, y);
  }

  MinutiaeTemplate t;
  t.width = params.width;
  t.height = params.height;
  t.finger_id = finger_id.empty() ? "m" + std::to_string(seed) : std::move(finger_id);
  t.impression_id = "m";
  t.minutiae.reserve(count);
  for (const auto& [x, y] : positions) {
    Minutia m;
    m.x = x;
    m.y = y;
    const double u = (x - cx) / params.width;
    const double v = (y - cy) / params.height;
    m.theta = canonicalize_angle(flow.at(u, v) + (rng.coin() ? kPi : 0.0));
    m.kind = rng.coin() ? MinutiaKind::kBifurcation : MinutiaKind::kEnding;
    m.quality = 60;
    t.minutiae.push_back(m);
  }
  return t;
}

Derivation derive_impression_detailed(const MinutiaeTemplate& master,
                                      std::uint64_t seed,
                                      const ImpressionParams& params,
                                      std::string impression_id) {
  Rng rng(seed);

  RigidTransform transform;
  transform.rotation = rng.normal(0.0, params.rotation_std);
  transform.shift = {rng.normal(0.0, params.shift_std),
                     rng.normal(0.0, params.shift_std)};
  transform.center = {master.width / 2.0, master.height / 2.0};

  const int n = master.count();
  const double retain = rng.uniform(params.retain_min, params.retain_max);
  const int keep = static_cast<int>(
      std::clamp<long>(std::llround(retain * n), 0, n));

  // Partial Fisher-Yates for a uniform subset, then restore input order.
  std::vector<int> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  for (int i = 0; i < keep; ++i) {
    const int j = static_cast<int>(rng.uniform_int(i, n - 1));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(keep);
  std::sort(indices.begin(), indices.end());

  Derivation result;
  result.transform = transform;
  result.impression.width = master.width;
  result.impression.height = master.height;
  result.impression.resolution = master.resolution;
  result.impression.finger_id = master.finger_id;
  result.impression.impression_id = std::move(impression_id);

  for (int idx : indices) {
    const Minutia& src = master.minutiae[idx];
    const Eigen::Vector2d p = transform.apply(src.position());
    const int x = static_cast<int>(std::lround(p.x()));
    const int y = static_cast<int>(std::lround(p.y()));
    if (x < 0 || x >= master.width || y < 0 || y >= master.height) continue;
    Minutia m = src;
    m.x = x;
    m.y = y;
    m.theta = canonicalize_angle(src.theta + transform.rotation);
    result.impression.minutiae.push_back(m);
    result.source_index.push_back(idx);
  }
  return result;
}

MinutiaeTemplate derive_impression(const MinutiaeTemplate& master,
                                   std::uint64_t seed,
                                   const ImpressionParams& params,
                                   std::string impression_id) {
  return derive_impression_detailed(master, seed, params,
                                    std::move(impression_id))
      .impression;
}

}  // namespace minubench
