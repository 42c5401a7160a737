#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "minubench/rng.hpp"

namespace minubench {

/// Record-level minutiae cap from the ISO/IEC 19794-2 count byte.
inline constexpr int kMaxMinutiae = 255;

/// Malformed input data, bad files, invalid parameters. CLI exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Failures of a matcher or external matcher adapter. CLI exit code 3.
struct MatcherError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wraps an angle into [0, 2*pi).
inline double canonicalize_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Circular distance between two angles, in [0, pi].
inline double angle_distance(double a, double b) {
  const double d = std::fabs(canonicalize_angle(a) - canonicalize_angle(b));
  return d > kPi ? kTwoPi - d : d;
}

enum class MinutiaKind : std::uint8_t { kEnding, kBifurcation, kOther };

const char* to_string(MinutiaKind kind);
MinutiaKind minutia_kind_from_string(const std::string& s);

struct Minutia {
  int x = 0;
  int y = 0;
  double theta = 0.0;  // radians, canonical in [0, 2*pi)
  MinutiaKind kind = MinutiaKind::kEnding;
  int quality = 60;  // 0..100

  Eigen::Vector2d position() const {
    return {static_cast<double>(x), static_cast<double>(y)};
  }

  friend bool operator==(const Minutia&, const Minutia&) = default;
};

/// One fingerprint as an ordered minutiae list plus image metadata. Immutable
/// by convention after construction; all operations return new templates.
struct MinutiaeTemplate {
  std::vector<Minutia> minutiae;
  int width = 416;
  int height = 560;
  int resolution = 500;  // dots per inch
  std::string finger_id;
  std::string impression_id;

  int count() const { return static_cast<int>(minutiae.size()); }
  bool empty() const { return minutiae.empty(); }

  friend bool operator==(const MinutiaeTemplate&,
                         const MinutiaeTemplate&) = default;
};

/// Checks all template invariants. Returns one description per violation,
/// each naming the offending minutia index and the violated rule; empty means
/// the template is valid.
std::vector<std::string> validate(const MinutiaeTemplate& t);

}  // namespace minubench
