#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "minubench/config.hpp"
#include "minubench/distortion.hpp"
#include "minubench/rng.hpp"
#include "minubench/types.hpp"

namespace minubench {

/// Per-minutia random displacement. Realistic mode draws the displacement
/// magnitude from Normal(mu_p, sigma_p) with a uniform direction; sweep mode
/// (fixed_l1 set) enforces |dx| + |dy| == fixed_l1 with a uniform split and
/// signs, and draws the angular offset from Normal(0, sigma_o) directly.
struct PositionalParams {
  double mu_p = 4.048;
  double sigma_p = 0.688;
  double mu_o = 0.130;   // radians
  double sigma_o = 0.071;
  std::optional<int> fixed_l1;
};

struct MissingParams {
  double mu_m = 0.209;
  double sigma_m = 0.106;
  std::optional<double> fixed_ratio;
};

struct SpuriousParams {
  double mu_s = 0.523;
  double sigma_s = 0.349;
  std::optional<double> fixed_ratio;
  bool max_mode = false;  // fill to the 255-minutiae record cap
};

struct CombinedParams {
  PositionalParams positional;
  MissingParams missing;
  SpuriousParams spurious;
};

struct DistortionPerturbParams {
  double sigma_d = 0.66;
  std::shared_ptr<const DistortionModel> model;
  std::string model_path;  // provenance only
};

using PerturbationSpec =
    std::variant<PositionalParams, MissingParams, SpuriousParams,
                 CombinedParams, DistortionPerturbParams>;

/// Ratio-to-count rounding used everywhere a ratio meets a count:
/// round-half-away-from-zero.
inline int round_ratio_count(double ratio, int n) {
  return static_cast<int>(std::llround(ratio * n));
}

MinutiaeTemplate perturb_positional(const MinutiaeTemplate& t,
                                    const PositionalParams& params, Rng& rng);

/// Removes round(r * n) minutiae chosen uniformly without replacement, where
/// r is Normal(mu_m, sigma_m) (or fixed_ratio) clamped to [0, 1]. Requires a
/// non-empty template; removing all minutiae is legal at r = 1.
MinutiaeTemplate perturb_missing(const MinutiaeTemplate& t,
                                 const MissingParams& params, Rng& rng);

/// Adds round(s * n) minutiae (or fills to 255 in max mode) at uniform
/// in-bounds positions at least 10 px from any existing minutia. Originals
/// are untouched. Throws DataError when placement rejection exceeds 10000
/// attempts.
MinutiaeTemplate perturb_spurious(const MinutiaeTemplate& t,
                                  const SpuriousParams& params, Rng& rng);

/// Missing first (so spurious additions are never deleted), then spurious,
/// then positional noise over all minutiae including the added ones.
MinutiaeTemplate perturb_combined(const MinutiaeTemplate& t,
                                  const CombinedParams& params, Rng& rng);

MinutiaeTemplate apply_perturbation(const MinutiaeTemplate& t,
                                    const PerturbationSpec& spec, Rng& rng);

const char* perturbation_technique(const PerturbationSpec& spec);

/// `perturb.*` config keys <-> spec. Parsing loads the distortion model file
/// when the spec requires one; unknown keys are reported by name.
PerturbationSpec parse_perturbation_spec(const ConfigMap& cfg);
ConfigMap perturbation_spec_to_config(const PerturbationSpec& spec);

}  // namespace minubench
