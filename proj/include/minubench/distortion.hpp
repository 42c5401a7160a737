#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "minubench/rng.hpp"
#include "minubench/tps.hpp"
#include "minubench/types.hpp"

namespace minubench {

/// Regular grid of displacement sample points over the image plane.
struct GridSpec {
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  double spacing = 16.0;
  int cols = 27;
  int rows = 36;

  int node_count() const { return cols * rows; }
  int dim() const { return 2 * node_count(); }

  Eigen::Vector2d node(int row, int col) const {
    return origin + spacing * Eigen::Vector2d(col, row);
  }

  /// Smallest grid at the given spacing whose nodes cover [0, width] x
  /// [0, height].
  static GridSpec covering(int width, int height, double spacing = 16.0);

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// 2-D displacement vectors on a grid, flattened row-major with (dx, dy)
/// interleaved per node.
struct DistortionField {
  GridSpec grid;
  Eigen::VectorXd displacements;

  Eigen::Vector2d node_displacement(int row, int col) const {
    const int base = 2 * (row * grid.cols + col);
    return {displacements[base], displacements[base + 1]};
  }

  /// Bilinear interpolation of the field; positions outside the grid are
  /// edge-clamped.
  Eigen::Vector2d displacement_at(const Eigen::Vector2d& p) const;

  double mean_magnitude() const;
};

/// PCA model over flattened training fields: mean field, top-t eigenvalues
/// (descending) and orthonormal eigenfields.
struct DistortionModel {
  GridSpec grid;
  Eigen::VectorXd mean_field;
  Eigen::VectorXd eigenvalues;  // size t
  Eigen::MatrixXd eigenfields;  // dim x t, orthonormal columns
  bool degenerate = false;      // all training fields identical

  int component_count() const { return static_cast<int>(eigenvalues.size()); }
};

/// Samples the fitted warp on the grid: displacement(g) = tps(g) - g.
DistortionField field_from_tps(const TpsTransform& tps, const GridSpec& grid);

/// One synthetic finger-press displacement pattern. All components are
/// weighted by a Gaussian contact-region falloff, so zero parameters give an
/// exactly zero field.
struct PressParams {
  double torque = 0.0;       // radians, about torque_center
  Eigen::Vector2d torque_center = Eigen::Vector2d::Zero();
  double shear = 0.0;        // fraction of image width, lateral slip
  double compression = 0.0;  // fraction of image height, vertical squash
};

/// Builds the press pattern on a fixed 5x6 control lattice and fits a TPS
/// through it, then samples the fitted warp on `grid`.
DistortionField synth_press_field(const PressParams& params,
                                  const GridSpec& grid, int width, int height);

/// Stand-in training corpus: `count` random press fields (torque up to +/-8
/// degrees about a random center in the lower third, shear up to +/-15% of
/// width, vertical compression up to 10%). Deterministic per seed.
std::vector<DistortionField> synth_training_fields(
    std::uint64_t seed, int count = 320,
    const GridSpec& grid = GridSpec::covering(416, 560), int width = 416,
    int height = 560);

/// PCA over the flattened fields with sample covariance (1/(M-1)); keeps the
/// top-t eigenpairs. Requires at least t+1 fields on identical grids.
DistortionModel train_distortion_model(const std::vector<DistortionField>& fields,
                                       int t = 2);

/// Draws c_i ~ Normal(0, sigma_d) and synthesizes
/// d = mean + sum_i c_i * sqrt(lambda_i) * e_i.
std::pair<DistortionField, Eigen::VectorXd> sample_field(
    const DistortionModel& model, double sigma_d, Rng& rng);

/// Moves each minutia along the field and re-derives its orientation from
/// the displaced 10-pixel look-ahead point along its original direction.
/// Count and the (kind, quality) multiset are preserved; positions are
/// clamped in bounds.
MinutiaeTemplate apply_field(const MinutiaeTemplate& t,
                             const DistortionField& field);

struct ModelProvenance {
  std::uint64_t seed = 0;
  int training_count = 0;
  std::string source = "synthetic";
};

/// Binary model container ("DMDL", little-endian, 64-bit floats) plus a JSON
/// provenance sidecar at path + ".json".
void write_distortion_model(const std::filesystem::path& path,
                            const DistortionModel& model,
                            const ModelProvenance& provenance);
DistortionModel read_distortion_model(const std::filesystem::path& path);

}  // namespace minubench
