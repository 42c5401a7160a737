#include "minubench/distortion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <Eigen/SVD>
#include <json.hpp>

namespace minubench {

static_assert(std::endian::native == std::endian::little,
              "model container I/O assumes a little-endian host");

namespace {

// Contact-region falloff for the synthetic press pattern.
constexpr double kContactCenterYFraction = 0.55;
constexpr double kContactSigmaFraction = 0.30;  // of image height

constexpr double kMaxTorqueDegrees = 8.0;
constexpr double kMaxShearFraction = 0.15;
constexpr double kMaxCompressionFraction = 0.10;

constexpr double kOrientationLookaheadPx = 10.0;

constexpr std::uint16_t kModelVersion = 1;

}  // namespace

GridSpec GridSpec::covering(int width, int height, double spacing) {
  GridSpec g;
  g.origin = Eigen::Vector2d::Zero();
  g.spacing = spacing;
  g.cols = static_cast<int>(std::ceil(width / spacing)) + 1;
  g.rows = static_cast<int>(std::ceil(height / spacing)) + 1;
  return g;
}

Eigen::Vector2d DistortionField::displacement_at(const Eigen::Vector2d& p) const {
  const double gx = std::clamp((p.x() - grid.origin.x()) / grid.spacing, 0.0,
                               static_cast<double>(grid.cols - 1));
  const double gy = std::clamp((p.y() - grid.origin.y()) / grid.spacing, 0.0,
                               static_cast<double>(grid.rows - 1));
  const int c0 = std::min(static_cast<int>(gx), grid.cols - 2);
  const int r0 = std::min(static_cast<int>(gy), grid.rows - 2);
  const double fx = gx - c0;
  const double fy = gy - r0;
  return (1.0 - fx) * (1.0 - fy) * node_displacement(r0, c0) +
         fx * (1.0 - fy) * node_displacement(r0, c0 + 1) +
         (1.0 - fx) * fy * node_displacement(r0 + 1, c0) +
         fx * fy * node_displacement(r0 + 1, c0 + 1);
}

double DistortionField::mean_magnitude() const {
  double sum = 0.0;
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      sum += node_displacement(r, c).norm();
    }
  }
  return sum / grid.node_count();
}

DistortionField field_from_tps(const TpsTransform& tps, const GridSpec& grid) {
  DistortionField field;
  field.grid = grid;
  field.displacements.resize(grid.dim());
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      const Eigen::Vector2d g = grid.node(r, c);
      const Eigen::Vector2d d = tps_eval(tps, g) - g;
      const int base = 2 * (r * grid.cols + c);
      field.displacements[base] = d.x();
      field.displacements[base + 1] = d.y();
    }
  }
  return field;
}

DistortionField synth_press_field(const PressParams& params,
                                  const GridSpec& grid, int width, int height) {
  constexpr int kLatticeCols = 5;
  constexpr int kLatticeRows = 6;

  const Eigen::Vector2d contact_center(width / 2.0,
                                       kContactCenterYFraction * height);
  const double sigma = kContactSigmaFraction * height;
  const double cos_t = std::cos(params.torque);
  const double sin_t = std::sin(params.torque);

  Eigen::Matrix<double, Eigen::Dynamic, 2> source(kLatticeCols * kLatticeRows, 2);
  Eigen::Matrix<double, Eigen::Dynamic, 2> target(kLatticeCols * kLatticeRows, 2);
  int k = 0;
  for (int i = 0; i < kLatticeRows; ++i) {
    for (int j = 0; j < kLatticeCols; ++j, ++k) {
      const Eigen::Vector2d p(width * j / (kLatticeCols - 1.0),
                              height * i / (kLatticeRows - 1.0));

      const Eigen::Vector2d rel = p - params.torque_center;
      const Eigen::Vector2d torque_disp(cos_t * rel.x() - sin_t * rel.y() - rel.x(),
                                        sin_t * rel.x() + cos_t * rel.y() - rel.y());
      const Eigen::Vector2d shear_disp(
          params.shear * width * (height - p.y()) / height, 0.0);
      const Eigen::Vector2d compression_disp(
          0.0, params.compression * (height - p.y()));

      const double falloff =
          std::exp(-(p - contact_center).squaredNorm() / (2.0 * sigma * sigma));
      const Eigen::Vector2d q =
          p + falloff * (torque_disp + shear_disp + compression_disp);
      source.row(k) = p.transpose();
      target.row(k) = q.transpose();
    }
  }
  return field_from_tps(tps_fit<double>(source, target, 0.0), grid);
}

std::vector<DistortionField> synth_training_fields(std::uint64_t seed, int count,
                                                   const GridSpec& grid,
                                                   int width, int height) {
  if (count < 2) {
    throw DataError("synth_training_fields: count must be at least 2");
  }
  Rng rng(seed);
  std::vector<DistortionField> fields;
  fields.reserve(count);
  for (int i = 0; i < count; ++i) {
    PressParams params;
    params.torque =
        rng.uniform(-kMaxTorqueDegrees, kMaxTorqueDegrees) * kPi / 180.0;
    params.torque_center = {rng.uniform(0.25 * width, 0.75 * width),
                            rng.uniform(2.0 * height / 3.0, height)};
    params.shear = rng.uniform(-kMaxShearFraction, kMaxShearFraction);
    params.compression = rng.uniform(0.0, kMaxCompressionFraction);
    fields.push_back(synth_press_field(params, grid, width, height));
  }
  return fields;
}

DistortionModel train_distortion_model(const std::vector<DistortionField>& fields,
                                       int t) {
  const int m = static_cast<int>(fields.size());
  if (t < 1) {
    throw DataError("train_distortion_model: t must be at least 1");
  }
  if (m < t + 1) {
    throw DataError("train_distortion_model: need at least t + 1 fields");
  }
  const GridSpec grid = fields.front().grid;
  for (const DistortionField& f : fields) {
    if (!(f.grid == grid)) {
      throw DataError("train_distortion_model: fields have mismatched grids");
    }
    if (!f.displacements.allFinite()) {
      throw DataError("train_distortion_model: field has non-finite entries");
    }
  }

  const int dim = grid.dim();
  Eigen::MatrixXd data(dim, m);
  for (int i = 0; i < m; ++i) data.col(i) = fields[i].displacements;

  DistortionModel model;
  model.grid = grid;
  model.mean_field = data.rowwise().mean();
  data.colwise() -= model.mean_field;

  // Sample covariance is data * data^T / (m - 1); its top eigenpairs come
  // from the thin SVD of the centered data matrix.
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinU);
  model.eigenvalues.resize(t);
  model.eigenfields.resize(dim, t);
  for (int i = 0; i < t; ++i) {
    const double sv = i < svd.singularValues().size() ? svd.singularValues()[i] : 0.0;
    model.eigenvalues[i] = sv * sv / (m - 1);
    Eigen::VectorXd e = svd.matrixU().col(i);
    int max_index = 0;
    e.cwiseAbs().maxCoeff(&max_index);
    if (e[max_index] < 0.0) e = -e;  // fix the sign ambiguity
    model.eigenfields.col(i) = e;
  }
  model.degenerate = model.eigenvalues[0] <= 1e-12;
  return model;
}

std::pair<DistortionField, Eigen::VectorXd> sample_field(
    const DistortionModel& model, double sigma_d, Rng& rng) {
  const int t = model.component_count();
  Eigen::VectorXd coefficients(t);
  for (int i = 0; i < t; ++i) coefficients[i] = rng.normal(0.0, sigma_d);

  DistortionField field;
  field.grid = model.grid;
  field.displacements = model.mean_field;
  for (int i = 0; i < t; ++i) {
    field.displacements +=
        coefficients[i] * std::sqrt(model.eigenvalues[i]) * model.eigenfields.col(i);
  }
  return {std::move(field), std::move(coefficients)};
}

MinutiaeTemplate apply_field(const MinutiaeTemplate& t,
                             const DistortionField& field) {
  MinutiaeTemplate out = t;
  for (Minutia& m : out.minutiae) {
    const Eigen::Vector2d p = m.position();
    const Eigen::Vector2d p2 = p + field.displacement_at(p);
    const Eigen::Vector2d q =
        p + kOrientationLookaheadPx *
                Eigen::Vector2d(std::cos(m.theta), std::sin(m.theta));
    const Eigen::Vector2d q2 = q + field.displacement_at(q);
    const Eigen::Vector2d dir = q2 - p2;
    if (dir.squaredNorm() > 0.0) {
      m.theta = canonicalize_angle(std::atan2(dir.y(), dir.x()));
    }
    m.x = std::clamp(static_cast<int>(std::lround(p2.x())), 0, t.width - 1);
    m.y = std::clamp(static_cast<int>(std::lround(p2.y())), 0, t.height - 1);
  }
  return out;
}

namespace {

template <typename T>
void put_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get_raw(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

void put_vector(std::ostream& out, const Eigen::VectorXd& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void get_vector(std::istream& in, Eigen::VectorXd& v) {
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
}

}  // namespace

void write_distortion_model(const std::filesystem::path& path,
                            const DistortionModel& model,
                            const ModelProvenance& provenance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("write_distortion_model: cannot open " + path.string());
  }
  out.write("DMDL", 4);
  put_raw(out, kModelVersion);
  put_raw(out, model.grid.origin.x());
  put_raw(out, model.grid.origin.y());
  put_raw(out, model.grid.spacing);
  put_raw(out, static_cast<std::uint32_t>(model.grid.cols));
  put_raw(out, static_cast<std::uint32_t>(model.grid.rows));
  put_raw(out, static_cast<std::uint32_t>(model.component_count()));
  put_raw(out, static_cast<std::uint8_t>(model.degenerate ? 1 : 0));
  put_vector(out, model.mean_field);
  put_vector(out, model.eigenvalues);
  for (int i = 0; i < model.component_count(); ++i) {
    Eigen::VectorXd column = model.eigenfields.col(i);
    put_vector(out, column);
  }
  if (!out) {
    throw DataError("write_distortion_model: write failed for " + path.string());
  }

  const nlohmann::json sidecar = {{"seed", provenance.seed},
                                  {"training_count", provenance.training_count},
                                  {"source", provenance.source},
                                  {"components", model.component_count()},
                                  {"grid_cols", model.grid.cols},
                                  {"grid_rows", model.grid.rows},
                                  {"grid_spacing", model.grid.spacing}};
  std::ofstream side(path.string() + ".json");
  side << sidecar.dump(2) << '\n';
}

DistortionModel read_distortion_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("read_distortion_model: cannot open " + path.string());
  }
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "DMDL", 4) != 0) {
    throw DataError("read_distortion_model: bad magic in " + path.string());
  }
  const auto version = get_raw<std::uint16_t>(in);
  if (version != kModelVersion) {
    std::ostringstream os;
    os << "read_distortion_model: version mismatch (file " << version
       << ", supported " << kModelVersion << ")";
    throw DataError(os.str());
  }

  DistortionModel model;
  model.grid.origin.x() = get_raw<double>(in);
  model.grid.origin.y() = get_raw<double>(in);
  model.grid.spacing = get_raw<double>(in);
  model.grid.cols = static_cast<int>(get_raw<std::uint32_t>(in));
  model.grid.rows = static_cast<int>(get_raw<std::uint32_t>(in));
  const int t = static_cast<int>(get_raw<std::uint32_t>(in));
  model.degenerate = get_raw<std::uint8_t>(in) != 0;
  if (!in || model.grid.cols < 2 || model.grid.rows < 2 || t < 1 ||
      model.grid.spacing <= 0.0) {
    throw DataError("read_distortion_model: corrupt header in " + path.string());
  }

  const int dim = model.grid.dim();
  model.mean_field.resize(dim);
  get_vector(in, model.mean_field);
  model.eigenvalues.resize(t);
  get_vector(in, model.eigenvalues);
  model.eigenfields.resize(dim, t);
  for (int i = 0; i < t; ++i) {
    Eigen::VectorXd column(dim);
    get_vector(in, column);
    model.eigenfields.col(i) = column;
  }
  if (!in) {
    throw DataError("read_distortion_model: truncated model file " +
                    path.string());
  }
  return model;
}

}  // namespace minubench
