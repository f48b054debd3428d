#include "dirshape/descriptor.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "dirshape/distance_transform.hpp"
#include "dirshape/error.hpp"
#include "dirshape/kernels.hpp"
#include "dirshape/transform.hpp"

namespace dirshape {

bool DescriptorGrid::compatible(const DescriptorGrid& o, double tol) const {
  MetricConfig a, b;
  a.epsilon = epsilon;
  a.area = area;
  a.thetas = thetas;
  a.betas = betas;
  b.epsilon = o.epsilon;
  b.area = o.area;
  b.thetas = o.thetas;
  b.betas = o.betas;
  return a.same_grid(b, tol) && values.size() == o.values.size();
}

double compute_P(const BinaryMask& mask, double epsilon, double divisor) {
  if (!(epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be >= 0");
  const PixelBox box = bounding_box(mask);
  if (box.width() <= 0) throw Error(ErrorKind::EmptyForeground, "P of an empty mask");
  const int need = static_cast<int>(std::ceil(epsilon)) + 1;
  if (box.x0 < need || box.y0 < need || mask.width() - 1 - box.x1 < need ||
      mask.height() - 1 - box.y1 < need) {
    throw Error(ErrorKind::InsufficientMargin,
                "mask needs " + std::to_string(need) + " background pixels around the shape");
  }
  if (divisor <= 0.0) divisor = static_cast<double>(area(mask));

  const DistanceField field = distance_transform(mask);
  const double eps2 = epsilon * epsilon;
  long long ring = 0;
  for (const std::int64_t d2 : field.squared()) {
    if (d2 > 0 && static_cast<double>(d2) <= eps2) ++ring;
  }
  return static_cast<double>(ring) / divisor;
}

BinaryMask prepare_shape(const BinaryMask& mask, const MetricConfig& config) {
  return normalize_area(fill_holes(mask), config.area, config.margin());
}

DescriptorGrid descriptor_of_prepared(const BinaryMask& prepared, const MetricConfig& config,
                                      Exec exec) {
  config.validate();
  DescriptorGrid grid;
  grid.thetas = config.thetas;
  grid.betas = config.betas;
  grid.epsilon = config.epsilon;
  grid.area = config.area;
  grid.values.assign(grid.thetas.size() * grid.betas.size(), 0.0);

  const double volume = static_cast<double>(area(prepared));
  const int margin = config.margin();
  const std::size_t nb = grid.betas.size();
  auto cell = [&](std::size_t k) {
    const AffineMap map = make_transform({grid.thetas[k / nb], grid.betas[k % nb]});
    return compute_P(fill_holes(apply_transform(prepared, map, margin)), config.epsilon, volume);
  };
  if (exec.parallel()) {
    kernels::cells_omp(grid.values.size(), cell, grid.values, exec.workers);
  } else {
    kernels::cells_serial(grid.values.size(), cell, grid.values);
  }
  return grid;
}

DescriptorGrid compute_descriptor(const BinaryMask& mask, const MetricConfig& config,
                                  Exec exec) {
  config.validate();
  return descriptor_of_prepared(prepare_shape(mask, config), config, exec);
}

namespace {

std::string fmt(double v, int precision) {
  if (v == 0.0) v = 0.0;
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

void write_list(std::ostream& os, const char* key, const std::vector<double>& v, int precision) {
  os << key;
  for (double x : v) os << ' ' << fmt(x, precision);
  os << '\n';
}

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorKind::UnsupportedFormat, "malformed descriptor record: " + why);
}

std::vector<double> read_numbers(std::istringstream& ls) {
  std::vector<double> out;
  std::string tok;
  while (ls >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) malformed("bad number '" + tok + "'");
    } catch (const std::logic_error&) {
      malformed("bad number '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

void write_descriptor(std::ostream& os, const DescriptorGrid& grid, const std::string& id,
                      int precision) {
  os << "dirshape-descriptor 1\n";
  if (!id.empty()) os << "id " << id << '\n';
  os << "epsilon " << fmt(grid.epsilon, precision) << '\n';
  os << "area " << fmt(grid.area, precision) << '\n';
  write_list(os, "thetas", grid.thetas, precision);
  write_list(os, "betas", grid.betas, precision);
  os << "values " << grid.n_theta() << ' ' << grid.n_beta() << '\n';
  for (std::size_t i = 0; i < grid.n_theta(); ++i) {
    for (std::size_t j = 0; j < grid.n_beta(); ++j) {
      os << (j ? " " : "") << fmt(grid.value(i, j), precision);
    }
    os << '\n';
  }
  os << "end\n";
}

std::string descriptor_to_string(const DescriptorGrid& grid, const std::string& id,
                                 int precision) {
  std::ostringstream os;
  write_descriptor(os, grid, id, precision);
  return os.str();
}

DescriptorGrid read_descriptor(std::istream& is, std::string* id) {
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line != "dirshape-descriptor 1") malformed("missing header");
    header = true;
    break;
  }
  if (!header) malformed("missing header");

  DescriptorGrid grid;
  std::size_t rows = 0, cols = 0;
  bool have_values = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "end") {
      if (!have_values) malformed("no values block");
      return grid;
    }
    if (key == "id") {
      std::string rest;
      std::getline(ls >> std::ws, rest);
      if (id) *id = rest;
    } else if (key == "epsilon" || key == "area") {
      const auto v = read_numbers(ls);
      if (v.size() != 1) malformed(key + " needs one value");
      (key == "epsilon" ? grid.epsilon : grid.area) = v[0];
    } else if (key == "thetas") {
      grid.thetas = read_numbers(ls);
    } else if (key == "betas") {
      grid.betas = read_numbers(ls);
    } else if (key == "values") {
      if (!(ls >> rows >> cols)) malformed("values needs dimensions");
      if (rows != grid.thetas.size() || cols != grid.betas.size()) {
        malformed("value dimensions do not match the sample grids");
      }
      grid.values.reserve(rows * cols);
      for (std::size_t i = 0; i < rows; ++i) {
        if (!std::getline(is, line)) malformed("truncated values");
        std::istringstream row(line);
        const auto v = read_numbers(row);
        if (v.size() != cols) malformed("row " + std::to_string(i) + " has wrong length");
        grid.values.insert(grid.values.end(), v.begin(), v.end());
      }
      have_values = true;
    } else {
      malformed("unknown key '" + key + "'");
    }
  }
  malformed("missing end");
}

void write_dense_surface(std::ostream& os, const BinaryMask& mask, const MetricConfig& config,
                         int n_theta, int n_beta, double beta_max, Exec exec) {
  if (n_theta < 1 || n_beta < 1) {
    throw Error(ErrorKind::InvalidArgument, "dense grid needs at least one sample per axis");
  }
  if (!(beta_max >= 1.0)) throw Error(ErrorKind::InvalidArgument, "beta_max must be >= 1");
  MetricConfig dense = config;
  dense.thetas = uniform_thetas(n_theta);
  dense.betas.clear();
  for (int j = 0; j < n_beta; ++j) {
    dense.betas.push_back(n_beta == 1 ? 1.0 : 1.0 + (beta_max - 1.0) * j / (n_beta - 1));
  }
  if (n_beta > 1 && beta_max == 1.0) dense.betas.resize(1);
  const DescriptorGrid grid = compute_descriptor(mask, dense, exec);
  os << "theta,beta,P\n";
  for (std::size_t i = 0; i < grid.n_theta(); ++i) {
    for (std::size_t j = 0; j < grid.n_beta(); ++j) {
      os << fmt(grid.thetas[i], 9) << ',' << fmt(grid.betas[j], 9) << ','
         << fmt(grid.value(i, j), 9) << '\n';
    }
  }
}

}  // namespace dirshape
