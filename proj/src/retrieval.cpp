#include "dirshape/retrieval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "dirshape/error.hpp"
#include "dirshape/image_io.hpp"
#include "dirshape/kernels.hpp"
#include "dirshape/metric.hpp"

namespace dirshape {

namespace fs = std::filesystem;

std::map<std::string, int> Dataset::class_sizes() const {
  std::map<std::string, int> sizes;
  for (const auto& e : entries) ++sizes[e.label];
  return sizes;
}

namespace {

std::vector<fs::path> sorted_children(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  for (const auto& de : fs::directory_iterator(dir)) {
    if (directories ? de.is_directory() : de.is_regular_file()) out.push_back(de.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string flat_label(const std::string& stem) {
  const auto dash = stem.rfind('-');
  return dash == std::string::npos || dash == 0 ? stem : stem.substr(0, dash);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string cache_key(const fs::path& path, const MetricConfig& config, const LoadOptions& load) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return hex64(fnv1a(bytes.data(), bytes.size())) + "-" + hex64(config.descriptor_hash()) + "-t" +
         std::to_string(load.threshold) + (load.invert ? "i" : "n");
}

void write_comment(std::ostream& os, const std::string& comment) {
  if (comment.empty()) return;
  std::istringstream lines(comment);
  std::string line;
  while (std::getline(lines, line)) os << "# " << line << '\n';
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

Dataset ingest_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw Error(ErrorKind::Io, "dataset root " + root.string() + " is not a directory");
  }
  Dataset ds;
  const auto class_dirs = sorted_children(root, true);
  if (!class_dirs.empty()) {
    for (const auto& dir : class_dirs) {
      const std::string label = dir.filename().string();
      for (const auto& file : sorted_children(dir, false)) {
        if (!is_supported_raster(file)) continue;
        ds.entries.push_back({label + "/" + file.stem().string(), label, file});
      }
    }
  } else {
    for (const auto& file : sorted_children(root, false)) {
      if (!is_supported_raster(file)) continue;
      const std::string stem = file.stem().string();
      ds.entries.push_back({stem, flat_label(stem), file});
    }
  }
  if (ds.entries.empty()) {
    throw Error(ErrorKind::Io, "no PGM/PNG shapes found under " + root.string());
  }
  std::sort(ds.entries.begin(), ds.entries.end(),
            [](const DatasetEntry& a, const DatasetEntry& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < ds.entries.size(); ++i) {
    if (ds.entries[i].id == ds.entries[i - 1].id) {
      throw Error(ErrorKind::InvalidArgument, "duplicate shape id " + ds.entries[i].id);
    }
  }
  for (const auto& [label, size] : ds.class_sizes()) {
    if (size < 2) {
      ds.warnings.push_back("class '" + label +
                            "' has a single entry; its nth-neighbor scores are always 0");
    }
  }
  return ds;
}

DescriptorCache::DescriptorCache(fs::path directory) : directory_(std::move(directory)) {
  fs::create_directories(*directory_);
}

std::optional<DescriptorGrid> DescriptorCache::find(const std::string& key) {
  std::lock_guard lock(mutex_);
  if (auto it = memory_.find(key); it != memory_.end()) {
    ++hits_;
    return it->second;
  }
  if (directory_) {
    std::ifstream in(*directory_ / (key + ".desc"));
    if (in) {
      try {
        DescriptorGrid grid = read_descriptor(in);
        memory_.emplace(key, grid);
        ++hits_;
        return grid;
      } catch (const Error&) {
        // Corrupt entry; recompute and overwrite.
      }
    }
  }
  return std::nullopt;
}

void DescriptorCache::store(const std::string& key, const DescriptorGrid& grid) {
  std::lock_guard lock(mutex_);
  memory_.emplace(key, grid);
  if (!directory_) return;
  const fs::path final_path = *directory_ / (key + ".desc");
  const fs::path tmp = *directory_ / (key + ".desc.tmp");
  {
    std::ofstream out(tmp);
    if (!out) return;
    write_descriptor(out, grid, key, 17);
  }
  std::error_code ec;
  fs::rename(tmp, final_path, ec);
}

DescriptorGrid describe_file(const fs::path& path, const MetricConfig& config,
                             const LoadOptions& load, DescriptorCache* cache) {
  std::string key;
  if (cache) {
    key = cache_key(path, config, load);
    if (auto hit = cache->find(key)) return *hit;
  }
  const BinaryMask filled = fill_holes(load_mask(path, load.threshold, load.invert));
  const ShapeValidation v = validate_shape(filled);
  if (!v.connected) {
    throw Error(ErrorKind::Degenerate, "shape is disconnected (" +
                                           std::to_string(v.component_count) + " components)");
  }
  DescriptorGrid grid =
      descriptor_of_prepared(normalize_area(filled, config.area, config.margin()), config);
  if (cache) cache->store(key, grid);
  return grid;
}

DistanceMatrix matrix_from_descriptors(const std::vector<std::string>& ids,
                                       const std::vector<DescriptorGrid>& descriptors,
                                       const MetricConfig& config, Exec exec) {
  if (ids.size() != descriptors.size()) {
    throw Error(ErrorKind::Mismatch, "one descriptor per id is required");
  }
  DistanceMatrix m;
  m.ids = ids;
  const std::size_t n = ids.size();
  m.values.assign(n * n, 0.0);
  auto pair = [&](std::size_t i, std::size_t j) {
    return descriptor_distance(descriptors[i], descriptors[j], config).value;
  };
  if (exec.parallel()) {
    kernels::pairwise_omp(n, pair, m.values, exec.workers);
  } else {
    kernels::pairwise_serial(n, pair, m.values);
  }
  return m;
}

DistanceMatrix compute_matrix(const Dataset& dataset, const MetricConfig& config,
                              const LoadOptions& load, Exec exec, DescriptorCache* cache) {
  config.validate();
  const std::size_t n = dataset.entries.size();
  std::vector<DescriptorGrid> descriptors(n);
  std::vector<std::string> errors(n);
  std::vector<ErrorKind> kinds(n, ErrorKind::Io);

  auto task = [&](std::size_t i) {
    try {
      descriptors[i] = describe_file(dataset.entries[i].path, config, load, cache);
    } catch (const Error& e) {
      errors[i] = e.what();
      kinds[i] = e.kind();
    } catch (const std::exception& e) {
      errors[i] = e.what();
      kinds[i] = ErrorKind::Io;
    }
  };
  if (exec.parallel()) {
    kernels::indices_omp(n, task, exec.workers);
  } else {
    kernels::indices_serial(n, task);
  }

  std::string report;
  std::optional<ErrorKind> first_kind;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i].empty()) continue;
    if (!first_kind) first_kind = kinds[i];
    report += "\n  " + dataset.entries[i].id + ": " + errors[i];
  }
  if (first_kind) throw Error(*first_kind, "failed to describe shapes:" + report);

  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& e : dataset.entries) ids.push_back(e.id);
  return matrix_from_descriptors(ids, descriptors, config, exec);
}

RetrievalReport nth_neighbor_scores(const DistanceMatrix& matrix, const Dataset& dataset,
                                    int max_n) {
  const std::size_t n = matrix.size();
  if (max_n < 1 || static_cast<std::size_t>(max_n) >= n) {
    throw Error(ErrorKind::InvalidArgument,
                "max_n must lie in [1, size - 1] (size " + std::to_string(n) + ")");
  }
  std::map<std::string, std::string> label_of;
  for (const auto& e : dataset.entries) label_of[e.id] = e.label;
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = label_of.find(matrix.ids[i]);
    if (it == label_of.end()) {
      throw Error(ErrorKind::Mismatch, "matrix id " + matrix.ids[i] + " is not in the dataset");
    }
    labels[i] = it->second;
  }

  RetrievalReport r;
  r.max_n = max_n;
  r.queries = static_cast<int>(n);
  r.total_correct.assign(static_cast<std::size_t>(max_n), 0);
  for (std::size_t q = 0; q < n; ++q) {
    ClassScores& cs = r.per_class[labels[q]];
    if (cs.correct.empty()) cs.correct.assign(static_cast<std::size_t>(max_n), 0);
    ++cs.size;

    std::vector<std::size_t> others;
    others.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
      if (k != q) others.push_back(k);
    }
    std::sort(others.begin(), others.end(), [&](std::size_t a, std::size_t b) {
      const double da = matrix.at(q, a), db = matrix.at(q, b);
      if (da != db) return da < db;
      return matrix.ids[a] < matrix.ids[b];
    });
    for (int k = 0; k < max_n; ++k) {
      if (labels[others[static_cast<std::size_t>(k)]] == labels[q]) {
        ++cs.correct[static_cast<std::size_t>(k)];
        ++r.total_correct[static_cast<std::size_t>(k)];
      }
    }
  }
  for (auto& [label, cs] : r.per_class) {
    cs.accuracy.resize(cs.correct.size());
    for (std::size_t k = 0; k < cs.correct.size(); ++k) {
      cs.accuracy[k] = 100.0 * cs.correct[k] / cs.size;
    }
  }
  r.totals.resize(r.total_correct.size());
  for (std::size_t k = 0; k < r.totals.size(); ++k) {
    r.totals[k] = 100.0 * r.total_correct[k] / r.queries;
  }
  return r;
}

void write_matrix_csv(std::ostream& os, const DistanceMatrix& m, const std::string& comment) {
  write_comment(os, comment);
  os << "id";
  for (const auto& id : m.ids) os << ',' << id;
  os << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << m.ids[i];
    for (std::size_t j = 0; j < m.size(); ++j) os << ',' << format_sig9(m.at(i, j));
    os << '\n';
  }
}

void write_report_csv(std::ostream& os, const RetrievalReport& r, const std::string& comment) {
  write_comment(os, comment);
  os << "class";
  for (int k = 1; k <= r.max_n; ++k) os << ',' << k;
  os << '\n';
  for (const auto& [label, cs] : r.per_class) {
    os << label;
    for (double a : cs.accuracy) os << ',' << percent(a);
    os << '\n';
  }
  os << "TOTAL";
  for (double t : r.totals) os << ',' << percent(t);
  os << '\n';
}

void write_report_table(std::ostream& os, const RetrievalReport& r, const std::string& comment) {
  write_comment(os, comment);
  std::size_t width = 5;
  for (const auto& [label, cs] : r.per_class) width = std::max(width, label.size());
  auto row = [&](const std::string& label, const std::vector<double>& vals) {
    os << std::left << std::setw(static_cast<int>(width)) << label;
    for (double v : vals) os << std::right << std::setw(7) << percent(v);
    os << '\n';
  };
  os << std::left << std::setw(static_cast<int>(width)) << "class";
  for (int k = 1; k <= r.max_n; ++k) os << std::right << std::setw(7) << ("n=" + std::to_string(k));
  os << '\n';
  for (const auto& [label, cs] : r.per_class) row(label, cs.accuracy);
  row("TOTAL", r.totals);
}

BenchResult run_bench(const fs::path& root, const MetricConfig& config,
                      const BenchOptions& options) {
  config.validate();
  BenchResult out;
  out.dataset = ingest_dataset(root);
  if (out.dataset.entries.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "a benchmark needs at least two shapes");
  }
  std::optional<DescriptorCache> cache;
  if (options.cache_dir) {
    cache.emplace(*options.cache_dir);
  } else {
    cache.emplace();
  }
  out.matrix = compute_matrix(out.dataset, config, options.load, options.exec, &*cache);
  const int max_n =
      std::min(options.max_n, static_cast<int>(out.dataset.entries.size()) - 1);
  out.report = nth_neighbor_scores(out.matrix, out.dataset, max_n);

  const std::string comment = "dirshape bench\n" + config.summary() +
                              " threshold=" + std::to_string(options.load.threshold) +
                              " invert=" + (options.load.invert ? "1" : "0") +
                              " max_n=" + std::to_string(max_n);
  std::ostringstream m, c, t;
  write_matrix_csv(m, out.matrix, comment);
  write_report_csv(c, out.report, comment);
  write_report_table(t, out.report, comment);
  out.matrix_csv = m.str();
  out.report_csv = c.str();
  out.report_txt = t.str();
  return out;
}

}  // namespace dirshape
