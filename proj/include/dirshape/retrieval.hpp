#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dirshape/config.hpp"
#include "dirshape/descriptor.hpp"
#include "dirshape/parallel.hpp"

namespace dirshape {

struct DatasetEntry {
  std::string id;
  std::string label;
  std::filesystem::path path;
};

struct Dataset {
  std::vector<DatasetEntry> entries;
  std::vector<std::string> warnings;

  /// Class label -> number of entries.
  std::map<std::string, int> class_sizes() const;
};

/// Each immediate subdirectory of `root` is a class holding its raster files
/// (ids "class/stem"). Without subdirectories, files directly under `root`
/// are classed by the part of the stem before its last '-' (ids "stem").
/// Entries are sorted by id. Singleton classes produce a warning.
/// Throws Error(Io) if root is missing or holds no supported raster.
Dataset ingest_dataset(const std::filesystem::path& root);

struct DistanceMatrix {
  std::vector<std::string> ids;
  std::vector<double> values;  // row-major n x n

  std::size_t size() const { return ids.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * ids.size() + j]; }
};

/// Descriptor memo keyed by (file content hash, descriptor config hash, load
/// options). Optionally persisted as one full-precision record per key under
/// `directory`. Safe to share between workers.
class DescriptorCache {
 public:
  DescriptorCache() = default;
  explicit DescriptorCache(std::filesystem::path directory);

  std::optional<DescriptorGrid> find(const std::string& key);
  void store(const std::string& key, const DescriptorGrid& grid);

  std::size_t hits() const { return hits_; }

 private:
  std::mutex mutex_;
  std::map<std::string, DescriptorGrid> memory_;
  std::optional<std::filesystem::path> directory_;
  std::size_t hits_ = 0;
};

struct LoadOptions {
  int threshold = 128;
  bool invert = false;
};

/// Loads, hole-fills and checks one shape, then computes its descriptor.
/// Throws Error(Degenerate) for disconnected shapes.
DescriptorGrid describe_file(const std::filesystem::path& path, const MetricConfig& config,
                             const LoadOptions& load, DescriptorCache* cache = nullptr);

/// Descriptors once per entry, then descriptor_distance for every pair.
/// Any failing entry aborts the whole computation with an error naming all
/// failing ids. The result does not depend on exec.workers.
DistanceMatrix compute_matrix(const Dataset& dataset, const MetricConfig& config,
                              const LoadOptions& load = {}, Exec exec = {},
                              DescriptorCache* cache = nullptr);

/// Same, from precomputed descriptors listed in id order.
DistanceMatrix matrix_from_descriptors(const std::vector<std::string>& ids,
                                       const std::vector<DescriptorGrid>& descriptors,
                                       const MetricConfig& config, Exec exec = {});

struct ClassScores {
  int size = 0;
  std::vector<int> correct;        // per n = 1..N
  std::vector<double> accuracy;    // percent
};

struct RetrievalReport {
  int max_n = 0;
  std::map<std::string, ClassScores> per_class;
  std::vector<int> total_correct;
  std::vector<double> totals;      // percent over every query
  int queries = 0;
};

/// For each query, the other entries sorted by (distance, id); the n-th one
/// is correct when it shares the query's class. Requires max_n < size.
RetrievalReport nth_neighbor_scores(const DistanceMatrix& matrix, const Dataset& dataset,
                                    int max_n);

/// Header row/column of ids, values at 9 significant digits. Lines of
/// `comment` are written first, each prefixed with "# ".
void write_matrix_csv(std::ostream& os, const DistanceMatrix& m, const std::string& comment = {});
/// Rows are classes, columns n = 1..N, last row TOTAL; percentages with one decimal.
void write_report_csv(std::ostream& os, const RetrievalReport& r, const std::string& comment = {});
void write_report_table(std::ostream& os, const RetrievalReport& r,
                        const std::string& comment = {});

struct BenchOptions {
  int max_n = 10;
  LoadOptions load;
  Exec exec;
  std::optional<std::filesystem::path> cache_dir;
};

struct BenchResult {
  Dataset dataset;
  DistanceMatrix matrix;
  RetrievalReport report;
  std::string matrix_csv;
  std::string report_csv;
  std::string report_txt;
};

/// ingest -> matrix -> scores, rendering every artifact in memory.
/// max_n is clamped to size - 1.
BenchResult run_bench(const std::filesystem::path& root, const MetricConfig& config,
                      const BenchOptions& options);

}  // namespace dirshape
