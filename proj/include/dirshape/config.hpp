#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace dirshape {

/// Everything needed to turn the continuous descriptor and its weighted
/// integral into finite sums.
struct MetricConfig {
  double epsilon = 8.0;          // neighborhood radius, pixels
  double area = 4096.0;          // normalization area V, pixels
  std::vector<double> thetas;    // uniform over one period of length pi
  std::vector<double> betas;     // ascending, >= 1
  double kappa = 0.2;            // weight exp(-kappa * beta)

  /// thetas {-pi/4, 0, pi/4, pi/2}, betas {1, 3, 5}, kappa 1/5, V 4096, eps 8.
  static MetricConfig defaults();

  /// Throws Error(InvalidArgument) describing the first violated invariant.
  void validate() const;

  /// Background margin every warped canvas gets: ceil(eps) + 2.
  int margin() const;

  /// Index of theta == 0 on the grid, or -1.
  int zero_theta_index() const;

  /// Stable hash over the fields that affect descriptors (not kappa).
  std::uint64_t descriptor_hash() const;

  /// One-line "key=value ..." rendering echoed into output headers.
  std::string summary() const;

  bool same_grid(const MetricConfig& other, double tol = 1e-8) const;
};

/// theta_k = -pi/2 + (k + 1) * pi / n for k < n. Ends at pi/2 and contains 0
/// whenever n is even.
std::vector<double> uniform_thetas(int n);

/// Parses "a,b,c" where each item is a number or a multiple of pi such as
/// "-pi/4", "pi", "0.5pi", "3*pi/4".
std::vector<double> parse_number_list(const std::string& text);

/// Flat "key = value" file, '#' starts a comment. Unknown keys are kept so
/// the caller can decide what to reject.
std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path);

/// Applies epsilon/area/kappa/thetas/betas keys onto `config`.
void apply_config_keys(const std::map<std::string, std::string>& kv, MetricConfig& config);

std::uint64_t fnv1a(const void* data, std::size_t size,
                    std::uint64_t seed = 14695981039346656037ULL);

/// %.9g rendering shared by every text artifact.
std::string format_sig9(double v);

}  // namespace dirshape
