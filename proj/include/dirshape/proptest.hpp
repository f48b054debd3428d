#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dirshape/config.hpp"
#include "dirshape/descriptor.hpp"
#include "dirshape/parallel.hpp"
#include "dirshape/synthetic.hpp"

namespace dirshape::proptest {

struct SuiteResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::string summary;                  // one line, printed whatever the outcome
  std::vector<std::string> violations;  // offending shapes and values
};

struct Options {
  std::uint64_t seed = 20240917;
  int random_masks = 50;     // distance-transform oracle sample count
  int max_triples = 100;     // triangle inequality sample cap
  double equivariance_tol = 0.01;
  double continuity_jitter = 0.05;
  double continuity_fraction = 0.25;
  Exec exec;
};

/// Shapes whose hole-filled mask is not a single 8-connected component.
SuiteResult validation_suite(const std::vector<synthetic::LabeledShape>& corpus);

/// Exact equality of the EDT with the brute-force scan on random masks up to 64x64.
SuiteResult distance_transform_suite(const Options& opt);

/// Identity, symmetry (1e-12) and triangle inequality (1e-9 slack) of the
/// quotient distance over the corpus descriptors.
SuiteResult metric_axioms_suite(const std::vector<std::string>& ids,
                                const std::vector<DescriptorGrid>& descriptors,
                                const MetricConfig& config, const Options& opt);

/// Quarter rotation shifts the theta axis by N/2 slots, the row flip reverses
/// it about theta = 0; both within opt.equivariance_tol per cell.
SuiteResult equivariance_suite(const std::vector<synthetic::LabeledShape>& corpus,
                               const MetricConfig& config, const Options& opt);

/// Distance to the Euclidean dilations by 1..5 pixels grows with the radius
/// and the 1-pixel distance stays below opt.continuity_fraction of the median
/// inter-class distance. A step may drop by at most opt.continuity_jitter
/// times that median.
SuiteResult continuity_suite(const std::vector<synthetic::LabeledShape>& corpus,
                             const std::vector<DescriptorGrid>& descriptors,
                             const MetricConfig& config, const Options& opt);

/// Median of descriptor distances between shapes with different labels.
double median_interclass_distance(const std::vector<synthetic::LabeledShape>& corpus,
                                  const std::vector<DescriptorGrid>& descriptors,
                                  const MetricConfig& config);

/// Descriptors of every corpus shape (hole-filled, normalized).
std::vector<DescriptorGrid> describe_corpus(const std::vector<synthetic::LabeledShape>& corpus,
                                            const MetricConfig& config, Exec exec = {});

/// All suites in order. A validation failure stops the descriptor-based suites.
std::vector<SuiteResult> run_all(const std::vector<synthetic::LabeledShape>& corpus,
                                 const MetricConfig& config, const Options& opt);

}  // namespace dirshape::proptest
