#include "dirshape/proptest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "dirshape/distance_transform.hpp"
#include "dirshape/error.hpp"
#include "dirshape/kernels.hpp"
#include "dirshape/metric.hpp"
#include "oracles.hpp"

namespace dirshape::proptest {

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

void violation(SuiteResult& r, const std::string& what) {
  r.passed = false;
  // Long sweeps can fail everywhere; the first few offenders are enough.
  if (r.violations.size() < 25) r.violations.push_back(what);
}

}  // namespace

SuiteResult validation_suite(const std::vector<synthetic::LabeledShape>& corpus) {
  SuiteResult r{"validation", true, false, {}, {}};
  int repaired = 0;
  for (const auto& s : corpus) {
    const ShapeValidation raw = validate_shape(s.mask);
    if (!raw.hole_free) ++repaired;
    const ShapeValidation v = validate_shape(fill_holes(s.mask));
    if (!v.connected) {
      violation(r, s.id + ": disconnected (" + std::to_string(v.component_count) +
                       " components)");
    }
  }
  r.summary = std::to_string(corpus.size()) + " shapes, " + std::to_string(repaired) +
              " with repairable holes";
  return r;
}

SuiteResult distance_transform_suite(const Options& opt) {
  SuiteResult r{"distance-transform", true, false, {}, {}};
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> dim(1, 64);
  std::uniform_real_distribution<double> density(0.002, 0.3);
  for (int k = 0; k < opt.random_masks; ++k) {
    const BinaryMask m = oracle::random_mask(rng, dim(rng), dim(rng), density(rng));
    const auto expected = oracle::brute_force_edt(m);
    const DistanceField field = distance_transform(m, opt.exec);
    const auto got = field.squared();
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (got[i] != expected[i]) {
        violation(r, "random mask " + std::to_string(k) + " (" + std::to_string(m.width()) + "x" +
                         std::to_string(m.height()) + ") pixel " + std::to_string(i) + ": " +
                         std::to_string(got[i]) + " != " + std::to_string(expected[i]));
        break;
      }
    }
  }
  r.summary = std::to_string(opt.random_masks) + " random masks up to 64x64 checked exactly";
  return r;
}

std::vector<DescriptorGrid> describe_corpus(const std::vector<synthetic::LabeledShape>& corpus,
                                            const MetricConfig& config, Exec exec) {
  std::vector<DescriptorGrid> out(corpus.size());
  std::vector<std::string> errors(corpus.size());
  auto task = [&](std::size_t i) {
    try {
      out[i] = compute_descriptor(corpus[i].mask, config);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  if (exec.parallel()) {
    kernels::indices_omp(corpus.size(), task, exec.workers);
  } else {
    kernels::indices_serial(corpus.size(), task);
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!errors[i].empty()) {
      throw Error(ErrorKind::Degenerate, corpus[i].id + ": " + errors[i]);
    }
  }
  return out;
}

SuiteResult metric_axioms_suite(const std::vector<std::string>& ids,
                                const std::vector<DescriptorGrid>& d, const MetricConfig& config,
                                const Options& opt) {
  SuiteResult r{"metric-axioms", true, false, {}, {}};
  const std::size_t n = d.size();
  std::vector<double> m(n * n, 0.0);
  double max_asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double self = descriptor_distance(d[i], d[i], config).value;
    if (self != 0.0) violation(r, ids[i] + ": d(x, x) = " + fmt("%.3g", self));
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m[i * n + j] = descriptor_distance(d[i], d[j], config).value;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = std::abs(m[i * n + j] - m[j * n + i]);
      max_asym = std::max(max_asym, a);
      if (a > 1e-12) violation(r, ids[i] + " / " + ids[j] + ": asymmetry " + fmt("%.3g", a));
    }
  }

  std::vector<std::array<std::size_t, 3>> triples;
  const std::size_t total = n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
  if (total <= static_cast<std::size_t>(std::max(opt.max_triples, 0))) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) triples.push_back({a, b, c});
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::set<std::array<std::size_t, 3>> seen;
    while (static_cast<int>(triples.size()) < opt.max_triples) {
      std::array<std::size_t, 3> t{pick(rng), pick(rng), pick(rng)};
      std::sort(t.begin(), t.end());
      if (t[0] == t[1] || t[1] == t[2] || !seen.insert(t).second) continue;
      triples.push_back(t);
    }
  }
  double max_slack = -1e300;
  for (const auto& t : triples) {
    // Each of the three sides against the other two.
    for (int k = 0; k < 3; ++k) {
      const std::size_t x = t[k], y = t[(k + 1) % 3], z = t[(k + 2) % 3];
      const double slack = m[x * n + z] - m[x * n + y] - m[y * n + z];
      max_slack = std::max(max_slack, slack);
      if (slack > 1e-9) {
        violation(r, ids[x] + ", " + ids[y] + ", " + ids[z] + ": triangle slack " +
                         fmt("%.3g", slack));
      }
    }
  }
  r.summary = std::to_string(triples.size()) + " triples, max slack " +
              fmt("%.3g", triples.empty() ? 0.0 : max_slack) + ", max asymmetry " +
              fmt("%.3g", max_asym);
  return r;
}

SuiteResult equivariance_suite(const std::vector<synthetic::LabeledShape>& corpus,
                               const MetricConfig& config, const Options& opt) {
  SuiteResult r{"equivariance", true, false, {}, {}};
  const std::size_t n = config.thetas.size();
  const int zero = config.zero_theta_index();
  if (n % 2 != 0 || zero < 0) {
    r.skipped = true;
    r.summary = "skipped: needs an even theta grid containing 0";
    return r;
  }
  double worst = 0.0;
  auto check = [&](const std::string& what, const DescriptorGrid& got, const DescriptorGrid& base,
                   auto&& source_row) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < got.n_beta(); ++j) {
        const double expect = base.value(source_row(i), j);
        const double rel = std::abs(got.value(i, j) - expect) / std::max(std::abs(expect), 1e-12);
        worst = std::max(worst, rel);
        if (rel > opt.equivariance_tol) {
          violation(r, what + " cell (" + std::to_string(i) + "," + std::to_string(j) +
                           "): " + fmt("%.6g", got.value(i, j)) + " vs " + fmt("%.6g", expect));
        }
      }
    }
  };
  std::vector<std::string> errors(corpus.size());
  std::vector<std::array<DescriptorGrid, 3>> grids(corpus.size());
  auto task = [&](std::size_t k) {
    try {
      const auto& m = corpus[k].mask;
      grids[k] = {compute_descriptor(m, config), compute_descriptor(rotate_mask_quarter(m, 1), config),
                  compute_descriptor(reflect_mask_x(m), config)};
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  };
  if (opt.exec.parallel()) {
    kernels::indices_omp(corpus.size(), task, opt.exec.workers);
  } else {
    kernels::indices_serial(corpus.size(), task);
  }
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    if (!errors[k].empty()) {
      violation(r, corpus[k].id + ": " + errors[k]);
      continue;
    }
    const auto& [base, rot, ref] = grids[k];
    check(corpus[k].id + " rotated", rot, base, [&](std::size_t i) { return (i + n / 2) % n; });
    check(corpus[k].id + " reflected", ref, base, [&](std::size_t i) {
      return static_cast<std::size_t>((2 * zero - static_cast<long long>(i) + 2 * static_cast<long long>(n)) %
                                      static_cast<long long>(n));
    });
  }
  r.summary = std::to_string(corpus.size()) + " shapes, worst relative cell error " +
              fmt("%.3g", worst);
  return r;
}

double median_interclass_distance(const std::vector<synthetic::LabeledShape>& corpus,
                                  const std::vector<DescriptorGrid>& d,
                                  const MetricConfig& config) {
  std::vector<double> v;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      if (corpus[i].label != corpus[j].label) {
        v.push_back(descriptor_distance(d[i], d[j], config).value);
      }
    }
  }
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

SuiteResult continuity_suite(const std::vector<synthetic::LabeledShape>& corpus,
                             const std::vector<DescriptorGrid>& d, const MetricConfig& config,
                             const Options& opt) {
  SuiteResult r{"continuity", true, false, {}, {}};
  const double median = median_interclass_distance(corpus, d, config);
  if (median <= 0.0) {
    r.skipped = true;
    r.summary = "skipped: needs at least two classes";
    return r;
  }
  const double limit = opt.continuity_fraction * median;
  const double slack = opt.continuity_jitter * median;
  constexpr int kMaxRadius = 5;
  std::vector<std::array<double, kMaxRadius>> dist(corpus.size());
  std::vector<std::string> errors(corpus.size());
  auto task = [&](std::size_t k) {
    try {
      for (int rad = 1; rad <= kMaxRadius; ++rad) {
        const DescriptorGrid g = compute_descriptor(dilate(corpus[k].mask, rad), config);
        dist[k][rad - 1] = descriptor_distance(d[k], g, config).value;
      }
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  };
  if (opt.exec.parallel()) {
    kernels::indices_omp(corpus.size(), task, opt.exec.workers);
  } else {
    kernels::indices_serial(corpus.size(), task);
  }
  double worst_ratio = 0.0;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const std::string& id = corpus[k].id;
    if (!errors[k].empty()) {
      violation(r, id + ": " + errors[k]);
      continue;
    }
    const auto& dk = dist[k];
    worst_ratio = std::max(worst_ratio, dk[0] / median);
    if (!(dk[0] < limit)) {
      violation(r, id + ": 1-pixel dilation distance " + fmt("%.4g", dk[0]) + " >= " +
                       fmt("%.4g", limit));
    }
    for (int rad = 1; rad < kMaxRadius; ++rad) {
      if (dk[rad] < dk[rad - 1] - slack) {
        violation(r, id + ": distance drops from " + fmt("%.4g", dk[rad - 1]) + " at " +
                         std::to_string(rad) + " px to " + fmt("%.4g", dk[rad]) + " at " +
                         std::to_string(rad + 1) + " px");
      }
    }
  }
  r.summary = "median inter-class distance " + fmt("%.4g", median) +
              ", worst 1-pixel ratio " + fmt("%.3g", worst_ratio);
  return r;
}

std::vector<SuiteResult> run_all(const std::vector<synthetic::LabeledShape>& corpus,
                                 const MetricConfig& config, const Options& opt) {
  std::vector<SuiteResult> out;
  out.push_back(validation_suite(corpus));
  out.push_back(distance_transform_suite(opt));
  if (!out.front().passed) {
    for (const char* name : {"metric-axioms", "equivariance", "continuity"}) {
      out.push_back({name, true, true, "skipped: corpus failed validation", {}});
    }
    return out;
  }
  const auto descriptors = describe_corpus(corpus, config, opt.exec);
  std::vector<std::string> ids;
  for (const auto& s : corpus) ids.push_back(s.id);
  out.push_back(metric_axioms_suite(ids, descriptors, config, opt));
  out.push_back(equivariance_suite(corpus, config, opt));
  out.push_back(continuity_suite(corpus, descriptors, config, opt));
  return out;
}

}  // namespace dirshape::proptest
