// dirshape: command-line frontend.
//
//   dirshape validate FILE...
//   dirshape describe FILE [--dense 64x16] [--out FILE]
//   dirshape dist FILE FILE
//   dirshape bench ROOT [--max-n N] [--out DIR]
//   dirshape proptest [ROOT]
//
// Exit codes: 0 ok, 1 validation or property failure, 2 usage or IO error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dirshape/config.hpp"
#include "dirshape/descriptor.hpp"
#include "dirshape/error.hpp"
#include "dirshape/image_io.hpp"
#include "dirshape/mask.hpp"
#include "dirshape/metric.hpp"
#include "dirshape/proptest.hpp"
#include "dirshape/retrieval.hpp"
#include "dirshape/synthetic.hpp"

namespace fs = std::filesystem;
using namespace dirshape;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::optional<std::string> config_file;
  std::optional<double> epsilon, area, kappa;
  std::optional<std::string> thetas, betas;
  int threshold = 128;
  bool invert = false;
  int workers = 1;
  std::uint64_t seed = proptest::Options{}.seed;

  MetricConfig metric() const {
    MetricConfig c = MetricConfig::defaults();
    if (config_file) {
      auto kv = read_key_value_file(*config_file);
      for (const auto& [key, value] : kv) {
        static const char* known[] = {"epsilon", "area", "kappa", "thetas", "betas"};
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
          throw Error(ErrorKind::InvalidArgument,
                      "unknown key '" + key + "' in " + *config_file);
        }
      }
      apply_config_keys(kv, c);
    }
    if (epsilon) c.epsilon = *epsilon;
    if (area) c.area = *area;
    if (kappa) c.kappa = *kappa;
    if (thetas) c.thetas = parse_number_list(*thetas);
    if (betas) c.betas = parse_number_list(*betas);
    c.validate();
    return c;
  }

  LoadOptions load() const { return {threshold, invert}; }
  Exec exec() const { return Exec{workers}; }
};

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::EmptyForeground:
    case ErrorKind::Degenerate:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

/// Writes every (path, content) pair to a sibling temporary first and renames
/// only once all of them are on disk.
void write_files_atomically(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> temps;
  try {
    for (const auto& [path, content] : files) {
      fs::path tmp = path;
      tmp += ".tmp";
      std::ofstream os(tmp, std::ios::binary);
      os << content;
      os.close();
      if (!os) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
      temps.push_back(tmp);
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& t : temps) fs::remove(t, ec);
    throw;
  }
  for (std::size_t i = 0; i < files.size(); ++i) fs::rename(temps[i], files[i].first);
}

void write_output(const std::optional<std::string>& out, const std::string& text) {
  if (out) {
    write_files_atomically({{*out, text}});
  } else {
    std::cout << text;
  }
}

std::pair<int, int> parse_dense(const std::string& text) {
  std::string s = text;
  const std::string times = "\xC3\x97";  // U+00D7
  if (auto p = s.find(times); p != std::string::npos) s.replace(p, times.size(), "x");
  int n = 0, m = 0;
  char sep = 0;
  std::istringstream is(s);
  if (!(is >> n >> sep >> m) || (sep != 'x' && sep != 'X') || !is.eof() || n < 1 || m < 1) {
    throw Error(ErrorKind::InvalidArgument, "--dense expects NxM, got '" + text + "'");
  }
  return {n, m};
}

// validate ---------------------------------------------------------------

int cmd_validate(const RunConfig& rc, const std::vector<std::string>& paths) {
  int code = 0;
  for (const auto& path : paths) {
    BinaryMask mask;
    try {
      mask = load_mask(path, rc.threshold, rc.invert);
    } catch (const Error& e) {
      std::cout << path << ": FAIL " << e.what() << '\n';
      code = std::max(code, exit_code_for(e));
      continue;
    }
    const ShapeValidation v = validate_shape(mask);
    std::ostringstream line;
    line << path << ": " << (v.connected ? "OK" : "FAIL disconnected")
         << " components=" << v.component_count << " area=" << area(mask);
    if (!v.hole_free) {
      line << " hole_count=" << v.hole_count << " (repairable) fill_holes adds " << v.hole_area
           << " px";
    }
    std::cout << line.str() << '\n';
    if (!v.connected) code = std::max(code, kExitFailure);
  }
  return code;
}

// describe ---------------------------------------------------------------

int cmd_describe(const RunConfig& rc, const std::string& path, const std::optional<std::string>& out,
                 const std::optional<std::string>& dense, double dense_beta_max,
                 const std::optional<std::string>& dense_out) {
  const MetricConfig config = rc.metric();
  const DescriptorGrid grid = describe_file(path, config, rc.load());

  std::ostringstream os;
  os << "# " << config.summary() << " threshold=" << rc.threshold
     << " invert=" << (rc.invert ? 1 : 0) << '\n';
  write_descriptor(os, grid, fs::path(path).filename().string());

  std::optional<std::string> surface;
  if (dense) {
    const auto [n, m] = parse_dense(*dense);
    std::ostringstream ds;
    ds << "# " << config.summary() << " dense=" << n << 'x' << m
       << " beta_max=" << format_sig9(dense_beta_max) << '\n';
    write_dense_surface(ds, fill_holes(load_mask(path, rc.threshold, rc.invert)), config, n, m,
                        dense_beta_max, rc.exec());
    surface = ds.str();
  }

  if (out) {
    std::vector<std::pair<fs::path, std::string>> files{{*out, os.str()}};
    if (surface) files.emplace_back(dense_out ? fs::path(*dense_out) : fs::path(*out + ".dense.csv"),
                                    *surface);
    write_files_atomically(files);
  } else {
    std::cout << os.str();
    if (surface) write_output(dense_out, *surface);
  }
  return 0;
}

// dist -------------------------------------------------------------------

int cmd_dist(const RunConfig& rc, const std::string& a, const std::string& b) {
  const MetricConfig config = rc.metric();
  DescriptorCache cache;
  const DescriptorGrid da = describe_file(a, config, rc.load(), &cache);
  const DescriptorGrid db = describe_file(b, config, rc.load(), &cache);
  const DescriptorDistance d = descriptor_distance(da, db, config);
  std::cout << "# " << config.summary() << '\n'
            << "distance " << format_sig9(d.value) << '\n'
            << "shift " << d.alignment.shift << '\n'
            << "reflected " << (d.alignment.reflected ? "yes" : "no") << '\n';
  return 0;
}

// bench ------------------------------------------------------------------

int cmd_bench(const RunConfig& rc, const std::string& root, int max_n, const std::string& out_dir,
              const std::optional<std::string>& cache_dir) {
  const MetricConfig config = rc.metric();
  BenchOptions opt;
  opt.max_n = max_n;
  opt.load = rc.load();
  opt.exec = rc.exec();
  if (cache_dir) opt.cache_dir = *cache_dir;
  const BenchResult r = run_bench(root, config, opt);
  for (const auto& w : r.dataset.warnings) std::cerr << "warning: " << w << '\n';

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  write_files_atomically({{dir / "matrix.csv", r.matrix_csv},
                          {dir / "report.csv", r.report_csv},
                          {dir / "report.txt", r.report_txt}});
  std::cout << r.report_txt;
  return 0;
}

// proptest ---------------------------------------------------------------

std::vector<synthetic::LabeledShape> load_corpus(const RunConfig& rc, const std::string& root) {
  const Dataset ds = ingest_dataset(root);
  for (const auto& w : ds.warnings) std::cerr << "warning: " << w << '\n';
  std::vector<synthetic::LabeledShape> out;
  for (const auto& e : ds.entries) {
    out.push_back({e.id, e.label, load_mask(e.path, rc.threshold, rc.invert)});
  }
  return out;
}

int cmd_proptest(const RunConfig& rc, const std::optional<std::string>& root, int max_triples) {
  const MetricConfig config = rc.metric();
  const auto corpus = root ? load_corpus(rc, *root) : synthetic::toy_corpus();
  proptest::Options opt;
  opt.seed = rc.seed;
  opt.max_triples = max_triples;
  opt.exec = rc.exec();

  std::cout << "# " << config.summary() << " seed=" << rc.seed << " corpus="
            << (root ? *root : std::string("builtin-toy")) << " shapes=" << corpus.size() << '\n';
  bool ok = true;
  for (const auto& s : proptest::run_all(corpus, config, opt)) {
    const char* status = s.skipped ? "SKIP" : (s.passed ? "PASS" : "FAIL");
    std::cout << status << ' ' << s.name << ": " << s.summary << '\n';
    for (const auto& v : s.violations) std::cout << "  " << v << '\n';
    ok = ok && s.passed;
  }
  return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional dilation-ratio shape descriptors"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string config_file, thetas, betas;
  double epsilon = 0, area = 0, kappa = 0;
  auto* o_config = app.add_option("--config", config_file, "Flat key = value config file")
                       ->check(CLI::ExistingFile);
  auto* o_eps = app.add_option("--epsilon", epsilon, "Neighborhood radius in pixels (8)");
  auto* o_area = app.add_option("--area", area, "Normalization area V (4096)");
  auto* o_kappa = app.add_option("--kappa", kappa, "Beta weight decay (0.2)");
  auto* o_thetas = app.add_option("--thetas", thetas, "Theta grid, e.g. -pi/4,0,pi/4,pi/2");
  auto* o_betas = app.add_option("--betas", betas, "Beta grid, e.g. 1,3,5");
  app.add_option("--threshold", rc.threshold, "Gray level threshold for foreground (128)")
      ->check(CLI::Range(0, 256));
  app.add_flag("--invert", rc.invert, "Dark shapes on a light background");
  app.add_option("--workers", rc.workers, "Worker threads (1)")->check(CLI::PositiveNumber);
  app.add_option("--seed", rc.seed, "Seed for randomized checks");
  app.fallthrough();

  auto* validate = app.add_subcommand("validate", "Check connectivity and holes");
  std::vector<std::string> validate_paths;
  validate->add_option("files", validate_paths)->required();

  auto* describe = app.add_subcommand("describe", "Print the descriptor record of one shape");
  std::string describe_path;
  std::string describe_out, dense, dense_out;
  double dense_beta_max = 5.0;
  describe->add_option("file", describe_path)->required();
  auto* o_describe_out = describe->add_option("--out", describe_out, "Write the record here");
  auto* o_dense = describe->add_option("--dense", dense, "Also emit an NxM theta-beta CSV surface");
  describe->add_option("--dense-beta-max", dense_beta_max, "Largest beta of the surface (5)");
  auto* o_dense_out = describe->add_option("--dense-out", dense_out, "Surface CSV path");

  auto* dist = app.add_subcommand("dist", "Distance between two shapes");
  std::string dist_a, dist_b;
  dist->add_option("a", dist_a)->required();
  dist->add_option("b", dist_b)->required();

  auto* bench = app.add_subcommand("bench", "Nth-neighbor retrieval over a dataset directory");
  std::string bench_root, bench_out = ".", cache_dir;
  int max_n = 10;
  bench->add_option("root", bench_root)->required();
  bench->add_option("--out", bench_out, "Directory for matrix.csv, report.csv, report.txt");
  bench->add_option("--max-n", max_n, "Largest neighbor rank (10)")->check(CLI::PositiveNumber);
  auto* o_cache = bench->add_option("--cache-dir", cache_dir, "Persist descriptors here");

  auto* prop = app.add_subcommand("proptest", "Run the property suites");
  std::string prop_root;
  int max_triples = proptest::Options{}.max_triples;
  auto* o_prop_root = prop->add_option("root", prop_root, "Corpus directory (built-in toy corpus)");
  prop->add_option("--triples", max_triples, "Triangle inequality triples to check (100)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  auto opt = [](CLI::Option* o, const std::string& v) {
    return o->count() ? std::optional<std::string>(v) : std::nullopt;
  };
  if (o_config->count()) rc.config_file = config_file;
  if (o_eps->count()) rc.epsilon = epsilon;
  if (o_area->count()) rc.area = area;
  if (o_kappa->count()) rc.kappa = kappa;
  rc.thetas = opt(o_thetas, thetas);
  rc.betas = opt(o_betas, betas);

  try {
    if (*validate) return cmd_validate(rc, validate_paths);
    if (*describe) {
      return cmd_describe(rc, describe_path, opt(o_describe_out, describe_out), opt(o_dense, dense),
                          dense_beta_max, opt(o_dense_out, dense_out));
    }
    if (*dist) return cmd_dist(rc, dist_a, dist_b);
    if (*bench) return cmd_bench(rc, bench_root, max_n, bench_out, opt(o_cache, cache_dir));
    if (*prop) return cmd_proptest(rc, opt(o_prop_root, prop_root), max_triples);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
