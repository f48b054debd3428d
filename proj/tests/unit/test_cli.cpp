#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "dirshape/descriptor.hpp"
#include "dirshape/image_io.hpp"
#include "dirshape/metric.hpp"
#include "dirshape/retrieval.hpp"
#include "dirshape/synthetic.hpp"
#include "temp_dir.hpp"

using namespace dirshape;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(DIRSHAPE_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST(Cli, ValidateReports) {
  TempDir dir;
  write_mask_pgm(synthetic::disk(10), dir / "ok.pgm");
  write_mask_pgm(synthetic::ring(30, 20, 8), dir / "ring.pgm");
  BinaryMask two(20, 8);
  two.set(2, 2, true);
  two.set(15, 2, true);
  write_mask_pgm(two, dir / "two.pgm");

  CliRun r = run("validate " + q(dir / "ok.pgm") + " " + q(dir / "ring.pgm"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ok.pgm: OK"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("hole_count=1 (repairable)"), std::string::npos) << r.out;

  r = run("validate " + q(dir / "two.pgm"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("disconnected"), std::string::npos);

  EXPECT_EQ(run("validate " + q(dir / "missing.pgm")).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("describe --epsilon abc x.pgm").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, DescribeMatchesLibrary) {
  TempDir dir;
  const BinaryMask m = synthetic::hand();
  write_mask_pgm(m, dir / "hand.pgm");
  const CliRun r = run("describe " + q(dir / "hand.pgm") + " --betas 1,2 --epsilon 8");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("# epsilon=8 area=4096", 0), 0u) << r.out;
  std::istringstream is(r.out);
  const DescriptorGrid g = read_descriptor(is);
  MetricConfig c = MetricConfig::defaults();
  c.betas = {1, 2};
  EXPECT_EQ(descriptor_to_string(g), descriptor_to_string(compute_descriptor(m, c)));
}

TEST(Cli, DescribeDenseAndConfigFile) {
  TempDir dir;
  write_mask_pgm(synthetic::disk(25), dir / "d.pgm");
  std::ofstream(dir / "c.conf") << "epsilon = 6\nbetas = 1, 2\n";
  const CliRun r = run("describe " + q(dir / "d.pgm") + " --config " + q(dir / "c.conf") +
                    " --kappa 0.5 --dense 6x3 --out " + q(dir / "d.desc"));
  ASSERT_EQ(r.code, 0);
  const std::string rec = slurp(dir / "d.desc");
  EXPECT_NE(rec.find("epsilon=6 area=4096 kappa=0.5"), std::string::npos) << rec;
  EXPECT_NE(rec.find("betas 1 2\n"), std::string::npos);
  const std::string dense = slurp(dir / "d.desc.dense.csv");
  EXPECT_NE(dense.find("theta,beta,P\n"), std::string::npos);
  EXPECT_EQ(std::count(dense.begin(), dense.end(), '\n'), 1 + 1 + 18);

  std::ofstream(dir / "bad.conf") << "epsilon = 6\nwidth = 3\n";
  EXPECT_EQ(run("describe " + q(dir / "d.pgm") + " --config " + q(dir / "bad.conf")).code, 2);
  EXPECT_EQ(run("describe " + q(dir / "d.pgm") + " --dense 6by3").code, 2);
}

TEST(Cli, DistMatchesLibrary) {
  TempDir dir;
  const BinaryMask a = synthetic::disk(30), b = synthetic::rectangle(90, 30);
  write_mask_pgm(a, dir / "a.pgm");
  write_mask_pgm(b, dir / "b.pgm");
  write_mask_pgm(rotate_mask_quarter(b, 1), dir / "b90.pgm");
  const MetricConfig c = MetricConfig::defaults();
  const double expected =
      descriptor_distance(compute_descriptor(a, c), compute_descriptor(b, c), c).value;
  CliRun r = run("dist " + q(dir / "a.pgm") + " " + q(dir / "b.pgm"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("distance " + format_sig9(expected) + "\n"), std::string::npos) << r.out;

  r = run("dist " + q(dir / "b.pgm") + " " + q(dir / "b.pgm"));
  EXPECT_NE(r.out.find("distance 0\nshift 0\nreflected no\n"), std::string::npos) << r.out;

  // The rectangle is mirror symmetric, so (shift 0, reflected) ties with
  // (shift 2, plain) and wins the tie-break.
  r = run("dist " + q(dir / "b.pgm") + " " + q(dir / "b90.pgm"));
  EXPECT_NE(r.out.find("distance 0\nshift 0\nreflected yes\n"), std::string::npos) << r.out;
}

TEST(Cli, BenchWritesArtifactsDeterministically) {
  TempDir dir;
  synthetic::write_corpus(synthetic::disk_square_corpus(), dir / "corpus");
  const std::string base = "bench " + q(dir / "corpus") + " --max-n 2 --out ";
  ASSERT_EQ(run(base + q(dir / "o1")).code, 0);
  ASSERT_EQ(run(base + q(dir / "o2")).code, 0);
  ASSERT_EQ(run(base + q(dir / "o8") + " --workers 8").code, 0);
  for (const char* f : {"matrix.csv", "report.csv", "report.txt"}) {
    const std::string a = slurp(dir / "o1" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(dir / "o2" / f)) << f;
    EXPECT_EQ(a, slurp(dir / "o8" / f)) << f;
    EXPECT_NE(a.find("# epsilon=8 area=4096"), std::string::npos) << f;
  }
  EXPECT_NE(slurp(dir / "o1" / "report.csv").find("TOTAL,100.0"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(dir / "o1" / "matrix.csv.tmp"));
}

TEST(Cli, BenchFailureLeavesNoOutputs) {
  TempDir dir;
  synthetic::write_corpus(synthetic::disk_square_corpus(), dir / "corpus");
  BinaryMask two(20, 8);
  two.set(2, 2, true);
  two.set(15, 2, true);
  write_mask_pgm(two, dir / "corpus" / "disk" / "broken.pgm");
  const CliRun r = run("bench " + q(dir / "corpus") + " --out " + q(dir / "out"));
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(std::filesystem::exists(dir / "out" / "matrix.csv"));
  EXPECT_FALSE(std::filesystem::exists(dir / "out" / "report.csv"));
}

TEST(Cli, ProptestOnDirectory) {
  TempDir dir;
  synthetic::write_corpus(synthetic::toy_corpus(), dir / "corpus");
  CliRun r = run("proptest " + q(dir / "corpus") + " --seed 5");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("seed=5"), std::string::npos);
  EXPECT_NE(r.out.find("max slack"), std::string::npos);

  BinaryMask two(20, 8);
  two.set(2, 2, true);
  two.set(15, 2, true);
  write_mask_pgm(two, dir / "corpus" / "disk" / "broken.pgm");
  r = run("proptest " + q(dir / "corpus"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL validation"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("disk/broken"), std::string::npos) << r.out;
}
