// Drives the installed command-line tool as a subprocess.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code = -1;
  std::string out;
};

Result run_shell(std::string cmd, bool merge_stderr = false) {
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Result run(const std::string& args, bool merge_stderr = false) {
  return run_shell(std::string(FCAF3D_CLI) + " " + args, merge_stderr);
}

Result run_with_input(const std::string& input, const std::string& args) {
  return run_shell("printf '%s\\n' '" + input + "' | " + FCAF3D_CLI + " " + args);
}

fs::path workdir() {
  const fs::path dir = fs::temp_directory_path() / "fcaf3d_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t data_lines(const fs::path& path) {
  std::size_t n = 0;
  for (const auto& line : lines(slurp(path))) n += !line.empty() && line.front() != '#' ? 1 : 0;
  return n;
}

TEST(Cli, VersionAndUsage) {
  EXPECT_EQ(run("--version").out, "0.1.0\n");
  EXPECT_EQ(run("").exit_code, 1);
  EXPECT_EQ(run("encode --help").exit_code, 0);
  EXPECT_EQ(run("frobnicate").exit_code, 1);
}

TEST(Cli, RotatedIouOfQuarterTurnedCube) {
  const Result r = run("iou --a 0,0,0,1,1,1,0 --b 0,0,0,1,1,1,0.7853981633974483 --rotated");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "0.707107\n");
  EXPECT_EQ(run("iou --a 0,0,0,1,1,1,0 --b 0,0,0,1,1,1,0.7853981633974483").out, "1.000000\n");
}

TEST(Cli, EncodeMobiusExample) {
  const Result r = run_with_input("0 0 0 2 1 1 0.7853981633974483", "encode --mode mobius --location 0,0,0 -i -");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "1.000000 1.000000 0.500000 0.500000 0.500000 0.500000 0.693147 0.000000\n");
}

TEST(Cli, EncodeDecodeRoundTripThroughPipes) {
  const Result r =
      run_with_input("1 2 3 2 1 0.5 0.3 1.1 2.1 3", "encode --mode sincos --exact | " + std::string(FCAF3D_CLI) +
                                                         " decode --mode sincos --exact --location 1.1,2.1,3");
  ASSERT_EQ(r.exit_code, 0);
  const auto fields = lines(r.out);
  ASSERT_EQ(fields.size(), 1u);
  std::istringstream in(fields[0]);
  std::vector<double> box(7);
  for (double& v : box) in >> v;
  const std::vector<double> expected{1, 2, 3, 2, 1, 0.5, 0.3};
  for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(box[i], expected[i], 1e-12);
}

TEST(Cli, BadInputReportsFileAndLine) {
  const fs::path path = workdir() / "bad_boxes.txt";
  std::ofstream(path) << "# comment\n0 0 0 1 1 1 0\n0 0 zero 1 1 1 0\n";
  const Result r = run("encode -i " + path.string(), true);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("bad_boxes.txt:3:"), std::string::npos) << r.out;
  EXPECT_EQ(run("eval --gt /nonexistent/gt.txt --det /nonexistent/det.txt").exit_code, 1);
  EXPECT_EQ(run("iou --a 0,0,0,1,1 --b 0,0,0,1,1,1").exit_code, 1);
  EXPECT_EQ(run("nms -i " + path.string() + " --iou-threshold 0").exit_code, 1);
}

TEST(Cli, GenIsDeterministic) {
  const fs::path dir = workdir();
  auto gen = [&](const std::string& tag, int seed) {
    const Result r = run("gen --seed " + std::to_string(seed) + " --points-out " + (dir / (tag + "_p.txt")).string() +
                         " --gt-out " + (dir / (tag + "_g.txt")).string());
    EXPECT_EQ(r.exit_code, 0);
    return slurp(dir / (tag + "_p.txt")) + slurp(dir / (tag + "_g.txt"));
  };
  const std::string a = gen("a", 3);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, gen("b", 3));
  EXPECT_NE(a, gen("c", 4));
}

TEST(Cli, GroundTruthEchoScoresPerfectly) {
  const fs::path dir = workdir();
  ASSERT_EQ(run("gen --seed 11 --points-out " + (dir / "echo_p.txt").string() + " --gt-out " +
                (dir / "echo_g.txt").string())
                .exit_code,
            0);
  const std::string gt = (dir / "echo_g.txt").string();
  const Result r = run("eval --gt " + gt + " --det " + gt);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("mAP@0.25 1.0000, mAP@0.5 1.0000"), std::string::npos) << r.out;
}

TEST(Cli, GenerateAssignDecodeNmsEvaluate) {
  const fs::path dir = workdir();
  for (int seed : {1, 2, 3}) {
    const std::string s = std::to_string(seed);
    const std::string points = (dir / ("pipe_p" + s)).string();
    const std::string gt = (dir / ("pipe_g" + s)).string();
    const std::string targets = (dir / ("pipe_t" + s)).string();
    const std::string dets = (dir / ("pipe_d" + s)).string();
    const std::string kept = (dir / ("pipe_k" + s)).string();
    const std::string pr = (dir / ("pipe_pr" + s)).string();
    ASSERT_EQ(run("gen --seed " + s + " --boxes 6 --points-out " + points + " --gt-out " + gt).exit_code, 0);
    ASSERT_EQ(run("assign --points " + points + " --gt " + gt + " -o " + targets).exit_code, 0);
    ASSERT_EQ(run("decode --exact -i " + targets + " -o " + dets).exit_code, 0);
    EXPECT_EQ(data_lines(dets), 6u);
    const Result r = run("eval --gt " + gt + " --det " + dets + " --pr-dir " + pr);
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("mAP@0.25 1.0000, mAP@0.5 1.0000"), std::string::npos) << r.out;
    EXPECT_TRUE(fs::exists(fs::path(pr) / "pr_class0_iou0.25.txt"));

    ASSERT_EQ(run("decode --all-targets -i " + targets + " -o " + dets).exit_code, 0);
    EXPECT_EQ(data_lines(dets), data_lines(targets));
    ASSERT_EQ(run("nms -i " + dets + " -o " + kept).exit_code, 0);
    EXPECT_EQ(data_lines(kept), 6u);
    EXPECT_NE(run("eval --gt " + gt + " --det " + kept).out.find("mAP@0.25 1.0000, mAP@0.5 1.0000"),
              std::string::npos);
  }
}

TEST(Cli, ConfigFileSuppliesSubcommandOptions) {
  const fs::path path = workdir() / "iou.toml";
  std::ofstream(path) << "[iou]\na=\"0,0,0,1,1,1,0\"\nb=\"0,0,0,1,1,1,0.7853981633974483\"\nrotated=true\n";
  const Result r = run("--config " + path.string() + " iou");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "0.707107\n");
}

void expect_reproduces(const std::string& args, const std::string& fixture) {
  const Result r = run(args);
  ASSERT_EQ(r.exit_code, 0);
  const auto got = lines(r.out);
  const auto want = lines(slurp(fs::path(FCAF3D_FIXTURES) / fixture));
  ASSERT_EQ(got.size(), want.size());
  ASSERT_FALSE(want.empty());
  for (std::size_t i = 0; i < want.size(); ++i) ASSERT_EQ(got[i], want[i]) << fixture << " line " << i + 1;
}

class GoldenEncode : public ::testing::TestWithParam<std::string> {};

TEST_P(GoldenEncode, BitExact) {
  const std::string input = (fs::path(FCAF3D_FIXTURES) / "encode_input.txt").string();
  expect_reproduces("encode --exact --mode " + GetParam() + " -i " + input, "encode_" + GetParam() + ".txt");
}

INSTANTIATE_TEST_SUITE_P(Modes, GoldenEncode, ::testing::Values("naive", "sincos", "mobius"));

TEST(Golden, RotatedIouBitExact) {
  const std::string input = (fs::path(FCAF3D_FIXTURES) / "iou_input.txt").string();
  expect_reproduces("iou --rotated --exact -i " + input, "iou_rotated.txt");
}

}  // namespace
