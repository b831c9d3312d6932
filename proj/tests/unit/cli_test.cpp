#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ribnet/seeds.hpp"
#include "ribnet_cli/commands.hpp"
#include "ribnet_cli/json_reader.hpp"
#include "ribnet_cli/net_file.hpp"
#include "test_support.hpp"

namespace ribnet::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args, Environment env = {}) {
  std::ostringstream out, err;
  const int code = run(args, out, err, env);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("ribnet_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }
  std::string generate_frames(const std::string& name, const std::string& extent = "4") {
    const Outcome o = invoke({"generate", "--seed", "frames", "--m", "3", "--n", "3", "--extent",
                              extent, "--out", path(name)});
    EXPECT_EQ(o.code, kSuccess) << o.err;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, GenerateAndVerifySucceed) {
  const std::string net = generate_frames("net.json");
  const Outcome v = invoke({"verify", "--input", net});
  EXPECT_EQ(v.code, kSuccess) << v.out << v.err;
  EXPECT_NE(v.out.find("result: PASS"), std::string::npos);
}

TEST_F(CliTest, GenerateWithoutOutWritesNetToStdout) {
  const Outcome o = invoke({"generate", "--seed", "grid", "--m", "2", "--n", "2", "--extent", "3"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  const json doc = json::parse(o.out);
  EXPECT_EQ(doc.at("schema"), kNetSchema);
  EXPECT_EQ(doc.at("vertices").size(), 9u);
}

TEST_F(CliTest, ReportsAreByteDeterministic) {
  const std::vector<std::string> base = {"generate", "--seed", "frames", "--m", "3", "--n", "3",
                                         "--extent", "4", "--rng-seed", "17"};
  auto with = [&](const std::string& tag) {
    std::vector<std::string> a = base;
    a.insert(a.end(), {"--out", path(tag + ".json"), "--report", path(tag + "_report.json")});
    return invoke(a);
  };
  const Outcome a = with("a");
  const Outcome b = with("b");
  ASSERT_EQ(a.code, kSuccess);
  ASSERT_EQ(b.code, kSuccess);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_EQ(slurp(path("a_report.json")), slurp(path("b_report.json")));

  const Outcome va = invoke({"verify", "--input", path("a.json"), "--report", path("va.json")});
  const Outcome vb = invoke({"verify", "--input", path("a.json"), "--report", path("vb.json")});
  EXPECT_EQ(va.out, vb.out);
  EXPECT_EQ(slurp(path("va.json")), slurp(path("vb.json")));
}

TEST_F(CliTest, NetRoundTripIsBelowTolerance) {
  RandomFrameOptions opts;
  const FrameSeed seed = seed_random_frames(3, {4, 4, 4}, opts, 5);
  PairNet net = nets_from_frames(seed.lattice, seed.frames);
  net.edge_spheres = seed.edge_spheres;
  write_text_file(path("net.json"), dump(net_to_json(net)));
  const PairNet back = to_pair_net(read_net_file(path("net.json")));
  ASSERT_EQ(back.F.size(), net.F.size());
  double worst = 0.0;
  for (std::size_t v = 0; v < net.F.size(); ++v) {
    worst = std::max(worst, prop::distance(net.F[v], back.F[v]));
    worst = std::max(worst, prop::distance(net.Fhat[v], back.Fhat[v]));
  }
  for (std::size_t v = 0; v < net.frames.size(); ++v) {
    worst = std::max(worst, (net.frames[v].mv() - back.frames[v].mv()).norm());
  }
  EXPECT_LT(worst, 1e-12);
  // Chart and coefficients of every record agree.
  const NetDocument doc = read_net_file(path("net.json"));
  EXPECT_EQ(doc.record_residuals.size(), 2 * net.F.size());
  for (const RecordResidual& r : doc.record_residuals) EXPECT_LT(r.distance, 1e-12);
}

TEST_F(CliTest, ExportNetRoundTrip) {
  const std::string net = generate_frames("net.json");
  const Outcome e = invoke({"export", "--input", net, "--format", "net", "--out", path("re.json")});
  ASSERT_EQ(e.code, kSuccess) << e.err;
  const Outcome e2 =
      invoke({"export", "--input", path("re.json"), "--format", "net", "--out", path("re2.json")});
  ASSERT_EQ(e2.code, kSuccess) << e2.err;
  const PairNet a = to_pair_net(read_net_file(net));
  const PairNet b = to_pair_net(read_net_file(path("re.json")));
  const PairNet c = to_pair_net(read_net_file(path("re2.json")));
  double worst = 0.0;
  for (std::size_t v = 0; v < a.F.size(); ++v) {
    worst = std::max(worst, prop::distance(a.F[v], b.F[v]));
    worst = std::max(worst, prop::distance(a.F[v], c.F[v]));
    worst = std::max(worst, prop::distance(a.Fhat[v], c.Fhat[v]));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST_F(CliTest, CorruptedVertexFailsWithLocation) {
  const std::string net = generate_frames("net.json");
  json doc = parse_json_file(net);
  for (auto& rec : doc.at("vertices")) {
    if (rec.at("index") == json::array({1, 1, 1})) rec.at("F").at("chart")[0] = 1.0;
  }
  write("bad.json", doc.dump());
  const Outcome v = invoke({"verify", "--input", path("bad.json"), "--report", path("r.json")});
  EXPECT_EQ(v.code, kCheckFailed);
  EXPECT_NE(v.out.find("first failure: face_concircularity_F at vertex (0,0,1) axes (0,1)"),
            std::string::npos)
      << v.out;
  const json report = parse_json_file(path("r.json")).at("verification");
  EXPECT_FALSE(report.at("passed").get<bool>());
  EXPECT_EQ(report.at("first_failure").at("check"), "face_concircularity_F");
  EXPECT_EQ(report.at("first_failure").at("vertex"), json::array({0, 0, 1}));
}

TEST_F(CliTest, CoefficientsDisagreeingWithChartAreReported) {
  const std::string net = generate_frames("net.json");
  json doc = parse_json_file(net);
  doc.at("vertices")[3].at("F").at("coeffs")[1] = 0.75;
  write("odd.json", doc.dump());
  const Outcome v = invoke({"verify", "--input", path("odd.json")});
  EXPECT_EQ(v.code, kCheckFailed);
  EXPECT_NE(v.out.find("record_consistency"), std::string::npos);
}

TEST_F(CliTest, FillCompletesCauchyData) {
  const Outcome g = invoke({"generate", "--seed", "frames", "--m", "3", "--n", "3", "--extent",
                            "4", "--cauchy-only", "--out", path("init.json")});
  ASSERT_EQ(g.code, kSuccess) << g.err;
  const json init = parse_json_file(path("init.json"));
  EXPECT_EQ(init.at("vertices").size(), 64u - 27u);
  const Outcome f = invoke({"fill", "--input", path("init.json"), "--out", path("full.json")});
  ASSERT_EQ(f.code, kSuccess) << f.out << f.err;
  EXPECT_EQ(parse_json_file(path("full.json")).at("vertices").size(), 64u);
  EXPECT_EQ(invoke({"verify", "--input", path("full.json")}).code, kSuccess);
}

TEST_F(CliTest, ObjExportWritesOneFilePerSlice) {
  const std::string net = generate_frames("net.json");
  const Outcome e = invoke({"export", "--input", net, "--format", "obj", "--out", path("obj"),
                            "--stem", "s"});
  ASSERT_EQ(e.code, kSuccess) << e.err;
  int files = 0;
  for (const auto& entry : fs::directory_iterator(path("obj"))) {
    ++files;
    const std::string text = slurp(entry.path());
    EXPECT_EQ(text.rfind("# ", 0), 0u);
    EXPECT_NE(text.find("\nv "), std::string::npos);
    EXPECT_NE(text.find("\nf "), std::string::npos);
  }
  EXPECT_EQ(files, 12);
  EXPECT_TRUE(fs::exists(path("obj/s_axis2_3.obj")));
}

TEST_F(CliTest, MeshDirectoryFromConfigAndOption) {
  write("cfg.json", R"({"schema": "ribnet.config/1", "command": "generate",
    "net": {"n": 3, "m": 2, "extents": [3, 3]},
    "seed": {"kind": "frames"},
    "output": {"net": ")" + path("g.json") + R"(", "mesh_dir": ")" + path("mesh") + R"("}})");
  ASSERT_EQ(invoke({"generate", "--config", path("cfg.json")}).code, kSuccess);
  EXPECT_TRUE(fs::exists(path("mesh/net.obj")));
  const Outcome g = invoke({"generate", "--seed", "frames", "--m", "3", "--n", "3", "--extent", "3",
                            "--cauchy-only", "--out", path("init.json")});
  ASSERT_EQ(g.code, kSuccess);
  const Outcome f = invoke({"fill", "--input", path("init.json"), "--out", path("full.json"),
                            "--mesh-dir", path("fill_mesh")});
  ASSERT_EQ(f.code, kSuccess) << f.err;
  EXPECT_TRUE(fs::exists(path("fill_mesh/net_axis0_0.obj")));
  EXPECT_EQ(invoke({"verify", "--input", path("full.json"), "--mesh-dir", path("x")}).code,
            kBadInput);
}

TEST_F(CliTest, EnvironmentToleranceIsEchoed) {
  const std::string net = generate_frames("net.json");
  const Outcome v = invoke({"verify", "--input", net, "--report", path("r.json")},
                           Environment{"1e-6"});
  ASSERT_EQ(v.code, kSuccess);
  const json tol = parse_json_file(path("r.json")).at("tolerances");
  EXPECT_EQ(tol.at("source"), "RIBNET_TOLERANCE");
  EXPECT_EQ(tol.at("RIBNET_TOLERANCE"), "1e-6");
  EXPECT_DOUBLE_EQ(tol.at("face").get<double>(), 1e-6);
}

TEST_F(CliTest, CommandLineToleranceOverridesEnvironment) {
  const std::string net = generate_frames("net.json");
  const Outcome v = invoke({"verify", "--input", net, "--tolerance", "1e-7", "--report",
                            path("r.json")},
                           Environment{"1e-6"});
  ASSERT_EQ(v.code, kSuccess);
  const json tol = parse_json_file(path("r.json")).at("tolerances");
  EXPECT_DOUBLE_EQ(tol.at("face").get<double>(), 1e-7);
  EXPECT_EQ(tol.at("RIBNET_TOLERANCE"), "1e-6");
}

TEST_F(CliTest, BadEnvironmentToleranceIsInputError) {
  const std::string net = generate_frames("net.json");
  EXPECT_EQ(invoke({"verify", "--input", net}, Environment{"abc"}).code, kBadInput);
  EXPECT_EQ(invoke({"verify", "--input", net}, Environment{"-1"}).code, kBadInput);
}

TEST_F(CliTest, ConfigFileDrivesGenerate) {
  write("cfg.json", R"({"schema": "ribnet.config/1", "command": "generate",
    "net": {"n": 3, "m": 2, "extents": [3, 4]},
    "seed": {"kind": "grid", "spacings": [1.0, 0.5]},
    "output": {"net": ")" + path("g.json") + R"("}})");
  const Outcome o = invoke({"generate", "--config", path("cfg.json")});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  const json doc = parse_json_file(path("g.json"));
  EXPECT_EQ(doc.at("extents"), json::array({3, 4}));
}

TEST_F(CliTest, ConfigRejectsUnknownKeysAndWrongSchema) {
  write("a.json", R"({"schema": "ribnet.config/1", "command": "generate", "bogus": 1})");
  Outcome o = invoke({"generate", "--config", path("a.json")});
  EXPECT_EQ(o.code, kBadInput);
  EXPECT_NE(o.err.find("bogus"), std::string::npos);

  write("b.json", R"({"schema": "ribnet.config/1", "command": "generate",
    "seed": {"kind": "grid", "sapcings": [1, 1, 1]}})");
  o = invoke({"generate", "--config", path("b.json")});
  EXPECT_EQ(o.code, kBadInput);
  EXPECT_NE(o.err.find("sapcings"), std::string::npos);

  write("c.json", R"({"schema": "ribnet.config/9", "command": "generate"})");
  EXPECT_EQ(invoke({"generate", "--config", path("c.json")}).code, kBadInput);

  write("d.json", R"({"schema": "ribnet.config/1", "command": "verify"})");
  EXPECT_EQ(invoke({"generate", "--config", path("d.json")}).code, kBadInput);
}

TEST_F(CliTest, MalformedInputsAreInputErrors) {
  EXPECT_EQ(invoke({}).code, kBadInput);
  EXPECT_EQ(invoke({"frobnicate"}).code, kBadInput);
  EXPECT_EQ(invoke({"verify", "--input", path("missing.json")}).code, kBadInput);
  write("junk.json", "{ not json");
  EXPECT_EQ(invoke({"verify", "--input", path("junk.json")}).code, kBadInput);
  write("schema.json", R"({"schema": "other/1"})");
  EXPECT_EQ(invoke({"verify", "--input", path("schema.json")}).code, kBadInput);
  EXPECT_EQ(invoke({"generate", "--m", "4", "--n", "3"}).code, kBadInput);
  EXPECT_EQ(invoke({"demo", "nothing"}).code, kBadInput);
}

TEST_F(CliTest, HelpExitsZero) {
  const Outcome o = invoke({"--help"});
  EXPECT_EQ(o.code, kSuccess);
  EXPECT_NE(o.out.find("generate"), std::string::npos);
}

TEST_F(CliTest, DemosSucceed) {
  EXPECT_EQ(invoke({"demo", "miquel"}).code, kSuccess);
  EXPECT_EQ(invoke({"demo", "permutability"}).code, kSuccess);
  const Outcome g = invoke({"demo", "grid", "--out", path("demo")});
  EXPECT_EQ(g.code, kSuccess) << g.out;
  EXPECT_TRUE(fs::exists(path("demo/grid.json")));
}

}  // namespace
}  // namespace ribnet::cli
