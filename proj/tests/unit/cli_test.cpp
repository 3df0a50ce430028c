#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "flatknot/io.hpp"

using namespace flatknot;
namespace fs = std::filesystem;

namespace {

const fs::path kData = FLATKNOT_TEST_DATA;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("flatknot_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, Usage) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"cycles"}).code, cli::kUsage);
  EXPECT_EQ(run({"energy", (kData / "missing.json").string()}).code != cli::kOk, true);
}

TEST(Cli, Pendulum) {
  const Outcome even = run({"pendulum", "--r", "2"});
  ASSERT_EQ(even.code, cli::kOk) << even.err;
  EXPECT_NE(even.out.find("xi = 0.908908557549"), std::string::npos) << even.out;
  EXPECT_NE(even.out.find("whitney = 0"), std::string::npos) << even.out;
  EXPECT_EQ(run({"pendulum", "--r", "3"}).code, cli::kUsage);

  const fs::path dir = scratch("pendulum");
  ASSERT_EQ(run({"pendulum", "--r", "4", "--out", dir.string()}).code, cli::kOk);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) files += entry.is_regular_file() ? 1 : 0;
  EXPECT_EQ(files, 2u);
}

TEST(Cli, EnergyTrefoil) {
  const Outcome o = run({"energy", (kData / "trefoil.json").string(), "--family", "RE"});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const io::Json j = io::Json::parse(o.out);
  EXPECT_EQ(j.at("family"), "RE");
  EXPECT_EQ(j.at("per_cycle").size(), 11u);
  EXPECT_GT(j.at("total").get<double>(), 0.0);
  EXPECT_EQ(j.at("uniformization").at("functional"), "x^2");
}

TEST(Cli, EnergyCircle) {
  const Outcome o = run({"energy", (kData / "circle.json").string()});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const io::Json j = io::Json::parse(o.out);
  EXPECT_NEAR(j.at("total").get<double>(), 1.0 / 3.141592653589793, 1e-4);
  EXPECT_NEAR(j.at("uniformization").at("value").get<double>(), 6.283185307, 1e-6);
}

TEST(Cli, Cycles) {
  const Outcome grid = run({"cycles", "--grid", "4"});
  ASSERT_EQ(grid.code, cli::kOk) << grid.err;
  EXPECT_EQ(io::Json::parse(grid.out).at("total"), 9349);
  EXPECT_EQ(io::Json::parse(run({"cycles", "--grid", "5"}).out).at("total"), 1222363);
  EXPECT_EQ(io::Json::parse(run({"cycles", "--gstar", "3"}).out).at("alternated"), 35);

  const Outcome tref = run({"cycles", "--diagram", (kData / "trefoil.json").string()});
  ASSERT_EQ(tref.code, cli::kOk);
  EXPECT_EQ(io::Json::parse(tref.out).at("counts_by_arcs").dump(), R"({"1":6,"2":3,"3":2})");

  const Outcome boom = run({"cycles", "--grid", "5", "--limit", "1000"});
  EXPECT_EQ(boom.code, cli::kExplosion);
  EXPECT_NE(boom.err.find("explosion"), std::string::npos);
  EXPECT_EQ(run({"cycles", "--grid", "4", "--limit", "100"}).code, cli::kExplosion);
}

TEST(Cli, RelaxNoisyCircle) {
  const fs::path dir = scratch("relax_circle");
  const Outcome o = run({"relax", (kData / "noisy_circle.json").string(), (kData / "relax.json").string(), dir.string()});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  EXPECT_TRUE(fs::exists(dir / "final.json"));
  EXPECT_TRUE(fs::exists(dir / "final_diagram.json"));
  std::ifstream trace(dir / "trace.jsonl");
  std::string line, last;
  std::size_t lines = 0;
  while (std::getline(trace, line)) {
    io::Json::parse(line);  // every line is JSON
    last = line;
    ++lines;
  }
  EXPECT_GE(lines, 3u);
  EXPECT_EQ(io::Json::parse(last).at("terminated"), "converged");
  EXPECT_NEAR(io::curve_from_json(io::read_file(dir / "final.json")).length(), 6.283185307179586, 1e-8);
}

TEST(Cli, RelaxForbidden) {
  const fs::path dir = scratch("relax_clasp");
  const Outcome o = run({"relax", (kData / "clasp.json").string(), (kData / "relax_bare.json").string(), dir.string(),
                         "--keyframe-every", "100"});
  EXPECT_EQ(o.code, cli::kForbidden) << o.out << o.err;
  EXPECT_NE(o.out.find("FORBIDDEN"), std::string::npos) << o.out;
  EXPECT_TRUE(fs::exists(dir / "keyframe_00000.svg"));
  EXPECT_TRUE(fs::exists(dir / "keyframe_00100.svg"));
}

TEST(Cli, RenderIsXml) {
  const Outcome o = run({"render", (kData / "trefoil.json").string(), "-", "--cycles", "0,3,10"});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  std::istringstream in(o.out);
  boost::property_tree::ptree tree;
  EXPECT_NO_THROW(boost::property_tree::read_xml(in, tree));
  EXPECT_EQ(tree.get<int>("svg.<xmlattr>.height"), 480);
  EXPECT_EQ(run({"render", (kData / "trefoil.json").string(), "-", "--cycles", "99"}).code, cli::kUsage);

  const fs::path dir = scratch("render");
  ASSERT_EQ(run({"render", (kData / "circle.json").string(), (dir / "c.svg").string(), "--width", "200"}).code, cli::kOk);
  EXPECT_GT(fs::file_size(dir / "c.svg"), 100u);
}

TEST(Cli, VerifyGroups) {
  const Outcome o = run({"verify", "--only", "pendulum"});
  EXPECT_EQ(o.code, cli::kOk) << o.out;
  EXPECT_NE(o.out.find("[PASS]  1"), std::string::npos) << o.out;
  EXPECT_EQ(run({"verify", "--only", "bogus"}).code, cli::kUsage);
}

TEST(Cli, VerifyCatchesWrongData) {
  // A circle in place of the trefoil: the census check must notice.
  const fs::path dir = scratch("verify_data");
  fs::copy_file(kData / "circle.json", dir / "trefoil.json");
  const Outcome o = run({"verify", "--only", "cycles", "--data", dir.string()});
  EXPECT_EQ(o.code, cli::kVerifyFailed) << o.out << o.err;
  EXPECT_NE(o.out.find("[FAIL]  3"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("[PASS]  2"), std::string::npos) << o.out;
}
