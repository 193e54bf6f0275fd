#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hope/errors.hpp"
#include "hope/io/config.hpp"
#include "hope/io/output.hpp"
#include "hope/io/run.hpp"

using namespace hope;
using namespace hope::io;
namespace fs = std::filesystem;

namespace {

const std::string kConfigDir = HOPE_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(HOPE_BINARY_DIR) / "io_scratch" / name;
  fs::remove_all(p);
  return p;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, ParsesSectionsAndNormalizesPolarization) {
  const RunConfig c = parse_config(R"(
[wave]
k0 = 2.0
theta = 0.2
te = 3.0
tm = 4.0
h = 0.5
[envelope]
kind = laminar
eps_prime = 2.25
a = -0.25
b = 0.25
w = 50
[grid]
P = 0
Q = 0
Nz = 65
[run]
L = 8
pade_L = 4
pade_M = 4
deltas = 0.1, 0.2
Ls = 2, 4, 6
)");
  EXPECT_DOUBLE_EQ(c.wave.k0, 2.0);
  EXPECT_NEAR(norm2(c.wave.A), 1.0, 1e-15);
  EXPECT_EQ(c.envelope.kind, EnvelopeKind::laminar_profile);
  EXPECT_DOUBLE_EQ(c.envelope.eps_prime, 2.25);
  EXPECT_EQ(c.Nz, 65);
  EXPECT_EQ(c.L, 8);
  ASSERT_EQ(c.deltas.size(), 2u);
  EXPECT_DOUBLE_EQ(c.deltas[1], 0.2);
  ASSERT_EQ(c.Ls.size(), 3u);
  EXPECT_FALSE(c.echo.empty());
}

TEST(Config, UnknownKeysAndBadValuesAreRejected) {
  EXPECT_THROW(parse_config("[wave]\nk0 = 1\nkzero = 2\n"), ConfigError);
  EXPECT_THROW(parse_config("[wave]\nk0 = abc\n"), ConfigError);
  EXPECT_THROW(parse_config("[envelope]\nkind = sphere\n"), ConfigError);
  EXPECT_THROW(load_config(kConfigDir + "/does_not_exist.ini"), ConfigError);
}

TEST(Config, ShippedConfigsParse) {
  for (const char* name : {"trivial", "laminar_slab", "slab_gap", "figure1", "wood", "resonance"})
    EXPECT_NO_THROW(load_config(kConfigDir + "/" + name + ".ini")) << name;
}

TEST(Output, DoubleTextRoundTripsExactly) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
    const std::string s = format_double(v);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
  }
}

TEST(Output, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Output, ManifestReferencesEveryFile) {
  const fs::path root = scratch("manifest");
  OutputDir out(root);
  out.write_csv("a.csv", {"x", "y"}, {{1.0, 0.1}, {2.0, 0.2}});
  out.write_text("b.txt", "hello\n");
  out.write_manifest({{"name", "test"}});
  const nlohmann::json m = read_json(root / "manifest.json");
  ASSERT_EQ(m["files"].size(), 2u);
  for (const auto& f : m["files"]) {
    const std::string body = slurp(root / f["name"].get<std::string>());
    EXPECT_EQ(f["sha256"].get<std::string>(), sha256_hex(body));
    EXPECT_EQ(f["bytes"].get<std::size_t>(), body.size());
  }
  EXPECT_NE(slurp(root / "a.csv").find("0.10000000000000001"), std::string::npos);
}

TEST(Run, TrivialSolveReportsNoScattering) {
  const fs::path root = scratch("trivial");
  CliOptions o;
  o.subcommand = "solve";
  o.config_path = kConfigDir + "/trivial.ini";
  o.out_dir = root.string();
  o.threads = 1;
  ASSERT_EQ(run(o), 0);
  const nlohmann::json m = read_json(root / "manifest.json");
  EXPECT_LT(m["result"]["scattered_energy"].get<double>(), 1e-12);
  EXPECT_TRUE(fs::exists(root / "xnorms.csv"));
  EXPECT_TRUE(fs::exists(root / "efficiencies.csv"));
  EXPECT_TRUE(m.contains("version"));
  EXPECT_TRUE(m.contains("config"));
}

TEST(Run, ChecksumsAreReproducible) {
  auto checksums = [](const std::string& name) {
    const fs::path root = scratch(name);
    CliOptions o;
    o.subcommand = "continue";
    o.config_path = kConfigDir + "/laminar_slab.ini";
    o.out_dir = root.string();
    o.threads = 2;
    EXPECT_EQ(run(o), 0);
    std::map<std::string, std::string> out;
    const nlohmann::json m = read_json(root / "manifest.json");
    for (const auto& f : m["files"])
      out[f["name"].get<std::string>()] = f["sha256"].get<std::string>();
    return out;
  };
  const auto a = checksums("repro_a"), b = checksums("repro_b");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
}

TEST(Run, EnvelopePlotEmitsBothGrids) {
  const fs::path root = scratch("figure1");
  CliOptions o;
  o.subcommand = "envelope-plot";
  o.config_path = kConfigDir + "/figure1.ini";
  o.out_dir = root.string();
  ASSERT_EQ(run(o), 0);
  EXPECT_TRUE(fs::exists(root / "envelope_E.csv"));
  EXPECT_TRUE(fs::exists(root / "envelope_eps.csv"));
}

TEST(Run, ExitCodesDistinguishFailures) {
  CliOptions o;
  o.subcommand = "solve";
  o.out_dir = scratch("codes").string();
  o.config_path = kConfigDir + "/wood.ini";
  EXPECT_EQ(run(o), 3);
  o.config_path = kConfigDir + "/resonance.ini";
  EXPECT_EQ(run(o), 4);
  o.config_path = kConfigDir + "/missing.ini";
  EXPECT_EQ(run(o), 2);
  o.config_path = kConfigDir + "/trivial.ini";
  o.subcommand = "bogus";
  EXPECT_EQ(run(o), 2);
}

TEST(Run, OutputDirectoryPrecedence) {
  ::setenv("HOPE_OUT_DIR", "/tmp/from_env", 1);
  EXPECT_EQ(resolve_out_dir("flag_dir"), "flag_dir");
  EXPECT_EQ(resolve_out_dir(""), "/tmp/from_env");
  ::unsetenv("HOPE_OUT_DIR");
  EXPECT_EQ(resolve_out_dir(""), "hope_out");
}
