#include <doctest.h>

#include <filesystem>

#include "io/cache.hpp"
#include "io/config.hpp"
#include "io/results.hpp"
#include "io/svg.hpp"
#include "runner.hpp"

using namespace hrlab;

TEST_CASE("manifest parsing and canonical hashing") {
  const std::string a = R"(# experiment
[model]
name = ising
epsilon = 0.1
N = 6

[grids]
lambda = 0.5, 1.0, 2.0
)";
  const std::string b = R"([grids]
lambda = 0.5, 1.0, 2.0
[model]
N = 6
epsilon = 0.1
name = ising   # trailing comment
)";
  Manifest ma = Manifest::parse_string(a);
  Manifest mb = Manifest::parse_string(b);
  CHECK(ma.hash() == mb.hash());  // stable across field ordering
  CHECK(ma.get("model", "name") == "ising");
  CHECK(ma.get_double("model", "epsilon", 0) == 0.1);
  CHECK(ma.get_list("grids", "lambda") == std::vector<double>{0.5, 1.0, 2.0});

  // round-trips identically through the canonical form
  Manifest mc = Manifest::parse_string(ma.serialize());
  CHECK(mc.serialize() == ma.serialize());
  CHECK(mc.hash() == ma.hash());
}

TEST_CASE("manifest parse errors carry line information") {
  CHECK_THROWS_WITH_AS(Manifest::parse_string("[model]\nkey value\n"),
                       doctest::Contains("line 2"), DomainError);
  CHECK_THROWS_WITH_AS(Manifest::parse_string("key = 1\n"), doctest::Contains("line 1"),
                       DomainError);
  CHECK_THROWS_WITH_AS(Manifest::parse_string("[model]\na = 1\na = 2\n"),
                       doctest::Contains("duplicate"), DomainError);
}

TEST_CASE("result envelope round trip") {
  ResultEnvelope env;
  env.command = "spectrum";
  env.config_hash = "abc";
  env.payload = {{"gap", 0.8}};
  env.verdicts.push_back({"check", "PASS", "ok"});
  ResultEnvelope back = ResultEnvelope::from_json(env.to_json());
  CHECK(back.command == "spectrum");
  CHECK(back.payload.at("gap").get<double>() == 0.8);
  CHECK(!back.any_fail());
  back.verdicts.push_back({"bad", "FAIL", ""});
  CHECK(back.any_fail());
}

TEST_CASE("cache store, lookup and corruption recovery") {
  const std::string dir = "/tmp/hrlab-test-cache";
  std::filesystem::remove_all(dir);
  setenv("HRLAB_CACHE_DIR", dir.c_str(), 1);
  Cache c("/tmp/unused-out", false);
  CHECK(!c.lookup("k1").has_value());
  c.store("k1", {{"x", 1}});
  auto hit = c.lookup("k1");
  REQUIRE(hit.has_value());
  CHECK(hit->at("x").get<int>() == 1);
  // corrupt the entry on disk
  write_text_file(dir + "/k1.json", "{not json");
  CHECK(!c.lookup("k1").has_value());
  CHECK(c.saw_corruption());
  unsetenv("HRLAB_CACHE_DIR");
  std::filesystem::remove_all(dir);
}

TEST_CASE("runner: spectrum command end to end, deterministic and cached") {
  const std::string out = "/tmp/hrlab-test-out";
  std::filesystem::remove_all(out);
  Manifest m = Manifest::parse_string("[model]\nname = ising\nepsilon = 0.1\nN = 6\n");
  RunOptions opt;
  opt.out_dir = out;
  RunOutcome oc1 = run_command("spectrum", m, opt);
  CHECK(oc1.exit_code == 0);
  CHECK(!oc1.from_cache);
  REQUIRE(!oc1.files.empty());
  const std::string bytes1 = read_text_file(oc1.files[0]);

  RunOutcome oc2 = run_command("spectrum", m, opt);
  CHECK(oc2.from_cache);
  CHECK(read_text_file(oc2.files[0]) == bytes1);  // byte-identical payloads

  // recomputation without the cache also reproduces the bytes
  RunOptions nc = opt;
  nc.no_cache = true;
  RunOutcome oc3 = run_command("spectrum", m, nc);
  CHECK(!oc3.from_cache);
  CHECK(read_text_file(oc3.files[0]) == bytes1);
  std::filesystem::remove_all(out);
}

TEST_CASE("runner: unknown command and cap violations") {
  Manifest m = Manifest::parse_string("[model]\nname = ising\nN = 6\n");
  RunOptions opt;
  opt.out_dir = "/tmp/hrlab-test-out2";
  CHECK_THROWS_AS(run_command("bogus", m, opt), DomainError);
  Manifest big = Manifest::parse_string("[model]\nname = ising\nN = 40\n");
  CHECK_THROWS_AS(run_command("spectrum", big, opt), DomainError);
  std::filesystem::remove_all(opt.out_dir);
}

TEST_CASE("massshell CSV uses the declared schema") {
  const std::string out = "/tmp/hrlab-test-out3";
  std::filesystem::remove_all(out);
  Manifest m = Manifest::parse_string("[model]\nname = ising\nepsilon = 0.1\nN = 6\n");
  RunOptions opt;
  opt.out_dir = out;
  RunOutcome oc = run_command("massshell", m, opt);
  std::string csv_path;
  for (const auto& f : oc.files)
    if (f.find(".csv") != std::string::npos) csv_path = f;
  REQUIRE(!csv_path.empty());
  const std::string csv = read_text_file(csv_path);
  CHECK(csv.rfind("p,sigma,dsigma,isolation\n", 0) == 0);
  std::filesystem::remove_all(out);
}

TEST_CASE("SVG rendering is deterministic and validates payloads") {
  nlohmann::json band = nlohmann::json::array();
  for (int k = 0; k < 6; ++k)
    band.push_back({{"p", -3.0 + k}, {"sigma", 1.0}, {"isolation", 1.0}});
  nlohmann::json payload = {{"band", band}};
  const std::string s1 = render_svg("dispersion", payload);
  const std::string s2 = render_svg("dispersion", payload);
  CHECK(s1 == s2);
  CHECK(s1.find("<svg") == 0);

  CHECK_THROWS_AS(render_svg("dispersion", nlohmann::json::object()), DomainError);
  CHECK_THROWS_AS(render_svg("nonsense", payload), DomainError);
  CHECK_THROWS_AS(render_svg("lightcone", payload), DomainError);  // kind/payload mismatch
}
