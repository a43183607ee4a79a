#include "rpnv/cli/config.hpp"
#include "rpnv/cli/experiments.hpp"
#include "rpnv/cli/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace rpnv;
using namespace rpnv::cli;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool has_warning(const Config& c, const std::string& needle) {
  for (const auto& d : diagnose(c))
    if (d.message.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("empty config gives the reference defaults") {
    const Config c = parse_config_text("{}");
    CHECK(c.model.rates.k_singlet == doctest::Approx(0.02e6));
    CHECK(c.model.rates.k_triplet == doctest::Approx(0.2e6));
    CHECK(c.model.field.phi == 2.0);
    CHECK(c.model.geometry.nv_depth == doctest::Approx(5e-9));
    CHECK(config_hash(c) == config_hash(Config{}));
    CHECK(config_hash(c).size() == 16);
  }

  TEST_CASE("round trip through the published schema") {
    Config c;
    c.model.rates.dephasing = 0.5e6;
    c.model.field.theta = 0.7;
    c.experiment.seed = 42;
    const Config back = parse_config(to_json(c));
    CHECK(config_hash(back) == config_hash(c));
    CHECK(back.model.rates.dephasing == doctest::Approx(0.5e6));
  }

  TEST_CASE("output directory does not enter the hash") {
    Config a, b;
    b.output.directory = "elsewhere";
    CHECK(config_hash(a) == config_hash(b));
    b.model.rates.k_singlet *= 2;
    CHECK(config_hash(a) != config_hash(b));
  }

  TEST_CASE("schema errors name the field") {
    CHECK(error_of(R"({"model": {"rates": {"k_x_MHz": 1}}})").find("model.rates.k_x_MHz") != std::string::npos);
    CHECK(error_of(R"({"bogus": 1})").find("bogus: unknown key") != std::string::npos);
    CHECK(error_of(R"({"model": {"field": {"B0_mT": "big"}}})").find("model.field.B0_mT") != std::string::npos);
    CHECK(error_of(R"({"experiment": {"method": "rk4"}})").find("experiment.method") != std::string::npos);
    CHECK(error_of(R"({"model": {"rates": {"k_s_MHz": -1}}})").find("model") != std::string::npos);
    CHECK(error_of(R"({"experiment": {"keff": {"points": 2.5}}})").find("experiment.keff.points") != std::string::npos);
  }

  TEST_CASE("parse errors report the line") {
    const std::string msg = error_of("{\n  \"model\": {\n    \"include_nv\": tru\n  }\n}\n");
    CHECK(msg.find("line 3") != std::string::npos);
  }

  TEST_CASE("diagnostics") {
    CHECK(diagnose(Config{}).empty());
    Config strong;
    strong.model.field.magnitude = 0.1;  // 100 mT
    CHECK_FALSE(diagnose(strong).empty());
    Config noisy;
    noisy.model.rates.dephasing = 10e6;
    CHECK(has_warning(noisy, "overdamped"));
  }

  TEST_CASE("number formatting and escaping") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1e-7) == "1e-07");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  }

  TEST_CASE("csv rendering carries provenance and a header") {
    CsvTable t({"t_us", "P"});
    t.row() << 0.25 << 1.0;
    t.row() << 0.5 << "x,y";
    const std::string s = render_csv({"signal", "0123456789abcdef", "0.1.0"}, t);
    CHECK(s == "# rpnvsim 0.1.0 experiment=signal config_hash=0123456789abcdef\n"
               "t_us,P\n0.25,1\n0.5,\"x,y\"\n");
    t.row() << 1.0;
    CHECK_THROWS(t.check());
  }

  TEST_CASE("experiments write deterministic, hashed output") {
    CHECK(is_experiment("pulses"));
    CHECK_FALSE(is_experiment("validate"));
    Config c;
    c.experiment.pulses.points = 9;
    const auto dir = std::filesystem::temp_directory_path() / "rpnv_cli_test";
    std::filesystem::remove_all(dir);
    const std::string hash = config_hash(c);
    for (const std::string name : {"efield-permittivity", "pulses"}) {
      const ResultBundle a = run_experiment(name, c, 1);
      CHECK_FALSE(a.partial());
      const auto files_a = write_bundle(a, c, dir / "a");
      const auto files_b = write_bundle(run_experiment(name, c, 2), c, dir / "b");
      REQUIRE(files_a.size() == files_b.size());
      REQUIRE(!files_a.empty());
      for (std::size_t i = 0; i < files_a.size(); ++i) {
        const std::string text = slurp(files_a[i]);
        CHECK(text == slurp(files_b[i]));
        CHECK(text.find(hash) != std::string::npos);
      }
    }
    std::filesystem::remove_all(dir);
  }
}
