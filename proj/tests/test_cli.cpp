#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "twoml/cli.hpp"
#include "twoml/coeff_file.hpp"
#include "twoml/numeric.hpp"

namespace fs = std::filesystem;
using doctest::Approx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = twoml::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("twoml_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos && line.find(' ') == std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

}  // namespace

TEST_CASE("synth and estimate a line") {
  TempDir dir;
  const auto coef = dir / "line.coef";
  const auto r = run({"synth", "--frontier", "linear:alpha=0.5,gamma=0.5", "--scheme", "unit", "--x0",
                      "0", "--jmax", "24", "--out", coef});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("entries=") != std::string::npos);
  const auto field = twoml::read_field_file(coef);
  for (int j = 1; j <= 24; ++j) {
    REQUIRE(field.level_size(j) == 2);
    CHECK(field.k_at(j, 0) == -field.k_at(j, 1));
  }

  const auto est = dir / "est.csv";
  REQUIRE(run({"estimate", "--coeffs", coef, "--sigma", "-2:2:0.25", "--j0", "12", "--out", est}).code == 0);
  const auto rows = csv(slurp(est));
  REQUIRE(rows.size() == 18);
  CHECK(rows[0] == std::vector<std::string>{"sigma", "s_hat", "raw_s_hat", "argmin_j", "argmin_k"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double sigma = *twoml::parse_double(rows[i][0]);
    const double s_hat = *twoml::parse_double(rows[i][1]);
    CHECK(std::fabs(s_hat - (1.0 - sigma)) <= 0.1);
  }

  CHECK(run({"check-linear", "--coeffs", coef, "--alpha", "0.5", "--gamma", "0.5"}).code == 0);
  const auto bad = run({"check-linear", "--coeffs", coef, "--alpha", "0.8", "--gamma", "0.5"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("verdict=FAIL\n") != std::string::npos);
  CHECK(run({"check-linear", "--coeffs", coef, "--alpha", "0.5", "--gamma", "1"}).code == 2);
  CHECK(run({"check-linear", "--coeffs", dir / "missing.coef", "--alpha", "0.5", "--gamma", "0.5"}).code == 2);
}

TEST_CASE("synth errors and incompatibilities") {
  TempDir dir;
  const auto out = dir / "x.coef";
  CHECK(run({"synth", "--frontier", "exp:sinf=1", "--jmax", "4", "--out", out}).code == 2);
  CHECK(run({"synth", "--frontier", "exp:sinf=1,lam=1", "--scheme", "meyer", "--jmax", "4", "--out", out}).code == 3);
  CHECK(run({"synth", "--frontier", "linear:alpha=1,gamma=0.2", "--scheme", "lvs", "--jmax", "4", "--out", out}).code == 3);
  CHECK(run({"synth", "--frontier", "exp:sinf=1,lam=1", "--scheme", "lvs", "--jmax", "4", "--out", out}).code == 3);
  CHECK(run({"synth", "--frontier", "exp:sinf=2,lam=1", "--scheme", "lvs", "--x0", "0.5", "--jmax", "4", "--out", out}).code == 3);
  CHECK(run({"synth", "--frontier", "exp:sinf=1,lam=1", "--scheme", "bogus", "--jmax", "4", "--out", out}).code == 2);
  CHECK(run({"synth", "--frontier", "exp:sinf=1,lam=1", "--jmax", "4", "--out", dir / "no/such/dir/x.coef"}).code == 2);
  CHECK(run({"synth", "--jmax", "4"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);

  REQUIRE(run({"synth", "--frontier", "exp:sinf=1,lam=1", "--jmax", "0", "--out", out}).code == 0);
  const auto f = twoml::read_field_file(out);
  CHECK(f.size() == f.level_size(0));
}

TEST_CASE("other schemes run") {
  TempDir dir;
  const auto m = run({"synth", "--frontier", "softplus:c=0.5,beta=2", "--scheme", "meyer", "--jmax", "12",
                      "--out", dir / "m.coef"});
  CHECK(m.code == 0);
  CHECK(key_values(m.out)["scheme"] == "meyer");
  const auto l = run({"synth", "--frontier", "exp:sinf=2,lam=1", "--scheme", "lvs", "--jmax", "6",
                      "--out", dir / "l.coef"});
  CHECK(l.code == 0);
  CHECK(key_values(l.out)["legendre_convention"] == "inf");
  const auto z = run({"synth", "--frontier", "exp:sinf=1,lam=1", "--off-index", "zero", "--jmax", "10",
                      "--out", dir / "z.coef"});
  CHECK(z.code == 0);
}

TEST_CASE("estimate edge cases") {
  TempDir dir;
  const auto empty = dir / "empty.coef";
  {
    std::ofstream f(empty);
    f << "# format_version=1\n# x0=0\n# j_max=10\n# curve=\n# scheme=\n";
  }
  const auto est = dir / "e.csv";
  REQUIRE(run({"estimate", "--coeffs", empty, "--sigma", "-1:1:0.5", "--out", est}).code == 0);
  const auto rows = csv(slurp(est));
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][1] == "inf");
    CHECK(rows[i][2] == "inf");
    CHECK(rows[i][3].empty());
  }
  CHECK(run({"estimate", "--coeffs", empty, "--sigma", "-1:1:0", "--out", est}).code == 2);
  CHECK(run({"estimate", "--coeffs", empty, "--sigma", "-1:1:-0.5", "--out", est}).code == 2);
  CHECK(run({"estimate", "--coeffs", empty, "--sigma", "-1:1", "--out", est}).code == 2);
  CHECK(run({"estimate", "--coeffs", dir / "nope.coef", "--sigma", "-1:1:0.5", "--out", est}).code == 2);
}

TEST_CASE("reconstruct") {
  TempDir dir;
  const auto single = dir / "one.coef";
  {
    std::ofstream f(single);
    f << "# format_version=1\n# x0=0\n# j_max=2\n# curve=\n# scheme=\n1 1 1 0\n";
  }
  const std::vector<std::string> base = {"reconstruct", "--coeffs", single, "--range", "-1:1", "--n", "64",
                                         "--table-points", "4096"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  REQUIRE(run(with({"--out", dir / "a.csv"})).code == 0);
  REQUIRE(run(with({"--out", dir / "b.csv", "--scale", "-2"})).code == 0);
  const auto a = csv(slurp(dir / "a.csv"));
  const auto b = csv(slurp(dir / "b.csv"));
  REQUIRE(a.size() == 65);
  REQUIRE(b.size() == 65);
  CHECK(a[0] == std::vector<std::string>{"x", "f"});
  for (std::size_t i = 1; i < a.size(); ++i) {
    CHECK(*twoml::parse_double(b[i][1]) == Approx(-2.0 * *twoml::parse_double(a[i][1])).scale(1.0).epsilon(1e-14));
  }
  CHECK(run(with({"--out", dir / "c.csv", "--scale", "0"})).code == 2);
  CHECK(run({"reconstruct", "--coeffs", single, "--range", "1:-1", "--n", "8", "--out", dir / "d.csv"}).code == 2);
}

TEST_CASE("exponents") {
  auto kv = key_values(run({"exponents", "--frontier", "linear:alpha=0.7,gamma=0"}).out);
  CHECK(kv["pointwise_holder"] == "0.7");
  CHECK(kv["local_holder"] == "0.7");
  CHECK(kv["weak_scaling"] == "0.7");
  CHECK(kv["chirp"] == "0");
  CHECK(kv["oscillation"] == "0");
  kv = key_values(run({"exponents", "--frontier", "exp:sinf=1,lam=1"}).out);
  CHECK(kv["pointwise_holder"] == "0");
  CHECK(kv["weak_scaling"] == "1");
  kv = key_values(run({"exponents", "--frontier", "linear:alpha=0.5,gamma=0.5"}).out);
  CHECK(kv["weak_scaling"] == "inf");

  TempDir dir;
  const auto coef = dir / "exp.coef";
  REQUIRE(run({"synth", "--frontier", "exp:sinf=1,lam=1", "--jmax", "14", "--out", coef}).code == 0);
  const auto r = run({"exponents", "--coeffs", coef});
  REQUIRE(r.code == 0);
  CHECK(std::fabs(*twoml::parse_double(key_values(r.out)["pointwise_holder"])) <= 0.15);
  CHECK(run({"exponents"}).code == 2);
  CHECK(run({"exponents", "--frontier", "exp:sinf=1,lam=1", "--coeffs", coef}).code == 2);
  CHECK(run({"exponents", "--coeffs", coef, "--sigma", "1:2:0.5"}).code == 2);
}

TEST_CASE("determinism") {
  TempDir dir;
  for (const char* scheme : {"unit", "meyer"}) {
    const std::vector<std::string> a = {"synth", "--frontier", "softplus:c=0.3,beta=1.5", "--scheme", scheme,
                                        "--x0", "0.2", "--jmax", "12", "--out", dir / "a.coef"};
    auto b = a;
    b.back() = dir / "b.coef";
    REQUIRE(run(a).code == 0);
    REQUIRE(run(b).code == 0);
    CHECK(slurp(dir / "a.coef") == slurp(dir / "b.coef"));
    CHECK(twoml::serialize_field(twoml::read_field_file(dir / "a.coef")) == slurp(dir / "a.coef"));
  }
}
