#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "qmt/cli.hpp"
#include "qmt/document.hpp"

using namespace qmt;
using oracle::data;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qmt_cli_" + name)).string();
}

void write_text(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("parse_complex") {
  CHECK(cli::parse_complex("1") == Complex(1, 0));
  CHECK(cli::parse_complex("-1") == Complex(-1, 0));
  CHECK(cli::parse_complex("0.5i") == Complex(0, 0.5));
  CHECK(cli::parse_complex("1-0.5i") == Complex(1, -0.5));
  CHECK(cli::parse_complex("i") == Complex(0, 1));
  CHECK(cli::parse_complex("-i") == Complex(0, -1));
  CHECK(cli::parse_complex("2+i") == Complex(2, 1));
  CHECK(cli::parse_complex("1e-2+3e-1i") == Complex(0.01, 0.3));
  CHECK(cli::parse_complex("-2.5e+1") == Complex(-25, 0));
  CHECK_FALSE(cli::parse_complex("").has_value());
  CHECK_FALSE(cli::parse_complex("abc").has_value());
  CHECK_FALSE(cli::parse_complex("1+2").has_value());
  CHECK_FALSE(cli::parse_complex("1ii").has_value());
}

TEST_CASE("classify bundled systems") {
  auto r = run({"classify", data("M")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "weakly positive:   yes"));
  CHECK(contains(r.out, "strongly positive: yes"));
  CHECK(contains(r.out, "positive entry:    no"));

  r = run({"classify", data("N")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "weakly positive:   yes"));
  CHECK(contains(r.out, "strongly positive: no"));
  CHECK(contains(r.out, "positive entry:    yes"));

  r = run({"classify", data("dualp"), "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["in_dual_of_posentry"] == true);
  CHECK(j["positive_entry"]["member"] == false);
  CHECK(j["strongly_positive"]["member"] == true);
}

TEST_CASE("classify failures") {
  const auto bad = temp("bad.json");
  write_text(bad, "{not json");
  CHECK(run({"classify", bad}).code == cli::kExitParse);
  CHECK(run({"classify", "/nonexistent.json"}).code == cli::kExitParse);

  const auto herm = temp("herm.json");
  write_text(herm, R"({"atoms": ["a", "b"], "matrix": [[{"re": 0.5, "im": 0}, {"re": 0, "im": 0.1}],
                                                       [{"re": 0, "im": 0.1}, {"re": 0.5, "im": 0}]]})");
  const auto r = run({"classify", herm});
  CHECK(r.code == cli::kExitAxiom);
  CHECK(contains(r.err, "Hermitian"));
  CHECK(run({}).code == cli::kExitParse);
  CHECK(run({"frobnicate"}).code == cli::kExitParse);
  std::filesystem::remove(bad);
  std::filesystem::remove(herm);
}

TEST_CASE("compose then classify reproduces the counterexample") {
  const auto out = temp("mn.json");
  auto r = run({"compose", data("M"), data("N"), "-o", out});
  CHECK(r.code == 0);
  r = run({"classify", out, "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["weakly_positive"]["member"] == false);
  CHECK(j["atoms"] == 4);

  const auto doc = read_document_file(out);
  CHECK(doc.atoms[3] == "(1,1)");
  Complex v{0, 0};
  for (int a : {0, 3})
    for (int b : {0, 3}) v += doc.matrix(a, b);
  CHECK(std::abs(v + 0.4) < 1e-12);
  std::filesystem::remove(out);

  // Standard output when -o is absent.
  r = run({"compose", data("N"), data("swap")});
  CHECK(r.code == 0);
  CHECK(parse_document(r.out).atoms.size() == 4);
}

TEST_CASE("compose arity overflow") {
  const auto big = temp("big.json");
  CHECK(run({"gen", "classical", "65", "1", "-o", big}).code == 0);
  CHECK(run({"compose", big, big}).code == cli::kExitArityOverflow);
  std::filesystem::remove(big);
}

TEST_CASE("witness command") {
  auto r = run({"witness", data("caseb")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "case: b_iii"));
  CHECK(contains(r.out, "k=38 p=2 q=18"));
  CHECK(contains(r.out, "verified:  -"));

  r = run({"witness", data("N")});
  CHECK(r.code == cli::kExitPrecondition);
  CHECK(contains(r.err, "positive entry"));
  r = run({"witness", data("M")});
  CHECK(r.code == cli::kExitPrecondition);
  CHECK(contains(r.err, "strongly positive"));

  CHECK(run({"witness", data("caseb"), "--qmax", "5"}).code == cli::kExitQCap);

  r = run({"witness", data("caseb_ii"), "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["case"] == "b_ii");
  CHECK(j["k"] == 5);
  CHECK(j["components"].size() == 6);
  CHECK(j["verified"].get<double>() < 0);
  CHECK(j["materialized"].is_number());
}

TEST_CASE("probe command") {
  auto r = run({"probe", data("N"), "--vector", "1", "-1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "value: -0.6"));

  r = run({"probe", data("N"), "--vector", "1", "-1", "--json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>() + 0.6) < 1e-12);
  CHECK(j["rho"] == 1.0);

  CHECK(run({"probe", data("N"), "--vector", "1"}).code == cli::kExitParse);
  CHECK(run({"probe", data("N"), "--vector", "1", "x"}).code == cli::kExitParse);

  const auto strong = temp("strong.json");
  CHECK(run({"gen", "strong", "3", "7", "-o", strong}).code == 0);
  r = run({"probe", strong, "--json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() >= -1e-12);

  r = run({"probe", data("dualp"), "--vector", "1", "0.5i"});
  CHECK(r.code == 0);
  std::filesystem::remove(strong);
}

TEST_CASE("gen and verify") {
  const auto path = temp("gen.json");
  CHECK(run({"gen", "strong", "3", "7", "-o", path}).code == 0);
  CHECK(run({"verify", path}).code == 0);
  auto r = run({"classify", path});
  CHECK(contains(r.out, "strongly positive: yes"));

  // Flag form gives the same document.
  const auto a = run({"gen", "strong", "3", "7"}).out;
  const auto b = run({"gen", "--kind", "strong", "--atoms", "3", "--seed", "7"}).out;
  CHECK(a == b);
  CHECK(run({"gen", "nonsense", "3", "7"}).code == cli::kExitParse);
  CHECK(run({"gen", "weak_not_strong_not_posentry", "1", "7"}).code == cli::kExitParse);

  CHECK(run({"verify", data("M")}).code == 0);
  write_text(path, R"({"atoms": ["a", "b"], "matrix": [[{"re": 2, "im": 0}, {"re": -1, "im": 0}],
                                                       [{"re": -1, "im": 0}, {"re": 0.5, "im": 0}]]})");
  r = run({"verify", path});
  CHECK(r.code == cli::kExitAxiom);
  CHECK(contains(r.out, "normalized:       no"));
  r = run({"verify", path, "--json"});
  CHECK(nlohmann::json::parse(r.out)["ok"] == false);
  std::filesystem::remove(path);
}

TEST_CASE("--eps is honoured") {
  const auto path = temp("eps.json");
  write_text(path, R"({"atoms": ["a", "b"], "matrix": [[{"re": 0.500001, "im": 0}, {"re": 0, "im": 0}],
                                                       [{"re": 0, "im": 0}, {"re": 0.5, "im": 0}]]})");
  CHECK(run({"verify", path}).code == cli::kExitAxiom);
  CHECK(run({"verify", path, "--eps", "1e-5"}).code == 0);
  CHECK(run({"classify", path}).code == cli::kExitAxiom);
  CHECK(run({"classify", path, "--eps", "1e-5"}).code == 0);
  CHECK(run({"classify", path, "--eps", "-1"}).code == cli::kExitParse);
  std::filesystem::remove(path);
}
