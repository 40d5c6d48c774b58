#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "commands.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "gzz");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = gzz::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto dir = fs::temp_directory_path() / "gzz_test_cli";
  fs::create_directories(dir);
  const auto path = (dir / name).string();
  gzz::io::write_file(path, text);
  return path;
}

}  // namespace

TEST_CASE("gen is deterministic", "[cli]") {
  const auto a = run({"gen", "--dim", "6", "--pattern", "zigzag", "--seed", "3"});
  const auto b = run({"gen", "--dim", "6", "--pattern", "zigzag", "--seed", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_THAT(a.out, Catch::Matchers::StartsWith("{\"format\":\"gzz-model/v1\",\"m\":3"));
  CHECK(run({"gen", "--dim", "5"}).code == 2);
  CHECK(run({"gen", "--dim", "5", "--embed-odd"}).code == 0);
  CHECK(run({"gen", "--dim", "4", "--gap", "2", "--range", "1"}).code == 2);
  CHECK(run({"gen", "--dim", "4", "--pattern", "nope"}).code == 2);
}

TEST_CASE("verify exit codes", "[cli]") {
  const auto good = temp_file("good.json", run({"gen", "--dim", "4", "--seed", "1"}).out);
  const auto r = run({"verify", good});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("\"passed\":true"));

  const auto jordan = temp_file(
      "jordan.json",
      "{\"format\":\"gzz-model/v1\",\"m\":1,\"lambda_plus\":[1],\"lambda_minus\":[1],"
      "\"couplings\":[{\"i\":1,\"j\":1,\"value\":2}]}");
  CHECK(run({"verify", jordan}).code == 1);

  const auto broken = temp_file("broken.json", "{\"format\": }");
  const auto b = run({"verify", broken});
  CHECK(b.code == 2);
  CHECK_THAT(b.err, Catch::Matchers::ContainsSubstring("line 1"));
  CHECK(run({"verify", good, "--kappa", "uniform:-1"}).code == 2);
  CHECK(run({"verify", good, "--kappa", "uniform:abc"}).code == 2);
  CHECK(run({"verify"}).code == 2);
}

TEST_CASE("spectrum, metric and evolve", "[cli]") {
  const auto model = temp_file(
      "running.json",
      "{\"format\":\"gzz-model/v1\",\"m\":1,\"lambda_plus\":[2],\"lambda_minus\":[1],"
      "\"couplings\":[{\"i\":1,\"j\":1,\"value\":3}]}");
  CHECK(run({"spectrum", model}).out ==
        "{\"format\":\"spectrum/v1\",\"eigenvalues\":[{\"label\":\"+1\",\"value\":2},"
        "{\"label\":\"-1\",\"value\":1}],\"diagonalizable\":true}\n");
  const auto m = run({"metric", model});
  CHECK(m.code == 0);
  const auto report = gzz::io::read_theta(m.out);
  CHECK(report.theta == gzz::DenseMatrix{{1, 3}, {3, 10}});
  CHECK(report.positive);

  const auto e = run({"evolve", model, "--t1", "1", "--steps", "4", "--psi0", "basis:2"});
  CHECK(e.code == 0);
  std::istringstream lines(e.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 6);
  CHECK_THAT(e.out, Catch::Matchers::StartsWith("t,theta_norm,l2_norm,re_psi_1"));
  CHECK(run({"evolve", model, "--psi0", "basis:3"}).code == 2);
}

TEST_CASE("zig-zag metric is reported in the zig-zag basis", "[cli]") {
  const auto zz = temp_file("zz.json",
                            "{\"format\":\"zz-model/v1\",\"variant\":\"ZZ\",\"a\":[4,3,2,1],"
                            "\"c\":[1,1,1]}");
  const auto m = run({"metric", zz});
  REQUIRE(m.code == 0);
  const auto report = gzz::io::read_theta(m.out);
  CHECK(report.residual <= 1e-12);
  CHECK(report.positive);
  CHECK(report.bandwidth <= 2);
}

TEST_CASE("convert round trips", "[cli]") {
  const auto zz = temp_file("zz4.json",
                            "{\"format\":\"zz-model/v1\",\"variant\":\"ZZ\",\"a\":[1,2,3,4],"
                            "\"c\":[5,6,7]}");
  const auto g = run({"convert", zz, "--to", "gzz"});
  CHECK(g.out ==
        "{\"format\":\"gzz-model/v1\",\"m\":2,\"lambda_plus\":[2,4],\"lambda_minus\":[1,3],"
        "\"couplings\":[{\"i\":1,\"j\":1,\"value\":5},{\"i\":1,\"j\":2,\"value\":6},"
        "{\"i\":2,\"j\":2,\"value\":7}]}\n");
  const auto gfile = temp_file("g4.json", g.out);
  const auto back = run({"convert", gfile, "--to", "zz"});
  CHECK(back.out == gzz::io::read_file(zz) + "\n");

  const auto full = temp_file("full.json", run({"gen", "--dim", "6", "--seed", "2"}).out);
  CHECK(run({"convert", full, "--to", "zz"}).code == 1);
  CHECK(run({"convert", full, "--to", "xyz"}).code == 2);
}

TEST_CASE("bench output", "[cli]") {
  const auto b = run({"bench", "--dims", "4,8", "--ops", "mul", "--repetitions", "1"});
  CHECK(b.code == 0);
  CHECK_THAT(b.out, Catch::Matchers::StartsWith("dim,op,structured_ns,dense_ns\n4,mul,"));
  CHECK(run({"bench", "--dims", "3"}).code == 2);
}
