#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "trc/io.hpp"
#include "trc/oracle.hpp"

using namespace trc;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TRC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "trc_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("certify matmul") {
  auto r = run("certify matmul --n 2 --m 2 --p 1 --seed 1");
  REQUIRE(r.status == 0);
  auto j = Json::parse(r.out);
  CHECK(j["border_rank_lb"] == 6);
  CHECK(run("certify matmul --n 2 --m 2 --p 5").status == 1);
  CHECK(run("certify matmul --n 2").status == 1);
  CHECK(run("certify matmul --n 2 --m 2 --p 1 --seed 1").out == r.out);
}

TEST_CASE("certify tensor, verify and replay") {
  auto zero = scratch("zero.json");
  write_text_file(zero.string(), to_json(Tensor3({3, 2, 2})).dump());
  auto r = run("certify tensor --in " + zero.string() + " --p 1 --seed 1");
  REQUIRE(r.status == 0);
  CHECK(Json::parse(r.out)["border_rank_lb"] == 0);

  auto m222 = scratch("M222.json"), s7 = scratch("strassen7.json");
  write_text_file(m222.string(), to_json(matmul_tensor({2, 2, 2})).dump());
  write_text_file(s7.string(), to_json(strassen_7().decomposition).dump());
  auto v = run("verify --tensor " + m222.string() + " --decomp " + s7.string());
  CHECK(v.status == 0);
  CHECK(v.out.find("VALID (7 terms)") != std::string::npos);

  auto bad = strassen_7().decomposition;
  bad.terms.pop_back();
  auto s6 = scratch("strassen6.json");
  write_text_file(s6.string(), to_json(bad).dump());
  auto iv = run("verify --tensor " + m222.string() + " --decomp " + s6.string());
  CHECK(iv.status == 2);
  CHECK(iv.out.find("INVALID") != std::string::npos);

  auto cert = scratch("cert.json");
  CHECK(run("certify matmul --n 3 --m 2 --p 1 --seed 4 --out " + cert.string()).status == 0);
  auto rp = run("replay --cert " + cert.string());
  CHECK(rp.status == 0);
  CHECK(rp.out.find("REPLAY OK") != std::string::npos);

  CHECK(run("certify tensor --in /nonexistent.json --p 1").status == 3);
}

TEST_CASE("table") {
  auto r = run("table --n-max 100");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\n84,84,17388,17388,") != std::string::npos);
  CHECK(r.out.find("\n100,100,24700,24967,") != std::string::npos);
  CHECK(r.out.find("\n2,2,4,") != std::string::npos);
  CHECK(run("table").status == 1);
}

TEST_CASE("flatten and sweep") {
  auto f = scratch("F.json");
  REQUIRE(run("flatten matmul --n 2 --p 1 --seed 7 --out " + f.string()).status == 0);
  auto j = read_json_file(f.string());
  CHECK(j["rows"] == 6);
  CHECK(j["cols"] == 6);
  CHECK(j.contains("index_books"));

  auto s = run("sweep --p 1 --rmax 3 --trials 5 --seed 2");
  REQUIRE(s.status == 0);
  CHECK(Json::parse(s.out)["violations"] == 0);
}
