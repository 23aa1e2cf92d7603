#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "trc/bounds.hpp"
#include "trc/certify.hpp"
#include "trc/error.hpp"
#include "trc/flattening.hpp"
#include "trc/io.hpp"
#include "trc/oracle.hpp"

using namespace trc;

TEST_CASE("rational json") {
  CHECK(to_json(make_rational(-3, 4)) == "-3/4");
  CHECK(rational_from_json(Json("5/10")) == make_rational(1, 2));
  CHECK(rational_from_json(Json(7)) == 7);
  CHECK_THROWS_AS(rational_from_json(Json(1.5)), Error);
}

TEST_CASE("tensor round trips") {
  SeededRng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Dims d{1 + rng.below(4), 1 + rng.below(4), 1 + rng.below(4)};
    Tensor3 t = oracle::random_tensor(d, rng);
    Json j = to_json(t);
    CHECK(j["format"] == "trc.tensor/1");
    CHECK(tensor_from_json(Json::parse(j.dump())) == t);
  }
  Tensor3 frac({1, 1, 1}, {{{0, 0, 0}, make_rational(2, 3)}});
  CHECK(tensor_from_json(to_json(frac)) == frac);
  auto g = random_rank_r({2, 2, 2}, 2, Domain::gfp(7), 1).tensor;
  CHECK(tensor_from_json(to_json(g)) == g);
}

TEST_CASE("malformed tensors are rejected") {
  CHECK_THROWS_AS(tensor_from_json(Json::parse(R"({"format":"trc.tensor/1","dims":[2,2]})")), Error);
  CHECK_THROWS_AS(
      tensor_from_json(Json::parse(R"({"format":"trc.tensor/1","dims":[1,1,1],"entries":[[0,0,5,"1"]]})")), Error);
  CHECK_THROWS_AS(tensor_from_json(Json::parse(R"({"format":"other","dims":[1,1,1],"entries":[]})")), Error);
  try {
    tensor_from_json(Json::parse("[]"));
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

TEST_CASE("decomposition and sparse round trips") {
  auto s = strassen_7().decomposition;
  auto back = decomposition_from_json(Json::parse(to_json(s).dump()));
  CHECK(verify_decomposition(matmul_tensor({2, 2, 2}), back));
  REQUIRE(back.terms.size() == 7);
  CHECK(back.terms[3].w == s.terms[3].w);

  SeededRng rng(2);
  auto m = SparseMatrix::from_dense(oracle::random_matrix(4, 5, rng));
  CHECK(sparse_from_json(Json::parse(to_json(m).dump())) == m);
  SparseMatrix g(2, 2, {{0, 1, 3}}, Domain::gfp(5));
  CHECK(sparse_from_json(to_json(g)) == g);
}

TEST_CASE("flattening dump carries the index books") {
  SeededRng rng(3);
  auto f = build_reduced_matmul(2, Subspace::random(4, 3, 101, rng), 1);
  Json j = to_json(f);
  CHECK(j["format"] == "trc.flattening/1");
  CHECK(j["rows"] == 6);
  CHECK(j["index_books"]["rows"]["subsets"].size() == 3);
  CHECK(j["index_books"]["cols"]["subsets"].size() == 3);
  Json as_sparse = j;
  as_sparse["format"] = "trc.sparse/1";
  CHECK(sparse_from_json(as_sparse) == f.matrix);
}

TEST_CASE("certificate round trips") {
  CertifyOptions o;
  o.seed = 5;
  auto cert = certify_matmul(3, 2, 2, o);
  Json j = to_json(cert);
  CHECK(j["format"] == "trc.certificate/1");
  CHECK(j.contains("tool_version"));
  auto back = certificate_from_json(Json::parse(j.dump()));
  CHECK(to_json(back) == j);
  CHECK(replay_certificate(back).bounds_match);

  auto rr = random_rank_r({3, 2, 2}, 1, Domain::rational(), 2);
  auto tc = certify_tensor(rr.tensor, 1, o);
  auto tback = certificate_from_json(to_json(tc));
  CHECK(to_json(tback) == to_json(tc));
  CHECK(replay_certificate(tback, &rr.tensor).ranks_match);
}

TEST_CASE("sweep report and tables") {
  auto rep = soundness_sweep({3, 2, 2}, 1, 2, 3, 1);
  Json j = to_json(rep);
  CHECK(j["format"] == "trc.sweep/1");
  CHECK(j["violations"] == 0);
  CHECK(j["rows"].size() == 3);

  auto rows = bound_table(2, 4, std::nullopt, 3);
  auto csv = bound_table_csv(rows, 3);
  CHECK(csv.rfind("n,m,theorem_p1,theorem_p2,theorem_p3,simple_p1,simple_p2,simple_p3,blaser,lo_borderrank,winner", 0) ==
        0);
  CHECK(csv.find("\n2,2,4,") != std::string::npos);
  CHECK(!bound_table_text(rows, 3).empty());
}

TEST_CASE("file errors") {
  try {
    read_json_file("/nonexistent/x.json");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
  auto path = std::filesystem::temp_directory_path() / "trc_io_test_bad.json";
  write_text_file(path.string(), "{not json");
  try {
    read_json_file(path.string());
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  std::filesystem::remove(path);
}
