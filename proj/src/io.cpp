#include "trc/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "trc/error.hpp"

namespace trc {

namespace {

template <typename F>
auto parse_guard(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

void check_format(const Json& j, const std::string& expected) {
  if (j.contains("format") && j.at("format").get<std::string>() != expected) {
    throw Error(ErrorCode::ParseError, "expected format " + expected + ", got " + j.at("format").get<std::string>());
  }
}

Json rational_vector(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

std::vector<Rational> rational_vector_from(const Json& j) {
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Json dense_to_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix dense_from_json(const Json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.at(0).size() : 0;
  DenseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols) throw Error(ErrorCode::ParseError, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(j.at(r).at(c));
  }
  return m;
}

Json basis_book(const OrderedBasis& basis, std::size_t inner) {
  Json subsets = Json::array();
  for (const auto& s : basis.subsets()) subsets.push_back(s.elements());
  return {{"subsets", subsets}, {"inner_dim", inner}};
}

}  // namespace

Json to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  throw Error(ErrorCode::ParseError, "coefficient must be a string \"num/den\" or an integer");
}

Json domain_to_json(const Domain& d) {
  if (d.is_rational()) return "rational";
  return Json{{"gfp", d.modulus()}};
}

Domain domain_from_json(const Json& j) {
  return parse_guard("domain", [&] {
    if (j.is_string() && j.get<std::string>() == "rational") return Domain::rational();
    if (j.is_object() && j.contains("gfp")) return Domain::gfp(j.at("gfp").get<std::uint64_t>());
    throw Error(ErrorCode::ParseError, "domain must be \"rational\" or {\"gfp\": q}");
  });
}

Json to_json(const Tensor3& t) {
  Json entries = Json::array();
  for (const auto& [idx, v] : t.entries()) entries.push_back({idx[0], idx[1], idx[2], to_json(v)});
  return {{"format", "trc.tensor/1"},
          {"dims", {t.dims().a, t.dims().b, t.dims().c}},
          {"domain", domain_to_json(t.domain())},
          {"entries", entries}};
}

Tensor3 tensor_from_json(const Json& j) {
  return parse_guard("tensor", [&] {
    check_format(j, "trc.tensor/1");
    const auto& dims = j.at("dims");
    if (dims.size() != 3) throw Error(ErrorCode::ParseError, "dims must have three entries");
    Domain domain = j.contains("domain") ? domain_from_json(j.at("domain")) : Domain::rational();
    std::vector<Tensor3::Entry> entries;
    for (const auto& e : j.at("entries")) {
      if (e.size() != 4) throw Error(ErrorCode::ParseError, "tensor entry must be [i,j,k,coeff]");
      entries.push_back({{e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<std::size_t>()},
                         rational_from_json(e.at(3))});
    }
    return Tensor3({dims.at(0).get<std::size_t>(), dims.at(1).get<std::size_t>(), dims.at(2).get<std::size_t>()},
                   entries, domain);
  });
}

Json to_json(const Decomposition& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms) {
    terms.push_back({{"u", rational_vector(t.u)}, {"v", rational_vector(t.v)}, {"w", rational_vector(t.w)}});
  }
  return {{"format", "trc.decomposition/1"}, {"terms", terms}};
}

Decomposition decomposition_from_json(const Json& j) {
  return parse_guard("decomposition", [&] {
    check_format(j, "trc.decomposition/1");
    Decomposition d;
    for (const auto& t : j.at("terms")) {
      d.terms.push_back(
          {rational_vector_from(t.at("u")), rational_vector_from(t.at("v")), rational_vector_from(t.at("w"))});
    }
    return d;
  });
}

Json to_json(const SparseMatrix& m) {
  Json trip = Json::array();
  for (const auto& t : m.triplets()) trip.push_back({t.row, t.col, to_json(t.value)});
  return {{"format", "trc.sparse/1"},
          {"rows", m.rows()},
          {"cols", m.cols()},
          {"domain", domain_to_json(m.domain())},
          {"triplets", trip}};
}

SparseMatrix sparse_from_json(const Json& j) {
  return parse_guard("sparse matrix", [&] {
    check_format(j, "trc.sparse/1");
    std::vector<Triplet> trip;
    for (const auto& t : j.at("triplets")) {
      trip.push_back({t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>(), rational_from_json(t.at(2))});
    }
    Domain domain = j.contains("domain") ? domain_from_json(j.at("domain")) : Domain::rational();
    return SparseMatrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(), std::move(trip), domain);
  });
}

Json to_json(const FlatteningMatrix& f) {
  Json out = to_json(f.matrix);
  out["format"] = "trc.flattening/1";
  out["p"] = f.p;
  out["order"] = f.order == BasisOrder::Lex ? "lex" : "split_zero";
  out["descriptor"] = f.descriptor;
  out["index_books"] = {{"rows", basis_book(f.row_basis, f.c)}, {"cols", basis_book(f.col_basis, f.b)}};
  if (f.subspace) out["subspace"] = dense_to_json(f.subspace->basis());
  return out;
}

Json to_json(const Certificate& c) {
  Json target;
  if (c.target == "matmul") {
    target = {{"kind", "matmul"}, {"n", c.n}, {"m", c.m}, {"l", c.n}};
  } else {
    target = {{"kind", "tensor"},
              {"dims", {c.tensor_dims.a, c.tensor_dims.b, c.tensor_dims.c}},
              {"hash", c.tensor_hash},
              {"domain", c.domain}};
  }
  Json j = {{"format", c.format},
            {"tool_version", c.tool_version},
            {"target", target},
            {"p", c.p},
            {"subspace", dense_to_json(c.subspace)},
            {"primes", c.primes},
            {"prime_ranks", c.prime_ranks},
            {"exact", c.exact},
            {"exact_rank", c.exact_rank ? Json(*c.exact_rank) : Json(nullptr)},
            {"flattening", {{"rows", c.flattening_rows}, {"cols", c.flattening_cols}, {"rank", c.flattening_rank}}},
            {"full_rank_target", c.full_rank_target},
            {"full_rank", c.full_rank},
            {"m_factor", c.m_factor},
            {"border_rank_lb", c.border_rank_lb},
            {"rank_lb", c.rank_lb ? Json(*c.rank_lb) : Json(nullptr)},
            {"rank_lb_formula_raw", c.rank_lb_formula_raw ? Json(*c.rank_lb_formula_raw) : Json(nullptr)},
            {"bound_formula", to_string(c.bound_formula)},
            {"seed", c.seed},
            {"retries", c.retries},
            {"attempts_used", c.attempts_used},
            {"complete", c.complete},
            {"notes", c.notes}};
  return j;
}

Certificate certificate_from_json(const Json& j) {
  return parse_guard("certificate", [&] {
    check_format(j, "trc.certificate/1");
    Certificate c;
    c.tool_version = j.at("tool_version").get<std::string>();
    const auto& target = j.at("target");
    c.target = target.at("kind").get<std::string>();
    if (c.target == "matmul") {
      c.n = target.at("n").get<std::size_t>();
      c.m = target.at("m").get<std::size_t>();
    } else {
      const auto& d = target.at("dims");
      c.tensor_dims = {d.at(0).get<std::size_t>(), d.at(1).get<std::size_t>(), d.at(2).get<std::size_t>()};
      c.tensor_hash = target.at("hash").get<std::string>();
      c.domain = target.at("domain").get<std::string>();
    }
    c.p = j.at("p").get<std::size_t>();
    c.subspace = dense_from_json(j.at("subspace"));
    c.primes = j.at("primes").get<std::vector<std::uint64_t>>();
    c.prime_ranks = j.at("prime_ranks").get<std::vector<std::size_t>>();
    c.exact = j.at("exact").get<bool>();
    if (!j.at("exact_rank").is_null()) c.exact_rank = j.at("exact_rank").get<std::size_t>();
    c.flattening_rows = j.at("flattening").at("rows").get<std::size_t>();
    c.flattening_cols = j.at("flattening").at("cols").get<std::size_t>();
    c.flattening_rank = j.at("flattening").at("rank").get<std::size_t>();
    c.full_rank_target = j.at("full_rank_target").get<std::size_t>();
    c.full_rank = j.at("full_rank").get<bool>();
    c.m_factor = j.at("m_factor").get<std::size_t>();
    c.border_rank_lb = j.at("border_rank_lb").get<std::uint64_t>();
    if (!j.at("rank_lb").is_null()) c.rank_lb = j.at("rank_lb").get<std::int64_t>();
    if (!j.at("rank_lb_formula_raw").is_null()) c.rank_lb_formula_raw = j.at("rank_lb_formula_raw").get<std::int64_t>();
    c.bound_formula = parse_bound_formula(j.at("bound_formula").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.retries = j.at("retries").get<std::size_t>();
    c.attempts_used = j.at("attempts_used").get<std::size_t>();
    c.complete = j.at("complete").get<bool>();
    c.notes = j.value("notes", "");
    return c;
  });
}

Json to_json(const SweepReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"r", row.r}, {"trials", row.trials}, {"min_lb", row.min_lb}, {"max_lb", row.max_lb},
                    {"tight", row.tight}});
  }
  return {{"format", r.format},
          {"dims", {r.dims.a, r.dims.b, r.dims.c}},
          {"p", r.p},
          {"r_max", r.r_max},
          {"trials", r.trials},
          {"seed", r.seed},
          {"rows", rows},
          {"violations", r.violations}};
}

namespace {

std::vector<std::vector<std::string>> table_cells(const std::vector<BoundTableRow>& rows, std::size_t p_max) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"n", "m"};
  for (std::size_t p = 1; p <= p_max; ++p) header.push_back("theorem_p" + std::to_string(p));
  for (std::size_t p = 1; p <= p_max; ++p) header.push_back("simple_p" + std::to_string(p));
  header.insert(header.end(), {"blaser", "lo_borderrank", "winner"});
  cells.push_back(header);
  for (const auto& row : rows) {
    std::vector<std::string> line{std::to_string(row.n), std::to_string(row.m)};
    for (std::size_t p = 1; p <= p_max; ++p) line.push_back(p <= row.theorem.size() ? row.theorem[p - 1].get_str() : "");
    for (std::size_t p = 1; p <= p_max; ++p) line.push_back(p <= row.simple.size() ? row.simple[p - 1].get_str() : "");
    line.push_back(row.reference.blaser.get_str());
    line.push_back(row.reference.lo_borderrank.get_str());
    line.push_back(row.winner_p ? "p" + std::to_string(*row.winner_p) : "");
    cells.push_back(std::move(line));
  }
  return cells;
}

}  // namespace

std::string bound_table_csv(const std::vector<BoundTableRow>& rows, std::size_t p_max) {
  std::ostringstream out;
  for (const auto& line : table_cells(rows, p_max)) {
    for (std::size_t i = 0; i < line.size(); ++i) out << (i ? "," : "") << line[i];
    out << '\n';
  }
  return out.str();
}

std::string bound_table_text(const std::vector<BoundTableRow>& rows, std::size_t p_max) {
  auto cells = table_cells(rows, p_max);
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << line[i];
    out << '\n';
  }
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw Error(ErrorCode::Io, "cannot write " + path);
}

}  // namespace trc
