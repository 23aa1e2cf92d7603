#pragma once

#include <string>

#include <json.hpp>

#include "trc/bounds.hpp"
#include "trc/certify.hpp"
#include "trc/flattening.hpp"
#include "trc/oracle.hpp"
#include "trc/tensor.hpp"

namespace trc {

using Json = nlohmann::json;

Json to_json(const Rational& x);
Rational rational_from_json(const Json& j);

Json domain_to_json(const Domain& d);
Domain domain_from_json(const Json& j);

/// {"format":"trc.tensor/1","dims":[a,b,c],"domain":"rational"|{"gfp":q},"entries":[[i,j,k,"coeff"],...]}
Json to_json(const Tensor3& t);
Tensor3 tensor_from_json(const Json& j);

/// {"format":"trc.decomposition/1","terms":[{"u":[...],"v":[...],"w":[...]},...]}
Json to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);

/// {"format":"trc.sparse/1","rows":R,"cols":C,"domain":...,"triplets":[[r,c,"coeff"],...]}
Json to_json(const SparseMatrix& m);
SparseMatrix sparse_from_json(const Json& j);

/// Sparse matrix plus the row/column index books.
Json to_json(const FlatteningMatrix& f);

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json to_json(const SweepReport& r);

std::string bound_table_csv(const std::vector<BoundTableRow>& rows, std::size_t p_max);
std::string bound_table_text(const std::vector<BoundTableRow>& rows, std::size_t p_max);

/// Throw Io on failure, ParseError on malformed JSON.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace trc
