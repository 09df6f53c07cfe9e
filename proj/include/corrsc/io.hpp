#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "corrsc/basis.hpp"
#include "corrsc/collocation.hpp"
#include "corrsc/distribution.hpp"
#include "corrsc/quadrature.hpp"

namespace corrsc {

/// Key order is fixed, so serialization is canonical.
using Json = nlohmann::ordered_json;

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

/// Canonical text for a JSON document (2-space indent, trailing newline).
std::string dump_json(const Json& doc);
Json parse_json(const std::string& text, const std::string& context);

Json mixture_to_json(const GaussianMixture& gm);
GaussianMixture mixture_from_json(const Json& doc);

Json basis_to_json(const OrthoBasis& basis);
OrthoBasis basis_from_json(const Json& doc);

Json rule_to_json(const QuadratureRule& rule);
QuadratureRule rule_from_json(const Json& doc);

/// Surrogate file: the basis, one coefficient vector per output and metadata.
struct SurrogateSet {
  std::vector<Surrogate> outputs;
  std::vector<std::string> labels;
};
Json surrogates_to_json(const SurrogateSet& set);
SurrogateSet surrogates_from_json(const Json& doc);

/// CSV with a header row xi1,...,xid and one point per row.
void write_points_csv(std::ostream& os, const Points& points);
Points read_points_csv(std::istream& is);

/// Values CSV: one node per line, outputs separated by commas or spaces,
/// blank lines and `#` comments skipped.
Eigen::MatrixXd read_values_csv(std::istream& is, const std::string& context);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace corrsc
