#include "corrsc/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "corrsc/error.hpp"

namespace corrsc {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

Json parse_json(const std::string& text, const std::string& context) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(context + ": " + e.what());
  }
}

namespace {

// Wraps nlohmann type errors so callers only see corrsc exceptions.
template <typename F>
auto checked(const std::string& context, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(context + ": " + e.what());
  }
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from(const Json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a.at(i).get<double>();
  return v;
}

template <typename Matrix>
Json matrix_json(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(std::move(row));
  }
  return a;
}

template <typename Matrix>
Matrix matrix_from(const Json& a, Eigen::Index cols, const std::string& what) {
  Matrix m(static_cast<Eigen::Index>(a.size()), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& row = a.at(i);
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidArgument(what + ": row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                            " entries, expected " + std::to_string(cols));
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), j) = row.at(static_cast<std::size_t>(j)).get<double>();
    }
  }
  return m;
}

}  // namespace

Json mixture_to_json(const GaussianMixture& gm) {
  Json doc;
  doc["dim"] = gm.dim();
  Json comps = Json::array();
  for (const auto& c : gm.components()) {
    Json jc;
    jc["weight"] = c.weight;
    jc["mean"] = vector_json(c.mean);
    jc["cov"] = matrix_json(c.cov);
    comps.push_back(std::move(jc));
  }
  doc["components"] = std::move(comps);
  return doc;
}

GaussianMixture mixture_from_json(const Json& doc) {
  return checked("mixture", [&] {
    const int dim = doc.at("dim").get<int>();
    if (dim < 1) throw InvalidArgument("mixture: dim must be >= 1");
    std::vector<GaussianComponent> comps;
    const auto& list = doc.at("components");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto& jc = list.at(k);
      const std::string label = "mixture component " + std::to_string(k);
      GaussianComponent c;
      c.weight = jc.at("weight").get<double>();
      c.mean = vector_from(jc.at("mean"));
      if (c.mean.size() != dim) {
        throw InvalidArgument(label + ": mean has " + std::to_string(c.mean.size()) +
                              " entries, expected " + std::to_string(dim));
      }
      c.cov = matrix_from<Eigen::MatrixXd>(jc.at("cov"), dim, label + " covariance");
      if (c.cov.rows() != dim) throw InvalidArgument(label + ": covariance must have " + std::to_string(dim) + " rows");
      comps.push_back(std::move(c));
    }
    return GaussianMixture(std::move(comps));
  });
}

Json basis_to_json(const OrthoBasis& basis) {
  Json doc;
  doc["dim"] = basis.dim();
  doc["order"] = basis.order();
  doc["indices"] = basis.indices();
  Json coeffs = Json::array();
  const auto& c = basis.coeff_matrix();
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) coeffs.push_back(c(i, j));
  }
  doc["coeff_matrix"] = std::move(coeffs);
  doc["gram_residual"] = basis.gram_residual();
  return doc;
}

OrthoBasis basis_from_json(const Json& doc) {
  return checked("basis", [&] {
    const int dim = doc.at("dim").get<int>();
    const int order = doc.at("order").get<int>();
    const auto indices = doc.at("indices").get<std::vector<MultiIndex>>();
    if (indices != enumerate_indices(dim, order)) {
      throw InvalidArgument("basis: indices are not in canonical graded-lexicographic order");
    }
    const auto flat = doc.at("coeff_matrix").get<std::vector<double>>();
    const auto n = static_cast<Eigen::Index>(indices.size());
    if (static_cast<Eigen::Index>(flat.size()) != n * n) {
      throw InvalidArgument("basis: coeff_matrix must have " + std::to_string(n * n) + " entries");
    }
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) c(i, j) = flat[static_cast<std::size_t>(i * n + j)];
    }
    return OrthoBasis(dim, order, std::move(c), doc.at("gram_residual").get<double>());
  });
}

Json rule_to_json(const QuadratureRule& rule) {
  Json doc;
  doc["dim"] = rule.nodes.cols();
  doc["order_2p"] = rule.basis_order;
  doc["nodes"] = matrix_json(rule.nodes);
  doc["weights"] = vector_json(rule.weights);
  doc["residual_norm"] = rule.residual_norm;
  doc["converged"] = rule.converged;
  doc["seed"] = rule.seed;
  doc["history"] = rule.history;
  return doc;
}

QuadratureRule rule_from_json(const Json& doc) {
  return checked("rule", [&] {
    QuadratureRule rule;
    const auto dim = doc.at("dim").get<Eigen::Index>();
    rule.basis_order = doc.at("order_2p").get<int>();
    rule.nodes = matrix_from<Points>(doc.at("nodes"), dim, "rule nodes");
    rule.weights = vector_from(doc.at("weights"));
    if (rule.weights.size() != rule.nodes.rows()) {
      throw InvalidArgument("rule: " + std::to_string(rule.nodes.rows()) + " nodes but " +
                            std::to_string(rule.weights.size()) + " weights");
    }
    if ((rule.weights.array() < 0.0).any()) throw InvalidArgument("rule: negative weight");
    rule.residual_norm = doc.at("residual_norm").get<double>();
    rule.converged = doc.at("converged").get<bool>();
    rule.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("history")) rule.history = doc.at("history").get<std::vector<double>>();
    return rule;
  });
}

Json surrogates_to_json(const SurrogateSet& set) {
  if (set.outputs.empty()) throw InvalidArgument("surrogate set is empty");
  const auto& first = set.outputs.front();
  Json doc;
  doc["basis"] = basis_to_json(first.basis);
  Json coeffs = Json::array();
  for (const auto& s : set.outputs) coeffs.push_back(vector_json(s.coefficients));
  doc["coefficients"] = std::move(coeffs);
  Json meta;
  meta["model"] = first.model;
  meta["sample_count"] = first.sample_count;
  meta["rule_residual"] = first.rule_residual;
  meta["outputs"] = set.labels;
  doc["meta"] = std::move(meta);
  return doc;
}

SurrogateSet surrogates_from_json(const Json& doc) {
  return checked("surrogate", [&] {
    const OrthoBasis basis = basis_from_json(doc.at("basis"));
    const auto& meta = doc.at("meta");
    SurrogateSet set;
    set.labels = meta.at("outputs").get<std::vector<std::string>>();
    const auto& coeffs = doc.at("coefficients");
    if (coeffs.size() != set.labels.size()) {
      throw InvalidArgument("surrogate: one coefficient vector per output label required");
    }
    for (const auto& c : coeffs) {
      Surrogate s{basis, vector_from(c), meta.at("rule_residual").get<double>(),
                  meta.at("model").get<std::string>(), meta.at("sample_count").get<std::size_t>()};
      if (s.coefficients.size() != static_cast<Eigen::Index>(basis.size())) {
        throw InvalidArgument("surrogate: coefficient vector length must be " + std::to_string(basis.size()));
      }
      set.outputs.push_back(std::move(s));
    }
    return set;
  });
}

void write_points_csv(std::ostream& os, const Points& points) {
  for (Eigen::Index i = 0; i < points.cols(); ++i) os << (i ? "," : "") << "xi" << (i + 1);
  os << '\n';
  for (Eigen::Index k = 0; k < points.rows(); ++k) {
    for (Eigen::Index i = 0; i < points.cols(); ++i) os << (i ? "," : "") << format_double(points(k, i));
    os << '\n';
  }
}

namespace {

std::vector<double> parse_fields(const std::string& line, const std::string& context, std::size_t line_no) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ',' || line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ',' && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    double v = 0.0;
    const char* first = line.data() + pos;
    const char* last = line.data() + end;
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
      throw ModelError(context + ": line " + std::to_string(line_no) + ": cannot parse '" +
                       line.substr(pos, end - pos) + "'");
    }
    out.push_back(v);
    pos = end;
  }
  return out;
}

}  // namespace

Points read_points_csv(std::istream& is) {
  std::string line;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("xi", 0) == 0) continue;
    }
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(parse_fields(line, "points", line_no));
  }
  if (rows.empty()) return Points(0, 0);
  Points p(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != rows[0].size()) throw InvalidArgument("points: ragged rows");
    for (std::size_t i = 0; i < rows[k].size(); ++i) {
      p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = rows[k][i];
    }
  }
  return p;
}

Eigen::MatrixXd read_values_csv(std::istream& is, const std::string& context) {
  std::string line;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto fields = parse_fields(line, context, line_no);
    if (fields.empty()) continue;
    if (!rows.empty() && fields.size() != rows.front().size()) {
      throw ModelError(context + ": line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " values, expected " +
                       std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(fields));
  }
  const auto cols = rows.empty() ? Eigen::Index{1} : static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (Eigen::Index j = 0; j < cols; ++j) values(static_cast<Eigen::Index>(k), j) = rows[k][static_cast<std::size_t>(j)];
  }
  return values;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write '" + path + "'");
  os << text;
  if (!os) throw InvalidArgument("failed writing '" + path + "'");
}

}  // namespace corrsc
