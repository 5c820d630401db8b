#include "ghd/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ghd::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + std::string(field) + "'");
  return v;
}

std::vector<std::vector<double>> parse_rows(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    while (true) {
      const auto comma = line.find(',');
      row.push_back(parse_number(line.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows");
  return rows;
}

}  // namespace

RawSpace space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dist")) throw ParseError("space JSON must be an object with a \"dist\" field");
  const auto& rows = j.at("dist");
  if (!rows.is_array()) throw ParseError("\"dist\" must be an array of rows");
  const auto n = static_cast<Index>(rows.size());
  RawSpace raw;
  raw.dist.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n)
      throw ParseError("\"dist\" row " + std::to_string(i) + " does not have " + std::to_string(n) + " entries");
    for (Index k = 0; k < n; ++k) {
      const auto& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) throw ParseError("\"dist\" entries must be numbers");
      raw.dist(i, k) = v.get<double>();
    }
  }
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) {
      if (!l.is_string()) throw ParseError("labels must be strings");
      raw.labels.push_back(l.get<std::string>());
    }
  }
  return raw;
}

RawSpace parse_space_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  return space_from_json(j);
}

DistanceMatrix<double> parse_matrix_csv(std::string_view text) {
  const auto rows = parse_rows(text);
  const auto n = static_cast<Index>(rows.size());
  DistanceMatrix<double> d(n, n);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(rows[i].size()) != n)
      throw ParseError("matrix CSV is not square: row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    for (Index k = 0; k < n; ++k) d(i, k) = rows[i][k];
  }
  return d;
}

Eigen::MatrixXd parse_points_csv(std::string_view text) {
  const auto rows = parse_rows(text);
  const auto dim = static_cast<Index>(rows.front().size());
  Eigen::MatrixXd pts(static_cast<Index>(rows.size()), dim);
  for (Index i = 0; i < pts.rows(); ++i) {
    if (static_cast<Index>(rows[i].size()) != dim)
      throw ParseError("point CSV rows must all have " + std::to_string(dim) + " coordinates");
    for (Index k = 0; k < dim; ++k) pts(i, k) = rows[i][k];
  }
  return pts;
}

DistanceMatrix<double> pairwise_distances(const Eigen::MatrixXd& points, PointMetric metric) {
  const Index n = points.rows();
  DistanceMatrix<double> d = DistanceMatrix<double>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = i + 1; k < n; ++k) {
      const auto diff = (points.row(i) - points.row(k)).eval();
      const double v = metric == PointMetric::euclidean ? diff.norm() : diff.cwiseAbs().maxCoeff();
      d(i, k) = v;
      d(k, i) = v;
    }
  return d;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
}

RawSpace read_raw_space(const std::filesystem::path& path, InputFormat format, PointMetric metric) {
  const std::string text = read_file(path);
  if (format == InputFormat::automatic) format = path.extension() == ".json" ? InputFormat::json : InputFormat::csv;
  switch (format) {
    case InputFormat::json: return parse_space_json(text);
    case InputFormat::csv: return {parse_matrix_csv(text), {}};
    case InputFormat::points: return {pairwise_distances(parse_points_csv(text), metric), {}};
    case InputFormat::automatic: break;
  }
  throw ParseError("unknown input format");
}

FiniteMetricSpace load_space(const std::filesystem::path& path, InputFormat format, PointMetric metric, double tol) {
  auto raw = read_raw_space(path, format, metric);
  return FiniteMetricSpace(std::move(raw.dist), std::move(raw.labels), tol);
}

Json to_json(const FiniteMetricSpace& space) {
  Json rows = Json::array();
  for (Index i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < space.size(); ++k) row.push_back(space(i, k));
    rows.push_back(std::move(row));
  }
  Json j;
  j["labels"] = space.labels();
  j["dist"] = std::move(rows);
  return j;
}

Json to_json(const Relation& rel) {
  Json pairs = Json::array();
  for (const auto& [i, k] : rel.pairs()) pairs.push_back({i, k});
  Json j;
  j["pairs"] = std::move(pairs);
  return j;
}

Json to_json(const GHResult<double>& r) {
  Json j;
  j["value"] = r.value;
  j["exact"] = r.exact;
  j["lower_bound"] = r.lower_bound;
  j["upper_bound"] = r.upper_bound;
  j["nodes_explored"] = r.nodes_explored;
  j["witness"] = to_json(r.witness);
  return j;
}

Json to_json(const OracleResult<double>& r) {
  Json j;
  j["value"] = r.value;
  j["correspondences"] = r.count;
  j["witness"] = to_json(r.witness);
  return j;
}

Json to_json(const Realization<double>& r) {
  Json j;
  j["achieved"] = r.achieved;
  j["Z"] = to_json(r.Z);
  j["embed_x"] = r.embed_x;
  j["embed_y"] = r.embed_y;
  j["witness"] = to_json(r.witness);
  return j;
}

Json to_json(const Violation& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["indices"] = v.indices();
  return j;
}

Correspondence correspondence_from_json(const Json& j, Index left_size, Index right_size) {
  try {
    std::vector<IndexPair> pairs;
    for (const auto& p : j.at("pairs")) pairs.emplace_back(p.at(0).get<Index>(), p.at(1).get<Index>());
    return Correspondence(left_size, right_size, std::move(pairs));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed correspondence: ") + e.what());
  }
}

Realization<double> realization_from_json(const Json& j, Index left_size, Index right_size, double tol) {
  try {
    auto raw = space_from_json(j.at("Z"));
    FiniteMetricSpace z(std::move(raw.dist), std::move(raw.labels), tol);
    return {std::move(z), j.at("embed_x").get<std::vector<Index>>(), j.at("embed_y").get<std::vector<Index>>(),
            j.at("achieved").get<double>(), correspondence_from_json(j.at("witness"), left_size, right_size)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed realization: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ghd::io
