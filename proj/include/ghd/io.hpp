#pragma once

#include "ghd/correspondence.hpp"
#include "ghd/geodesic.hpp"
#include "ghd/metric_space.hpp"
#include "ghd/realization.hpp"
#include "ghd/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ghd::io {

/// Field order is part of the output format.
using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InputFormat { automatic, json, csv, points };
enum class PointMetric { euclidean, chebyshev };

/// Distance matrix and labels as read, before axiom validation.
struct RawSpace {
  DistanceMatrix<double> dist;
  std::vector<std::string> labels;
};

RawSpace parse_space_json(std::string_view text);
RawSpace space_from_json(const Json& j);
DistanceMatrix<double> parse_matrix_csv(std::string_view text);
Eigen::MatrixXd parse_points_csv(std::string_view text);
DistanceMatrix<double> pairwise_distances(const Eigen::MatrixXd& points, PointMetric metric);

/// Reads a space file. `automatic` picks JSON for a .json extension and
/// matrix CSV otherwise.
RawSpace read_raw_space(const std::filesystem::path& path, InputFormat format = InputFormat::automatic,
                        PointMetric metric = PointMetric::euclidean);
FiniteMetricSpace load_space(const std::filesystem::path& path, InputFormat format = InputFormat::automatic,
                             PointMetric metric = PointMetric::euclidean, double tol = kMetricTolerance);

Json to_json(const FiniteMetricSpace& space);
Json to_json(const Relation& rel);
Json to_json(const GHResult<double>& result);
Json to_json(const OracleResult<double>& result);
Json to_json(const Realization<double>& r);
Json to_json(const Violation& v);

Correspondence correspondence_from_json(const Json& j, Index left_size, Index right_size);
/// Inverse of to_json(Realization); revalidates Z as a metric space.
Realization<double> realization_from_json(const Json& j, Index left_size, Index right_size,
                                          double tol = kMetricTolerance);

/// Two-space indentation and a trailing newline. Doubles are written in the
/// shortest form that parses back to the same value.
std::string dump(const Json& j);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ghd::io
