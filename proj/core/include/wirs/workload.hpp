#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wirs/dataset.hpp"
#include "wirs/geom3d.hpp"

namespace wirs {

enum class WeightDist : std::uint8_t { Uniform, LogUniform, TwoScale };
enum class PointDist : std::uint8_t { UnitCube, SphereSurface };

struct DataConfig {
  std::size_t n = 0;
  WeightDist weight_dist = WeightDist::LogUniform;
  double umax = 2.0;  // largest/smallest weight ratio target (>= 1)
  PointDist point_dist = PointDist::UnitCube;
  std::uint64_t seed = 0;
};

Dataset gen_points(const DataConfig& config);

enum class QueryMode : std::uint8_t { RandomHalfspace, KRange };

struct QueryConfig {
  std::size_t count = 0;
  QueryMode mode = QueryMode::RandomHalfspace;
  std::size_t m = 1;  // exact range size for KRange
  std::uint64_t seed = 0;
};

// KRange pins |h intersect X| = m by slicing the offset between the m-th and
// (m+1)-th order statistics of the points along the sampled slope (retrying
// on ties). Requires the dataset for KRange.
std::vector<HalfspaceQuery> gen_queries(const QueryConfig& config, const Dataset* points);

WeightDist parse_weight_dist(const std::string& name);
PointDist parse_point_dist(const std::string& name);
QueryMode parse_query_mode(const std::string& name);

}  // namespace wirs
