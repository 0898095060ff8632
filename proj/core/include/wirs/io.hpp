#pragma once

#include <string>
#include <vector>

#include "wirs/dataset.hpp"
#include "wirs/geom3d.hpp"

namespace wirs {

// CSV with header `id,x,y,z,w`; floats at 17 significant digits so a
// write/read round trip is bit-exact.
void write_points_csv(const std::string& path, const Dataset& dataset);
Dataset read_points_csv(const std::string& path);

// CSV with header `qid,a,b,c,d,orient`: z <=/≥ a*x + b*y + c, d reserved 0,
// orient in {below, above}.
void write_queries_csv(const std::string& path, const std::vector<HalfspaceQuery>& queries);
std::vector<HalfspaceQuery> read_queries_csv(const std::string& path);

std::string format_double(double v);  // shortest 17-significant-digit form

}  // namespace wirs
