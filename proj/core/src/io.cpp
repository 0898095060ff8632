#include "wirs/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace wirs {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_points_csv(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for write: " + path);
  out << "id,x,y,z,w\n";
  for (const WeightedPoint& p : dataset.points()) {
    out << p.id << ',' << format_double(p.pos.x) << ',' << format_double(p.pos.y) << ','
        << format_double(p.pos.z) << ',' << format_double(p.weight) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

Dataset read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file: " + path);
  std::vector<WeightedPoint> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    WeightedPoint p;
    std::istringstream ss(line);
    char comma;
    if (!(ss >> p.id >> comma >> p.pos.x >> comma >> p.pos.y >> comma >> p.pos.z >> comma >>
          p.weight)) {
      throw IoError("bad points row: " + line);
    }
    pts.push_back(p);
  }
  return Dataset::from_points(std::move(pts));
}

void write_queries_csv(const std::string& path, const std::vector<HalfspaceQuery>& queries) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for write: " + path);
  out << "qid,a,b,c,d,orient\n";
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const HalfspaceQuery& h = queries[i];
    out << i << ',' << format_double(h.plane.a) << ',' << format_double(h.plane.b) << ','
        << format_double(h.plane.c) << ",0,"
        << (h.orient == Orientation::Below ? "below" : "above") << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<HalfspaceQuery> read_queries_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file: " + path);
  std::vector<HalfspaceQuery> queries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6) throw IoError("bad query row: " + line);
    HalfspaceQuery h;
    h.plane.a = std::stod(fields[1]);
    h.plane.b = std::stod(fields[2]);
    h.plane.c = std::stod(fields[3]);
    if (fields[5] == "below") {
      h.orient = Orientation::Below;
    } else if (fields[5] == "above") {
      h.orient = Orientation::Above;
    } else {
      throw IoError("bad orientation: " + fields[5]);
    }
    queries.push_back(h);
  }
  return queries;
}

}  // namespace wirs
