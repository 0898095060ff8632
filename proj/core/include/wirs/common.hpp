#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wirs {

// Error hierarchy. Precondition violations and unrecoverable build failures
// throw; recoverable query outcomes (NotFound, LevelOverflow) are modeled as
// optional returns instead.
class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class EmptyInputError : public Error {
 public:
  EmptyInputError(const std::string& what = "empty input") : Error(what) {}
};

class NonPositiveWeightError : public Error {
 public:
  NonPositiveWeightError(const std::string& what = "weights must be positive and finite")
      : Error(what) {}
};

class BadIntervalError : public Error {
 public:
  BadIntervalError(const std::string& what = "bad interval") : Error(what) {}
};

class VerticalQueryError : public Error {
 public:
  VerticalQueryError(const std::string& what = "vertical halfspace not representable")
      : Error(what) {}
};

class ConstructionFailedError : public Error {
 public:
  ConstructionFailedError(const std::string& what = "construction failed after retries")
      : Error(what) {}
};

class EmptyRangeError : public Error {
 public:
  EmptyRangeError(const std::string& what = "query range contains no point") : Error(what) {}
};

class TooLargeError : public Error {
 public:
  TooLargeError(const std::string& what = "enumeration too large") : Error(what) {}
};

class DegenerateBinsError : public Error {
 public:
  DegenerateBinsError(const std::string& what = "fewer than 2 bins after pooling")
      : Error(what) {}
};

class BadInputError : public Error {
 public:
  BadInputError(const std::string& what = "bad input") : Error(what) {}
};

class IoError : public Error {
 public:
  IoError(const std::string& what = "io error") : Error(what) {}
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct BoundingBox2D {
  double xlo = -1.0, xhi = 1.0, ylo = -1.0, yhi = 1.0;
  bool inside(double x, double y) const { return x >= xlo && x <= xhi && y >= ylo && y <= yhi; }
};

// SplitMix64; used to derive independent seeds (e.g. per-query seed = mix(seed ^ qid)).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Running compensated sum (Neumaier). Accumulation is left-to-right over the
// input order so totals are reproducible across runs.
class WeightSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace wirs
