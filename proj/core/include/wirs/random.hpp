#pragma once

#include <cstdint>
#include <random>

#include "wirs/common.hpp"

namespace wirs {

// Seedable uniform source. The contract is draw_unit() in [0,1) with an
// identical sequence for an identical seed; the generator is pinned to
// mt19937_64 so results are reproducible across platforms.
//
// Single-owner: concurrent queries each use their own RandomSource.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0) : engine_(splitmix64(seed)) {}

  virtual ~RandomSource() = default;

  virtual double draw_unit() {
    // 53 random bits -> [0,1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// Wraps another source and counts draws; used by tests asserting the
// draw-count contracts (e.g. one alias sample consumes exactly 2 draws).
class CountingRandomSource final : public RandomSource {
 public:
  explicit CountingRandomSource(RandomSource& inner) : inner_(inner) {}

  double draw_unit() override {
    ++count_;
    return inner_.draw_unit();
  }

  std::uint64_t count() const { return count_; }
  void reset() { count_ = 0; }

 private:
  RandomSource& inner_;
  std::uint64_t count_ = 0;
};

}  // namespace wirs
