#include "wirs/expected_sampler.hpp"

#include <algorithm>
#include <cmath>

namespace wirs {

ExpectedSampler ExpectedSampler::build(const Dataset& dataset,
                                       const ExpectedSamplerConfig& config) {
  if (dataset.empty()) throw EmptyInputError("expected sampler: empty dataset");
  ExpectedSampler s;
  s.points_ = dataset.points();
  const double n = static_cast<double>(dataset.size());
  s.ratio_ = config.group_ratio > 1.0 ? config.group_ratio : std::max(4.0, n * n);
  s.partition_ = WeightClassPartition::build_coarse_groups(dataset, s.ratio_);

  const std::size_t t = s.partition_.class_count();
  s.group_ids_.resize(t);
  s.group_alias_.resize(t);
  std::vector<std::vector<Plane>> below_groups(t), above_groups(t);
  for (std::size_t g = 0; g < t; ++g) {
    s.group_ids_[g] = s.partition_.class_members(g);
    std::vector<double> w;
    w.reserve(s.group_ids_[g].size());
    below_groups[g].reserve(s.group_ids_[g].size());
    above_groups[g].reserve(s.group_ids_[g].size());
    for (std::uint32_t id : s.group_ids_[g]) {
      const WeightedPoint& p = s.points_[id];
      w.push_back(p.weight);
      below_groups[g].push_back(below_form_plane(p.pos));
      above_groups[g].push_back(below_form_plane(mirror_z(p.pos)));
    }
    s.group_alias_[g] = AliasTable::build(w);
  }

  const auto build_oriented = [&](std::vector<std::vector<Plane>> groups, std::uint64_t salt) {
    Oriented o;
    std::vector<std::vector<Plane>> groups_copy = groups;
    o.group_max = GroupMaxIndex::build(std::move(groups_copy), PointLocationMode::Walk);
    o.hierarchies.reserve(t);
    for (std::size_t g = 0; g < t; ++g) {
      std::vector<double> w;
      w.reserve(s.group_ids_[g].size());
      for (std::uint32_t id : s.group_ids_[g]) w.push_back(s.points_[id].weight);
      o.hierarchies.push_back(Hierarchy::build(std::move(groups[g]), std::move(w),
                                               config.cutting,
                                               splitmix64(config.build_seed ^ salt ^ g)));
    }
    return o;
  };
  s.below_ = build_oriented(std::move(below_groups), 0xbe104);
  s.above_ = build_oriented(std::move(above_groups), 0xab0e4);
  return s;
}

std::vector<std::uint32_t> ExpectedSampler::sample(const HalfspaceQuery& h, std::size_t k,
                                                   RandomSource& rng) const {
  queries_.fetch_add(1, std::memory_order_relaxed);
  const Oriented& ori = oriented(h.orient);
  const Vec3 q = dual_point(h);

  const auto first = ori.group_max.first_nonempty(q);
  if (!first) throw EmptyRangeError();
  const std::size_t i = *first;
  const std::size_t i_cut = partition_.cutoff_index(i, ratio_);

  // Conflict-list windows Y_l for classes [i, i_cut); overflow falls back to
  // the full group.
  struct Window {
    std::size_t group = 0;
    const AliasTable* alias = nullptr;             // conflict alias or full-group alias
    const std::vector<std::uint32_t>* conflict = nullptr;  // nullptr => full group
    double weight = 0.0;
  };
  std::vector<Window> windows;
  windows.reserve(i_cut - i);
  for (std::size_t g = i; g < i_cut; ++g) {
    Window w;
    w.group = g;
    const auto hit = ori.hierarchies[g].query(q);
    if (hit) {
      const auto& tri = ori.hierarchies[g].triangle(*hit);
      w.alias = &tri.alias;
      w.conflict = &tri.conflict;
      w.weight = tri.conflict_weight;
    } else {
      fallback_scans_.fetch_add(1, std::memory_order_relaxed);
      w.alias = &group_alias_[g];
      w.weight = partition_.class_total(g);
    }
    windows.push_back(w);
  }

  std::vector<double> top_weights;
  top_weights.reserve(windows.size() + 1);
  for (const Window& w : windows) top_weights.push_back(w.weight);
  const double suffix = partition_.suffix_total(i_cut);
  const bool has_suffix = suffix > 0.0;
  if (has_suffix) top_weights.push_back(suffix);
  const AliasTable top = AliasTable::build(top_weights);

  // Case-1 alias over every point in classes >= i_cut; built lazily on the
  // first suffix hit of this query and reused for its remaining draws.
  std::vector<std::uint32_t> suffix_ids;
  AliasTable suffix_alias;
  const auto ensure_suffix_alias = [&] {
    if (!suffix_ids.empty()) return;
    std::vector<double> w;
    for (std::size_t g = i_cut; g < partition_.class_count(); ++g) {
      for (std::uint32_t id : group_ids_[g]) {
        suffix_ids.push_back(id);
        w.push_back(points_[id].weight);
      }
    }
    suffix_alias = AliasTable::build(w);
  };

  std::vector<std::uint32_t> out;
  out.reserve(k);
  while (out.size() < k) {
    const std::uint32_t slot = top.sample(rng);
    std::uint32_t candidate = 0;
    if (has_suffix && slot == windows.size()) {
      case1_hits_.fetch_add(1, std::memory_order_relaxed);
      ensure_suffix_alias();
      candidate = suffix_ids[suffix_alias.sample(rng)];
    } else {
      const Window& w = windows[slot];
      const std::uint32_t local = w.alias->sample(rng);
      candidate = w.conflict ? group_ids_[w.group][(*w.conflict)[local]]
                             : group_ids_[w.group][local];
    }
    if (contains(h, points_[candidate].pos)) {
      out.push_back(candidate);
      samples_.fetch_add(1, std::memory_order_relaxed);
    } else {
      retries_.fetch_add(1, std::memory_order_relaxed);
    }
  }
  return out;
}

QueryStats ExpectedSampler::stats() const {
  QueryStats st;
  st.queries = queries_.load(std::memory_order_relaxed);
  st.samples = samples_.load(std::memory_order_relaxed);
  st.retries = retries_.load(std::memory_order_relaxed);
  st.case1_hits = case1_hits_.load(std::memory_order_relaxed);
  st.fallback_scans = fallback_scans_.load(std::memory_order_relaxed);
  return st;
}

void ExpectedSampler::reset_stats() {
  queries_.store(0, std::memory_order_relaxed);
  samples_.store(0, std::memory_order_relaxed);
  retries_.store(0, std::memory_order_relaxed);
  case1_hits_.store(0, std::memory_order_relaxed);
  fallback_scans_.store(0, std::memory_order_relaxed);
}

std::size_t ExpectedSampler::space_entry_count() const {
  std::size_t total = 0;
  for (const Oriented* o : {&below_, &above_}) {
    total += o->group_max.stored_plane_refs();
    for (const Hierarchy& h : o->hierarchies) {
      total += h.conflict_entry_count() * 2;  // conflict id + alias entry
    }
  }
  for (const AliasTable& a : group_alias_) total += a.entry_count();
  return total;
}

}  // namespace wirs
