#include "wirs/approx_sampler.hpp"

#include <algorithm>
#include <cmath>

namespace wirs {

namespace {

void bump(OpCount* ops, std::uint64_t n = 1) {
  if (ops) ops->ops += n;
}

}  // namespace

std::size_t ApproxParams::r() const {
  return static_cast<std::size_t>(std::ceil(c_r / (eps * eps * eps)));
}

ApproxSampler ApproxSampler::build(const Dataset& dataset, const ApproxParams& params) {
  if (dataset.empty()) throw EmptyInputError("approx sampler: empty dataset");
  if (!(params.gamma > 0.0 && params.gamma < params.eps && params.eps < 1.0)) {
    throw BadInputError("approx sampler: need 0 < gamma < eps < 1");
  }
  ApproxSampler s;
  s.points_ = dataset.points();
  s.params_ = params;
  s.partition_ = WeightClassPartition::build_half_classes(dataset);

  const std::size_t t = s.partition_.class_count();
  s.class_ids_.resize(t);
  for (std::size_t c = 0; c < t; ++c) s.class_ids_[c] = s.partition_.class_members(c);

  const std::size_t r = params.r();
  const auto build_oriented = [&](bool mirrored, std::uint64_t salt) {
    Oriented o;
    std::vector<std::vector<Plane>> groups(t);
    for (std::size_t c = 0; c < t; ++c) {
      groups[c].reserve(s.class_ids_[c].size());
      for (std::uint32_t id : s.class_ids_[c]) {
        const Vec3 pos = mirrored ? mirror_z(s.points_[id].pos) : s.points_[id].pos;
        groups[c].push_back(below_form_plane(pos));
      }
    }
    std::vector<std::vector<Plane>> groups_copy = groups;
    o.group_max = GroupMaxIndex::build(std::move(groups_copy), PointLocationMode::Walk);

    o.hierarchies.reserve(t);
    o.cell_partitions.resize(t);
    o.class_fallback.reserve(t);
    for (std::size_t c = 0; c < t; ++c) {
      std::vector<double> w;
      std::vector<WeightedPoint> members;
      w.reserve(s.class_ids_[c].size());
      members.reserve(s.class_ids_[c].size());
      for (std::uint32_t id : s.class_ids_[c]) {
        w.push_back(s.points_[id].weight);
        members.push_back(s.points_[id]);
      }
      o.hierarchies.push_back(Hierarchy::build(std::move(groups[c]), std::move(w),
                                               params.cutting,
                                               splitmix64(params.build_seed ^ salt ^ c)));
      const Hierarchy& hier = o.hierarchies.back();
      auto& per_level = o.cell_partitions[c];
      per_level.resize(hier.level_count());
      for (std::size_t li = 0; li < hier.level_count(); ++li) {
        const auto& tris = hier.level(li).triangles();
        per_level[li].reserve(tris.size());
        for (const auto& tri : tris) {
          std::vector<WeightedPoint> pts;
          pts.reserve(tri.conflict.size());
          for (std::uint32_t local : tri.conflict) {
            pts.push_back(s.points_[s.class_ids_[c][local]]);
          }
          per_level[li].push_back(KdPartition::build(pts, r));
        }
      }
      o.class_fallback.push_back(KdPartition::build(members, r));
    }
    return o;
  };
  s.below_ = build_oriented(false, 0xbe104);
  s.above_ = build_oriented(true, 0xab0e4);
  return s;
}

std::pair<std::size_t, std::size_t> ApproxSampler::class_window(const HalfspaceQuery& h,
                                                                OpCount* ops) const {
  const Oriented& ori = oriented(h.orient);
  std::size_t probes = 0;
  const auto first = ori.group_max.first_nonempty(dual_point(h), &probes);
  bump(ops, probes);
  if (!first) throw EmptyRangeError();
  const double cutoff_ratio = static_cast<double>(points_.size()) / params_.gamma;
  return {*first, partition_.cutoff_index(*first, cutoff_ratio)};
}

const KdPartition& ApproxSampler::query_partition(const Oriented& ori, std::size_t class_index,
                                                  const Vec3& q, OpCount* ops) const {
  std::size_t probes = 0;
  const auto hit = ori.hierarchies[class_index].query(q, &probes);
  bump(ops, probes);
  if (hit) return ori.cell_partitions[class_index][hit->level_index][hit->triangle_index];
  return ori.class_fallback[class_index];
}

CandidateSet ApproxSampler::generate_candidates(std::size_t class_index, const HalfspaceQuery& h,
                                                RandomSource& rng, OpCount* ops) const {
  const Oriented& ori = oriented(h.orient);
  const KdPartition& part = query_partition(ori, class_index, dual_point(h), ops);

  CandidateSet set;
  set.reps.reserve(part.cell_count());
  for (std::size_t ci = 0; ci < part.cell_count(); ++ci) {
    const KdPartition::Cell& cell = part.cells()[ci];
    bump(ops);
    const CellSide side = KdPartition::classify(cell, h);
    if (side == CellSide::Outside) continue;
    CandidateSet::Rep rep;
    rep.point_id = cell.ids[cell.alias.sample(rng)];
    rep.cell_id = static_cast<std::uint32_t>(ci);
    rep.cell_weight = cell.total;
    rep.class_index = static_cast<std::uint32_t>(class_index);
    rep.cell = &cell;
    const auto idx = static_cast<std::uint32_t>(set.reps.size());
    (side == CellSide::Inside ? set.inside_pool : set.straddling_pool).push_back(idx);
    set.reps.push_back(rep);
  }
  return set;
}

CandidatePools ApproxSampler::pool_candidates(std::vector<CandidateSet> sets,
                                              OpCount* ops) const {
  CandidatePools pools;
  for (CandidateSet& set : sets) {
    const auto base = static_cast<std::uint32_t>(pools.reps.size());
    for (std::uint32_t idx : set.inside_pool) pools.inside.push_back(base + idx);
    for (std::uint32_t idx : set.straddling_pool) pools.straddling.push_back(base + idx);
    pools.reps.insert(pools.reps.end(), set.reps.begin(), set.reps.end());
  }
  std::vector<double> w_in, w_str;
  w_in.reserve(pools.inside.size());
  w_str.reserve(pools.straddling.size());
  WeightSum in_sum, str_sum;
  for (std::uint32_t idx : pools.inside) {
    bump(ops);
    w_in.push_back(pools.reps[idx].cell_weight);
    in_sum.add(pools.reps[idx].cell_weight);
  }
  for (std::uint32_t idx : pools.straddling) {
    bump(ops);
    w_str.push_back(pools.reps[idx].cell_weight);
    str_sum.add(pools.reps[idx].cell_weight);
  }
  pools.w_in = in_sum.value();
  pools.w_str = str_sum.value();
  if (!w_in.empty()) pools.inside_alias = AliasTable::build(w_in);
  if (!w_str.empty()) pools.straddling_alias = AliasTable::build(w_str);
  return pools;
}

std::uint32_t ApproxSampler::select_one(CandidatePools& pools, const HalfspaceQuery& h,
                                        RandomSource& rng, OpCount* ops) const {
  if (pools.reps.empty()) throw EmptyRangeError("select_one: no candidates");

  const auto replace = [&](CandidateSet::Rep& rep) {
    bump(ops);
    rep.point_id = rep.cell->ids[rep.cell->alias.sample(rng)];
  };
  const auto draw_inside = [&]() -> std::uint32_t {
    bump(ops);
    CandidateSet::Rep& rep = pools.reps[pools.inside[pools.inside_alias.sample(rng)]];
    const std::uint32_t out = rep.point_id;
    replace(rep);
    return out;
  };

  if (pools.inside.empty()) {
    // No inside cell (tiny-scale corner): retry within the straddling pool,
    // capped at pool size, then scan for any member of h.
    for (std::size_t round = 0; round < pools.straddling.size(); ++round) {
      bump(ops);
      CandidateSet::Rep& rep = pools.reps[pools.straddling[pools.straddling_alias.sample(rng)]];
      const std::uint32_t cand = rep.point_id;
      replace(rep);
      bump(ops);
      if (contains(h, points_[cand].pos)) return cand;
    }
    for (std::uint32_t idx : pools.straddling) {
      for (std::uint32_t id : pools.reps[idx].cell->ids) {
        bump(ops);
        if (contains(h, points_[id].pos)) return id;
      }
    }
    throw EmptyRangeError("select_one: no candidate lies in the query");
  }

  bump(ops);  // coin
  const double coin = rng.draw_unit() * (pools.w_in + pools.w_str);
  if (coin < pools.w_str && !pools.straddling.empty()) {
    bump(ops);
    CandidateSet::Rep& rep = pools.reps[pools.straddling[pools.straddling_alias.sample(rng)]];
    const std::uint32_t cand = rep.point_id;
    replace(rep);
    bump(ops);
    if (contains(h, points_[cand].pos)) return cand;
    // One-shot: a failed straddling attempt redirects to the inside pool.
  }
  return draw_inside();
}

std::vector<std::uint32_t> ApproxSampler::sample_k(const HalfspaceQuery& h, std::size_t k,
                                                   RandomSource& rng, OpCount* ops) const {
  const auto [lo, hi] = class_window(h, ops);
  std::vector<CandidateSet> sets;
  sets.reserve(hi - lo);
  for (std::size_t c = lo; c < hi; ++c) {
    sets.push_back(generate_candidates(c, h, rng, ops));
  }
  CandidatePools pools = pool_candidates(std::move(sets), ops);

  std::vector<std::uint32_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(select_one(pools, h, rng, ops));
  }
  return out;
}

ApproxSampler::QueryLayout ApproxSampler::describe_query(const HalfspaceQuery& h) const {
  QueryLayout layout;
  const auto [lo, hi] = class_window(h, nullptr);
  layout.class_lo = lo;
  layout.class_hi = hi;
  const Oriented& ori = oriented(h.orient);
  const Vec3 q = dual_point(h);
  for (std::size_t c = lo; c < hi; ++c) {
    const KdPartition& part = query_partition(ori, c, q, nullptr);
    for (const auto& cell : part.cells()) {
      const CellSide side = KdPartition::classify(cell, h);
      if (side == CellSide::Outside) continue;
      CellLayout cl;
      cl.ids = cell.ids;
      cl.total = cell.total;
      cl.side = side;
      cl.class_index = c;
      cl.weights.reserve(cell.ids.size());
      for (std::uint32_t id : cell.ids) cl.weights.push_back(points_[id].weight);
      layout.cells.push_back(std::move(cl));
    }
  }
  for (std::size_t c = hi; c < partition_.class_count(); ++c) {
    for (std::uint32_t id : class_ids_[c]) layout.dropped.push_back(id);
  }
  return layout;
}

std::size_t ApproxSampler::space_entry_count() const {
  std::size_t total = 0;
  for (const Oriented* o : {&below_, &above_}) {
    total += o->group_max.stored_plane_refs();
    for (const Hierarchy& h : o->hierarchies) total += h.conflict_entry_count() * 2;
    for (const auto& per_level : o->cell_partitions) {
      for (const auto& tris : per_level) {
        for (const KdPartition& part : tris) {
          for (const auto& cell : part.cells()) total += 2 * cell.ids.size();
        }
      }
    }
  }
  return total;
}

}  // namespace wirs
