#include "rgg/engine_batch.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <stdexcept>

namespace rgg {

namespace {

std::int64_t now_us() {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

} // namespace

BatchEngine::BatchEngine(const ComponentSet& components, Scene& scene, EngineOptions options, int cell_capacity)
    : components_(&components),
      scene_(scene),
      options_(options),
      layout_(BatchLayout::serialize(components, scene.obstacles)),
      grid_(SpatialGrid::build(layout_.component_aabb, scene.bounds, cell_capacity)),
      pool_(std::make_unique<ThreadPool>(options.threads)) {
    if (scene.obstacles.size() > 64) throw std::invalid_argument("obstacle bitsets support at most 64 obstacles");
    states_.assign(layout_.n_components, ValidityState::Valid);
    bits_.assign(layout_.n_components, 0);
    listed_.resize(scene.obstacles.size());
}

void BatchEngine::set_state(ComponentId c, ValidityState s) {
    if (states_[c] == s) return;
    touched_.push_back({c, states_[c]});
    if (states_[c] == ValidityState::Unknown) --unknown_count_;
    if (s == ValidityState::Unknown) ++unknown_count_;
    states_[c] = s;
}

void BatchEngine::finish_counts(UpdateReport& r) {
    std::stable_sort(touched_.begin(), touched_.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < touched_.size(); ++i) {
        if (i > 0 && touched_[i].first == touched_[i - 1].first) continue;
        const ValidityState before = touched_[i].second;
        const ValidityState after = states_[touched_[i].first];
        if (before == after) continue;
        if (after == ValidityState::Valid) ++r.new_green;
        if (after == ValidityState::Invalid) ++r.new_red;
        if (after == ValidityState::Unknown) ++r.new_gray;
    }
}

void BatchEngine::batch_over(const std::vector<ComponentId>& candidates, ObstacleId o,
                             std::vector<std::uint8_t>& mask) {
    const int nb = layout_.n_bodies;
    pair_idx_.clear();
    for (ComponentId c : candidates) {
        for (int b = 0; b < nb; ++b) pair_idx_.push_back(static_cast<std::int32_t>(c) * nb + b);
    }
    const int n = static_cast<int>(pair_idx_.size());
    pair_out_.assign(n, 0);
    const kern::Backend& backend = kern::active_backend();
    const kern::SatBox* obstacle = &layout_.obstacle_sat[o];
    pool_->parallel_for(n, [&](int begin, int end) {
        backend.sat_batch(layout_.edge_sat.data(), pair_idx_.data() + begin, end - begin, obstacle,
                          pair_out_.data() + begin);
    });
    mask.assign(candidates.size(), 0);
    for (size_t i = 0; i < candidates.size(); ++i) {
        for (int b = 0; b < nb; ++b) mask[i] |= pair_out_[i * nb + b];
    }
}

void BatchEngine::batch_under(const std::vector<ComponentId>& candidates, ObstacleId o,
                              std::vector<std::uint8_t>& mask) {
    mask.assign(candidates.size(), 0);
    const kern::Backend& backend = kern::active_backend();
    const int nb = layout_.n_bodies;
    const int ns = layout_.n_slots;
    const int k = layout_.max_segments;
    for (int b = 0; b < nb; ++b) {
        for (int s = 0; s < ns; ++s) {
            seg_idx_.clear();
            seg_owner_.clear();
            for (size_t ci = 0; ci < candidates.size(); ++ci) {
                const size_t row = layout_.row_index(candidates[ci], b, s);
                const std::int32_t count = layout_.seg_count[row];
                const std::int32_t base = static_cast<std::int32_t>(row * k);
                for (std::int32_t j = 0; j < count; ++j) {
                    seg_idx_.push_back(base + j);
                    seg_owner_.push_back(static_cast<std::int32_t>(ci));
                }
            }
            if (seg_idx_.empty()) continue;
            const double r_total = layout_.o_minus_r[o] + layout_.spline_radius[b * ns + s];
            const int n = static_cast<int>(seg_idx_.size());
            seg_out_.assign(n, 0);
            for (std::int32_t sp = 0; sp < layout_.o_sphere_count[o]; ++sp) {
                const double* center = &layout_.o_minus_c[(static_cast<size_t>(o) * layout_.n_spheres + sp) * 3];
                pool_->parallel_for(n, [&](int begin, int end) {
                    backend.seg_sphere_batch(layout_.seg_prep.data(), seg_idx_.data() + begin, end - begin, center,
                                             r_total, seg_out_.data() + begin);
                });
                for (int i = 0; i < n; ++i) {
                    if (seg_out_[i]) mask[seg_owner_[i]] = 1;
                }
            }
        }
    }
}

void BatchEngine::revalidate_old_intersections(ObstacleId o) {
    std::vector<ComponentId> holders;
    holders.swap(listed_[o]);
    const std::uint64_t bit = 1ull << o;
    std::vector<ComponentId> recheck;
    for (ComponentId c : holders) {
        bits_[c] &= ~bit;
        if (bits_[c] == 0) {
            set_state(c, ValidityState::Valid);
        } else {
            set_state(c, ValidityState::Unknown);
            recheck.push_back(c);
        }
    }
    if (recheck.empty() || !options_.use_under) return;
    std::vector<std::uint8_t> mask;
    std::vector<ComponentId> subset;
    for (ObstacleId o2 = 0; o2 < static_cast<ObstacleId>(scene_.obstacles.size()); ++o2) {
        const std::uint64_t bit2 = 1ull << o2;
        subset.clear();
        for (ComponentId c : recheck) {
            if (bits_[c] & bit2) subset.push_back(c);
        }
        if (subset.empty()) continue;
        batch_under(subset, o2, mask);
        for (size_t i = 0; i < subset.size(); ++i) {
            if (mask[i]) set_state(subset[i], ValidityState::Invalid);
        }
    }
}

UpdateReport BatchEngine::update_obstacle(ObstacleId o, const Transform& pose, bool lazy) {
    if (o < 0 || o >= static_cast<ObstacleId>(scene_.obstacles.size())) {
        throw std::invalid_argument("unknown obstacle id");
    }
    UpdateReport report;
    report.obstacle = o;
    touched_.clear();

    const std::int64_t t0 = now_us();
    revalidate_old_intersections(o);

    layout_.update_transforms({{o, pose}}, scene_.obstacles);
    scene_.obstacles[o].pose = pose;
    scene_.obstacles[o].active = true;

    const std::int64_t t1 = now_us();
    report.reval_us = t1 - t0;

    grid_.candidates(layout_.obstacle_aabb[o], cand_scratch_);
    std::vector<std::uint8_t> over_mask;
    batch_over(cand_scratch_, o, over_mask);
    const std::uint64_t bit = 1ull << o;
    std::vector<ComponentId> over_hits;
    for (size_t i = 0; i < cand_scratch_.size(); ++i) {
        if (!over_mask[i]) continue;
        const ComponentId c = cand_scratch_[i];
        over_hits.push_back(c);
        if (states_[c] == ValidityState::Valid) set_state(c, ValidityState::Unknown);
        if (!(bits_[c] & bit)) {
            bits_[c] |= bit;
            listed_[o].push_back(c);
        }
    }
    const std::int64_t t2 = now_us();
    report.over_us = t2 - t1;

    if (options_.use_under) {
        grid_.candidates(layout_.obstacle_sphere_aabb[o], cand_scratch_);
        std::vector<std::uint8_t> under_mask;
        batch_under(cand_scratch_, o, under_mask);
        for (size_t i = 0; i < cand_scratch_.size(); ++i) {
            if (under_mask[i]) set_state(cand_scratch_[i], ValidityState::Invalid);
        }
    }
    const std::int64_t t3 = now_us();
    report.under_us = t3 - t2;
    report.unknown_after_heuristic = unknown_count_;

    if (!lazy) {
        for (ComponentId c : over_hits) {
            if (states_[c] != ValidityState::Unknown) continue;
            ++report.resolve_checks;
            const bool free = exact_component_valid(components_->cfgs[c], scene_.robot, scene_);
            set_state(c, free ? ValidityState::Valid : ValidityState::Invalid);
        }
    }
    report.resolve_us = now_us() - t3;
    report.residual_unknown = unknown_count_;
    finish_counts(report);
    return report;
}

std::vector<UpdateReport> BatchEngine::batch_update(const std::vector<std::pair<ObstacleId, Transform>>& moves,
                                                    bool lazy) {
    std::vector<UpdateReport> reports;
    reports.reserve(moves.size());
    for (const auto& [o, pose] : moves) {
        reports.push_back(update_obstacle(o, pose, lazy));
    }
    return reports;
}

int BatchEngine::resolve_all_unknown() {
    int resolved = 0;
    for (ComponentId c = 0; c < layout_.n_components; ++c) {
        if (states_[c] != ValidityState::Unknown) continue;
        const bool free = exact_component_valid(components_->cfgs[c], scene_.robot, scene_);
        states_[c] = free ? ValidityState::Valid : ValidityState::Invalid;
        --unknown_count_;
        ++resolved;
    }
    return resolved;
}

} // namespace rgg
