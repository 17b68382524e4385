#include "rgg/bench.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "rgg/engine_batch.hpp"
#include "rgg/engine_sequential.hpp"
#include "rgg/rng.hpp"

namespace rgg {

namespace {

struct EnginePair {
    std::optional<SequentialEngine> seq;
    std::optional<BatchEngine> bat;
    Scene seq_scene;
    Scene bat_scene;
};

std::string diff_labels(const std::vector<ValidityState>& a, const std::vector<ValidityState>& b,
                        const std::vector<std::uint64_t>& ba, const std::vector<std::uint64_t>& bb, int iteration) {
    std::ostringstream os;
    os << "engine label mismatch at iteration " << iteration << ":\n";
    int shown = 0;
    for (size_t c = 0; c < a.size() && shown < 10; ++c) {
        if (a[c] != b[c] || ba[c] != bb[c]) {
            os << "  component " << c << ": sequential state=" << static_cast<int>(a[c]) << " bits=" << ba[c]
               << " batch state=" << static_cast<int>(b[c]) << " bits=" << bb[c] << "\n";
            ++shown;
        }
    }
    return os.str();
}

} // namespace

BenchReport run_scenario_prebuilt(const Scenario& s, const Roadmap& roadmap, const ComponentSet& components) {
    BenchReport report;
    report.scenario_name = s.name;
    report.mode = s.mode == UpdateMode::Lazy ? "lazy" : "eager";
    report.nodes = static_cast<int>(roadmap.nodes.size());
    report.edges = static_cast<int>(roadmap.edges.size());

    const bool lazy = s.mode == UpdateMode::Lazy;
    const bool run_seq = s.engine != EngineSelect::Batch;
    const bool run_bat = s.engine != EngineSelect::Sequential;

    EngineOptions opts;
    opts.threads = s.threads;

    EnginePair engines;
    engines.seq_scene = Scene{s.env, s.make_obstacles(), s.robot};
    engines.bat_scene = Scene{s.env, s.make_obstacles(), s.robot};
    if (run_seq) engines.seq.emplace(components, engines.seq_scene, opts);
    if (run_bat) engines.bat.emplace(components, engines.bat_scene, opts, s.cell_capacity);

    const auto moves = s.make_moves();
    const int per_iteration = static_cast<int>(s.obstacles.size());
    for (int it = 0; it < s.iterations; ++it) {
        IterationRow seq_row{it + 1, "sequential", {}};
        IterationRow bat_row{it + 1, "batch", {}};
        for (int m = 0; m < per_iteration; ++m) {
            const auto& [o, pose] = moves[static_cast<size_t>(it) * per_iteration + m];
            if (run_seq) seq_row.totals.accumulate(engines.seq->update_obstacle(o, pose, lazy));
            if (run_bat) bat_row.totals.accumulate(engines.bat->update_obstacle(o, pose, lazy));
        }
        if (run_seq) report.rows.push_back(seq_row);
        if (run_bat) report.rows.push_back(bat_row);

        if (run_seq && run_bat) {
            report.equivalence_checked = true;
            if (engines.seq->states() != engines.bat->states() ||
                engines.seq->obstacle_bits() != engines.bat->obstacle_bits()) {
                report.equivalence_ok = false;
                report.mismatch_diagnostic =
                    diff_labels(engines.seq->states(), engines.bat->states(), engines.seq->obstacle_bits(),
                                engines.bat->obstacle_bits(), it + 1);
                break;
            }
        }
    }
    return report;
}

BenchReport run_scenario(const Scenario& s) {
    const auto t0 = std::chrono::steady_clock::now();
    Scene build_scene{s.env, {}, s.robot};
    const Roadmap roadmap = build_prm(build_scene, s.nodes, s.k_neighbors, s.effective_epsilon(), s.roadmap_seed);
    const BodySpheres spheres = default_body_spheres(s.robot);
    const ComponentSet components =
        build_components(roadmap, s.robot, spheres, s.effective_epsilon(), s.max_segments);
    const auto t1 = std::chrono::steady_clock::now();

    BenchReport report = run_scenario_prebuilt(s, roadmap, components);
    report.preprocessing_seconds = std::chrono::duration<double>(t1 - t0).count();
    return report;
}

void emit_report_csv(const BenchReport& r, std::ostream& os) {
    os << "# rgg-bench scenario=" << r.scenario_name << " mode=" << r.mode << " nodes=" << r.nodes
       << " edges=" << r.edges << " preprocessing_s=" << r.preprocessing_seconds << "\n";
    os << "# timing columns reval_us,over_us,under_us,resolve_us,total_us are nondeterministic\n";
    os << "iteration,engine,reval_us,over_us,under_us,resolve_us,total_us,new_green,new_red,new_gray,"
          "unknown_after_heuristic,residual_unknown,resolve_checks\n";
    for (const IterationRow& row : r.rows) {
        const UpdateReport& t = row.totals;
        os << row.iteration << ',' << row.engine << ',' << t.reval_us << ',' << t.over_us << ',' << t.under_us << ','
           << t.resolve_us << ',' << t.total_us() << ',' << t.new_green << ',' << t.new_red << ',' << t.new_gray
           << ',' << t.unknown_after_heuristic << ',' << t.residual_unknown << ',' << t.resolve_checks << "\n";
    }
}

namespace {

struct EngineMeans {
    double heuristic_us = 0;
    double resolve_us = 0;
    double unknown = 0;
    double residual = 0;
    int rows = 0;
};

EngineMeans means_for(const BenchReport& r, const std::string& engine) {
    EngineMeans m;
    for (const IterationRow& row : r.rows) {
        if (row.engine != engine) continue;
        m.heuristic_us += static_cast<double>(row.totals.heuristic_us());
        m.resolve_us += static_cast<double>(row.totals.resolve_us);
        m.unknown += row.totals.unknown_after_heuristic;
        m.residual += row.totals.residual_unknown;
        ++m.rows;
    }
    if (m.rows > 0) {
        m.heuristic_us /= m.rows;
        m.resolve_us /= m.rows;
        m.unknown /= m.rows;
        m.residual /= m.rows;
    }
    return m;
}

} // namespace

void emit_report_pretty(const BenchReport& r, std::ostream& os) {
    os << "scenario " << r.scenario_name << "  (" << r.mode << ")\n";
    os << "  nodes " << r.nodes << "  edges " << r.edges << "  preprocessing " << std::fixed << std::setprecision(2)
       << r.preprocessing_seconds << " s\n";
    os << "  " << std::left << std::setw(12) << "engine" << std::right << std::setw(16) << "update (us)"
       << std::setw(18) << "unknown edges" << std::setw(18) << "resolve (us)" << "\n";
    for (const char* engine : {"sequential", "batch"}) {
        const EngineMeans m = means_for(r, engine);
        if (m.rows == 0) continue;
        os << "  " << std::left << std::setw(12) << engine << std::right << std::setw(16) << std::setprecision(1)
           << m.heuristic_us << std::setw(18) << std::setprecision(2) << m.unknown << std::setw(18)
           << std::setprecision(1) << m.resolve_us << "\n";
    }
    if (r.equivalence_checked) {
        os << "  equivalence: " << (r.equivalence_ok ? "ok" : "MISMATCH") << "\n";
        if (!r.equivalence_ok) os << r.mismatch_diagnostic;
    }
    os.unsetf(std::ios::floatfield);
}

QualityReport classification_quality(const Scenario& s, int samples_per_iteration, std::uint64_t sample_seed) {
    Scene build_scene{s.env, {}, s.robot};
    const Roadmap roadmap = build_prm(build_scene, s.nodes, s.k_neighbors, s.effective_epsilon(), s.roadmap_seed);
    const BodySpheres spheres = default_body_spheres(s.robot);
    const ComponentSet components =
        build_components(roadmap, s.robot, spheres, s.effective_epsilon(), s.max_segments);

    Scene scene{s.env, s.make_obstacles(), s.robot};
    EngineOptions opts;
    opts.threads = s.threads;
    SequentialEngine engine(components, scene, opts);

    const bool lazy = s.mode == UpdateMode::Lazy;
    const auto moves = s.make_moves();
    const int per_iteration = static_cast<int>(s.obstacles.size());

    Rng sampler(sample_seed);
    QualityReport q;
    for (int it = 0; it < s.iterations; ++it) {
        for (int m = 0; m < per_iteration; ++m) {
            const auto& [o, pose] = moves[static_cast<size_t>(it) * per_iteration + m];
            engine.update_obstacle(o, pose, lazy);
        }
        for (int i = 0; i < samples_per_iteration; ++i) {
            const ComponentId c = sampler.uniform_int(0, components.count() - 1);
            const ValidityState label = engine.states()[c];
            const bool exact = exact_component_valid(components.cfgs[c], s.robot, scene);
            ++q.samples;
            if (label == ValidityState::Valid) {
                ++q.green_samples;
                if (exact) ++q.green_correct;
            } else if (label == ValidityState::Invalid) {
                ++q.red_samples;
                if (!exact) ++q.red_correct;
            } else {
                ++q.gray_samples;
                if (exact) ++q.gray_exactly_valid;
            }
        }
    }
    return q;
}

} // namespace rgg
