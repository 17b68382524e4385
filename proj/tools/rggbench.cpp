// Benchmark and maintenance CLI for the roadmap revalidation library.
//
//   rggbench build --scenario s.scn --out roadmap.rgg
//   rggbench run --scenario s.scn [--roadmap roadmap.rgg] [--out report.csv]
//   rggbench quality --scenario s.scn [--sample 50]
//   rggbench dump-layout --scenario s.scn [--roadmap roadmap.rgg]
//
// Exit code is nonzero on any soundness or equivalence failure.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rgg/bench.hpp"
#include "rgg/engine_batch.hpp"
#include "rgg/kernels.hpp"
#include "rgg/roadmap_io.hpp"

namespace {

struct CommonArgs {
    std::string scenario_path;
    std::string roadmap_path;
    std::string kernel = "auto";
    int seed_override = -1;
    int threads_override = -1;
    std::string engine_override;
    std::string mode_override;
};

rgg::Scenario load_with_overrides(const CommonArgs& args) {
    rgg::Scenario s = rgg::load_scenario(args.scenario_path);
    if (args.seed_override >= 0) {
        s.roadmap_seed = static_cast<std::uint64_t>(args.seed_override);
        s.move_seed = static_cast<std::uint64_t>(args.seed_override) + 1;
    }
    if (args.threads_override >= 0) s.threads = args.threads_override;
    if (!args.engine_override.empty()) {
        if (args.engine_override == "sequential")
            s.engine = rgg::EngineSelect::Sequential;
        else if (args.engine_override == "batch")
            s.engine = rgg::EngineSelect::Batch;
        else if (args.engine_override == "both")
            s.engine = rgg::EngineSelect::Both;
        else
            throw rgg::ScenarioParseError("--engine must be sequential, batch, or both");
    }
    if (!args.mode_override.empty()) {
        if (args.mode_override == "lazy")
            s.mode = rgg::UpdateMode::Lazy;
        else if (args.mode_override == "eager")
            s.mode = rgg::UpdateMode::Eager;
        else
            throw rgg::ScenarioParseError("--mode must be lazy or eager");
    }
    return s;
}

int cmd_build(const CommonArgs& args, const std::string& out_path) {
    const rgg::Scenario s = load_with_overrides(args);
    const auto t0 = std::chrono::steady_clock::now();
    rgg::Scene scene{s.env, {}, s.robot};
    const rgg::Roadmap roadmap =
        rgg::build_prm(scene, s.nodes, s.k_neighbors, s.effective_epsilon(), s.roadmap_seed);
    const rgg::BodySpheres spheres = rgg::default_body_spheres(s.robot);
    const rgg::ComponentSet components =
        rgg::build_components(roadmap, s.robot, spheres, s.effective_epsilon(), s.max_segments);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rgg::save_roadmap(out_path, s.robot, roadmap, components);
    std::cout << "built " << roadmap.nodes.size() << " nodes, " << roadmap.edges.size() << " edges in " << secs
              << " s -> " << out_path << "\n";
    return 0;
}

int cmd_run(const CommonArgs& args, const std::string& out_path, const std::string& format) {
    const rgg::Scenario s = load_with_overrides(args);
    rgg::BenchReport report;
    if (!args.roadmap_path.empty()) {
        const rgg::RoadmapFile file = rgg::load_roadmap(args.roadmap_path);
        report = rgg::run_scenario_prebuilt(s, file.roadmap, file.components);
    } else {
        report = rgg::run_scenario(s);
    }

    if (out_path.empty() || out_path == "-") {
        if (format == "csv")
            rgg::emit_report_csv(report, std::cout);
        else
            rgg::emit_report_pretty(report, std::cout);
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        if (format == "csv")
            rgg::emit_report_csv(report, f);
        else
            rgg::emit_report_pretty(report, f);
        std::cout << "report written to " << out_path << "\n";
    }
    if (report.equivalence_checked && !report.equivalence_ok) {
        std::cerr << report.mismatch_diagnostic;
        return 1;
    }
    return 0;
}

int cmd_quality(const CommonArgs& args, int sample, std::uint64_t sample_seed) {
    const rgg::Scenario s = load_with_overrides(args);
    const rgg::QualityReport q = rgg::classification_quality(s, sample, sample_seed);
    std::cout << "samples " << q.samples << "\n"
              << "green-correct rate " << q.green_rate() << " (" << q.green_correct << "/" << q.green_samples << ")\n"
              << "red-correct rate " << q.red_rate() << " (" << q.red_correct << "/" << q.red_samples << ")\n"
              << "gray fraction " << q.gray_fraction() << "\n";
    if (q.gray_samples > 0) {
        std::cout << "gray resolution: " << q.gray_exactly_valid << " valid / "
                  << (q.gray_samples - q.gray_exactly_valid) << " invalid\n";
    }
    if (!q.sound()) {
        std::cerr << "SOUNDNESS VIOLATION: a green or red label contradicts the exact oracle\n";
        return 1;
    }
    return 0;
}

int cmd_dump_layout(const CommonArgs& args) {
    const rgg::Scenario s = load_with_overrides(args);
    rgg::Roadmap roadmap;
    rgg::ComponentSet components;
    if (!args.roadmap_path.empty()) {
        rgg::RoadmapFile file = rgg::load_roadmap(args.roadmap_path);
        roadmap = std::move(file.roadmap);
        components = std::move(file.components);
    } else {
        rgg::Scene scene{s.env, {}, s.robot};
        roadmap = rgg::build_prm(scene, s.nodes, s.k_neighbors, s.effective_epsilon(), s.roadmap_seed);
        components = rgg::build_components(roadmap, s.robot, rgg::default_body_spheres(s.robot),
                                           s.effective_epsilon(), s.max_segments);
    }
    const auto obstacles = s.make_obstacles();
    const rgg::BatchLayout l = rgg::BatchLayout::serialize(components, obstacles);

    const auto checksum = [](const auto& v) {
        return rgg::crc32(v.data(), v.size() * sizeof(v[0]));
    };
    std::cout << "N=" << l.n_components << " B=" << l.n_bodies << " S=" << l.n_slots << " K=" << l.max_segments
              << " M=" << l.n_obstacles << " C=" << l.n_spheres << "\n";
    std::cout << "e_plus        " << l.n_components << "x" << l.n_bodies << "x8x3"
              << "  crc32=" << std::hex << checksum(l.e_plus) << std::dec << "\n";
    std::cout << "o_plus        " << l.n_obstacles << "x8x3"
              << "  crc32=" << std::hex << checksum(l.o_plus) << std::dec << "\n";
    std::cout << "e_minus       " << l.n_components << "x" << l.n_bodies << "x" << l.n_slots << "x" << l.max_segments
              << "x2x3  crc32=" << std::hex << checksum(l.e_minus) << std::dec << "\n";
    std::cout << "seg_mask      " << l.n_components << "x" << l.n_bodies << "x" << l.n_slots << "x" << l.max_segments
              << "  crc32=" << std::hex << checksum(l.seg_mask) << std::dec << "\n";
    std::cout << "spline_radius " << l.n_bodies << "x" << l.n_slots << "  crc32=" << std::hex
              << checksum(l.spline_radius) << std::dec << "\n";
    std::cout << "o_minus_c     " << l.n_obstacles << "x" << l.n_spheres << "x3  crc32=" << std::hex
              << checksum(l.o_minus_c) << std::dec << "\n";
    std::cout << "o_minus_r     " << l.n_obstacles << "  crc32=" << std::hex << checksum(l.o_minus_r) << std::dec
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Red-Green-Gray roadmap revalidation benchmark"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string out_path;
    std::string format = "pretty";
    int sample = 50;
    std::uint64_t sample_seed = 1234;

    auto add_common = [&](CLI::App* cmd, bool needs_scenario = true) {
        auto* opt = cmd->add_option("--scenario,-s", args.scenario_path, "scenario file");
        if (needs_scenario) opt->required();
        cmd->add_option("--roadmap", args.roadmap_path, "prebuilt roadmap file");
        cmd->add_option("--kernel", args.kernel, "kernel backend: scalar|avx2|auto");
        cmd->add_option("--seed", args.seed_override, "override scenario seeds");
        cmd->add_option("--threads", args.threads_override, "override batch thread count");
        cmd->add_option("--engine", args.engine_override, "override engine: sequential|batch|both");
        cmd->add_option("--mode", args.mode_override, "override mode: lazy|eager");
    };

    CLI::App* build = app.add_subcommand("build", "build a roadmap with approximations and save it");
    add_common(build);
    build->add_option("--out,-o", out_path, "output roadmap file")->required();

    CLI::App* run = app.add_subcommand("run", "run a scenario and emit a report");
    add_common(run);
    run->add_option("--out,-o", out_path, "report path ('-' for stdout)");
    run->add_option("--format,-f", format, "csv|pretty");

    CLI::App* quality = app.add_subcommand("quality", "audit label soundness against the exact oracle");
    add_common(quality);
    quality->add_option("--sample", sample, "components sampled per iteration");
    quality->add_option("--sample-seed", sample_seed, "sampling seed");

    CLI::App* dump = app.add_subcommand("dump-layout", "print batch layout shapes and checksums");
    add_common(dump);

    CLI11_PARSE(app, argc, argv);

    try {
        rgg::kern::set_active_backend(args.kernel);
        if (build->parsed()) return cmd_build(args, out_path);
        if (run->parsed()) return cmd_run(args, out_path, format);
        if (quality->parsed()) return cmd_quality(args, sample, sample_seed);
        if (dump->parsed()) return cmd_dump_layout(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
