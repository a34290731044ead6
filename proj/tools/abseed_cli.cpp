// abseed: evolve, replay, score and compare behavior seed sets.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "abseed/harness.hpp"
#include "abseed/seed_file.hpp"

namespace fs = std::filesystem;
using namespace abseed;

namespace {

std::string arena_for(const std::string& explicit_arena, const SeedSet& seeds) {
    return explicit_arena.empty() ? seeds.provenance.arena : explicit_arena;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolve diverse behavior seed sets for an idiotypic robot controller"};
    app.require_subcommand(1);

    harness::ExperimentConfig cfg;
    std::string model_text = "multi:5x5";
    std::string clock_text = "wall";
    bool no_elitism = false;
    auto* evolve = app.add_subcommand("evolve", "Run repeated GA evolutions and export seed sets");
    evolve->add_option("--arena", cfg.arena, "Bundled arena (world1, world2) or arena file")->capture_default_str();
    evolve->add_option("--model", model_text, "single:N or multi:KxM")->capture_default_str();
    evolve->add_option("--epsilon", cfg.epsilon, "Mutation rate")->capture_default_str();
    evolve->add_option("--criteria", cfg.criteria, "Stopping criteria preset: world1 or world2")->capture_default_str();
    evolve->add_option("--repeats", cfg.repeats, "Independent repeats")->capture_default_str();
    evolve->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    evolve->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    evolve->add_option("--threads", cfg.threads, "Worker threads (0: all cores)")->capture_default_str();
    evolve->add_option("--clock", clock_text, "Timing column source: wall or sim")
        ->check(CLI::IsMember({"wall", "sim"}))
        ->capture_default_str();
    evolve->add_flag("--no-elitism", no_elitism, "Do not carry each population's best robot forward");

    std::string seed_path;
    std::string replay_arena;
    int genome_index = 0;
    std::optional<std::uint64_t> replay_seed;
    fs::path replay_out = ".";
    auto* replay = app.add_subcommand("replay", "Re-run one exported genome and write event/trajectory CSVs");
    replay->add_option("seedfile", seed_path, "Seed set file")->required();
    replay->add_option("--arena", replay_arena, "Arena (defaults to the one recorded in the seed file)");
    replay->add_option("--genome", genome_index, "Genome index 0..4")->capture_default_str();
    replay->add_option("--seed", replay_seed, "Episode seed (defaults to the recorded one)");
    replay->add_option("--out", replay_out, "Directory for events.csv and trajectory.csv")->capture_default_str();

    std::string div_path;
    bool analytic = false;
    auto* diversity = app.add_subcommand("diversity", "Score type and speed diversity of a seed set");
    diversity->add_option("seedfile", div_path, "Seed set file")->required();
    diversity->add_flag("--analytic-sigma", analytic, "Normalize by 10(m-1)/m instead of 8.333 / 10.000");

    std::string base_arena = "world1";
    int base_runs = 20;
    std::uint64_t base_seed = 1;
    auto* baseline = app.add_subcommand("baseline", "Evaluate the hand-written comparison controller");
    baseline->add_option("--arena", base_arena, "Bundled arena or arena file")->capture_default_str();
    baseline->add_option("--runs", base_runs, "Episodes")->capture_default_str();
    baseline->add_option("--seed", base_seed, "Master seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*evolve) {
            cfg.model = PopulationModel::parse(model_text);
            cfg.clock = clock_text == "sim" ? harness::ClockMode::Simulated : harness::ClockMode::Wall;
            cfg.elitism = !no_elitism;
            const harness::RunSummary s = harness::cmd_evolve(cfg);
            std::cout << s.to_json();
        } else if (*replay) {
            const SeedSet seeds = read_seed_file(seed_path);
            const sim::ArenaSpec arena = sim::resolve_arena(arena_for(replay_arena, seeds));
            const harness::ReplayResult r = harness::cmd_replay(seeds, genome_index, arena, replay_seed);
            fs::create_directories(replay_out);
            std::ostringstream events;
            sim::write_event_csv(events, r.events);
            write_file_atomic(replay_out / "events.csv", events.str());
            std::ostringstream traj;
            sim::write_trajectory_csv(traj, r.trajectory);
            write_file_atomic(replay_out / "trajectory.csv", traj.str());
            std::printf("seed %llu\nt %.3f\nc %d\ndoors %d\ncompleted %d\nq %.3f\nmatches_recorded %d\n",
                        static_cast<unsigned long long>(r.seed), r.outcome.t, r.outcome.c, r.outcome.doors_passed,
                        r.outcome.completed ? 1 : 0, harness::quality(r.outcome), r.matches_recorded() ? 1 : 0);
        } else if (*diversity) {
            const SeedSet seeds = read_seed_file(div_path);
            const DiversityReport rep = harness::cmd_diversity(seeds, analytic);
            std::cout << harness::format_diversity(rep);
            if (!rep.omitted.empty()) {
                std::cerr << "note: " << rep.omitted.size() << " antigen group(s) not fully populated, omitted\n";
            }
        } else if (*baseline) {
            const sim::ArenaSpec arena = sim::resolve_arena(base_arena);
            const harness::BaselineReport r = harness::run_baseline(arena, base_runs, base_seed);
            std::cout << "run,t,c,doors,completed,q\n";
            for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
                const auto& o = r.outcomes[i];
                std::printf("%zu,%.3f,%d,%d,%d,%.3f\n", i, o.t, o.c, o.doors_passed, o.completed ? 1 : 0,
                            harness::quality(o));
            }
            std::printf("mean_q %.3f\ncompleted %d/%d\n", r.mean_q, r.completed, base_runs);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
