#include "abseed/harness.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "abseed/seed_file.hpp"

namespace abseed::harness {

double quality(const sim::RunOutcome& outcome) { return (outcome.t + 8.0 * outcome.c) / 2.0; }

Genome baseline_controller() {
    auto make = [](BehaviorType t, int s, std::optional<int> f, int a, std::optional<TurnDirection> d) {
        Antibody ab;
        ab.type = t;
        ab.speed = s;
        ab.turn_frequency = f;
        ab.turn_angle = a;
        ab.direction = d;
        return ab;
    };
    using enum BehaviorType;
    constexpr auto L = TurnDirection::Left;
    constexpr auto R = TurnDirection::Right;
    Genome g;
    g[AntigenCode::MarkerUnseen] = make(TrackMarkers, 400, std::nullopt, 30, std::nullopt);
    g[AntigenCode::MarkerSeen] = make(TrackMarkers, 400, std::nullopt, 30, std::nullopt);
    g[AntigenCode::NearRight] = make(ForwardTurn, 400, std::nullopt, 80, L);
    g[AntigenCode::NearRear] = make(ForwardTurn, 400, std::nullopt, 20, L);
    g[AntigenCode::NearLeft] = make(ForwardTurn, 400, std::nullopt, 80, R);
    g[AntigenCode::CollisionRight] = make(StaticTurn, 400, std::nullopt, 100, L);
    g[AntigenCode::CollisionRear] = make(ForwardTurn, 400, std::nullopt, 20, L);
    g[AntigenCode::CollisionLeft] = make(StaticTurn, 400, std::nullopt, 100, R);
    return g;
}

BaselineReport run_baseline(const sim::ArenaSpec& arena, int runs, std::uint64_t seed) {
    BaselineReport r;
    sim::EpisodeOptions opts;
    opts.learning = false;
    for (int i = 0; i < runs; ++i) {
        const auto res = sim::run_episode(baseline_controller(), arena,
                                          derive_seed({seed, 0x62617365 /* "base" */, static_cast<std::uint64_t>(i)}),
                                          opts);
        r.outcomes.push_back(res.outcome);
        r.mean_q += quality(res.outcome) / runs;
        r.completed += res.outcome.completed ? 1 : 0;
    }
    return r;
}

std::string RunSummary::to_json() const {
    nlohmann::ordered_json j;
    j["repeats"] = nlohmann::ordered_json::array();
    for (const RepeatSummary& r : repeats) {
        nlohmann::ordered_json e;
        e["repeat"] = r.repeat;
        e["seed"] = r.seed;
        e["tau_s"] = r.tau_s;
        e["wall_s"] = r.wall_s;
        e["simulated_s"] = r.simulated_s;
        e["q"] = r.q;
        e["z_t"] = r.z_t;
        e["z_s"] = r.z_s;
        e["generations"] = r.generations;
        e["rule"] = r.rule;
        e["omitted_groups"] = r.omitted_groups;
        j["repeats"].push_back(e);
    }
    j["mean"] = {{"tau_s", mean_tau_s},
                 {"q", mean_q},
                 {"z_t", mean_z_t},
                 {"z_s", mean_z_s},
                 {"generations", mean_generations}};
    return j.dump(2) + "\n";
}

std::string stats_csv(const std::vector<GenerationStats>& history, ClockMode clock) {
    std::ostringstream os;
    os << "n,t_n,c_n,f_n,best_q,wall_s,rule\n";
    std::array<char, 256> buf{};
    for (const GenerationStats& s : history) {
        const double timing = clock == ClockMode::Wall ? s.wall_s : s.sim_s;
        std::snprintf(buf.data(), buf.size(), "%d,%.6f,%.6f,%.6f,%.6f,%.3f,%d\n", s.n, s.t_n, s.c_n, s.f_n,
                      quality(s.best), timing, s.rule);
        os << buf.data();
    }
    return os.str();
}

std::string seed_file_name(int repeat) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "seedset_r%02d.txt", repeat);
    return buf.data();
}

std::string stats_file_name(int repeat) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "stats_r%02d.csv", repeat);
    return buf.data();
}

RunSummary cmd_evolve(const ExperimentConfig& config) {
    const sim::ArenaSpec arena = sim::resolve_arena(config.arena);
    const auto criteria = StoppingCriteria::preset(config.criteria);
    if (!criteria) throw ConfigError("unknown criteria preset '" + config.criteria + "' (world1 or world2)");
    try {
        config.model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(config.epsilon >= 0.0 && config.epsilon <= 1.0)) throw ConfigError("epsilon must lie in [0, 1]");
    if (config.repeats < 0) throw ConfigError("repeats must be non-negative");

    std::filesystem::create_directories(config.out);

    EvolveOptions opts;
    opts.epsilon = config.epsilon;
    opts.elitism = config.elitism;
    opts.threads = config.threads;
    opts.arena_id = arena.name;

    RunSummary summary;
    for (int r = 0; r < config.repeats; ++r) {
        const std::uint64_t seed = derive_seed({config.seed, static_cast<std::uint64_t>(r)});
        const auto started = std::chrono::steady_clock::now();
        const EvolveResult res = evolve(arena, config.model, *criteria, seed, opts);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

        const std::string csv = stats_csv(res.history, config.clock);
        write_file_atomic(config.out / seed_file_name(r), format_seed_file(res.seeds));
        write_file_atomic(config.out / stats_file_name(r), csv);

        const DiversityReport div = diversity_report(res.seeds);
        RepeatSummary rs;
        rs.repeat = r;
        rs.seed = seed;
        rs.tau_s = config.clock == ClockMode::Wall ? res.history.back().wall_s : res.history.back().sim_s;
        rs.wall_s = wall;
        rs.simulated_s = res.simulated_seconds;
        rs.q = quality(res.best);
        rs.z_t = div.z_t;
        rs.z_s = div.z_s;
        rs.generations = res.history.back().n;
        rs.rule = res.history.back().rule;
        rs.omitted_groups = div.omitted;
        summary.repeats.push_back(rs);
    }
    if (!summary.repeats.empty()) {
        const double n = static_cast<double>(summary.repeats.size());
        for (const RepeatSummary& r : summary.repeats) {
            summary.mean_tau_s += r.tau_s / n;
            summary.mean_q += r.q / n;
            summary.mean_z_t += r.z_t / n;
            summary.mean_z_s += r.z_s / n;
            summary.mean_generations += r.generations / n;
        }
    }
    write_file_atomic(config.out / "summary.json", summary.to_json());
    return summary;
}

ReplayResult cmd_replay(const SeedSet& seeds, int genome_index, const sim::ArenaSpec& arena,
                        std::optional<std::uint64_t> seed) {
    if (genome_index < 0 || genome_index >= kSeedSetSize) {
        throw std::out_of_range("genome index must be in 0..4");
    }
    const SeedGenome& sg = seeds.genomes[genome_index];
    ReplayResult r;
    r.seed = seed.value_or(sg.episode_seed);
    r.recorded = sg.outcome;
    sim::EpisodeOptions opts;
    opts.events = &r.events;
    opts.trajectory = &r.trajectory;
    r.outcome = sim::run_episode(sg.start_genome, arena, r.seed, opts).outcome;
    return r;
}

DiversityReport cmd_diversity(const SeedSet& seeds, bool analytic_sigma) {
    return diversity_report(seeds, analytic_sigma);
}

std::string format_diversity(const DiversityReport& r) {
    std::ostringstream os;
    std::array<char, 128> buf{};
    std::snprintf(buf.data(), buf.size(), "Z_t %.4f\nZ_s %.4f\n", r.z_t, r.z_s);
    os << buf.data();
    os << "antigen,name,z_type,z_speed\n";
    for (int j = 0; j < kAntigenCount; ++j) {
        os << j << ',' << antigen_name(antigen_from_int(j)) << ',';
        if (r.type_scores[j]) {
            os << *r.type_scores[j] << ',' << *r.speed_scores[j] << '\n';
        } else {
            os << "omitted,omitted\n";
        }
    }
    return os.str();
}

}  // namespace abseed::harness
