#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "abseed/harness.hpp"
#include "abseed/seed_file.hpp"

using namespace abseed;
using namespace abseed::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("abseed_test_harness_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

SeedSet sample_set() {
    Rng rng(42);
    SeedSet s;
    s.provenance = {"multi:5x5", 42, 7, "world1", 3};
    for (int g = 0; g < kSeedSetSize; ++g) {
        SeedGenome& sg = s.genomes[g];
        sg.episode_seed = 1000 + g;
        sg.outcome = {312.352 + g, g, 2, true};
        for (int j = 0; j < kAntigenCount; ++j) {
            if ((g + j) % 4 == 0) continue;
            Antibody a = random_antibody(rng);
            sg.start_genome.slots[j] = a;
            a.score = -14 + (j * 7) % 30;
            sg.genome.slots[j] = a;
        }
    }
    s.genomes[4].outcome = {2250.0, 17, 0, false};
    return s;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    return text.replace(at, from.size(), to);
}

ExperimentConfig small_config(const fs::path& out) {
    ExperimentConfig c;
    c.model = PopulationModel::multi(5, 2);
    c.repeats = 1;
    c.seed = 3;
    c.out = out;
    c.clock = ClockMode::Simulated;
    return c;
}

}  // namespace

TEST_CASE("quality") {
    CHECK(quality({300, 40, 2, true}) == 310.0);
    CHECK(quality({0, 0, 0, false}) == 0.0);
    CHECK(quality({672, 0, 2, true}) == 336.0);
}

TEST_CASE("baseline genome is valid and complete") {
    const Genome g = baseline_controller();
    CHECK(g.occupied() == 8);
    for (const auto& slot : g.slots) {
        REQUIRE(slot);
        CHECK(validate(*slot).empty());
    }
    CHECK(g[AntigenCode::MarkerUnseen]->type == BehaviorType::TrackMarkers);
    CHECK(g[AntigenCode::MarkerSeen]->type == BehaviorType::TrackMarkers);
    for (auto c : {AntigenCode::NearRight, AntigenCode::NearRear, AntigenCode::NearLeft}) {
        CHECK(g[c]->type == BehaviorType::ForwardTurn);
    }
}

TEST_CASE("baseline completes world1") {
    const BaselineReport r = run_baseline(sim::bundled_arena("world1"), 1, 1);
    REQUIRE(r.outcomes.size() == 1);
    CHECK(r.outcomes[0].completed);
    CHECK(r.mean_q == doctest::Approx(quality(r.outcomes[0])));
}

TEST_CASE("baseline is repeatable") {
    const auto a = run_baseline(sim::bundled_arena("world2"), 3, 8);
    const auto b = run_baseline(sim::bundled_arena("world2"), 3, 8);
    CHECK(a.outcomes == b.outcomes);
    CHECK(a.mean_q == b.mean_q);
}

TEST_CASE("seed file round trip is byte-identical") {
    const SeedSet s = sample_set();
    const std::string text = format_seed_file(s);
    const SeedSet back = parse_seed_file(text);
    CHECK(back == s);
    CHECK(format_seed_file(back) == text);
    CHECK(text.rfind("ABSEED-SEEDSET 1\nmodel multi:5x5\nseed 42\narena world1\ngenerations 7\nrule 3\n", 0) == 0);
}

TEST_CASE("seed files survive a trip through disk") {
    const fs::path dir = scratch("disk");
    fs::create_directories(dir);
    const SeedSet s = sample_set();
    write_file_atomic(dir / "s.txt", format_seed_file(s));
    CHECK_FALSE(fs::exists(dir / "s.txt.tmp"));
    CHECK(read_seed_file(dir / "s.txt") == s);
    CHECK_THROWS_AS(read_seed_file(dir / "missing.txt"), SeedFileError);
    fs::remove_all(dir);
}

TEST_CASE("malformed seed files name the problem") {
    const std::string good = format_seed_file(sample_set());
    auto message = [](const std::string& text) {
        try {
            parse_seed_file(text);
        } catch (const SeedFileError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    const auto slot_line = good.find("slot 1 ");
    const auto eol = good.find('\n', slot_line);
    std::string broken = good;
    broken.replace(slot_line, eol - slot_line, "slot 1 REVERSE_TURN (10, NULL, 50, LEFT, NULL, NULL) L=0");
    const std::string bad_speed = message(broken);
    CHECK(bad_speed.find("field S") != std::string::npos);
    CHECK(bad_speed.find("line ") != std::string::npos);

    broken = good;
    broken.replace(slot_line, eol - slot_line, "slot 1 WANDER_SINGLE (605, 50, 90, SIDEWAYS, NULL, NULL) L=0");
    CHECK(message(broken).find("field D") != std::string::npos);

    broken = good;
    broken.replace(slot_line, eol - slot_line, "slot 1 WANDER_SINGLE (605, 50, 90, LEFT, NULL, NULL)");
    CHECK(message(broken).find("field L") != std::string::npos);

    const std::string half = good.substr(0, good.find("genome 3"));
    CHECK(message(half).find("truncated") != std::string::npos);
    CHECK_FALSE(message("").empty());
    CHECK_FALSE(message("ABSEED-SEEDSET 2\n").empty());
    CHECK_FALSE(message(good + "extra\n").empty());
    CHECK_FALSE(message(replace(good, "genome 3", "genome 2")).empty());
    CHECK_FALSE(message(replace(good, "outcome t=", "outcome x=")).empty());
}

TEST_CASE("seed file errors carry line numbers") {
    const std::string good = format_seed_file(sample_set());
    try {
        parse_seed_file(replace(good, "generations 7", "generations seven"));
        FAIL("expected an error");
    } catch (const SeedFileError& e) {
        CHECK(e.line() == 5);
    }
}

TEST_CASE("stats csv") {
    GenerationStats a;
    a.n = 0;
    a.t_n = 500;
    a.c_n = 10;
    a.f_n = 510;
    a.best = {300, 4, 2, true};
    a.wall_s = 1.23456;
    a.sim_s = 4321.5;
    GenerationStats b = a;
    b.n = 1;
    b.rule = 3;
    const std::vector<GenerationStats> h = {a, b};
    CHECK(stats_csv(h, ClockMode::Wall) ==
          "n,t_n,c_n,f_n,best_q,wall_s,rule\n"
          "0,500.000000,10.000000,510.000000,166.000000,1.235,0\n"
          "1,500.000000,10.000000,510.000000,166.000000,1.235,3\n");
    CHECK(stats_csv(h, ClockMode::Simulated).find(",4321.500,3\n") != std::string::npos);
    CHECK(seed_file_name(3) == "seedset_r03.txt");
    CHECK(stats_file_name(12) == "stats_r12.csv");
}

TEST_CASE("zero repeats writes an empty summary") {
    const fs::path out = scratch("zero");
    ExperimentConfig c = small_config(out);
    c.repeats = 0;
    const RunSummary s = cmd_evolve(c);
    CHECK(s.repeats.empty());
    CHECK(s.mean_q == 0.0);
    const auto j = nlohmann::json::parse(slurp(out / "summary.json"));
    CHECK(j["repeats"].empty());
    fs::remove_all(out);
}

TEST_CASE("bad configuration leaves no output") {
    const fs::path out = scratch("bad");
    ExperimentConfig c = small_config(out);
    c.arena = (out / "nowhere.arena").string();
    CHECK_THROWS_AS(cmd_evolve(c), sim::ArenaError);
    CHECK_FALSE(fs::exists(out));

    c = small_config(out);
    c.criteria = "world3";
    CHECK_THROWS_AS(cmd_evolve(c), ConfigError);
    c = small_config(out);
    c.model = PopulationModel::multi(4, 5);
    CHECK_THROWS_AS(cmd_evolve(c), ConfigError);
    c = small_config(out);
    c.epsilon = -0.1;
    CHECK_THROWS_AS(cmd_evolve(c), ConfigError);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("evolve run writes files that agree with the summary") {
    const fs::path out = scratch("run");
    ExperimentConfig c = small_config(out);
    c.repeats = 2;
    const RunSummary s = cmd_evolve(c);
    REQUIRE(s.repeats.size() == 2);
    for (int r = 0; r < 2; ++r) {
        const SeedSet set = read_seed_file(out / seed_file_name(r));
        CHECK(set.provenance.model == "multi:5x2");
        CHECK(set.provenance.arena == "world1");
        CHECK(set.provenance.rule == s.repeats[r].rule);
        CHECK(set.provenance.generations == s.repeats[r].generations);
        const DiversityReport d = cmd_diversity(set);
        CHECK(d.z_t == doctest::Approx(s.repeats[r].z_t));
        CHECK(d.z_s == doctest::Approx(s.repeats[r].z_s));

        // last stats row carries q, tau and the rule
        const std::string csv = slurp(out / stats_file_name(r));
        std::istringstream lines(csv);
        std::string line, last;
        while (std::getline(lines, line)) last = line;
        int n = 0, rule = 0;
        double t = 0, cc = 0, f = 0, q = 0, wall = 0;
        REQUIRE(std::sscanf(last.c_str(), "%d,%lf,%lf,%lf,%lf,%lf,%d", &n, &t, &cc, &f, &q, &wall, &rule) == 7);
        CHECK(n == s.repeats[r].generations);
        CHECK(rule == s.repeats[r].rule);
        CHECK(rule != 0);
        CHECK(q == doctest::Approx(s.repeats[r].q).epsilon(1e-6));
        CHECK(wall == doctest::Approx(s.repeats[r].tau_s).epsilon(1e-3));
    }
    const auto j = nlohmann::json::parse(slurp(out / "summary.json"));
    CHECK(j["repeats"].size() == 2);
    CHECK(j["mean"]["q"].get<double>() == doctest::Approx((s.repeats[0].q + s.repeats[1].q) / 2));
    fs::remove_all(out);
}

TEST_CASE("replay reproduces the recorded outcome") {
    const fs::path out = scratch("replay");
    const ExperimentConfig c = small_config(out);
    cmd_evolve(c);
    const SeedSet set = read_seed_file(out / seed_file_name(0));
    const auto arena = sim::bundled_arena("world1");
    for (int g = 0; g < kSeedSetSize; ++g) {
        const ReplayResult r = cmd_replay(set, g, arena);
        CHECK(r.matches_recorded());
        CHECK(r.seed == set.genomes[g].episode_seed);
        CHECK_FALSE(r.events.empty());
        CHECK(r.trajectory.size() + 1 == r.events.size());
    }
    const ReplayResult other = cmd_replay(set, 0, arena, 12345);
    CHECK(other.seed == 12345);
    CHECK_THROWS_AS(cmd_replay(set, 5, arena), std::out_of_range);
    fs::remove_all(out);
}

TEST_CASE("diversity of identical genomes is zero") {
    SeedSet s;
    const Genome g = baseline_controller();
    for (auto& sg : s.genomes) sg.genome = g;
    const DiversityReport r = cmd_diversity(s);
    CHECK(r.z_t == 0.0);
    CHECK(r.z_s == 0.0);
    const std::string text = format_diversity(r);
    CHECK(text.rfind("Z_t 0.0000\nZ_s 0.0000\n", 0) == 0);
    CHECK(text.find("7,Collision left,0,0\n") != std::string::npos);

    s.genomes[1].genome.slots[2].reset();
    CHECK(format_diversity(cmd_diversity(s)).find("2,Obstacle near right,omitted,omitted") != std::string::npos);
}
