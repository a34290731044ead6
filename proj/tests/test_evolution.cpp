#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "abseed/evolution.hpp"

using namespace abseed;

namespace {

// Whether r can come from scaling v by 1 +/- [0.2, 0.5], rounding and clamping to b.
bool in_mutation_image(int v, int r, Range b) {
    const double lo_down = v * 0.5, hi_down = v * 0.8, lo_up = v * 1.2, hi_up = v * 1.5;
    auto reachable = [&](double x) {
        return (x >= lo_down - 0.5 && x <= hi_down + 0.5) || (x >= lo_up - 0.5 && x <= hi_up + 0.5);
    };
    if (r < b.min || r > b.max) return false;
    if (reachable(r)) return true;
    if (r == b.min && lo_down <= b.min + 0.5) return true;
    if (r == b.max && hi_up >= b.max - 0.5) return true;
    return false;
}

GenerationStats row(int n, double t, double c) {
    GenerationStats s;
    s.n = n;
    s.t_n = t;
    s.c_n = c;
    s.f_n = t + c;
    return s;
}

Antibody ab(BehaviorType t, int s, std::optional<int> f, int a, std::optional<TurnDirection> d,
            std::optional<int> rf = std::nullopt, std::optional<int> ra = std::nullopt) {
    Antibody x;
    x.type = t;
    x.speed = s;
    x.turn_frequency = f;
    x.turn_angle = a;
    x.direction = d;
    x.right_turn_frequency = rf;
    x.right_turn_angle = ra;
    return x;
}

Genome random_genome(Rng& rng, double fill = 0.8) {
    Genome g;
    for (auto& s : g.slots) {
        if (bernoulli(rng, fill)) s = random_antibody(rng);
    }
    return g;
}

}  // namespace

TEST_CASE("relative fitness examples") {
    const std::vector<double> equal = {100, 100, 100, 100, 100};
    for (double mu : relative_fitness(equal)) CHECK(mu == doctest::Approx(0.2));
    const std::vector<double> one_better = {100, 200, 200, 200, 200};
    const auto mu = relative_fitness(one_better);
    CHECK(mu[0] == doctest::Approx(1.0 / 3.0));
    for (int i = 1; i < 5; ++i) CHECK(mu[i] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("relative fitness sums to one and reverses cost order") {
    Rng rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = uniform_int(rng, 5, 50);
        std::vector<double> w(n);
        for (double& x : w) x = uniform_real(rng, 1, 3000);
        const auto mu = relative_fitness(w);
        double sum = 0;
        for (double x : mu) sum += x;
        REQUIRE(std::abs(sum - 1.0) < 1e-9);
        for (int i = 0; i < n; ++i) {
            REQUIRE(mu[i] > 0.0);
            REQUIRE(mu[i] <= 1.0);
            for (int j = 0; j < n; ++j) {
                if (w[i] < w[j]) REQUIRE(mu[i] > mu[j]);
            }
        }
    }
}

TEST_CASE("relative fitness rejects bad input") {
    CHECK_THROWS_AS(relative_fitness(std::vector<double>{100}), std::invalid_argument);
    CHECK_THROWS_AS(relative_fitness(std::vector<double>{100, 0}), std::invalid_argument);
    CHECK_THROWS_AS(relative_fitness(std::vector<double>{100, -5}), std::invalid_argument);
}

TEST_CASE("roulette frequencies") {
    Rng rng(17);
    const std::vector<double> uniform(5, 0.2);
    std::array<int, 5> hits{};
    for (int i = 0; i < 100000; ++i) ++hits[roulette_select(uniform, rng)];
    for (int h : hits) CHECK(std::abs(h / 100000.0 - 0.2) < 0.02);

    const std::vector<double> skewed = {0.5, 0.25, 0.25};
    std::array<int, 3> s{};
    for (int i = 0; i < 100000; ++i) ++s[roulette_select(skewed, rng)];
    CHECK(std::abs(s[0] / 100000.0 - 0.5) < 0.01);

    const std::vector<double> degenerate = {1.0, 1e-12, 1e-12};
    for (int i = 0; i < 1000; ++i) CHECK(roulette_select(degenerate, rng) == 0);
}

TEST_CASE("parents are distinct") {
    Rng rng(2);
    const std::vector<double> mu = {0.9, 0.05, 0.05};
    for (int i = 0; i < 5000; ++i) {
        const auto [a, b] = select_parents(mu, rng);
        REQUIRE(a != b);
    }
    CHECK_THROWS_AS(select_parents(std::vector<double>{1.0}, rng), std::invalid_argument);
}

TEST_CASE("mutating S = 605") {
    Rng rng(605);
    const Range s = bounds_for(BehaviorType::WanderSingle).speed;
    std::set<int> seen;
    for (int i = 0; i < 100000; ++i) {
        const int v = mutate_value(605, s, rng);
        REQUIRE(((v >= 303 && v <= 484) || (v >= 726 && v <= 800)));
        seen.insert(v);
    }
    CHECK(*seen.begin() == 303);
    CHECK(seen.count(484) == 1);
    CHECK(seen.count(726) == 1);
    CHECK(*seen.rbegin() == 800);
}

TEST_CASE("mutation image over every domain") {
    Rng rng(8);
    const Range domains[] = {{50, 800}, {500, 800}, {10, 90}, {10, 110}, {20, 200}, {0, 30}};
    for (const Range& b : domains) {
        for (int v = b.min; v <= b.max; v += std::max(1, (b.max - b.min) / 40)) {
            for (int k = 0; k < 200; ++k) {
                const int r = mutate_value(v, b, rng);
                CAPTURE(v);
                CAPTURE(r);
                REQUIRE(in_mutation_image(v, r, b));
            }
        }
    }
}

TEST_CASE("different types copy one parent") {
    Rng rng(1);
    const Antibody a = ab(BehaviorType::WanderSingle, 605, 50, 90, TurnDirection::Left);
    const Antibody b = ab(BehaviorType::StaticTurn, 300, std::nullopt, 100, TurnDirection::Right);
    int from_a = 0;
    for (int i = 0; i < 2000; ++i) {
        const SlotBreed s = breed_slot(a, b, 0.0, rng);
        REQUIRE(s.antibody);
        REQUIRE((*s.antibody == a || *s.antibody == b));
        from_a += *s.antibody == a;
    }
    CHECK(std::abs(from_a - 1000) < 120);
}

TEST_CASE("one-sided and empty slots") {
    Rng rng(1);
    const Antibody a = ab(BehaviorType::TrackMarkers, 400, std::nullopt, 20, std::nullopt);
    CHECK(*breed_slot(a, std::nullopt, 0.0, rng).antibody == a);
    CHECK(*breed_slot(std::nullopt, a, 0.0, rng).antibody == a);
    const SlotBreed none = breed_slot(std::nullopt, std::nullopt, 1.0, rng);
    CHECK_FALSE(none.antibody);
    CHECK(none.origin == SlotOrigin::Empty);
}

TEST_CASE("same-type crossover modes") {
    Rng rng(4);
    const Antibody a = ab(BehaviorType::WanderBoth, 100, 20, 30, std::nullopt, 40, 50);
    const Antibody b = ab(BehaviorType::WanderBoth, 301, 80, 90, std::nullopt, 60, 70);
    std::map<SlotOrigin, int> modes;
    for (int i = 0; i < 6000; ++i) {
        const SlotBreed s = breed_slot(a, b, 0.0, rng);
        const Antibody& c = *s.antibody;
        ++modes[s.origin];
        switch (s.origin) {
            case SlotOrigin::Average:
                CHECK(c == ab(BehaviorType::WanderBoth, 201, 50, 60, std::nullopt, 50, 60));
                break;
            case SlotOrigin::RandomPick:
                CHECK((c.speed == 100 || c.speed == 301));
                CHECK((c.turn_frequency == 20 || c.turn_frequency == 80));
                CHECK((c.right_turn_angle == 50 || c.right_turn_angle == 70));
                break;
            case SlotOrigin::HalvesPattern:
                // attributes S, F, A, R_f, R_a: first three from a
                CHECK(c == ab(BehaviorType::WanderBoth, 100, 20, 30, std::nullopt, 60, 70));
                break;
            case SlotOrigin::AlternatingPattern:
                CHECK(c == ab(BehaviorType::WanderBoth, 100, 80, 30, std::nullopt, 60, 50));
                break;
            default:
                FAIL("unexpected origin");
        }
    }
    CHECK(std::abs(modes[SlotOrigin::Average] - 2000) < 200);
    CHECK(std::abs(modes[SlotOrigin::RandomPick] - 2000) < 200);
    CHECK(std::abs(modes[SlotOrigin::HalvesPattern] + modes[SlotOrigin::AlternatingPattern] - 2000) < 200);
}

TEST_CASE("averaging picks a parent's direction") {
    Rng rng(6);
    const Antibody a = ab(BehaviorType::ForwardTurn, 100, std::nullopt, 30, TurnDirection::Left);
    const Antibody b = ab(BehaviorType::ForwardTurn, 200, std::nullopt, 40, TurnDirection::Right);
    std::set<TurnDirection> dirs;
    for (int i = 0; i < 500; ++i) {
        const SlotBreed s = breed_slot(a, b, 0.0, rng);
        if (s.origin == SlotOrigin::Average) dirs.insert(*s.antibody->direction);
    }
    CHECK(dirs.size() == 2);
}

TEST_CASE("replacement rate follows epsilon") {
    Rng rng(10);
    const Antibody a = ab(BehaviorType::TrackMarkers, 400, std::nullopt, 20, std::nullopt);
    int replaced = 0;
    for (int i = 0; i < 20000; ++i) replaced += breed_slot(a, a, 0.25, rng).origin == SlotOrigin::Replaced;
    CHECK(std::abs(replaced / 20000.0 - 0.25) < 0.02);
}

TEST_CASE("children always validate") {
    Rng rng(11);
    for (int i = 0; i < 20000; ++i) {
        const Genome a = random_genome(rng);
        const Genome b = random_genome(rng);
        const Genome c = breed(a, b, uniform_real(rng, 0, 1), rng);
        for (int j = 0; j < kAntigenCount; ++j) {
            if (!a.slots[j] && !b.slots[j]) REQUIRE_FALSE(c.slots[j]);
            if (c.slots[j]) {
                REQUIRE(validate(*c.slots[j]).empty());
                REQUIRE(c.slots[j]->score == 0);
            }
        }
    }
}

TEST_CASE("epsilon zero with identical parents is a fixed point") {
    Rng rng(12);
    for (int i = 0; i < 2000; ++i) {
        const Genome g = random_genome(rng);
        REQUIRE(breed(g, g, 0.0, rng) == g);
    }
}

TEST_CASE("mutation counts attributes other than D") {
    Rng rng(13);
    const Antibody a = ab(BehaviorType::ForwardTurn, 400, std::nullopt, 100, TurnDirection::Left);
    for (int i = 0; i < 200; ++i) {
        // epsilon 1 replaces outright, so probe the mutation path directly with a high rate
        const SlotBreed s = breed_slot(a, a, 0.999, rng);
        if (s.origin != SlotOrigin::Replaced) CHECK(s.mutations <= 2);
    }
}

TEST_CASE("stopping presets") {
    const auto w1 = StoppingCriteria::world1();
    CHECK(w1.row1_t == 400);
    CHECK(w1.row1_c == 60);
    CHECK(w1.delta_f == 0.1);
    CHECK(w1.max_generation == 30);
    CHECK(w1.row3_t == 225);
    CHECK(w1.row3_c == 35);
    CHECK(w1.plateau_generation == 15);
    const auto w2 = StoppingCriteria::world2();
    CHECK(w2.row1_t == 600);
    CHECK(w2.row1_c == 90);
    CHECK(w2.delta_f == 0.2);
    CHECK(w2.max_generation == 30);
    CHECK(w2.row3_t == 400);
    CHECK(w2.row3_c == 45);
    CHECK(w2.plateau_generation == 15);
    CHECK(StoppingCriteria::preset("world2"));
    CHECK_FALSE(StoppingCriteria::preset("world3"));
}

TEST_CASE("stopping rows") {
    const auto w1 = StoppingCriteria::world1();
    const auto w2 = StoppingCriteria::world2();
    using H = std::vector<GenerationStats>;

    // row 1: n = 2, t 390, c 55, |df| 0.05
    CHECK(check_convergence(H{row(0, 900, 100), row(1, 390.05, 55), row(2, 390, 55)}, w1) == 1);
    // row 1 requires n > 0
    CHECK(check_convergence(H{row(0, 390, 55)}, w1) == 0);
    // row 2
    CHECK(check_convergence(H{row(30, 2000, 300), row(31, 1000, 300)}, w1) == 2);
    CHECK(check_convergence(H{row(29, 2000, 300), row(30, 1000, 300)}, w1) == 0);
    // row 3: world2 at n = 0
    CHECK(check_convergence(H{row(0, 399, 44)}, w2) == 3);
    CHECK(check_convergence(H{row(0, 400, 44)}, w2) == 0);
    CHECK(check_convergence(H{row(0, 224, 34)}, w1) == 3);
    // row 4
    CHECK(check_convergence(H{row(15, 1000, 100), row(16, 1000.05, 100)}, w1) == 4);
    CHECK(check_convergence(H{row(15, 1000, 100), row(16, 1000.15, 100)}, w1) == 0);
    CHECK(check_convergence(H{row(15, 1000, 100), row(16, 1000.15, 100)}, w2) == 4);
    CHECK(check_convergence(H{row(14, 1000, 100), row(15, 1000.05, 100)}, w1) == 0);
    // lowest matching row wins
    CHECK(check_convergence(H{row(30, 300, 30), row(31, 300, 30)}, w1) == 1);
    CHECK(check_convergence(H{}, w1) == 0);
}

TEST_CASE("population models") {
    CHECK(PopulationModel::parse("single:25").to_string() == "single:25");
    const auto m = PopulationModel::parse("multi:5x8");
    CHECK(m.kind == PopulationModel::Kind::Multi);
    CHECK(m.populations == 5);
    CHECK(m.size == 8);
    CHECK(m.total_robots() == 40);
    for (const char* bad : {"single", "single:", "single:x", "multi:5", "multi:5x", "pair:5", "single:-3"}) {
        CHECK_THROWS_AS(PopulationModel::parse(bad), std::invalid_argument);
    }
    CHECK_THROWS_AS(PopulationModel::single(4).validate(), std::invalid_argument);
    CHECK_NOTHROW(PopulationModel::single(5).validate());
    CHECK_THROWS_AS(PopulationModel::multi(4, 5).validate(), std::invalid_argument);
    CHECK_THROWS_AS(PopulationModel::multi(5, 1).validate(), std::invalid_argument);
}

TEST_CASE("episode seeds differ by robot and generation") {
    std::set<std::uint64_t> seeds;
    for (int r = 0; r < 20; ++r) {
        for (int g = 0; g < 20; ++g) seeds.insert(episode_seed(1, r, g));
    }
    CHECK(seeds.size() == 400);
    CHECK(episode_seed(1, 3, 4) == episode_seed(1, 3, 4));
    CHECK(episode_seed(1, 3, 4) != episode_seed(2, 3, 4));
}

TEST_CASE("multi populations never interbreed") {
    const auto arena = sim::bundled_arena("world1");
    std::vector<Pairing> pairings;
    EvolveOptions o;
    o.on_pairing = [&](const Pairing& p) { pairings.push_back(p); };
    o.threads = 1;
    StoppingCriteria never{0, 0, 0, 3, 0, 0, 100};
    const auto r = evolve(arena, PopulationModel::multi(5, 3), never, 9, o);
    CHECK(r.history.size() == 5);
    CHECK(r.seeds.provenance.rule == 2);
    CHECK(r.seeds.provenance.generations == 4);
    REQUIRE_FALSE(pairings.empty());
    // elitism keeps one slot per population, the rest are bred
    CHECK(pairings.size() == 4 * 5 * 2);
    for (const Pairing& p : pairings) {
        CHECK(p.child / 3 == p.population);
        CHECK(p.parent_a / 3 == p.population);
        CHECK(p.parent_b / 3 == p.population);
        CHECK(p.parent_a != p.parent_b);
    }
}

TEST_CASE("single population pairs across the whole population") {
    const auto arena = sim::bundled_arena("world1");
    std::vector<Pairing> pairings;
    EvolveOptions o;
    o.on_pairing = [&](const Pairing& p) { pairings.push_back(p); };
    o.elitism = false;
    StoppingCriteria never{0, 0, 0, 1, 0, 0, 100};
    const auto r = evolve(arena, PopulationModel::single(6), never, 9, o);
    CHECK(r.history.size() == 3);
    CHECK(pairings.size() == 2 * 6);
    for (const Pairing& p : pairings) CHECK(p.population == 0);
    for (const SeedGenome& g : r.seeds.genomes) CHECK(g.genome.occupied() > 0);
}

TEST_CASE("evolve is deterministic and thread-count independent") {
    const auto arena = sim::bundled_arena("world2");
    StoppingCriteria never{0, 0, 0, 2, 0, 0, 100};
    EvolveOptions one;
    one.threads = 1;
    EvolveOptions many;
    many.threads = 4;
    const auto a = evolve(arena, PopulationModel::multi(5, 2), never, 21, one);
    const auto b = evolve(arena, PopulationModel::multi(5, 2), never, 21, many);
    CHECK(a.seeds == b.seeds);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].f_n == b.history[i].f_n);
        CHECK(a.history[i].best == b.history[i].best);
        CHECK(a.history[i].sim_s == b.history[i].sim_s);
    }
    const auto c = evolve(arena, PopulationModel::multi(5, 2), never, 22, one);
    CHECK_FALSE(a.seeds == c.seeds);
}

TEST_CASE("elitism never lets the best cost rise") {
    const auto arena = sim::bundled_arena("world1");
    StoppingCriteria never{0, 0, 0, 6, 0, 0, 100};
    const auto r = evolve(arena, PopulationModel::single(8), never, 5);
    for (std::size_t i = 1; i < r.history.size(); ++i) {
        const auto& prev = r.history[i - 1].best;
        const auto& cur = r.history[i].best;
        CHECK(cur.t + cur.c <= prev.t + prev.c);
    }
    CHECK(r.history.back().f_n == doctest::Approx(r.history.back().t_n + r.history.back().c_n));
}

TEST_CASE("multi seed set holds each population's best") {
    const auto arena = sim::bundled_arena("world1");
    StoppingCriteria never{0, 0, 0, 0, 0, 0, 100};
    const auto r = evolve(arena, PopulationModel::multi(5, 3), never, 31);
    REQUIRE(r.history.size() == 2);
    double t = 0, c = 0;
    for (const SeedGenome& g : r.seeds.genomes) {
        t += g.outcome.t / 5;
        c += g.outcome.c / 5.0;
        // the exported episode replays from its start genome
        const auto replay = sim::run_episode(g.start_genome, arena, g.episode_seed);
        CHECK(replay.outcome == g.outcome);
        CHECK(replay.genome == g.genome);
    }
    CHECK(r.history.back().t_n == doctest::Approx(t));
    CHECK(r.history.back().c_n == doctest::Approx(c));
}

TEST_CASE("bad options are rejected") {
    const auto arena = sim::bundled_arena("world1");
    EvolveOptions o;
    o.epsilon = 1.5;
    CHECK_THROWS_AS(evolve(arena, PopulationModel::multi(5, 2), StoppingCriteria::world1(), 1, o),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve(arena, PopulationModel::single(3), StoppingCriteria::world1(), 1), std::invalid_argument);
}
