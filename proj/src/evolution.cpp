#include "abseed/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace abseed {

std::vector<double> relative_fitness(std::span<const double> costs) {
    if (costs.size() < 2) throw std::invalid_argument("relative_fitness needs at least two costs");
    double inverse_sum = 0.0;
    for (double w : costs) {
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("relative_fitness: costs must be positive");
        inverse_sum += 1.0 / w;
    }
    std::vector<double> mu;
    mu.reserve(costs.size());
    for (double w : costs) mu.push_back(1.0 / (w * inverse_sum));
    return mu;
}

std::size_t roulette_select(std::span<const double> weights, Rng& rng) {
    if (weights.empty()) throw std::invalid_argument("roulette_select on an empty wheel");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    const double spin = uniform_real(rng, 0.0, total);
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (spin < acc) return i;
    }
    // Rounding can leave spin just past the last edge.
    for (std::size_t i = weights.size(); i-- > 0;) {
        if (weights[i] > 0.0) return i;
    }
    return weights.size() - 1;
}

std::pair<std::size_t, std::size_t> select_parents(std::span<const double> weights, Rng& rng) {
    if (weights.size() < 2) throw std::invalid_argument("two distinct parents need at least two robots");
    const std::size_t a = roulette_select(weights, rng);
    std::size_t b = roulette_select(weights, rng);
    while (b == a) b = roulette_select(weights, rng);
    return {a, b};
}

int mutate_value(int value, Range bounds, Rng& rng) {
    const double factor = uniform_real(rng, 0.2, 0.5);
    const double scaled = uniform_int(rng, 0, 1) == 0 ? value * (1.0 - factor) : value * (1.0 + factor);
    return std::clamp(static_cast<int>(std::lround(scaled)), bounds.min, bounds.max);
}

namespace {

enum class Attr { S, F, A, D, Rf, Ra };

std::vector<Attr> used_attributes(BehaviorType t) {
    const TypeBounds& b = bounds_for(t);
    std::vector<Attr> out{Attr::S};
    if (b.turn_frequency) out.push_back(Attr::F);
    out.push_back(Attr::A);
    if (b.uses_direction) out.push_back(Attr::D);
    if (b.right_turn_frequency) out.push_back(Attr::Rf);
    if (b.right_turn_angle) out.push_back(Attr::Ra);
    return out;
}

void copy_attribute(Antibody& dst, const Antibody& src, Attr attr) {
    switch (attr) {
        case Attr::S: dst.speed = src.speed; break;
        case Attr::F: dst.turn_frequency = src.turn_frequency; break;
        case Attr::A: dst.turn_angle = src.turn_angle; break;
        case Attr::D: dst.direction = src.direction; break;
        case Attr::Rf: dst.right_turn_frequency = src.right_turn_frequency; break;
        case Attr::Ra: dst.right_turn_angle = src.right_turn_angle; break;
    }
}

// Integer attribute handle with its bounds; D has none.
struct IntAttribute {
    int* value;
    Range bounds;
};

std::optional<IntAttribute> int_attribute(Antibody& ab, Attr attr) {
    const TypeBounds& b = bounds_for(ab.type);
    switch (attr) {
        case Attr::S: return IntAttribute{&ab.speed, b.speed};
        case Attr::F: return IntAttribute{&*ab.turn_frequency, *b.turn_frequency};
        case Attr::A: return IntAttribute{&ab.turn_angle, b.turn_angle};
        case Attr::Rf: return IntAttribute{&*ab.right_turn_frequency, *b.right_turn_frequency};
        case Attr::Ra: return IntAttribute{&*ab.right_turn_angle, *b.right_turn_angle};
        case Attr::D: return std::nullopt;
    }
    return std::nullopt;
}

Antibody crossover(const Antibody& a, const Antibody& b, SlotOrigin& origin, Rng& rng) {
    Antibody child = a;
    const std::vector<Attr> attrs = used_attributes(a.type);
    const int mode = uniform_int(rng, 0, 2);
    if (mode == 0) {
        origin = SlotOrigin::Average;
        Antibody other = b;
        for (Attr attr : attrs) {
            if (attr == Attr::D) {
                if (uniform_int(rng, 0, 1) == 1) child.direction = b.direction;
                continue;
            }
            const auto mine = int_attribute(child, attr);
            const auto theirs = int_attribute(other, attr);
            const long avg = std::lround((*mine->value + *theirs->value) / 2.0);
            *mine->value = std::clamp(static_cast<int>(avg), mine->bounds.min, mine->bounds.max);
        }
    } else if (mode == 1) {
        origin = SlotOrigin::RandomPick;
        for (Attr attr : attrs) {
            if (uniform_int(rng, 0, 1) == 1) copy_attribute(child, b, attr);
        }
    } else if (uniform_int(rng, 0, 1) == 0) {
        origin = SlotOrigin::HalvesPattern;
        const std::size_t half = (attrs.size() + 1) / 2;
        for (std::size_t i = half; i < attrs.size(); ++i) copy_attribute(child, b, attrs[i]);
    } else {
        origin = SlotOrigin::AlternatingPattern;
        for (std::size_t i = 1; i < attrs.size(); i += 2) copy_attribute(child, b, attrs[i]);
    }
    return child;
}

}  // namespace

SlotBreed breed_slot(const std::optional<Antibody>& a, const std::optional<Antibody>& b, double epsilon, Rng& rng) {
    SlotBreed out;
    if (!a && !b) return out;
    if (bernoulli(rng, epsilon)) {
        out.antibody = random_antibody(rng);
        out.origin = SlotOrigin::Replaced;
        return out;
    }
    if (!a || !b) {
        out.antibody = a ? *a : *b;
        out.origin = a ? SlotOrigin::CopiedA : SlotOrigin::CopiedB;
    } else if (a->type != b->type) {
        const bool pick_a = uniform_int(rng, 0, 1) == 0;
        out.antibody = pick_a ? *a : *b;
        out.origin = pick_a ? SlotOrigin::CopiedA : SlotOrigin::CopiedB;
    } else {
        out.antibody = crossover(*a, *b, out.origin, rng);
    }
    for (Attr attr : used_attributes(out.antibody->type)) {
        if (attr == Attr::D || !bernoulli(rng, epsilon)) continue;
        const auto handle = int_attribute(*out.antibody, attr);
        *handle->value = mutate_value(*handle->value, handle->bounds, rng);
        ++out.mutations;
    }
    out.antibody->score = 0;
    return out;
}

Genome breed(const Genome& a, const Genome& b, double epsilon, Rng& rng) {
    Genome child;
    for (int j = 0; j < kAntigenCount; ++j) child.slots[j] = breed_slot(a.slots[j], b.slots[j], epsilon, rng).antibody;
    return child;
}

StoppingCriteria StoppingCriteria::world1() { return {400.0, 60.0, 0.1, 30, 225.0, 35.0, 15}; }

StoppingCriteria StoppingCriteria::world2() { return {600.0, 90.0, 0.2, 30, 400.0, 45.0, 15}; }

std::optional<StoppingCriteria> StoppingCriteria::preset(std::string_view name) {
    if (name == "world1") return world1();
    if (name == "world2") return world2();
    return std::nullopt;
}

int check_convergence(std::span<const GenerationStats> history, const StoppingCriteria& k) {
    if (history.empty()) return 0;
    const GenerationStats& s = history.back();
    const bool has_prev = history.size() >= 2 && s.n >= 1;
    const bool flat = has_prev && std::abs(s.f_n - history[history.size() - 2].f_n) < k.delta_f;
    if (s.n > 0 && s.t_n < k.row1_t && s.c_n < k.row1_c && flat) return 1;
    if (s.n > k.max_generation) return 2;
    if (s.t_n < k.row3_t && s.c_n < k.row3_c) return 3;
    if (s.n > k.plateau_generation && flat) return 4;
    return 0;
}

PopulationModel PopulationModel::single(int x) { return {Kind::Single, 1, x}; }

PopulationModel PopulationModel::multi(int k, int m) { return {Kind::Multi, k, m}; }

namespace {

int parse_positive(std::string_view s, std::string_view whole) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v <= 0) {
        throw std::invalid_argument("bad population model '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

PopulationModel PopulationModel::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("population model must be single:N or multi:KxM, got '" + std::string(text) + "'");
    }
    const std::string_view kind = text.substr(0, colon);
    const std::string_view rest = text.substr(colon + 1);
    PopulationModel m;
    if (kind == "single") {
        m = single(parse_positive(rest, text));
    } else if (kind == "multi") {
        const auto x = rest.find('x');
        if (x == std::string_view::npos) throw std::invalid_argument("multi model needs KxM, got '" + std::string(text) + "'");
        m = multi(parse_positive(rest.substr(0, x), text), parse_positive(rest.substr(x + 1), text));
    } else {
        throw std::invalid_argument("population model must be single:N or multi:KxM, got '" + std::string(text) + "'");
    }
    m.validate();
    return m;
}

std::string PopulationModel::to_string() const {
    if (kind == Kind::Single) return "single:" + std::to_string(size);
    return "multi:" + std::to_string(populations) + "x" + std::to_string(size);
}

void PopulationModel::validate() const {
    if (kind == Kind::Single) {
        if (populations != 1 || size < kSeedSetSize) {
            throw std::invalid_argument("single population needs at least 5 robots");
        }
    } else if (populations != kSeedSetSize || size < 2) {
        throw std::invalid_argument("multi model needs exactly 5 populations of at least 2 robots");
    }
}

std::uint64_t episode_seed(std::uint64_t master_seed, int robot_id, int generation) {
    return derive_seed({master_seed, static_cast<std::uint64_t>(robot_id), static_cast<std::uint64_t>(generation)});
}

namespace {

constexpr std::uint64_t kBreedStream = 0x62726565;  // "bree"

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

std::size_t argmin_cost(const std::vector<Individual>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (pop[i].cost() < pop[best].cost()) best = i;
    }
    return best;
}

}  // namespace

EvolveResult evolve(const sim::ArenaSpec& arena, const PopulationModel& model, const StoppingCriteria& criteria,
                    std::uint64_t master_seed, const EvolveOptions& options) {
    model.validate();
    if (options.epsilon < 0.0 || options.epsilon > 1.0) throw std::invalid_argument("epsilon must lie in [0, 1]");

    const auto started = std::chrono::steady_clock::now();

    const int k = model.populations;
    const int m = model.size;
    std::vector<std::vector<Individual>> pops(k, std::vector<Individual>(m));
    EvolveResult result;

    for (int n = 0;; ++n) {
        std::vector<std::pair<int, int>> pending;
        for (int p = 0; p < k; ++p) {
            for (int i = 0; i < m; ++i) {
                if (!pops[p][i].evaluated) pending.emplace_back(p, i);
            }
        }
        std::vector<std::int64_t> sim_ms(pending.size(), 0);
        parallel_for(pending.size(), options.threads, [&](std::size_t j) {
            const auto [p, i] = pending[j];
            Individual& ind = pops[p][i];
            ind.episode_seed = episode_seed(master_seed, p * m + i, n);
            sim::EpisodeResult r = sim::run_episode(ind.start_genome, arena, ind.episode_seed);
            ind.genome = std::move(r.genome);
            ind.outcome = r.outcome;
            ind.evaluated = true;
            sim_ms[j] = r.simulated_ms;
        });
        for (std::int64_t ms : sim_ms) result.simulated_seconds += ms / 1000.0;

        for (auto& pop : pops) {
            std::vector<double> costs;
            for (const Individual& ind : pop) costs.push_back(ind.cost());
            const std::vector<double> mu = relative_fitness(costs);
            for (std::size_t i = 0; i < pop.size(); ++i) pop[i].mu = mu[i];
        }

        std::vector<const Individual*> elite;
        if (model.kind == PopulationModel::Kind::Single) {
            std::vector<std::size_t> order(m);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t x, std::size_t y) { return pops[0][x].cost() < pops[0][y].cost(); });
            for (int e = 0; e < kSeedSetSize; ++e) elite.push_back(&pops[0][order[e]]);
        } else {
            for (const auto& pop : pops) elite.push_back(&pop[argmin_cost(pop)]);
        }

        GenerationStats stats;
        stats.n = n;
        for (const Individual* e : elite) {
            stats.t_n += e->outcome.t / elite.size();
            stats.c_n += static_cast<double>(e->outcome.c) / elite.size();
        }
        stats.f_n = stats.t_n + stats.c_n;
        const Individual* best = elite.front();
        for (const Individual* e : elite) {
            if (e->cost() < best->cost()) best = e;
        }
        stats.best = best->outcome;
        stats.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        stats.sim_s = result.simulated_seconds;
        result.history.push_back(stats);
        const int rule = check_convergence(result.history, criteria);
        result.history.back().rule = rule;

        if (rule != 0) {
            for (int e = 0; e < kSeedSetSize; ++e) {
                result.seeds.genomes[e] = {elite[e]->genome, elite[e]->start_genome, elite[e]->episode_seed,
                                           elite[e]->outcome};
            }
            result.seeds.provenance = {model.to_string(), master_seed, n,
                                       options.arena_id.empty() ? arena.name : options.arena_id, rule};
            result.best = best->outcome;
            return result;
        }

        for (int p = 0; p < k; ++p) {
            const std::vector<Individual>& pop = pops[p];
            std::vector<double> mu;
            for (const Individual& ind : pop) mu.push_back(ind.mu);
            Rng rng = make_rng({master_seed, kBreedStream, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p)});

            std::vector<Individual> next;
            next.reserve(m);
            if (options.elitism) next.push_back(pop[argmin_cost(pop)]);
            while (static_cast<int>(next.size()) < m) {
                const auto [a, b] = select_parents(mu, rng);
                Individual child;
                child.start_genome = breed(pop[a].genome, pop[b].genome, options.epsilon, rng);
                if (options.on_pairing) {
                    options.on_pairing({n, p, p * m + static_cast<int>(next.size()), p * m + static_cast<int>(a),
                                        p * m + static_cast<int>(b)});
                }
                next.push_back(std::move(child));
            }
            pops[p] = std::move(next);
        }
    }
}

}  // namespace abseed
