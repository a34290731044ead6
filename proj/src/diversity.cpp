#include "abseed/diversity.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace abseed {

int group_score(std::span<const int> values) {
    if (values.size() != static_cast<std::size_t>(kSeedSetSize)) {
        throw std::invalid_argument("group_score needs exactly 5 values, got " + std::to_string(values.size()));
    }
    int points = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) points += values[i] != values[j] ? 1 : 0;
    }
    return points;
}

RepeatPattern repeat_pattern(std::span<const int> values) {
    if (values.size() != static_cast<std::size_t>(kSeedSetSize)) {
        throw std::invalid_argument("repeat_pattern needs exactly 5 values");
    }
    std::map<int, int> counts;
    for (int v : values) ++counts[v];
    std::vector<int> mult;
    for (const auto& [v, c] : counts) mult.push_back(c);
    std::sort(mult.rbegin(), mult.rend());
    switch (mult.front()) {
        case 5: return RepeatPattern::AllSame;
        case 4: return RepeatPattern::OneRepeatOfFour;
        case 3: return mult[1] == 2 ? RepeatPattern::TwoAndThree : RepeatPattern::OneRepeatOfThree;
        case 2: return mult[1] == 2 ? RepeatPattern::TwoRepeatsOfTwo : RepeatPattern::OneRepeatOfTwo;
        default: return RepeatPattern::AllDifferent;
    }
}

int pattern_points(RepeatPattern p) {
    switch (p) {
        case RepeatPattern::AllDifferent: return 10;
        case RepeatPattern::OneRepeatOfTwo: return 9;
        case RepeatPattern::TwoRepeatsOfTwo: return 8;
        case RepeatPattern::OneRepeatOfThree: return 7;
        case RepeatPattern::TwoAndThree: return 6;
        case RepeatPattern::OneRepeatOfFour: return 4;
        case RepeatPattern::AllSame: return 0;
    }
    return 0;
}

double expected_sigma(int domain_size) {
    if (domain_size < 2) throw std::invalid_argument("expected_sigma needs a domain of at least 2 values");
    return 10.0 * (domain_size - 1) / domain_size;
}

double default_sigma(DiversityAttribute attr) { return attr == DiversityAttribute::Type ? kTypeSigma : kSpeedSigma; }

DiversityError::DiversityError(int antigen, const std::string& what)
    : std::runtime_error(what), antigen_(antigen) {}

std::optional<std::array<int, kSeedSetSize>> attribute_group(const SeedSet& s, int antigen, DiversityAttribute attr) {
    std::array<int, kSeedSetSize> values{};
    for (int g = 0; g < kSeedSetSize; ++g) {
        const auto& slot = s.genomes[g].genome.slots[antigen];
        if (!slot) return std::nullopt;
        values[g] = attr == DiversityAttribute::Type ? static_cast<int>(slot->type) : slot->speed;
    }
    return values;
}

double diversity_z(const SeedSet& s, DiversityAttribute attr, std::optional<double> sigma) {
    int total = 0;
    for (int j = 0; j < kAntigenCount; ++j) {
        const auto group = attribute_group(s, j, attr);
        if (!group) {
            throw DiversityError(j, "antigen " + std::to_string(j) + " (" +
                                        std::string(antigen_name(antigen_from_int(j))) +
                                        ") group is not fully populated");
        }
        total += group_score(*group);
    }
    return total / (sigma.value_or(default_sigma(attr)) * kAntigenCount);
}

DiversityReport diversity_report(const SeedSet& s, bool analytic_sigma) {
    DiversityReport r;
    const double sigma_t = analytic_sigma ? expected_sigma(kBehaviorTypeCount) : kTypeSigma;
    const double sigma_s = analytic_sigma ? expected_sigma(751) : kSpeedSigma;
    int total_t = 0;
    int total_s = 0;
    int groups = 0;
    for (int j = 0; j < kAntigenCount; ++j) {
        const auto types = attribute_group(s, j, DiversityAttribute::Type);
        const auto speeds = attribute_group(s, j, DiversityAttribute::Speed);
        if (!types || !speeds) {
            r.omitted.push_back(j);
            continue;
        }
        r.type_scores[j] = group_score(*types);
        r.speed_scores[j] = group_score(*speeds);
        total_t += *r.type_scores[j];
        total_s += *r.speed_scores[j];
        ++groups;
    }
    if (groups > 0) {
        r.z_t = total_t / (sigma_t * groups);
        r.z_s = total_s / (sigma_s * groups);
    }
    return r;
}

}  // namespace abseed
