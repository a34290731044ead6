#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "abseed/seed_set.hpp"

namespace abseed {

// Published normalizers: expected group score for random type and speed picks.
inline constexpr double kTypeSigma = 8.333;
inline constexpr double kSpeedSigma = 10.000;

enum class DiversityAttribute { Type, Speed };

// Value multiplicity pattern of a group of five.
enum class RepeatPattern {
    AllDifferent,      // 10 points
    OneRepeatOfTwo,    // 9
    TwoRepeatsOfTwo,   // 8
    OneRepeatOfThree,  // 7
    TwoAndThree,       // 6
    OneRepeatOfFour,   // 4
    AllSame,           // 0
};

// Number of unequal pairs among five values. Throws std::invalid_argument
// unless exactly five values are given.
int group_score(std::span<const int> values);
RepeatPattern repeat_pattern(std::span<const int> values);
int pattern_points(RepeatPattern p);

// 10 (m - 1) / m: the mean group score of five uniform draws from m values.
double expected_sigma(int domain_size);

double default_sigma(DiversityAttribute attr);

class DiversityError : public std::runtime_error {
  public:
    DiversityError(int antigen, const std::string& what);
    int antigen() const { return antigen_; }

  private:
    int antigen_;
};

// Attribute values of one antigen group across the five genomes, if all
// five slots are populated.
std::optional<std::array<int, kSeedSetSize>> attribute_group(const SeedSet& s, int antigen, DiversityAttribute attr);

// Z = sum(z_i) / (sigma * 8). Throws DiversityError naming the first
// antigen whose group is not fully populated.
double diversity_z(const SeedSet& s, DiversityAttribute attr, std::optional<double> sigma = std::nullopt);

struct DiversityReport {
    double z_t = 0.0;
    double z_s = 0.0;
    std::array<std::optional<int>, kAntigenCount> type_scores;   // empty for omitted groups
    std::array<std::optional<int>, kAntigenCount> speed_scores;
    std::vector<int> omitted;  // antigens whose group is not fully populated
};

/// Diversity over the fully populated groups only; y is the number of such
/// groups and omitted antigens are listed. With analytic_sigma the
/// normalizers are expected_sigma(6) and expected_sigma(751).
DiversityReport diversity_report(const SeedSet& s, bool analytic_sigma = false);

}  // namespace abseed
