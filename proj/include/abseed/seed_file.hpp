#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "abseed/seed_set.hpp"

namespace abseed {

class SeedFileError : public std::runtime_error {
  public:
    SeedFileError(int line, const std::string& what);
    int line() const { return line_; }

  private:
    int line_;
};

/// Text form of a seed set:
///
///     ABSEED-SEEDSET 1
///     model multi:5x5
///     seed 42
///     arena world1
///     generations 7
///     rule 3
///     genome 0
///     episode_seed 1234567
///     outcome t=312.352 c=4 doors=2 completed=1
///     slot 0 TRACK_MARKERS (600, NULL, 20, NULL, NULL, NULL) L=-4
///     slot 1 NULL
///     ...                       (8 slot lines: the exported behaviors)
///     start 0 NULL
///     ...                       (8 start lines: the genome the episode began with)
///     end
///     genome 1
///     ...
std::string format_seed_file(const SeedSet& s);
SeedSet parse_seed_file(std::string_view text);

SeedSet read_seed_file(const std::filesystem::path& path);
// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace abseed
