#include "abseed/seed_file.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace abseed {

SeedFileError::SeedFileError(int line, const std::string& what)
    : std::runtime_error("seed file line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

constexpr std::string_view kMagic = "ABSEED-SEEDSET 1";

std::string slot_text(const std::optional<Antibody>& slot) {
    if (!slot) return "NULL";
    return to_string(*slot) + " L=" + std::to_string(slot->score);
}

std::string format_outcome(const sim::RunOutcome& o) {
    std::array<char, 128> buf{};
    std::snprintf(buf.data(), buf.size(), "t=%.3f c=%d doors=%d completed=%d", o.t, o.c, o.doors_passed,
                  o.completed ? 1 : 0);
    return buf.data();
}

class Lines {
  public:
    explicit Lines(std::string_view text) {
        std::size_t pos = 0;
        while (pos < text.size()) {
            const auto nl = text.find('\n', pos);
            const auto end = nl == std::string_view::npos ? text.size() : nl;
            lines_.push_back(text.substr(pos, end - pos));
            pos = end + 1;
        }
    }

    int number() const { return static_cast<int>(index_); }

    std::string_view next(const char* expected) {
        if (index_ >= lines_.size()) throw SeedFileError(number() + 1, std::string("truncated: expected ") + expected);
        return lines_[index_++];
    }

    // Value after "<key> " on the next line.
    std::string_view keyed(std::string_view key) {
        const std::string_view line = next(std::string(key).c_str());
        if (line.size() <= key.size() || line.substr(0, key.size()) != key || line[key.size()] != ' ') {
            fail("expected '" + std::string(key) + " ...', got '" + std::string(line) + "'");
        }
        return line.substr(key.size() + 1);
    }

    bool at_end() const { return index_ >= lines_.size(); }

    [[noreturn]] void fail(const std::string& what) const { throw SeedFileError(number(), what); }

    template <typename T>
    T integer(std::string_view tok, const char* what) const {
        T v{};
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
            fail(std::string("bad ") + what + " '" + std::string(tok) + "'");
        }
        return v;
    }

  private:
    std::vector<std::string_view> lines_;
    std::size_t index_ = 0;
};

std::optional<Antibody> parse_slot(Lines& in, std::string_view key, int expected_index) {
    std::string_view rest = in.keyed(key);
    const auto sp = rest.find(' ');
    if (sp == std::string_view::npos) in.fail("slot line needs an index and a behavior");
    if (in.integer<int>(rest.substr(0, sp), "slot index") != expected_index) {
        in.fail("expected slot " + std::to_string(expected_index));
    }
    rest.remove_prefix(sp + 1);
    if (rest == "NULL") return std::nullopt;
    const auto lpos = rest.rfind(" L=");
    if (lpos == std::string_view::npos) in.fail("antibody field L: missing cumulative score");
    Antibody a;
    try {
        a = parse_antibody(rest.substr(0, lpos));
    } catch (const AntibodyParseError& e) {
        in.fail(e.what());
    }
    a.score = in.integer<int>(rest.substr(lpos + 3), "antibody field L");
    return a;
}

sim::RunOutcome parse_outcome(Lines& in) {
    const std::string text(in.keyed("outcome"));
    sim::RunOutcome o;
    int completed = 0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "t=%lf c=%d doors=%d completed=%d%n", &o.t, &o.c, &o.doors_passed, &completed,
                    &consumed) != 4 ||
        consumed != static_cast<int>(text.size())) {
        in.fail("malformed outcome '" + text + "'");
    }
    o.completed = completed != 0;
    return o;
}

}  // namespace

std::string format_seed_file(const SeedSet& s) {
    std::ostringstream os;
    os << kMagic << '\n';
    os << "model " << s.provenance.model << '\n';
    os << "seed " << s.provenance.seed << '\n';
    os << "arena " << s.provenance.arena << '\n';
    os << "generations " << s.provenance.generations << '\n';
    os << "rule " << s.provenance.rule << '\n';
    for (int g = 0; g < kSeedSetSize; ++g) {
        const SeedGenome& sg = s.genomes[g];
        os << "genome " << g << '\n';
        os << "episode_seed " << sg.episode_seed << '\n';
        os << "outcome " << format_outcome(sg.outcome) << '\n';
        for (int j = 0; j < kAntigenCount; ++j) os << "slot " << j << ' ' << slot_text(sg.genome.slots[j]) << '\n';
        for (int j = 0; j < kAntigenCount; ++j) {
            os << "start " << j << ' ' << slot_text(sg.start_genome.slots[j]) << '\n';
        }
        os << "end\n";
    }
    return os.str();
}

SeedSet parse_seed_file(std::string_view text) {
    Lines in(text);
    if (in.next("header") != kMagic) in.fail("not a seed file (missing '" + std::string(kMagic) + "')");
    SeedSet s;
    s.provenance.model = std::string(in.keyed("model"));
    s.provenance.seed = in.integer<std::uint64_t>(in.keyed("seed"), "seed");
    s.provenance.arena = std::string(in.keyed("arena"));
    s.provenance.generations = in.integer<int>(in.keyed("generations"), "generations");
    s.provenance.rule = in.integer<int>(in.keyed("rule"), "rule");
    for (int g = 0; g < kSeedSetSize; ++g) {
        if (in.integer<int>(in.keyed("genome"), "genome index") != g) in.fail("expected genome " + std::to_string(g));
        SeedGenome& sg = s.genomes[g];
        sg.episode_seed = in.integer<std::uint64_t>(in.keyed("episode_seed"), "episode_seed");
        sg.outcome = parse_outcome(in);
        for (int j = 0; j < kAntigenCount; ++j) sg.genome.slots[j] = parse_slot(in, "slot", j);
        for (int j = 0; j < kAntigenCount; ++j) sg.start_genome.slots[j] = parse_slot(in, "start", j);
        if (in.next("end") != "end") in.fail("expected 'end'");
    }
    if (!in.at_end()) in.fail("trailing content after the fifth genome");
    return s;
}

SeedSet read_seed_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw SeedFileError(0, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_seed_file(ss.str());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace abseed
