#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahmd/ah_system.hpp"
#include "ahmd/branched.hpp"
#include "ahmd/capacity.hpp"
#include "ahmd/variation.hpp"

namespace ahmd {

using Json = nlohmann::ordered_json;

struct NamedCover {
    int stage = 0;
    StageCover blocks;
    friend bool operator==(const NamedCover&, const NamedCover&) = default;
};

struct NamedTrace {
    int stage = 0;
    std::vector<TraceData> blocks;
};

struct NamedClosedSet {
    int stage = 0;
    int block = 0;
    ClosedSet set;
    friend bool operator==(const NamedClosedSet&, const NamedClosedSet&) = default;
};

struct NamedOpenSet {
    int stage = 0;
    int block = 0;
    OpenSet set;
    SimplexId center = 0;
    friend bool operator==(const NamedOpenSet&, const NamedOpenSet&) = default;
};

struct NamedFamily {
    int stage = 0;
    StageFamily blocks;
};

/// Defaults stored in a description; command-line options override them.
struct RunConfig {
    int level = 1;
    std::uint64_t budget = 1'000'000;
    std::optional<int> stage;
    double epsilon = 0.1;
    int radius = 1;
    std::optional<int> target_stage;
    std::optional<int> target_block;
    std::string cover;
    std::string closed_set;
    std::string open_set;
    std::string trace;
    std::string family;
    bool timing = false;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct SystemDescription {
    std::map<std::string, Complex> complexes;
    /// Complex name of every block.
    std::vector<std::vector<std::string>> block_spaces;
    AHSystem system;
    std::map<std::string, NamedCover> covers;
    std::map<std::string, NamedTrace> traces;
    std::map<std::string, NamedClosedSet> closed_sets;
    std::map<std::string, NamedOpenSet> open_sets;
    std::map<std::string, NamedFamily> families;
    std::vector<Pairing> pairings;
    RunConfig config;
};

bool operator==(const NamedTrace& a, const NamedTrace& b);
bool operator==(const NamedFamily& a, const NamedFamily& b);
bool operator==(const SystemDescription& a, const SystemDescription& b);

/// Parses and validates a description. Errors name the offending JSON path.
SystemDescription parse_description(const Json& j);
SystemDescription load_description(const std::string& path);
/// Explicit form: generators are expanded, sets listed by simplices.
Json to_json(const SystemDescription& d);

Json goodearl_description(const std::vector<int>& m, const std::vector<int>& points, int resolution);

/// Serialisation helpers shared with the report writer.
Json simplices_json(const Complex& c, const SimplexSet& s);
Json rational_json(const Rational& r);
Json config_json(const RunConfig& c);

}  // namespace ahmd
