#pragma once

#include <string>
#include <vector>

#include "ahmd/io.hpp"

namespace ahmd {

struct CsvRow {
    std::string command;
    std::string name;
    int stage = 0;
    int block = 0;
    std::string value;
    bool exact = false;
};

struct Report {
    Json json;
    std::vector<CsvRow> rows;
};

const std::vector<std::string>& commands();

/// Dispatches one command. Budget exhaustion is reported, never thrown.
Report run(const std::string& command, const SystemDescription& desc, const RunConfig& config);

/// Columns stage, block, value, exact, command, name.
std::string to_csv(const std::vector<CsvRow>& rows);

}  // namespace ahmd
