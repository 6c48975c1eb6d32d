#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "respow/scores.hpp"

namespace respow {

// Malformed score file. line is 1-based; 0 when the problem is not tied to
// a specific row (missing file, empty file, bad header).
struct ScoreFileError : std::runtime_error {
    std::size_t line;
    ScoreFileError(const std::string& msg, std::size_t line_no)
        : std::runtime_error(msg), line(line_no) {}
};

// Reads a delimited score file: header "score,label", one "<score>,<label>"
// row per case, dot decimal separator, label 0 or 1. Locale-independent.
// Throws ScoreFileError on malformed input and std::invalid_argument when
// the parsed data fails LabeledScores validation (e.g. single class).
LabeledScores read_score_file(const std::filesystem::path& path);

// Writes the same format with shortest round-trip decimals, so a
// write/read cycle reproduces every score bit-for-bit.
void write_score_file(const std::filesystem::path& path, const LabeledScores& data);

} // namespace respow
