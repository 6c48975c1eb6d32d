#include "respow/score_file.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <system_error>

namespace respow {

namespace {

std::string trim_eol(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    return line;
}

} // namespace

LabeledScores read_score_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScoreFileError("cannot open score file: " + path.string(), 0);

    std::string line;
    if (!std::getline(in, line)) throw ScoreFileError("empty score file: " + path.string(), 0);
    if (trim_eol(line) != "score,label") {
        throw ScoreFileError("expected header 'score,label' in " + path.string(), 1);
    }

    LabeledScores data;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = trim_eol(line);
        if (row.empty()) {
            throw ScoreFileError("blank row at line " + std::to_string(line_no), line_no);
        }
        const char* begin = row.data();
        const char* end = begin + row.size();

        double score;
        auto [p_score, ec_score] = std::from_chars(begin, end, score);
        if (ec_score != std::errc() || p_score == end || *p_score != ',') {
            throw ScoreFileError("malformed score at line " + std::to_string(line_no), line_no);
        }
        int label;
        auto [p_label, ec_label] = std::from_chars(p_score + 1, end, label);
        if (ec_label != std::errc() || p_label != end) {
            throw ScoreFileError("malformed label at line " + std::to_string(line_no), line_no);
        }
        if (label != 0 && label != 1) {
            throw ScoreFileError("label must be 0 or 1 at line " + std::to_string(line_no),
                                 line_no);
        }
        data.scores.push_back(score);
        data.labels.push_back(label);
    }
    data.validate();
    return data;
}

void write_score_file(const std::filesystem::path& path, const LabeledScores& data) {
    data.validate();
    std::ofstream out(path);
    if (!out) throw ScoreFileError("cannot write score file: " + path.string(), 0);
    out << "score,label\n";
    char buf[32];
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), data.scores[i]);
        out.write(buf, ptr - buf);
        out << ',' << data.labels[i] << '\n';
    }
}

} // namespace respow
