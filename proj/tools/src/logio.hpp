#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace frontier::cli {

enum class LogFormat { jsonl, csv };

const char* format_extension(LogFormat format);

// Doubles in emitted files carry 17 significant digits so a parse recovers
// the exact bits.
std::string fmt_double(double v);

// One admitted sample. parent_id and score_at_selection are -1 for warm-up
// rows.
struct SampleLogRow {
    std::uint64_t id = 0;
    std::uint32_t iteration = 0;
    std::int64_t parent_id = -1;
    std::vector<double> coords;
    double score_at_selection = -1.0;
};

// Streams rows to samples.jsonl or samples.csv (header row, LF endings).
class SampleLogWriter {
public:
    SampleLogWriter(const std::filesystem::path& path, LogFormat format, std::size_t dimension);

    void write(const SampleLogRow& row);
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    LogFormat format_;
    std::size_t dimension_;
    std::ofstream out_;
};

// Parses either format (sniffed from the first line). Throws errc on
// unreadable or malformed input, naming the line.
std::vector<SampleLogRow> read_sample_log(const std::filesystem::path& path);

// Line-oriented writer for iterations.jsonl and other hand-assembled output.
class LineWriter {
public:
    explicit LineWriter(const std::filesystem::path& path);
    void write_line(const std::string& line);

private:
    std::ofstream out_;
};

}  // namespace frontier::cli
