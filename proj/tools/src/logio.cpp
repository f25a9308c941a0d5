#include "logio.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "frontier/error.hpp"

namespace frontier::cli {

namespace {

using nlohmann::json;

std::string line_error(const std::filesystem::path& path, std::size_t line_no,
                       const std::string& what) {
    std::ostringstream oss;
    oss << path.string() << " line " << line_no << ": " << what;
    return oss.str();
}

SampleLogRow row_from_json(const json& j) {
    SampleLogRow row;
    row.id = j.at("id").get<std::uint64_t>();
    row.iteration = j.at("iteration").get<std::uint32_t>();
    row.parent_id = j.at("parent_id").get<std::int64_t>();
    row.coords = j.at("coords").get<std::vector<double>>();
    row.score_at_selection = j.at("score_at_selection").get<double>();
    return row;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream iss(line);
    while (std::getline(iss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

const char* format_extension(LogFormat format) {
    return format == LogFormat::jsonl ? "jsonl" : "csv";
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SampleLogWriter::SampleLogWriter(const std::filesystem::path& path, LogFormat format,
                                 std::size_t dimension)
    : path_(path), format_(format), dimension_(dimension), out_(path, std::ios::binary) {
    if (!out_) throw Error(errc::invalid_argument, "cannot open " + path.string() + " for writing");
    if (format_ == LogFormat::csv) {
        out_ << "id,iteration,parent_id";
        for (std::size_t i = 0; i < dimension_; ++i) out_ << ",x" << i;
        out_ << ",score_at_selection\n";
    }
}

void SampleLogWriter::write(const SampleLogRow& row) {
    if (format_ == LogFormat::jsonl) {
        out_ << "{\"id\":" << row.id << ",\"iteration\":" << row.iteration
             << ",\"parent_id\":" << row.parent_id << ",\"coords\":[";
        for (std::size_t i = 0; i < row.coords.size(); ++i) {
            if (i > 0) out_ << ',';
            out_ << fmt_double(row.coords[i]);
        }
        out_ << "],\"score_at_selection\":" << fmt_double(row.score_at_selection) << "}\n";
        return;
    }
    out_ << row.id << ',' << row.iteration << ',' << row.parent_id;
    for (double c : row.coords) out_ << ',' << fmt_double(c);
    out_ << ',' << fmt_double(row.score_at_selection) << '\n';
}

std::vector<SampleLogRow> read_sample_log(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::invalid_argument, "cannot read " + path.string());

    std::vector<SampleLogRow> rows;
    std::string line;
    std::size_t line_no = 0;
    bool csv = false;
    std::size_t csv_dim = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (line_no == 1 && line[0] != '{') {
            auto header = split_csv(line);
            if (header.size() < 5 || header.front() != "id" || header.back() != "score_at_selection")
                throw Error(errc::invalid_argument,
                            line_error(path, line_no, "unrecognized sample log header"));
            csv = true;
            csv_dim = header.size() - 4;
            continue;
        }

        try {
            if (csv) {
                auto fields = split_csv(line);
                if (fields.size() != csv_dim + 4)
                    throw std::runtime_error("wrong field count");
                SampleLogRow row;
                row.id = std::stoull(fields[0]);
                row.iteration = static_cast<std::uint32_t>(std::stoul(fields[1]));
                row.parent_id = std::stoll(fields[2]);
                row.coords.reserve(csv_dim);
                for (std::size_t i = 0; i < csv_dim; ++i) row.coords.push_back(std::stod(fields[3 + i]));
                row.score_at_selection = std::stod(fields.back());
                rows.push_back(std::move(row));
            } else {
                rows.push_back(row_from_json(json::parse(line)));
            }
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw Error(errc::invalid_argument, line_error(path, line_no, e.what()));
        }
    }

    for (const SampleLogRow& row : rows) {
        if (row.coords.empty() || row.coords.size() != rows.front().coords.size())
            throw Error(errc::invalid_argument,
                        path.string() + ": rows disagree on coordinate dimension");
    }
    return rows;
}

LineWriter::LineWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error(errc::invalid_argument, "cannot open " + path.string() + " for writing");
}

void LineWriter::write_line(const std::string& line) { out_ << line << '\n'; }

}  // namespace frontier::cli
