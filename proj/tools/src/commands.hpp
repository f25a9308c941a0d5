#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logio.hpp"

namespace frontier::cli {

struct RunInvocation {
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::string output_dir;
    std::optional<LogFormat> format;
};

struct ExperimentInvocation {
    std::string name;
    std::uint64_t seed = 1;
    std::string output_dir;
    std::optional<LogFormat> format;
    std::uint64_t iterations = 100;
    std::size_t batch = 50;
    double epsilon = 0.5;
};

struct ReportInvocation {
    std::string samples_path;
    std::string output_dir;
};

int cmd_run(const RunInvocation& inv);
int cmd_experiment(const ExperimentInvocation& inv);
int cmd_report(const ReportInvocation& inv);

}  // namespace frontier::cli
