#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

frontier::cli::LogFormat parse_format(const std::string& name) {
    return name == "csv" ? frontier::cli::LogFormat::csv : frontier::cli::LogFormat::jsonl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"design-space exploration with a random cut forest frontier"};
    app.set_version_flag("--version", "frontier 0.1.0");
    app.require_subcommand(1);

    frontier::cli::RunInvocation run;
    std::uint64_t run_seed = 0;
    std::string run_format;
    CLI::App* cmd_run = app.add_subcommand("run", "execute an exploration from a config file");
    cmd_run->add_option("config", run.config_path, "json config file")->required();
    cmd_run->add_option("--set", run.sets,
                        "override a config field, key=value with dotted paths");
    CLI::Option* run_seed_opt = cmd_run->add_option("--seed", run_seed, "override the seed");
    cmd_run->add_option("--output-dir", run.output_dir, "output directory (wins over config/env)");
    CLI::Option* run_format_opt = cmd_run->add_option("--format", run_format, "samples format")
                                      ->check(CLI::IsMember({"jsonl", "csv"}));

    frontier::cli::ExperimentInvocation exp;
    std::string exp_format;
    CLI::App* cmd_exp = app.add_subcommand("experiment", "run a canned experiment preset");
    cmd_exp->add_option("name", exp.name, "preset name")
        ->required()
        ->check(CLI::IsMember({"epsilon-sweep", "long-run"}));
    cmd_exp->add_option("--seed", exp.seed, "base seed");
    cmd_exp->add_option("--output-dir", exp.output_dir, "output directory (wins over env)");
    CLI::Option* exp_format_opt = cmd_exp->add_option("--format", exp_format, "samples format")
                                      ->check(CLI::IsMember({"jsonl", "csv"}));
    cmd_exp->add_option("--iterations", exp.iterations, "long-run iteration count");
    cmd_exp->add_option("--batch", exp.batch, "long-run samples per iteration");
    cmd_exp->add_option("--epsilon", exp.epsilon, "long-run hyperball radius");

    frontier::cli::ReportInvocation rep;
    CLI::App* cmd_rep = app.add_subcommand("report", "summarize a sample log");
    cmd_rep->add_option("samples", rep.samples_path, "samples.jsonl or samples.csv")->required();
    cmd_rep->add_option("--output-dir", rep.output_dir, "where the plot csv goes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*cmd_run) {
        if (*run_seed_opt) run.seed = run_seed;
        if (*run_format_opt) run.format = parse_format(run_format);
        return frontier::cli::cmd_run(run);
    }
    if (*cmd_exp) {
        if (*exp_format_opt) exp.format = parse_format(exp_format);
        return frontier::cli::cmd_experiment(exp);
    }
    return frontier::cli::cmd_report(rep);
}
