#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "config.hpp"
#include "frontier/explorer.hpp"
#include "metrics.hpp"

namespace frontier::cli {

namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_warmup_rows(SampleLogWriter& writer, const Dataset& dataset) {
    for (std::uint64_t id = 0; id < dataset.size(); ++id) {
        SampleLogRow row;
        row.id = id;
        row.iteration = 0;
        row.parent_id = -1;
        row.coords = dataset.point(id).coords;
        row.score_at_selection = -1.0;
        writer.write(row);
    }
}

void write_new_point_rows(SampleLogWriter& writer, const IterationRecord& rec) {
    for (const NewPointRecord& np : rec.new_points) {
        SampleLogRow row;
        row.id = np.id;
        row.iteration = static_cast<std::uint32_t>(rec.iteration);
        row.parent_id = static_cast<std::int64_t>(np.parent_id);
        row.coords = np.point.coords;
        row.score_at_selection = np.parent_score;
        writer.write(row);
    }
}

std::string iteration_json_line(const IterationRecord& rec) {
    std::ostringstream oss;
    oss << "{\"iteration\":" << rec.iteration << ",\"peripheral_ids\":[";
    for (std::size_t i = 0; i < rec.peripheral.size(); ++i) {
        if (i > 0) oss << ',';
        oss << rec.peripheral[i].point_id;
    }
    oss << "],\"new_ids\":[";
    for (std::size_t i = 0; i < rec.new_points.size(); ++i) {
        if (i > 0) oss << ',';
        oss << rec.new_points[i].id;
    }
    oss << "],\"admitted\":" << rec.new_points.size() << ",\"dropped\":" << rec.dropped
        << ",\"num_trees\":" << rec.num_trees
        << ",\"mean_complexity\":" << fmt_double(rec.mean_complexity)
        << ",\"elapsed_seconds\":" << fmt_double(rec.elapsed_seconds) << "}";
    return oss.str();
}

void write_summary(const fs::path& path, const Dataset& dataset, std::size_t warmup_size,
                   std::uint64_t iterations, std::uint64_t dropped, double wall_seconds,
                   bool with_min_pairwise) {
    LineWriter out(path);
    std::ostringstream oss;
    oss << "{\"final_n\":" << dataset.size() << ",\"warmup_size\":" << warmup_size
        << ",\"admitted\":" << dataset.size() - warmup_size << ",\"dropped\":" << dropped
        << ",\"iterations\":" << iterations << ",\"min_pairwise_distance\":";
    if (with_min_pairwise)
        oss << fmt_double(dataset.min_pairwise_distance());
    else
        oss << "null";
    oss << ",\"wall_seconds\":" << fmt_double(wall_seconds) << "}";
    out.write_line(oss.str());
}

fs::path samples_path(const fs::path& dir, const std::string& stem, LogFormat format) {
    return dir / (stem + "." + format_extension(format));
}

// epsilon-sweep parameters, frozen and echoed in metadata.json. The warm-up
// is drawn from a central cluster so growing epsilon keeps pushing samples
// further from the explored region instead of saturating the domain.
constexpr double kSweepEpsilons[] = {0.1, 0.5, 1.0, 2.0, 4.0};
constexpr std::size_t kSweepSeedCount = 25;
constexpr std::size_t kPresetWarmup = 50;
constexpr std::size_t kPresetBatch = 50;
constexpr std::size_t kPresetTrees = 50;
constexpr double kPresetTolerance = 1e-9;

DomainBounds unit_square() {
    return DomainBounds(BoundingBox({0.0, 0.0}, {1.0, 1.0}), ClipMode::clip);
}

DomainBounds warmup_cluster_box() {
    return DomainBounds(BoundingBox({0.4, 0.4}, {0.6, 0.6}), ClipMode::clip);
}

ExplorerConfig preset_config(double epsilon, std::uint64_t seed) {
    ExplorerConfig cfg;
    cfg.epsilon = epsilon;
    cfg.batch_size = kPresetBatch;
    cfg.warmup_size = kPresetWarmup;
    cfg.num_trees = kPresetTrees;
    cfg.max_iterations = 1;
    cfg.bounds = unit_square();
    cfg.collision_tolerance = kPresetTolerance;
    cfg.seed = seed;
    cfg.update_mode = UpdateMode::streaming;
    return cfg;
}

ExplorerState clustered_warmup(std::uint64_t seed) {
    ExplorerConfig warm = preset_config(0.5, seed);
    warm.bounds = warmup_cluster_box();
    return warm_up(warm);
}

std::string fmt_epsilon(double epsilon) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", epsilon);
    return buf;
}

nlohmann::json bounds_json(const DomainBounds& bounds) {
    return {{"min", bounds.box.min},
            {"max", bounds.box.max},
            {"clip_mode", bounds.clip_mode == ClipMode::clip ? "clip" : "reject"}};
}

int cmd_experiment_sweep(const ExperimentInvocation& inv) {
    const LogFormat format = inv.format.value_or(LogFormat::jsonl);
    const fs::path outdir =
        resolve_output_dir(inv.output_dir, "", "epsilon-sweep-out");
    fs::create_directories(outdir);

    const std::size_t n_eps = std::size(kSweepEpsilons);
    std::vector<double> sep_sum(n_eps, 0.0), admit_sum(n_eps, 0.0), base_sep(n_eps, 0.0);
    std::vector<std::size_t> sep_count(n_eps, 0);

    for (std::size_t s = 0; s < kSweepSeedCount; ++s) {
        const std::uint64_t seed = inv.seed + s;
        const ExplorerState warm = clustered_warmup(seed);
        const std::uint64_t n0 = warm.dataset.size();

        for (std::size_t e = 0; e < n_eps; ++e) {
            Explorer explorer(preset_config(kSweepEpsilons[e], seed), warm);
            const IterationRecord rec = explorer.step();
            const double sep = mean_separation(explorer.dataset(), n0);
            if (sep >= 0.0) {
                sep_sum[e] += sep;
                sep_count[e] += 1;
            }
            admit_sum[e] += static_cast<double>(rec.new_points.size());

            if (s == 0) {
                base_sep[e] = sep;
                SampleLogWriter writer(
                    samples_path(outdir, std::string("samples_eps_") + fmt_epsilon(kSweepEpsilons[e]),
                                 format),
                    format, explorer.dataset().dimension());
                write_warmup_rows(writer, warm.dataset);
                write_new_point_rows(writer, rec);
            }
        }
    }

    {
        LineWriter csv(outdir / "sweep_summary.csv");
        csv.write_line("epsilon,mean_separation,base_seed_separation,mean_admitted");
        for (std::size_t e = 0; e < n_eps; ++e) {
            const double mean_sep =
                sep_count[e] ? sep_sum[e] / static_cast<double>(sep_count[e]) : -1.0;
            std::ostringstream oss;
            oss << fmt_double(kSweepEpsilons[e]) << ',' << fmt_double(mean_sep) << ','
                << fmt_double(base_sep[e]) << ','
                << fmt_double(admit_sum[e] / static_cast<double>(kSweepSeedCount));
            csv.write_line(oss.str());
        }
    }

    nlohmann::json meta;
    meta["experiment"] = "epsilon-sweep";
    meta["description"] =
        "one expansion step per epsilon from a shared warm-up cluster; separation is the mean "
        "nearest-neighbor distance of the new batch to the pre-step dataset, averaged over seeds";
    meta["epsilons"] = std::vector<double>(std::begin(kSweepEpsilons), std::end(kSweepEpsilons));
    meta["base_seed"] = inv.seed;
    meta["num_seeds"] = kSweepSeedCount;
    meta["domain"] = bounds_json(unit_square());
    meta["warmup_box"] = bounds_json(warmup_cluster_box());
    meta["warmup_size"] = kPresetWarmup;
    meta["batch_size"] = kPresetBatch;
    meta["num_trees"] = kPresetTrees;
    meta["collision_tolerance"] = kPresetTolerance;
    meta["output_format"] = format_extension(format);
    LineWriter(outdir / "metadata.json").write_line(meta.dump());

    std::cout << "epsilon  mean_separation  mean_admitted\n";
    for (std::size_t e = 0; e < n_eps; ++e) {
        const double mean_sep = sep_count[e] ? sep_sum[e] / static_cast<double>(sep_count[e]) : -1.0;
        std::printf("%-7s  %-15s  %s\n", fmt_epsilon(kSweepEpsilons[e]).c_str(),
                    fmt6(mean_sep).c_str(),
                    fmt6(admit_sum[e] / static_cast<double>(kSweepSeedCount)).c_str());
    }
    std::cout << "output " << outdir.string() << "\n";
    return 0;
}

int cmd_experiment_long_run(const ExperimentInvocation& inv) {
    const LogFormat format = inv.format.value_or(LogFormat::jsonl);
    const fs::path outdir = resolve_output_dir(inv.output_dir, "", "long-run-out");
    fs::create_directories(outdir);

    ExplorerConfig cfg = preset_config(inv.epsilon, inv.seed);
    cfg.batch_size = inv.batch;
    cfg.max_iterations = inv.iterations;

    const auto t0 = std::chrono::steady_clock::now();
    Explorer explorer(cfg, clustered_warmup(inv.seed));

    SampleLogWriter samples(samples_path(outdir, "samples", format), format,
                            explorer.dataset().dimension());
    write_warmup_rows(samples, explorer.dataset());
    LineWriter iterations(outdir / "iterations.jsonl");
    LineWriter coverage(outdir / "coverage.csv");
    coverage.write_line("iteration,n,admitted,dropped,occupied_cells,coverage_fraction,mean_separation");

    CoverageGrid grid(cfg.bounds.box);
    for (const Point& p : explorer.dataset().points()) grid.add(p);
    {
        std::ostringstream oss;
        oss << 0 << ',' << explorer.dataset().size() << ',' << explorer.dataset().size() << ",0,"
            << grid.occupied() << ',' << fmt_double(grid.fraction()) << ",-1";
        coverage.write_line(oss.str());
    }

    std::uint64_t dropped = 0;
    explorer.run({}, [&](const IterationRecord& rec) {
        write_new_point_rows(samples, rec);
        iterations.write_line(iteration_json_line(rec));
        dropped += rec.dropped;
        for (const NewPointRecord& np : rec.new_points) grid.add(np.point);
        const std::uint64_t first_new =
            explorer.dataset().size() - rec.new_points.size();
        std::ostringstream oss;
        oss << rec.iteration << ',' << explorer.dataset().size() << ',' << rec.new_points.size()
            << ',' << rec.dropped << ',' << grid.occupied() << ',' << fmt_double(grid.fraction())
            << ',' << fmt_double(mean_separation(explorer.dataset(), first_new));
        coverage.write_line(oss.str());
    });
    const double wall = seconds_since(t0);

    nlohmann::json meta;
    meta["experiment"] = "long-run";
    meta["iterations"] = inv.iterations;
    meta["batch_size"] = inv.batch;
    meta["epsilon"] = inv.epsilon;
    meta["seed"] = inv.seed;
    meta["domain"] = bounds_json(cfg.bounds);
    meta["warmup_box"] = bounds_json(warmup_cluster_box());
    meta["warmup_size"] = kPresetWarmup;
    meta["num_trees"] = kPresetTrees;
    meta["collision_tolerance"] = kPresetTolerance;
    meta["update_mode"] = "streaming";
    meta["coverage_grid"] = "32x32 over the domain box";
    meta["output_format"] = format_extension(format);
    LineWriter(outdir / "metadata.json").write_line(meta.dump());

    write_summary(outdir / "summary.json", explorer.dataset(), kPresetWarmup,
                  explorer.iterations_done(), dropped, wall,
                  explorer.dataset().size() <= 20000);

    std::cout << "long-run: " << explorer.dataset().size() << " points after "
              << explorer.iterations_done() << " iterations, coverage "
              << fmt6(grid.fraction()) << ", output " << outdir.string() << "\n";
    return 0;
}

}  // namespace

int cmd_run(const RunInvocation& inv) {
    RunConfig cfg;
    try {
        nlohmann::json doc = load_config_file(inv.config_path);
        for (const std::string& s : inv.sets) apply_set_override(doc, s);
        if (inv.seed) doc["seed"] = *inv.seed;
        if (inv.format) doc["output_format"] = format_extension(*inv.format);
        cfg = parse_run_config(doc);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        const fs::path outdir = resolve_output_dir(inv.output_dir, cfg.output_dir, "frontier-out");
        fs::create_directories(outdir);

        const auto t0 = std::chrono::steady_clock::now();
        Explorer explorer(cfg.explorer);
        SampleLogWriter samples(samples_path(outdir, "samples", cfg.format), cfg.format,
                                explorer.dataset().dimension());
        write_warmup_rows(samples, explorer.dataset());

        std::optional<LineWriter> iterations;
        if (cfg.emit_per_iteration) iterations.emplace(outdir / "iterations.jsonl");

        std::uint64_t dropped = 0;
        const auto records = explorer.run({}, [&](const IterationRecord& rec) {
            write_new_point_rows(samples, rec);
            dropped += rec.dropped;
            if (iterations) iterations->write_line(iteration_json_line(rec));
        });
        const double wall = seconds_since(t0);

        write_summary(outdir / "summary.json", explorer.dataset(), cfg.explorer.warmup_size,
                      records.size(), dropped, wall, explorer.dataset().size() <= 20000);

        std::cout << "run: " << explorer.dataset().size() << " points after " << records.size()
                  << " iterations, " << dropped << " dropped, output " << outdir.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_experiment(const ExperimentInvocation& inv) {
    try {
        if (inv.name == "epsilon-sweep") return cmd_experiment_sweep(inv);
        if (inv.name == "long-run") return cmd_experiment_long_run(inv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "unknown experiment: " << inv.name << '\n';
    return 2;
}

int cmd_report(const ReportInvocation& inv) {
    std::vector<SampleLogRow> rows;
    try {
        rows = read_sample_log(inv.samples_path);
        if (rows.empty())
            throw Error(errc::empty_input, inv.samples_path + ": no sample rows");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        std::sort(rows.begin(), rows.end(),
                  [](const SampleLogRow& a, const SampleLogRow& b) { return a.id < b.id; });
        const std::size_t m = rows.front().coords.size();
        std::vector<Point> points;
        points.reserve(rows.size());
        for (const SampleLogRow& row : rows) points.push_back(Point(row.coords));

        std::map<std::uint32_t, std::vector<std::size_t>> by_iteration;
        for (std::size_t i = 0; i < rows.size(); ++i) by_iteration[rows[i].iteration].push_back(i);

        std::cout << "samples: " << rows.size() << " points, dimension " << m << ", iterations "
                  << by_iteration.begin()->first << ".." << by_iteration.rbegin()->first << "\n";

        if (const auto nn = nearest_neighbor_stats(points))
            std::cout << "nearest neighbor distance: min " << fmt6(nn->min_nn) << " mean "
                      << fmt6(nn->mean_nn) << "\n";
        else
            std::cout << "nearest neighbor distance: n/a\n";

        CoverageGrid grid(bounding_box(points));
        for (const Point& p : points) grid.add(p);
        std::cout << "grid coverage: " << grid.occupied() << " / "
                  << static_cast<std::uint64_t>(grid.total()) << " cells (fraction "
                  << fmt6(grid.fraction()) << ")\n";

        std::cout << "growth:\n";
        for (const auto& [iteration, members] : by_iteration) {
            if (iteration == 0) {
                std::cout << "  iteration 0: " << members.size() << " points\n";
            } else {
                double sum = 0.0;
                for (std::size_t i : members) {
                    double best = std::numeric_limits<double>::infinity();
                    for (std::size_t j = 0; j < rows.size(); ++j) {
                        if (rows[j].iteration < iteration)
                            best = std::min(best, lp_distance(points[i], points[j], 2.0));
                    }
                    sum += best;
                }
                std::cout << "  iteration " << iteration << ": +" << members.size()
                          << " points (separation " << fmt6(sum / members.size()) << ")\n";
            }
        }

        if (m == 2) {
            const fs::path input(inv.samples_path);
            const std::string beside_input =
                input.parent_path().empty() ? "." : input.parent_path().string();
            const fs::path outdir = resolve_output_dir(inv.output_dir, "", beside_input);
            fs::create_directories(outdir);
            const fs::path plot = outdir / (input.stem().string() + "_plot.csv");
            LineWriter out(plot);
            out.write_line("x,y,iteration");
            for (const SampleLogRow& row : rows) {
                std::ostringstream oss;
                oss << fmt_double(row.coords[0]) << ',' << fmt_double(row.coords[1]) << ','
                    << row.iteration;
                out.write_line(oss.str());
            }
            std::cout << "plot csv: " << plot.string() << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace frontier::cli
