#include "frontier/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace frontier {

namespace {

constexpr int kMaxRetries = 100;

// Child ids under the run's root stream. Forest and expand streams fork once
// more by iteration index, so every iteration draws from fresh streams no
// matter how many draws earlier iterations consumed.
constexpr std::uint64_t kWarmupStream = 1;
constexpr std::uint64_t kForestStream = 2;
constexpr std::uint64_t kExpandStream = 3;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void ExplorerConfig::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw Error(errc::non_positive_epsilon, "epsilon must be positive and finite");
    if (batch_size < 1) throw Error(errc::invalid_argument, "batch_size must be at least 1");
    if (warmup_size < 2) throw Error(errc::invalid_argument, "warmup_size must be at least 2");
    if (num_trees < 1) throw Error(errc::invalid_argument, "num_trees must be at least 1");
    if (bounds.dim() == 0) throw Error(errc::invalid_argument, "bounds must be set");
    if (!(collision_tolerance >= 0.0))
        throw Error(errc::invalid_argument, "collision_tolerance must be non-negative");
    if (!(collision_tolerance < epsilon))
        throw Error(errc::invalid_argument, "collision_tolerance must be smaller than epsilon");
}

ExplorerState warm_up(const ExplorerConfig& config) {
    config.validate();
    RngStream root(config.seed, 0);
    RngStream draw = root.fork(kWarmupStream);
    Dataset dataset(config.bounds.dim(), config.collision_tolerance);
    for (std::size_t i = 0; i < config.warmup_size; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
            Point p = sample_uniform_box(config.bounds.box, draw);
            if (dataset.collides(p)) continue;
            dataset.admit(std::move(p), 0);
            placed = true;
            break;
        }
        if (!placed)
            throw Error(errc::collision_exhausted,
                        "warm-up exhausted 100 retries; collision_tolerance leaves no room in "
                        "the domain");
    }
    Forest forest = Forest::train(dataset, config.num_trees, std::nullopt,
                                  root.fork(kForestStream).fork(0));
    return ExplorerState{std::move(dataset), std::move(forest)};
}

std::vector<ScoredPoint> select_peripheral(const Forest& forest, const Dataset& dataset,
                                           std::size_t k) {
    if (k == 0) throw Error(errc::invalid_argument, "k must be positive");
    if (k > dataset.size()) throw Error(errc::k_too_large, "k exceeds the dataset size");
    std::vector<ScoredPoint> scored = forest.score(dataset.points());
    scored.resize(k);
    return scored;
}

ExpandResult expand(std::span<const ScoredPoint> peripheral, const Dataset& dataset,
                    const ExplorerConfig& config, RngStream rng) {
    if (peripheral.empty())
        throw Error(errc::empty_input, "expand needs at least one peripheral point");
    ExpandResult out;
    out.admitted.reserve(peripheral.size());
    for (std::size_t j = 0; j < peripheral.size(); ++j) {
        const ScoredPoint& sp = peripheral[j];
        const Point& center = dataset.point(sp.point_id);
        RngStream ball = rng.fork(j);
        bool placed = false;
        for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
            Point q = sample_in_hyperball(center, config.epsilon, ball);
            if (!config.bounds.contains(q)) {
                if (config.bounds.clip_mode == ClipMode::reject) continue;
                q = config.bounds.clamped(std::move(q));
            }
            if (dataset.collides(q)) continue;
            bool batch_collision = false;
            for (const Candidate& c : out.admitted) {
                if (lp_distance(c.point, q, 2.0) < config.collision_tolerance) {
                    batch_collision = true;
                    break;
                }
            }
            if (batch_collision) continue;
            out.admitted.push_back(Candidate{std::move(q), sp.point_id, sp.score});
            placed = true;
            break;
        }
        if (!placed) out.dropped += 1;
    }
    return out;
}

Explorer::Explorer(ExplorerConfig config)
    : config_(std::move(config)), root_(config_.seed, 0), state_(warm_up(config_)) {}

Explorer::Explorer(ExplorerConfig config, ExplorerState state, std::uint64_t iterations_done)
    : config_(std::move(config)),
      root_(config_.seed, 0),
      state_(std::move(state)),
      next_iteration_(iterations_done + 1) {
    config_.validate();
    if (state_.dataset.dimension() != config_.bounds.dim())
        throw Error(errc::dimension_mismatch, "state dimension does not match config bounds");
}

IterationRecord Explorer::step(const EvaluateFn& evaluate) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t t = next_iteration_++;

    IterationRecord rec;
    rec.iteration = t;
    const std::size_t k = std::min(config_.batch_size, state_.dataset.size());
    rec.peripheral = select_peripheral(state_.forest, state_.dataset, k);

    ExpandResult expanded =
        expand(rec.peripheral, state_.dataset, config_, root_.fork(kExpandStream).fork(t));
    rec.dropped = expanded.dropped;

    std::vector<IdPoint> inserted;
    inserted.reserve(expanded.admitted.size());
    for (Candidate& c : expanded.admitted) {
        const std::uint64_t id = state_.dataset.admit(c.point, static_cast<std::uint32_t>(t));
        NewPointRecord np;
        np.id = id;
        np.parent_id = c.parent_id;
        np.parent_score = c.parent_score;
        np.point = std::move(c.point);
        if (evaluate) np.value = evaluate(np.point);
        inserted.push_back(IdPoint{id, np.point});
        rec.new_points.push_back(std::move(np));
    }

    if (config_.update_mode == UpdateMode::streaming) {
        state_.forest.insert(inserted);
    } else {
        state_.forest = Forest::train(state_.dataset, config_.num_trees, std::nullopt,
                                      root_.fork(kForestStream).fork(t));
    }

    rec.num_trees = state_.forest.num_trees();
    rec.mean_complexity = state_.forest.mean_complexity();
    rec.elapsed_seconds = seconds_since(start);
    return rec;
}

std::vector<IterationRecord> Explorer::run(const StoppingRule& stop, const Sink& sink,
                                           const EvaluateFn& evaluate) {
    std::vector<IterationRecord> records;
    const auto start = std::chrono::steady_clock::now();
    while (iterations_done() < config_.max_iterations) {
        if (stop.max_points && state_.dataset.size() >= *stop.max_points) break;
        if (stop.max_seconds && seconds_since(start) >= *stop.max_seconds) break;
        IterationRecord rec = step(evaluate);
        if (sink) sink(rec);
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace frontier
