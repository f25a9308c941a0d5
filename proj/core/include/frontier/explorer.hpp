#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "frontier/dataset.hpp"
#include "frontier/forest.hpp"
#include "frontier/geometry.hpp"

namespace frontier {

enum class UpdateMode { streaming, retrain };

// Hyper-parameters of the exploration loop. validate() names the offending
// field in its message so the CLI can surface it directly.
struct ExplorerConfig {
    double epsilon = 0.5;
    std::size_t batch_size = 10;
    std::size_t warmup_size = 20;
    std::size_t num_trees = kDefaultNumTrees;
    std::uint64_t max_iterations = 10;
    DomainBounds bounds;
    double collision_tolerance = 1e-9;
    std::uint64_t seed = 0;
    UpdateMode update_mode = UpdateMode::streaming;

    void validate() const;
};

// One admitted sample: where it landed, which peripheral point spawned it,
// and that parent's score when it was selected. `value` is filled only when
// the caller supplied an evaluation callback; it is logged, never used to
// steer sampling.
struct NewPointRecord {
    std::uint64_t id = 0;
    Point point;
    std::uint64_t parent_id = 0;
    double parent_score = 0.0;
    std::optional<double> value;
};

struct IterationRecord {
    std::uint64_t iteration = 0;
    std::vector<ScoredPoint> peripheral;
    std::vector<NewPointRecord> new_points;
    std::uint64_t dropped = 0;
    std::size_t num_trees = 0;
    double mean_complexity = 0.0;
    double elapsed_seconds = 0.0;
};

// Extra stopping conditions layered on top of max_iterations: a total-point
// budget and a wall-clock limit. Checked before each iteration.
struct StoppingRule {
    std::optional<std::uint64_t> max_points;
    std::optional<double> max_seconds;
};

struct ExplorerState {
    Dataset dataset;
    Forest forest;
};

// Seeds the dataset with warmup_size points uniform over the domain box
// (resampling collisions, at most 100 retries per point) and trains the
// initial forest on them. Throws errc::collision_exhausted when the domain
// cannot fit another point at the configured tolerance.
ExplorerState warm_up(const ExplorerConfig& config);

// Top-k most peripheral dataset points (rank 0 first). k must be in [1, n].
std::vector<ScoredPoint> select_peripheral(const Forest& forest, const Dataset& dataset,
                                           std::size_t k);

struct Candidate {
    Point point;
    std::uint64_t parent_id = 0;
    double parent_score = 0.0;
};

struct ExpandResult {
    std::vector<Candidate> admitted;
    std::uint64_t dropped = 0;
};

// One sample from the epsilon-hyperball around each peripheral point. Out of
// bounds candidates are clamped (clip mode) or redrawn (reject mode);
// candidates colliding with the dataset or with earlier candidates in the
// same batch are redrawn. A ball that fails 100 retries drops its candidate.
// Each ball consumes its own fork of `rng`, so results do not depend on
// evaluation order.
ExpandResult expand(std::span<const ScoredPoint> peripheral, const Dataset& dataset,
                    const ExplorerConfig& config, RngStream rng);

// The iterative loop: construction performs the warm-up, each step() selects
// the peripheral batch, expands it, admits the survivors with the next
// iteration stamp and refreshes the forest per update_mode.
class Explorer {
public:
    using Sink = std::function<void(const IterationRecord&)>;
    using EvaluateFn = std::function<double(const Point&)>;

    explicit Explorer(ExplorerConfig config);

    // Resume, or start from an externally prepared state (e.g. a warm-up
    // drawn from a narrower box than the exploration domain).
    Explorer(ExplorerConfig config, ExplorerState state, std::uint64_t iterations_done = 0);

    const ExplorerConfig& config() const noexcept { return config_; }
    const Dataset& dataset() const noexcept { return state_.dataset; }
    const Forest& forest() const noexcept { return state_.forest; }
    std::uint64_t iterations_done() const noexcept { return next_iteration_ - 1; }

    IterationRecord step(const EvaluateFn& evaluate = {});

    // Steps until max_iterations or the stopping rule fires, forwarding each
    // record to the sink as it is produced.
    std::vector<IterationRecord> run(const StoppingRule& stop = {}, const Sink& sink = {},
                                     const EvaluateFn& evaluate = {});

private:
    ExplorerConfig config_;
    RngStream root_;
    ExplorerState state_;
    std::uint64_t next_iteration_ = 1;
};

}  // namespace frontier
