#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conflab/conformance.hpp"
#include "conflab/costs.hpp"
#include "conflab/model.hpp"
#include "conflab/variation.hpp"

namespace conflab {

// Full parameterization of one simulated run. The standard covers the first
// ceil(shared_fraction * concept_count) concepts of the universe; agents hold
// private dialect tokens for the rest, so unshared concepts can only be
// aligned at task time.
struct ScenarioConfig {
    std::uint32_t concept_count = 1;
    std::uint32_t agent_count = 2;
    std::uint32_t template_count = 1;
    std::uint32_t ticks = 1;
    std::uint32_t tasks_per_tick = 1;

    Strategy strategy = Strategy::Universal;
    std::uint32_t sync_period = 1;       // universal: sync every k ticks; 0 = never
    std::uint32_t grounding_budget = 0;  // localized: max exchanges per task
    std::uint32_t revision_period = 0;   // SDO revision every k ticks; 0 = never
    double revision_threshold_fraction = 0.8;

    DriftParams drift;
    CostParams costs;
    VariationParams impl_variation;

    double shared_fraction = 1.0;

    // Task template shape: required-set size range, low-concept usage skew
    // (1 = uniform over the universe, larger = mass on low ids), and the
    // utility of success.
    std::uint32_t task_required_min = 1;
    std::uint32_t task_required_max = 1;
    double task_skew = 1.0;
    double task_utility = 1.0;

    std::uint64_t seed = 0;
};

// Validation failure carrying one message per offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> fields);
    const std::vector<std::string>& fields() const { return fields_; }

private:
    std::vector<std::string> fields_;
};

// Throws ConfigError listing every offending field.
void validate(const ScenarioConfig& config);

// Number of universe concepts the standard covers ahead of time.
std::uint32_t shared_concept_count(const ScenarioConfig& config);

enum class EventKind {
    AdoptStandard,  // initial per-agent standardization work
    Sync,           // periodic universal sync, per agent
    Discovery,      // adaptor mappings discovered (aggregated per task)
    MapApply,       // cached mappings applied (aggregated per task)
    Grounding,      // grounding exchanges spent (aggregated per task)
    TaskFailure,
    Revision,
    Spawn,          // residual concept incorporated into the standard
    TaskDrift,
    ImplDrift,
    Defect,         // revision published with a corrupted entry
};

const char* to_string(EventKind kind);

struct Event {
    std::uint32_t tick = 0;
    EventKind kind = EventKind::TaskFailure;
    std::int32_t agent_a = -1;
    std::int32_t agent_b = -1;
    std::int64_t subject = -1;  // template id or concept id, by kind
    std::uint32_t count = 0;
    double cost = 0.0;
};

// Ledger cost category an event kind accrues to, or nullopt for free events.
std::optional<CostCategory> cost_category(EventKind kind);

struct TickStats {
    std::uint32_t tick = 0;
    std::uint32_t tasks_attempted = 0;
    std::uint32_t tasks_succeeded = 0;
    CostLedger ledger;  // this tick's accrual only
};

struct RunResult {
    // Row 0 is the ahead-of-time adoption of the standard; rows 1..ticks are
    // simulation ticks.
    std::vector<TickStats> per_tick;
    CostLedger totals;
    double success_rate = 0.0;
    std::uint32_t tasks_attempted = 0;
    std::uint32_t tasks_succeeded = 0;
    std::vector<Event> event_log;
    // Final divergence from the end-of-run standard, per agent; -1 when the
    // standard ended the run empty.
    std::vector<double> final_divergence;
    std::uint32_t final_standard_version = 0;
    std::size_t final_standard_size = 0;
};

// Runs one scenario: per tick, a task phase (sampled task instances between
// uniformly paired agents under the configured strategy), a repair phase
// (periodic universal sync), a drift phase, and a periodic revision phase
// (SDO 80/20 incorporation, residual spawning, possible publication defects).
// Fully deterministic in config.seed.
RunResult run_scenario(const ScenarioConfig& config);

// First tick at which any agent's divergence from the reference standard
// becomes nonzero under implementation drift alone, or nullopt if none occurs
// within max_ticks. Tick 0 means the initial derivation already diverged.
std::optional<std::uint32_t> time_to_divergence(const ScenarioConfig& config,
                                                std::uint32_t max_ticks);

struct SweepPoint {
    double shared_fraction = 0.0;
    double mean_total_cost = 0.0;
    double mean_success_rate = 0.0;
};

// Mean total cost per shared_fraction grid point over seeds_per_point seeded
// runs (seed, seed+1, ...), varying only shared_fraction and the seed. Runs
// may execute on `threads` workers; results are merged in grid order, so the
// output is independent of scheduling.
std::vector<SweepPoint> sweep_shared_fraction(const ScenarioConfig& config,
                                              std::span<const double> grid,
                                              std::uint32_t seeds_per_point, unsigned threads = 1);

struct StrategyCost {
    Strategy strategy = Strategy::Universal;
    double mean_total_cost = 0.0;
    double mean_success_rate = 0.0;
};

struct RegimeOutcome {
    std::string preset_name;
    Strategy predicted = Strategy::Universal;
    std::vector<StrategyCost> ranking;  // ascending mean total cost
    bool predicted_won = false;
    // (runner-up - winner) / runner-up
    double winner_margin = 0.0;
};

// Runs every conformance strategy on each preset and ranks them by mean total
// cost over `seeds` seeded runs. The preset's configured strategy is the
// prediction under test.
std::vector<RegimeOutcome> regime_experiment(
    std::span<const std::pair<std::string, ScenarioConfig>> presets, std::uint32_t seeds,
    unsigned threads = 1);

}  // namespace conflab
