#include "conflab/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "conflab/rng.hpp"

namespace conflab {

namespace {

std::string join(const std::vector<std::string>& fields) {
    std::string out = "invalid configuration";
    for (const auto& f : fields) {
        out += "\n  ";
        out += f;
    }
    return out;
}

ConceptId skewed_concept(Rng& rng, std::uint32_t universe, double skew) {
    const double u = rng.uniform();
    const double x = std::pow(u, skew) * static_cast<double>(universe);
    auto c = static_cast<ConceptId>(x);
    if (c >= universe) c = universe - 1;
    return c;
}

// Shared initial state for run_scenario and time_to_divergence.
struct ScenarioState {
    Standard standard;
    std::vector<Implementation> agents;
    TaskPopulation population;
    std::vector<std::size_t> adopted_entries;  // per agent
};

ScenarioState init_scenario(const ScenarioConfig& config, bool with_templates) {
    Rng root(config.seed);
    Rng standard_rng = root.split("standard");
    Rng agent_root = root.split("agents");
    Rng template_rng = root.split("templates");

    const std::uint32_t n = config.concept_count;
    const std::uint32_t k = shared_concept_count(config);

    ScenarioState state;
    const std::uint64_t standard_seed = standard_rng.next_u64();
    if (k > 0) {
        state.standard = make_standard(k, standard_seed);
    } else {
        state.standard.standard_id =
            static_cast<std::uint32_t>(splitmix64(standard_seed) & 0x7FFFFFFFu);
    }

    for (std::uint32_t i = 0; i < config.agent_count; ++i) {
        Rng agent_rng = agent_root.split(i);
        Implementation impl =
            derive_implementation(state.standard, config.impl_variation, agent_rng.next_u64());
        impl.agent_id = i;
        state.adopted_entries.push_back(impl.conformed.size() + impl.variants.size());
        // Private dialect for the unshared part of the universe: every agent
        // can represent every concept, but nothing outside the standard is
        // aligned ahead of time.
        Rng dialect_rng = agent_rng.split("dialect");
        for (ConceptId c = k; c < n; ++c) {
            if (impl.model.defines(c)) continue;
            impl.model.entries[c] = dialect_rng.next_u64();
            impl.extensions.insert(c);
        }
        impl.extension_lo = n;
        impl.extension_hi = 2 * n;
        state.agents.push_back(std::move(impl));
    }

    if (with_templates) {
        state.population.universe_size = n;
        for (std::uint32_t t = 0; t < config.template_count; ++t) {
            Task task;
            task.template_id = t;
            task.utility_v = config.task_utility;
            const std::uint32_t span = config.task_required_max - config.task_required_min + 1;
            std::uint32_t want = config.task_required_min +
                                 static_cast<std::uint32_t>(template_rng.below(span));
            want = std::min(want, n);
            std::uint64_t guard = 0;
            while (task.required.size() < want) {
                if (++guard > 64ull * n + 1024) {
                    for (ConceptId c = 0; c < n && task.required.size() < want; ++c) {
                        task.required.insert(c);
                    }
                    break;
                }
                task.required.insert(skewed_concept(template_rng, n, config.task_skew));
            }
            state.population.templates.push_back(std::move(task));
        }
    }
    return state;
}

double mean(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

// Runs `jobs` closures on up to `threads` workers. Each closure writes only
// to its own output slot, so results do not depend on scheduling.
void run_jobs(std::size_t jobs, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (jobs == 0) return;
    unsigned worker_count = std::max(1u, threads);
    worker_count = static_cast<unsigned>(
        std::min<std::size_t>(worker_count, jobs));
    if (worker_count == 1) {
        for (std::size_t i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> fields)
    : std::runtime_error(join(fields)), fields_(std::move(fields)) {}

void validate(const ScenarioConfig& config) {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const char* field, const char* why) {
        if (!ok) bad.push_back(std::string(field) + ": " + why);
    };
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };

    check(config.concept_count >= 1, "concept_count", "must be >= 1");
    check(config.agent_count >= 1, "agent_count", "must be >= 1");
    check(config.template_count >= 1, "template_count", "must be >= 1");
    check(config.ticks >= 1, "ticks", "must be >= 1");
    check(config.tasks_per_tick >= 1, "tasks_per_tick", "must be >= 1");
    check(prob(config.shared_fraction), "shared_fraction", "must be in [0,1]");
    check(prob(config.drift.p_task_drift), "drift.p_task_drift", "must be in [0,1]");
    check(prob(config.drift.p_impl_drift), "drift.p_impl_drift", "must be in [0,1]");
    check(prob(config.drift.p_defect), "drift.p_defect", "must be in [0,1]");
    check(config.drift.residual_threshold >= 1, "drift.residual_threshold", "must be >= 1");
    check(prob(config.impl_variation.p_omit), "impl_variation.p_omit", "must be in [0,1]");
    check(prob(config.impl_variation.p_variant), "impl_variation.p_variant", "must be in [0,1]");
    check(prob(config.impl_variation.p_extend), "impl_variation.p_extend", "must be in [0,1]");
    check(config.costs.c_sync >= 0.0, "costs.c_sync", "must be >= 0");
    check(config.costs.c_map_discover >= 0.0, "costs.c_map_discover", "must be >= 0");
    check(config.costs.c_map_apply >= 0.0, "costs.c_map_apply", "must be >= 0");
    check(config.costs.c_ground_exchange >= 0.0, "costs.c_ground_exchange", "must be >= 0");
    check(config.costs.c_revision >= 0.0, "costs.c_revision", "must be >= 0");
    check(config.costs.c_failure >= 0.0, "costs.c_failure", "must be >= 0");
    check(config.revision_threshold_fraction > 0.0 && config.revision_threshold_fraction <= 1.0,
          "revision_threshold_fraction", "must be in (0,1]");
    check(config.task_required_min >= 1, "task.required_min", "must be >= 1");
    check(config.task_required_max >= config.task_required_min, "task.required_max",
          "must be >= task.required_min");
    check(config.task_required_max <= config.concept_count, "task.required_max",
          "must be <= concept_count");
    check(config.task_skew > 0.0, "task.skew", "must be > 0");
    check(config.task_utility >= 0.0, "task.utility", "must be >= 0");

    if (!bad.empty()) throw ConfigError(std::move(bad));
}

std::uint32_t shared_concept_count(const ScenarioConfig& config) {
    const double x = config.shared_fraction * static_cast<double>(config.concept_count);
    const double k = std::ceil(x - 1e-9);
    if (k <= 0.0) return 0;
    return std::min(config.concept_count, static_cast<std::uint32_t>(k));
}

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::AdoptStandard: return "adopt_standard";
        case EventKind::Sync: return "sync";
        case EventKind::Discovery: return "discovery";
        case EventKind::MapApply: return "map_apply";
        case EventKind::Grounding: return "grounding";
        case EventKind::TaskFailure: return "task_failure";
        case EventKind::Revision: return "revision";
        case EventKind::Spawn: return "spawn";
        case EventKind::TaskDrift: return "task_drift";
        case EventKind::ImplDrift: return "impl_drift";
        case EventKind::Defect: return "defect";
    }
    return "unknown";
}

std::optional<CostCategory> cost_category(EventKind kind) {
    switch (kind) {
        case EventKind::AdoptStandard:
        case EventKind::Sync: return CostCategory::Sync;
        case EventKind::Discovery: return CostCategory::MapDiscover;
        case EventKind::MapApply: return CostCategory::MapApply;
        case EventKind::Grounding: return CostCategory::GroundExchange;
        case EventKind::TaskFailure: return CostCategory::Failure;
        case EventKind::Revision: return CostCategory::Revision;
        case EventKind::Spawn:
        case EventKind::TaskDrift:
        case EventKind::ImplDrift:
        case EventKind::Defect: return std::nullopt;
    }
    return std::nullopt;
}

RunResult run_scenario(const ScenarioConfig& config) {
    validate(config);

    Rng root(config.seed);
    Rng task_rng = root.split("tasks");
    Rng task_drift_rng = root.split("task-drift");
    Rng impl_drift_rng = root.split("impl-drift");
    Rng revision_rng = root.split("revision");

    ScenarioState state = init_scenario(config, /*with_templates=*/true);
    Standard& standard = state.standard;
    std::vector<Implementation>& agents = state.agents;
    TaskPopulation& population = state.population;

    Adaptor adaptor;
    GroundingState grounding;
    ResidualBucket bucket;

    RunResult result;

    // Tick 0: ahead-of-time adoption of the standard. Each agent pays sync
    // cost for every entry it took from the standard, conformed or not.
    {
        TickStats adoption;
        adoption.tick = 0;
        for (std::uint32_t i = 0; i < config.agent_count; ++i) {
            const std::size_t adopted = state.adopted_entries[i];
            const double cost = config.costs.c_sync * static_cast<double>(adopted);
            adoption.ledger.add(CostCategory::Sync, cost);
            Event ev;
            ev.tick = 0;
            ev.kind = EventKind::AdoptStandard;
            ev.agent_a = static_cast<std::int32_t>(i);
            ev.count = static_cast<std::uint32_t>(adopted);
            ev.cost = cost;
            result.event_log.push_back(ev);
        }
        result.totals.merge(adoption.ledger);
        result.per_tick.push_back(std::move(adoption));
    }

    for (std::uint32_t tick = 1; tick <= config.ticks; ++tick) {
        TickStats stats;
        stats.tick = tick;

        // --- task phase ---------------------------------------------------
        for (std::uint32_t j = 0; j < config.tasks_per_tick; ++j) {
            const auto tmpl_idx =
                static_cast<std::uint32_t>(task_rng.below(config.template_count));
            const Task& task = population.templates[tmpl_idx];
            const auto ai = static_cast<std::uint32_t>(task_rng.below(config.agent_count));
            std::uint32_t bi = ai;
            if (config.agent_count > 1) {
                bi = static_cast<std::uint32_t>(task_rng.below(config.agent_count - 1));
                if (bi >= ai) ++bi;
            }

            for (ConceptId c : task.required) {
                if (!standard.model.defines(c)) bucket = record_residual(std::move(bucket), c);
            }

            InteropOutcome outcome;
            switch (config.strategy) {
                case Strategy::Universal: {
                    outcome = evaluate_interop(agents[ai], agents[bi], task);
                    break;
                }
                case Strategy::Mediated: {
                    const Adaptor::Stats before = adaptor.stats();
                    auto [out, ledger] =
                        mediated_translate(adaptor, agents[ai], agents[bi], task, config.costs);
                    outcome = std::move(out);
                    const Adaptor::Stats after = adaptor.stats();
                    const auto discovered =
                        static_cast<std::uint32_t>(after.discoveries - before.discoveries);
                    const auto applied =
                        static_cast<std::uint32_t>(after.applications - before.applications);
                    if (discovered > 0) {
                        result.event_log.push_back(
                            {tick, EventKind::Discovery, static_cast<std::int32_t>(ai),
                             static_cast<std::int32_t>(bi), tmpl_idx, discovered,
                             config.costs.c_map_discover * discovered});
                    }
                    if (applied > 0) {
                        result.event_log.push_back(
                            {tick, EventKind::MapApply, static_cast<std::int32_t>(ai),
                             static_cast<std::int32_t>(bi), tmpl_idx, applied,
                             config.costs.c_map_apply * applied});
                    }
                    stats.ledger.merge(ledger);
                    break;
                }
                case Strategy::Localized: {
                    GroundingResult res =
                        grounding_dialogue(agents[ai], agents[bi], task, grounding,
                                           config.grounding_budget, config.costs);
                    outcome = std::move(res.outcome);
                    if (res.exchanges > 0) {
                        result.event_log.push_back(
                            {tick, EventKind::Grounding, static_cast<std::int32_t>(ai),
                             static_cast<std::int32_t>(bi), tmpl_idx, res.exchanges,
                             config.costs.c_ground_exchange * res.exchanges});
                    }
                    stats.ledger.merge(res.ledger);
                    break;
                }
            }

            ++stats.tasks_attempted;
            if (outcome.success) {
                ++stats.tasks_succeeded;
            } else {
                stats.ledger.add(CostCategory::Failure, config.costs.c_failure);
                result.event_log.push_back({tick, EventKind::TaskFailure,
                                            static_cast<std::int32_t>(ai),
                                            static_cast<std::int32_t>(bi), tmpl_idx, 1,
                                            config.costs.c_failure});
            }
        }

        // --- repair phase --------------------------------------------------
        if (config.strategy == Strategy::Universal && config.sync_period > 0 &&
            tick % config.sync_period == 0) {
            std::vector<std::size_t> need(config.agent_count, 0);
            for (std::uint32_t i = 0; i < config.agent_count; ++i) {
                need[i] = sync_entries_needed(agents[i], standard);
            }
            auto [synced, ledger] = universal_sync(std::move(agents), standard, config.costs);
            agents = std::move(synced);
            for (std::uint32_t i = 0; i < config.agent_count; ++i) {
                if (need[i] == 0) continue;
                result.event_log.push_back({tick, EventKind::Sync, static_cast<std::int32_t>(i),
                                            -1, -1, static_cast<std::uint32_t>(need[i]),
                                            config.costs.c_sync * static_cast<double>(need[i])});
            }
            stats.ledger.merge(ledger);
        }

        // --- drift phase ----------------------------------------------------
        {
            TaskPopulation drifted = step_task_drift(population, config.drift, task_drift_rng);
            for (std::size_t i = 0; i < drifted.templates.size(); ++i) {
                if (drifted.templates[i].required != population.templates[i].required) {
                    result.event_log.push_back({tick, EventKind::TaskDrift, -1, -1,
                                                static_cast<std::int64_t>(i), 1, 0.0});
                }
            }
            population = std::move(drifted);

            for (std::uint32_t i = 0; i < config.agent_count; ++i) {
                Implementation next = step_impl_drift(agents[i], config.drift, impl_drift_rng);
                if (next.model.entries != agents[i].model.entries) {
                    result.event_log.push_back({tick, EventKind::ImplDrift,
                                                static_cast<std::int32_t>(i), -1, -1, 1, 0.0});
                }
                agents[i] = std::move(next);
            }
        }

        // --- revision phase --------------------------------------------------
        if (config.revision_period > 0 && tick % config.revision_period == 0) {
            std::uint32_t revisions = 0;

            auto [revised, ledger] =
                sdo_revise(standard, agents, config.revision_threshold_fraction, config.costs);
            if (revised.version != standard.version) {
                ++revisions;
                result.event_log.push_back(
                    {tick, EventKind::Revision, -1, -1, -1, 1, config.costs.c_revision});
            }
            stats.ledger.merge(ledger);
            standard = std::move(revised);

            auto [grown, rest] =
                spawn_from_residual(bucket, standard, config.drift.residual_threshold);
            if (grown.version != standard.version) {
                ++revisions;
                for (const auto& [c, tok] : grown.model.entries) {
                    if (!standard.model.defines(c)) {
                        result.event_log.push_back({tick, EventKind::Spawn, -1, -1,
                                                    static_cast<std::int64_t>(c), 1, 0.0});
                    }
                }
                stats.ledger.add(CostCategory::Revision, config.costs.c_revision);
                result.event_log.push_back(
                    {tick, EventKind::Revision, -1, -1, -1, 1, config.costs.c_revision});
            }
            standard = std::move(grown);
            bucket = std::move(rest);

            // Each publication may carry a quality error.
            for (std::uint32_t r = 0; r < revisions; ++r) {
                Standard defected = apply_revision_defect(standard, config.drift, revision_rng);
                if (defected.model.entries != standard.model.entries) {
                    result.event_log.push_back({tick, EventKind::Defect, -1, -1, -1, 1, 0.0});
                }
                standard = std::move(defected);
            }
        }

        result.tasks_attempted += stats.tasks_attempted;
        result.tasks_succeeded += stats.tasks_succeeded;
        result.totals.merge(stats.ledger);
        result.per_tick.push_back(std::move(stats));
    }

    result.success_rate = result.tasks_attempted == 0
                              ? 1.0
                              : static_cast<double>(result.tasks_succeeded) /
                                    static_cast<double>(result.tasks_attempted);
    result.final_standard_version = standard.version;
    result.final_standard_size = standard.model.size();
    for (const Implementation& agent : agents) {
        result.final_divergence.push_back(
            standard.model.entries.empty() ? -1.0 : divergence(standard, agent));
    }
    return result;
}

std::optional<std::uint32_t> time_to_divergence(const ScenarioConfig& config,
                                                std::uint32_t max_ticks) {
    validate(config);
    if (max_ticks < 1) {
        throw std::invalid_argument("time_to_divergence: max_ticks must be >= 1");
    }
    if (shared_concept_count(config) == 0) {
        throw ConfigError({"shared_fraction: divergence needs a non-empty standard"});
    }

    Rng root(config.seed);
    Rng impl_drift_rng = root.split("impl-drift");
    ScenarioState state = init_scenario(config, /*with_templates=*/false);

    auto diverged = [&] {
        for (const Implementation& agent : state.agents) {
            if (divergence(state.standard, agent) > 0.0) return true;
        }
        return false;
    };

    if (diverged()) return 0;
    for (std::uint32_t tick = 1; tick <= max_ticks; ++tick) {
        for (Implementation& agent : state.agents) {
            agent = step_impl_drift(agent, config.drift, impl_drift_rng);
        }
        if (diverged()) return tick;
    }
    return std::nullopt;
}

std::vector<SweepPoint> sweep_shared_fraction(const ScenarioConfig& config,
                                              std::span<const double> grid,
                                              std::uint32_t seeds_per_point, unsigned threads) {
    if (grid.empty()) throw std::invalid_argument("sweep_shared_fraction: grid is empty");
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw std::invalid_argument("sweep_shared_fraction: grid must be sorted");
    }
    for (double g : grid) {
        if (!(g >= 0.0 && g <= 1.0)) {
            throw std::invalid_argument("sweep_shared_fraction: grid values must be in [0,1]");
        }
    }
    if (seeds_per_point == 0) {
        throw std::invalid_argument("sweep_shared_fraction: seeds_per_point must be >= 1");
    }
    {
        ScenarioConfig probe = config;
        probe.shared_fraction = grid.front();
        validate(probe);
    }

    const std::size_t jobs = grid.size() * seeds_per_point;
    std::vector<double> costs(jobs, 0.0);
    std::vector<double> rates(jobs, 0.0);
    run_jobs(jobs, threads, [&](std::size_t i) {
        const std::size_t point = i / seeds_per_point;
        const std::uint32_t seed_idx = static_cast<std::uint32_t>(i % seeds_per_point);
        ScenarioConfig cfg = config;
        cfg.shared_fraction = grid[point];
        cfg.seed = config.seed + seed_idx;
        const RunResult run = run_scenario(cfg);
        costs[i] = run.totals.total();
        rates[i] = run.success_rate;
    });

    std::vector<SweepPoint> out;
    out.reserve(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) {
        std::vector<double> point_costs(costs.begin() + p * seeds_per_point,
                                        costs.begin() + (p + 1) * seeds_per_point);
        std::vector<double> point_rates(rates.begin() + p * seeds_per_point,
                                        rates.begin() + (p + 1) * seeds_per_point);
        out.push_back({grid[p], mean(point_costs), mean(point_rates)});
    }
    return out;
}

std::vector<RegimeOutcome> regime_experiment(
    std::span<const std::pair<std::string, ScenarioConfig>> presets, std::uint32_t seeds,
    unsigned threads) {
    if (seeds == 0) throw std::invalid_argument("regime_experiment: seeds must be >= 1");
    constexpr Strategy kStrategies[] = {Strategy::Universal, Strategy::Mediated,
                                        Strategy::Localized};

    const std::size_t jobs = presets.size() * 3 * seeds;
    std::vector<double> costs(jobs, 0.0);
    std::vector<double> rates(jobs, 0.0);
    run_jobs(jobs, threads, [&](std::size_t i) {
        const std::size_t preset_idx = i / (3 * seeds);
        const std::size_t strategy_idx = (i / seeds) % 3;
        const std::uint32_t seed_idx = static_cast<std::uint32_t>(i % seeds);
        ScenarioConfig cfg = presets[preset_idx].second;
        cfg.strategy = kStrategies[strategy_idx];
        cfg.seed = cfg.seed + seed_idx;
        const RunResult run = run_scenario(cfg);
        costs[i] = run.totals.total();
        rates[i] = run.success_rate;
    });

    std::vector<RegimeOutcome> out;
    for (std::size_t p = 0; p < presets.size(); ++p) {
        RegimeOutcome outcome;
        outcome.preset_name = presets[p].first;
        outcome.predicted = presets[p].second.strategy;
        for (std::size_t s = 0; s < 3; ++s) {
            const std::size_t base = (p * 3 + s) * seeds;
            std::vector<double> c(costs.begin() + base, costs.begin() + base + seeds);
            std::vector<double> r(rates.begin() + base, rates.begin() + base + seeds);
            outcome.ranking.push_back({kStrategies[s], mean(c), mean(r)});
        }
        std::stable_sort(outcome.ranking.begin(), outcome.ranking.end(),
                         [](const StrategyCost& a, const StrategyCost& b) {
                             return a.mean_total_cost < b.mean_total_cost;
                         });
        outcome.predicted_won = outcome.ranking.front().strategy == outcome.predicted;
        const double winner = outcome.ranking[0].mean_total_cost;
        const double runner_up = outcome.ranking[1].mean_total_cost;
        outcome.winner_margin = runner_up <= 0.0 ? 0.0 : (runner_up - winner) / runner_up;
        out.push_back(std::move(outcome));
    }
    return out;
}

}  // namespace conflab
