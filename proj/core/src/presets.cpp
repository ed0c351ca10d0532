#include "conflab/presets.hpp"

namespace conflab::presets {

namespace {

// One cost vector for every preset: syncing a concept is cheap, crafting an
// adaptor mapping is expensive up front but nearly free to reapply, a
// grounding exchange sits in between, and failures dominate everything.
// The regimes differ in world structure (drift, task spread, standard fit)
// and in how much self-adaptation the resident agents can do per task (the
// grounding budget): only the dynamic world is populated by the highly
// adaptive agents localized conformance presumes.
CostParams shared_costs() {
    CostParams costs;
    costs.c_sync = 1.0;
    costs.c_map_discover = 5.0;
    costs.c_map_apply = 0.2;
    costs.c_ground_exchange = 4.0;
    costs.c_revision = 20.0;
    costs.c_failure = 8.0;
    return costs;
}

}  // namespace

ScenarioConfig stable_homogeneous() {
    ScenarioConfig config;
    config.concept_count = 60;
    config.agent_count = 8;
    config.template_count = 4;
    config.ticks = 40;
    config.tasks_per_tick = 8;
    config.strategy = Strategy::Universal;
    config.sync_period = 1;
    config.grounding_budget = 1;
    config.revision_period = 0;
    config.drift = {};
    config.costs = shared_costs();
    config.impl_variation.p_variant = 0.15;
    config.shared_fraction = 1.0;
    config.task_required_min = 3;
    config.task_required_max = 6;
    config.task_skew = 2.0;
    config.task_utility = 10.0;
    config.seed = 1101;
    return config;
}

ScenarioConfig intermediate() {
    ScenarioConfig config;
    config.concept_count = 60;
    config.agent_count = 6;
    config.template_count = 8;
    config.ticks = 50;
    config.tasks_per_tick = 8;
    config.strategy = Strategy::Mediated;
    config.sync_period = 2;
    config.grounding_budget = 1;
    config.revision_period = 0;
    config.drift.p_task_drift = 0.03;
    config.drift.p_impl_drift = 0.03;
    config.costs = shared_costs();
    config.impl_variation.p_variant = 0.1;
    config.shared_fraction = 0.55;
    config.task_required_min = 4;
    config.task_required_max = 6;
    config.task_skew = 2.0;
    config.task_utility = 10.0;
    config.seed = 2202;
    return config;
}

ScenarioConfig dynamic_heterogeneous() {
    ScenarioConfig config;
    config.concept_count = 60;
    config.agent_count = 6;
    config.template_count = 6;
    config.ticks = 50;
    config.tasks_per_tick = 8;
    config.strategy = Strategy::Localized;
    config.sync_period = 1;
    config.grounding_budget = 4;
    config.revision_period = 0;
    config.drift.p_task_drift = 0.1;
    config.drift.p_impl_drift = 0.1;
    config.costs = shared_costs();
    config.impl_variation.p_variant = 0.2;
    config.shared_fraction = 0.15;
    config.task_required_min = 4;
    config.task_required_max = 7;
    config.task_skew = 1.0;
    config.task_utility = 10.0;
    config.seed = 3303;
    return config;
}

ScenarioConfig mediated_centre() {
    ScenarioConfig config;
    config.concept_count = 160;
    config.agent_count = 6;
    config.template_count = 12;
    config.ticks = 30;
    config.tasks_per_tick = 4;
    config.strategy = Strategy::Localized;
    config.sync_period = 1;
    config.grounding_budget = 3;
    config.revision_period = 0;
    config.drift.p_task_drift = 0.05;
    config.costs = shared_costs();
    config.shared_fraction = 0.5;  // the sweep overrides this
    config.task_required_min = 2;
    config.task_required_max = 5;
    config.task_skew = 2.5;
    config.task_utility = 10.0;
    config.seed = 4404;
    return config;
}

std::vector<std::pair<std::string, ScenarioConfig>> regime_presets() {
    return {
        {"stable_homogeneous", stable_homogeneous()},
        {"intermediate", intermediate()},
        {"dynamic_heterogeneous", dynamic_heterogeneous()},
    };
}

}  // namespace conflab::presets
