#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "conflab/engine.hpp"
#include "csv.hpp"

namespace conflab::cli {

using nlohmann::json;

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                                const std::string& prefix, std::vector<std::string>& errors) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const auto& k : known) {
            if (k == key) {
                ok = true;
                break;
            }
        }
        if (!ok) errors.push_back(prefix + key + ": unknown key");
    }
}

template <typename T>
void read_number(const json& obj, const char* key, const std::string& prefix, T& out,
                 std::vector<std::string>& errors) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) {
            errors.push_back(prefix + key + ": expected a number");
            return;
        }
        out = v.get<double>();
    } else {
        if (!v.is_number_unsigned()) {
            errors.push_back(prefix + key + ": expected a non-negative integer");
            return;
        }
        out = v.get<T>();
    }
}

}  // namespace detail

// Parses a scenario config from JSON text. Every key is optional (defaults
// come from ScenarioConfig), unknown keys are rejected, and all collected
// problems are reported at once.
inline ScenarioConfig config_from_json(const json& root) {
    std::vector<std::string> errors;
    if (!root.is_object()) throw InputError("config: top level must be a JSON object");

    detail::reject_unknown_keys(
        root,
        {"concept_count", "agent_count", "template_count", "ticks", "tasks_per_tick", "strategy",
         "sync_period", "grounding_budget", "revision_period", "revision_threshold_fraction",
         "drift", "costs", "impl_variation", "shared_fraction", "task", "seed"},
        "", errors);

    ScenarioConfig config;
    detail::read_number(root, "concept_count", "", config.concept_count, errors);
    detail::read_number(root, "agent_count", "", config.agent_count, errors);
    detail::read_number(root, "template_count", "", config.template_count, errors);
    detail::read_number(root, "ticks", "", config.ticks, errors);
    detail::read_number(root, "tasks_per_tick", "", config.tasks_per_tick, errors);
    detail::read_number(root, "sync_period", "", config.sync_period, errors);
    detail::read_number(root, "grounding_budget", "", config.grounding_budget, errors);
    detail::read_number(root, "revision_period", "", config.revision_period, errors);
    detail::read_number(root, "revision_threshold_fraction", "",
                        config.revision_threshold_fraction, errors);
    detail::read_number(root, "shared_fraction", "", config.shared_fraction, errors);
    detail::read_number(root, "seed", "", config.seed, errors);

    if (root.contains("strategy")) {
        const json& v = root.at("strategy");
        if (!v.is_string()) {
            errors.emplace_back("strategy: expected a string");
        } else {
            const std::string s = v.get<std::string>();
            if (s == "universal") {
                config.strategy = Strategy::Universal;
            } else if (s == "mediated") {
                config.strategy = Strategy::Mediated;
            } else if (s == "localized") {
                config.strategy = Strategy::Localized;
            } else {
                errors.push_back("strategy: must be universal, mediated, or localized, got '" +
                                 s + "'");
            }
        }
    }

    if (root.contains("drift")) {
        const json& d = root.at("drift");
        if (!d.is_object()) {
            errors.emplace_back("drift: expected an object");
        } else {
            detail::reject_unknown_keys(
                d, {"p_task_drift", "p_impl_drift", "p_defect", "residual_threshold"}, "drift.",
                errors);
            detail::read_number(d, "p_task_drift", "drift.", config.drift.p_task_drift, errors);
            detail::read_number(d, "p_impl_drift", "drift.", config.drift.p_impl_drift, errors);
            detail::read_number(d, "p_defect", "drift.", config.drift.p_defect, errors);
            detail::read_number(d, "residual_threshold", "drift.",
                                config.drift.residual_threshold, errors);
        }
    }

    if (root.contains("costs")) {
        const json& c = root.at("costs");
        if (!c.is_object()) {
            errors.emplace_back("costs: expected an object");
        } else {
            detail::reject_unknown_keys(c,
                                        {"c_sync", "c_map_discover", "c_map_apply",
                                         "c_ground_exchange", "c_revision", "c_failure"},
                                        "costs.", errors);
            detail::read_number(c, "c_sync", "costs.", config.costs.c_sync, errors);
            detail::read_number(c, "c_map_discover", "costs.", config.costs.c_map_discover,
                                errors);
            detail::read_number(c, "c_map_apply", "costs.", config.costs.c_map_apply, errors);
            detail::read_number(c, "c_ground_exchange", "costs.", config.costs.c_ground_exchange,
                                errors);
            detail::read_number(c, "c_revision", "costs.", config.costs.c_revision, errors);
            detail::read_number(c, "c_failure", "costs.", config.costs.c_failure, errors);
        }
    }

    if (root.contains("impl_variation")) {
        const json& v = root.at("impl_variation");
        if (!v.is_object()) {
            errors.emplace_back("impl_variation: expected an object");
        } else {
            detail::reject_unknown_keys(v, {"p_omit", "p_variant", "p_extend"}, "impl_variation.",
                                        errors);
            detail::read_number(v, "p_omit", "impl_variation.", config.impl_variation.p_omit,
                                errors);
            detail::read_number(v, "p_variant", "impl_variation.",
                                config.impl_variation.p_variant, errors);
            detail::read_number(v, "p_extend", "impl_variation.", config.impl_variation.p_extend,
                                errors);
        }
    }

    if (root.contains("task")) {
        const json& t = root.at("task");
        if (!t.is_object()) {
            errors.emplace_back("task: expected an object");
        } else {
            detail::reject_unknown_keys(t, {"required_min", "required_max", "skew", "utility"},
                                        "task.", errors);
            detail::read_number(t, "required_min", "task.", config.task_required_min, errors);
            detail::read_number(t, "required_max", "task.", config.task_required_max, errors);
            detail::read_number(t, "skew", "task.", config.task_skew, errors);
            detail::read_number(t, "utility", "task.", config.task_utility, errors);
        }
    }

    if (!errors.empty()) throw ConfigError(std::move(errors));
    return config;
}

// Deterministic key = value echo of a config, one line per field.
inline std::vector<std::string> config_echo(const ScenarioConfig& c) {
    std::vector<std::string> lines;
    auto add = [&](const std::string& key, const std::string& value) {
        lines.push_back("config." + key + " = " + value);
    };
    add("concept_count", std::to_string(c.concept_count));
    add("agent_count", std::to_string(c.agent_count));
    add("template_count", std::to_string(c.template_count));
    add("ticks", std::to_string(c.ticks));
    add("tasks_per_tick", std::to_string(c.tasks_per_tick));
    add("strategy", to_string(c.strategy));
    add("sync_period", std::to_string(c.sync_period));
    add("grounding_budget", std::to_string(c.grounding_budget));
    add("revision_period", std::to_string(c.revision_period));
    add("revision_threshold_fraction", fmt(c.revision_threshold_fraction));
    add("drift.p_task_drift", fmt(c.drift.p_task_drift));
    add("drift.p_impl_drift", fmt(c.drift.p_impl_drift));
    add("drift.p_defect", fmt(c.drift.p_defect));
    add("drift.residual_threshold", std::to_string(c.drift.residual_threshold));
    add("costs.c_sync", fmt(c.costs.c_sync));
    add("costs.c_map_discover", fmt(c.costs.c_map_discover));
    add("costs.c_map_apply", fmt(c.costs.c_map_apply));
    add("costs.c_ground_exchange", fmt(c.costs.c_ground_exchange));
    add("costs.c_revision", fmt(c.costs.c_revision));
    add("costs.c_failure", fmt(c.costs.c_failure));
    add("impl_variation.p_omit", fmt(c.impl_variation.p_omit));
    add("impl_variation.p_variant", fmt(c.impl_variation.p_variant));
    add("impl_variation.p_extend", fmt(c.impl_variation.p_extend));
    add("shared_fraction", fmt(c.shared_fraction));
    add("task.required_min", std::to_string(c.task_required_min));
    add("task.required_max", std::to_string(c.task_required_max));
    add("task.skew", fmt(c.task_skew));
    add("task.utility", fmt(c.task_utility));
    add("seed", std::to_string(c.seed));
    return lines;
}

}  // namespace conflab::cli
