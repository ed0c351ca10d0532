#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "conflab/conformance.hpp"
#include "conflab/costs.hpp"
#include "conflab/model.hpp"
#include "conflab/rng.hpp"

namespace conflab::test {

// A zero-variation implementation of the standard (model equals the
// standard's exactly).
inline Implementation exact_implementation(const Standard& standard, std::uint32_t agent_id) {
    Implementation impl = derive_implementation(standard, {}, 0);
    impl.agent_id = agent_id;
    return impl;
}

// Random implementation: derived from the standard with random variation
// probabilities, useful for cross-operation property checks.
inline Implementation random_implementation(const Standard& standard, std::uint32_t agent_id,
                                            Rng& rng) {
    VariationParams params;
    params.p_omit = rng.uniform() * 0.4;
    params.p_variant = rng.uniform() * 0.5;
    params.p_extend = rng.uniform() * 0.4;
    Implementation impl = derive_implementation(standard, params, rng.next_u64());
    impl.agent_id = agent_id;
    return impl;
}

inline Task random_task(ConceptId universe, std::size_t min_size, std::size_t max_size,
                        Rng& rng) {
    Task task;
    const std::size_t want = min_size + rng.below(max_size - min_size + 1);
    while (task.required.size() < want && task.required.size() < universe) {
        task.required.insert(static_cast<ConceptId>(rng.below(universe)));
    }
    task.utility_v = 1.0;
    return task;
}

// The Implementation partition invariant: conformed/variants/extensions are
// pairwise disjoint, cover the model key set, and conformed tokens equal the
// standard's.
inline bool partition_holds(const Implementation& impl, const Standard& standard) {
    std::size_t counted = 0;
    for (ConceptId c : impl.conformed) {
        ++counted;
        if (impl.variants.count(c) || impl.extensions.count(c)) return false;
        const auto tok = impl.model.token(c);
        const auto st = standard.model.token(c);
        if (!tok || !st || *tok != *st) return false;
    }
    for (ConceptId c : impl.variants) {
        ++counted;
        if (impl.extensions.count(c)) return false;
        if (!impl.model.defines(c)) return false;
    }
    for (ConceptId c : impl.extensions) {
        ++counted;
        if (!impl.model.defines(c)) return false;
    }
    return counted == impl.model.size();
}

// CostLedger internal consistency: the two phase totals sum to the breakdown.
inline bool ledger_consistent(const CostLedger& ledger) {
    double ahead = 0.0;
    double task = 0.0;
    for (const auto& [category, amount] : ledger.breakdown()) {
        if (amount < 0.0) return false;
        (is_ahead_of_time(category) ? ahead : task) += amount;
    }
    const auto close = [](double a, double b) {
        const double scale = std::max({1.0, std::abs(a), std::abs(b)});
        return std::abs(a - b) <= 1e-9 * scale;
    };
    return close(ahead, ledger.ahead_of_time()) && close(task, ledger.task_time()) &&
           close(ledger.total(), ahead + task);
}

}  // namespace conflab::test
