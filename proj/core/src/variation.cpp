#include "conflab/variation.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace conflab {

namespace {

// Uniform pick from the universe complement of `required`; nullopt when the
// template already covers the whole universe.
std::optional<ConceptId> pick_absent(const ConceptSet& required, ConceptId universe_size,
                                     Rng& rng) {
    if (required.size() >= universe_size) return std::nullopt;
    const std::uint64_t absent = universe_size - required.size();
    std::uint64_t idx = rng.below(absent);
    for (ConceptId c = 0; c < universe_size; ++c) {
        if (required.count(c)) continue;
        if (idx == 0) return c;
        --idx;
    }
    return std::nullopt;  // unreachable
}

Token spawn_token(std::uint32_t standard_id, std::uint32_t next_version, ConceptId c) {
    const std::uint64_t base =
        (static_cast<std::uint64_t>(standard_id) << 32) | static_cast<std::uint64_t>(next_version);
    return splitmix64(splitmix64(base) ^ static_cast<std::uint64_t>(c));
}

}  // namespace

TaskPopulation step_task_drift(const TaskPopulation& population, const DriftParams& params,
                               Rng& rng) {
    TaskPopulation out = population;
    for (Task& t : out.templates) {
        if (!rng.bernoulli(params.p_task_drift)) continue;
        if (rng.bernoulli(0.5)) {
            if (auto gained = pick_absent(t.required, out.universe_size, rng)) {
                t.required.insert(*gained);
            }
        } else {
            if (t.required.size() <= 1) continue;  // never empty a task
            auto it = t.required.begin();
            std::advance(it, static_cast<std::ptrdiff_t>(rng.below(t.required.size())));
            t.required.erase(it);
        }
    }
    return out;
}

Implementation step_impl_drift(const Implementation& impl, const DriftParams& params, Rng& rng) {
    if (!rng.bernoulli(params.p_impl_drift)) return impl;
    Implementation out = impl;
    if (rng.bernoulli(0.5)) {
        if (out.model.entries.empty()) return out;
        auto it = out.model.entries.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(rng.below(out.model.size())));
        it->second = rng.next_u64();
        if (out.conformed.erase(it->first)) out.variants.insert(it->first);
    } else {
        if (out.extension_hi <= out.extension_lo) return out;
        const ConceptId c =
            out.extension_lo +
            static_cast<ConceptId>(rng.below(out.extension_hi - out.extension_lo));
        if (out.model.defines(c)) return out;
        out.model.entries[c] = rng.next_u64();
        out.extensions.insert(c);
    }
    return out;
}

ResidualBucket record_residual(ResidualBucket bucket, ConceptId unknown) {
    ++bucket.counts[unknown];
    return bucket;
}

std::pair<Standard, ResidualBucket> spawn_from_residual(const ResidualBucket& bucket,
                                                        const Standard& standard,
                                                        std::uint32_t threshold) {
    if (threshold == 0) {
        throw std::invalid_argument("spawn_from_residual: threshold must be >= 1");
    }
    Standard out = standard;
    ResidualBucket remaining;
    bool spawned = false;
    for (const auto& [c, count] : bucket.counts) {
        if (count < threshold) {
            remaining.counts.emplace(c, count);
            continue;
        }
        if (!out.model.defines(c)) {
            out.model.entries[c] = spawn_token(out.standard_id, out.version + 1, c);
            spawned = true;
        }
    }
    if (spawned) {
        ++out.version;
        out.model.version = out.version;
    }
    return {std::move(out), std::move(remaining)};
}

Standard apply_revision_defect(const Standard& standard, const DriftParams& params, Rng& rng) {
    if (!rng.bernoulli(params.p_defect)) return standard;
    if (standard.model.entries.empty()) return standard;
    Standard out = standard;
    auto it = out.model.entries.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(rng.below(out.model.size())));
    it->second = rng.next_u64();
    return out;
}

double divergence(const Standard& standard, const Implementation& impl) {
    if (standard.model.entries.empty()) {
        throw std::invalid_argument("divergence: standard has no entries");
    }
    std::size_t disagree = 0;
    for (const auto& [c, tok] : standard.model.entries) {
        const auto t = impl.model.token(c);
        if (!t || *t != tok) ++disagree;
    }
    for (const auto& [c, tok] : impl.model.entries) {
        if (!standard.model.defines(c)) ++disagree;
    }
    return static_cast<double>(disagree) / static_cast<double>(standard.model.size());
}

}  // namespace conflab
