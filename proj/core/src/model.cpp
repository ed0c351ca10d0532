#include "conflab/model.hpp"

#include <algorithm>
#include <stdexcept>

#include "conflab/rng.hpp"

namespace conflab {

ConceptSet CommonModel::concepts() const {
    ConceptSet out;
    for (const auto& [c, tok] : entries) out.insert(c);
    return out;
}

Standard make_standard(std::uint32_t concept_count, std::uint64_t seed) {
    if (concept_count == 0) {
        throw std::invalid_argument("make_standard: concept_count must be >= 1");
    }
    Rng rng(seed);
    Standard s;
    s.standard_id = static_cast<std::uint32_t>(splitmix64(seed) & 0x7FFFFFFFu);
    s.version = 0;
    for (ConceptId c = 0; c < concept_count; ++c) {
        s.model.entries[c] = rng.next_u64();
    }
    s.model.version = 0;
    return s;
}

static void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string("derive_implementation: ") + name +
                                    " must be in [0,1]");
    }
}

Implementation derive_implementation(const Standard& standard, const VariationParams& params,
                                     std::uint64_t seed) {
    check_probability(params.p_omit, "p_omit");
    check_probability(params.p_variant, "p_variant");
    check_probability(params.p_extend, "p_extend");

    Rng rng(seed);
    Implementation impl;
    impl.base_standard_id = standard.standard_id;
    impl.base_standard_version = standard.version;

    for (const auto& [c, tok] : standard.model.entries) {
        if (rng.bernoulli(params.p_omit)) continue;  // omitted
        if (rng.bernoulli(params.p_variant)) {
            impl.model.entries[c] = rng.next_u64();
            impl.variants.insert(c);
        } else {
            impl.model.entries[c] = tok;
            impl.conformed.insert(c);
        }
    }

    const std::size_t n = standard.model.size();
    const ConceptId lo =
        standard.model.entries.empty() ? 0 : standard.model.entries.rbegin()->first + 1;
    const ConceptId window = static_cast<ConceptId>(std::max<std::size_t>(n, 1));
    impl.extension_lo = lo;
    impl.extension_hi = lo + window;
    for (std::size_t i = 0; i < n; ++i) {
        if (!rng.bernoulli(params.p_extend)) continue;
        const ConceptId c = lo + static_cast<ConceptId>(rng.below(window));
        if (impl.model.defines(c)) continue;  // duplicate draw
        impl.model.entries[c] = rng.next_u64();
        impl.extensions.insert(c);
    }
    return impl;
}

ConceptSet common_core(const CommonModel& a, const CommonModel& b) {
    ConceptSet core;
    for (const auto& [c, tok] : a.entries) {
        auto it = b.entries.find(c);
        if (it != b.entries.end() && it->second == tok) core.insert(c);
    }
    return core;
}

InteropOutcome evaluate_interop(const Implementation& a, const Implementation& b,
                                const Task& task, const Translator& translator) {
    InteropOutcome out;
    for (ConceptId c : task.required) {
        const auto ta = a.model.token(c);
        const auto tb = b.model.token(c);
        if (!ta || !tb) {
            out.missing.insert(c);
        } else if (*ta == *tb) {
            out.agreed.insert(c);
        } else if (translator && translator(c, *ta) == tb) {
            out.agreed.insert(c);
        } else {
            out.disagreed.insert(c);
        }
    }
    out.success = out.disagreed.empty() && out.missing.empty();
    return out;
}

GapReport practice_gap(const Standard& standard, const TaskPopulation& tasks) {
    if (tasks.templates.empty()) {
        throw std::invalid_argument("practice_gap: task population is empty");
    }
    GapReport report;
    report.kind = GapKind::PracticeGap;
    for (const Task& t : tasks.templates) {
        for (ConceptId c : t.required) {
            if (!standard.model.defines(c)) report.gap_concepts.insert(c);
        }
    }
    report.gap_size = report.gap_concepts.size();
    return report;
}

GapReport interoperability_gap(const Implementation& a, const Implementation& b,
                               const Task& task) {
    const ConceptSet core = common_core(a.model, b.model);
    GapReport report;
    report.kind = GapKind::InteroperabilityGap;
    for (ConceptId c : task.required) {
        if (core.count(c) == 0) report.gap_concepts.insert(c);
    }
    report.gap_size = report.gap_concepts.size();
    return report;
}

namespace detail {

void reclassify(Implementation& impl, const Standard& standard) {
    impl.conformed.clear();
    impl.variants.clear();
    impl.extensions.clear();
    for (const auto& [c, tok] : impl.model.entries) {
        const auto st = standard.model.token(c);
        if (!st) {
            impl.extensions.insert(c);
        } else if (*st == tok) {
            impl.conformed.insert(c);
        } else {
            impl.variants.insert(c);
        }
    }
}

}  // namespace detail

}  // namespace conflab
