#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace conflab {

// Concepts are opaque ids drawn from a finite per-scenario universe.
// Representations are opaque tokens; two entities agree on a concept iff
// their tokens for it compare equal, possibly after a translator lookup.
using ConceptId = std::uint32_t;
using Token = std::uint64_t;
using ConceptSet = std::set<ConceptId>;

// A finite association from concepts to representation tokens. The unit of
// agreement between entities; standards and agent models are both built on it.
struct CommonModel {
    std::map<ConceptId, Token> entries;
    std::uint32_t version = 0;

    bool defines(ConceptId c) const { return entries.count(c) != 0; }
    std::optional<Token> token(ConceptId c) const {
        auto it = entries.find(c);
        if (it == entries.end()) return std::nullopt;
        return it->second;
    }
    std::size_t size() const { return entries.size(); }
    ConceptSet concepts() const;

    bool operator==(const CommonModel&) const = default;
};

// A common model agreed ahead of time. Immutable between revision events;
// version never decreases.
struct Standard {
    std::uint32_t standard_id = 0;
    std::uint32_t version = 0;
    CommonModel model;

    bool operator==(const Standard&) const = default;
};

// An agent-held variant of a standard: some entries conformed verbatim, some
// holding a locally different token, some extensions the standard never
// defined. The three sets partition the model's key set.
struct Implementation {
    std::uint32_t agent_id = 0;
    std::uint32_t base_standard_id = 0;
    std::uint32_t base_standard_version = 0;
    CommonModel model;
    ConceptSet conformed;
    ConceptSet variants;
    ConceptSet extensions;
    // Window from which drift draws new extension concepts.
    ConceptId extension_lo = 0;
    ConceptId extension_hi = 0;

    bool operator==(const Implementation&) const = default;
};

// A cooperative task: completing it requires agreement on every concept in
// `required`. utility_v is the value of success (for expected-utility math).
struct Task {
    ConceptSet required;
    double utility_v = 0.0;
    std::uint32_t template_id = 0;

    bool operator==(const Task&) const = default;
};

struct TaskPopulation {
    std::vector<Task> templates;
    // Concept ids 0..universe_size-1 form the scenario universe tasks draw on.
    ConceptId universe_size = 0;

    bool operator==(const TaskPopulation&) const = default;
};

// Outcome of one interoperation attempt. agreed/disagreed/missing partition
// the task's required set; success iff nothing disagreed and nothing missing.
struct InteropOutcome {
    bool success = false;
    ConceptSet agreed;
    ConceptSet disagreed;
    ConceptSet missing;

    // Graded degree of interoperability, |agreed| / |required|.
    double agreement_ratio() const {
        const std::size_t n = agreed.size() + disagreed.size() + missing.size();
        return n == 0 ? 1.0 : static_cast<double>(agreed.size()) / static_cast<double>(n);
    }
};

enum class GapKind { PracticeGap, InteroperabilityGap };

struct GapReport {
    ConceptSet gap_concepts;
    std::size_t gap_size = 0;
    GapKind kind = GapKind::PracticeGap;
};

// Optional mapping service used by evaluate_interop: given a concept and the
// first entity's token, returns the token the second entity should expect, or
// nullopt when no mapping is known.
using Translator = std::function<std::optional<Token>(ConceptId, Token)>;

struct VariationParams {
    double p_omit = 0.0;
    double p_variant = 0.0;
    double p_extend = 0.0;
};

// Version-0 standard over concepts 0..concept_count-1 with seed-derived
// tokens. Throws std::invalid_argument when concept_count is zero.
Standard make_standard(std::uint32_t concept_count, std::uint64_t seed);

// Derives an agent model from a standard: each standard concept is omitted
// with p_omit, else made a variant (fresh token) with p_variant, else
// conformed; extension concepts are added above the standard's range with
// expected count p_extend * |standard|. Deterministic in seed.
Implementation derive_implementation(const Standard& standard, const VariationParams& params,
                                     std::uint64_t seed);

// Concepts both models define with equal tokens. Symmetric.
ConceptSet common_core(const CommonModel& a, const CommonModel& b);

// Checks whether a and b can complete `task`: a required concept is missing
// when either side lacks it, agreed when tokens match directly or via the
// translator (mapping a's token to b's), otherwise disagreed.
InteropOutcome evaluate_interop(const Implementation& a, const Implementation& b,
                                const Task& task, const Translator& translator = {});

// Required concepts, across the whole population, that the standard does not
// define. Throws std::invalid_argument on an empty population.
GapReport practice_gap(const Standard& standard, const TaskPopulation& tasks);

// Required concepts outside common_core(a, b); exactly the set fitting work
// must repair for this pair and task.
GapReport interoperability_gap(const Implementation& a, const Implementation& b,
                               const Task& task);

namespace detail {
// Recomputes the conformed/variants/extensions partition of `impl` against
// the given standard. Used by constructors and conformance operations.
void reclassify(Implementation& impl, const Standard& standard);
}  // namespace detail

}  // namespace conflab
