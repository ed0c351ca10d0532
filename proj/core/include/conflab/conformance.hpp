#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "conflab/costs.hpp"
#include "conflab/model.hpp"

namespace conflab {

// The three conformance-service strategies: one global standard everyone
// syncs to, an external adaptor translating between heterogeneous agents, or
// agents grounding with each other directly.
enum class Strategy { Universal, Mediated, Localized };

const char* to_string(Strategy s);

// An externally situated mapping service. Per ordered agent pair it caches
// (concept, source token) -> target token mappings discovered by inspecting
// both models; a discovery caches both directions at once. The cache only
// grows within a run; a mapping invalidated by drift is refreshed in place,
// which counts as a new discovery.
class Adaptor {
public:
    struct Stats {
        std::uint64_t discoveries = 0;
        std::uint64_t applications = 0;
    };

    std::optional<Token> lookup(std::uint32_t from_agent, std::uint32_t to_agent, ConceptId c,
                                Token source) const;
    void store(std::uint32_t from_agent, std::uint32_t to_agent, ConceptId c, Token source,
               Token target);

    // Translator view for one direction, suitable for evaluate_interop.
    Translator translator(std::uint32_t from_agent, std::uint32_t to_agent) const;

    const Stats& stats() const { return stats_; }
    std::size_t mapping_count() const;

private:
    friend std::pair<InteropOutcome, CostLedger> mediated_translate(Adaptor&,
                                                                    const Implementation&,
                                                                    const Implementation&,
                                                                    const Task&,
                                                                    const CostParams&);
    using PairKey = std::pair<std::uint32_t, std::uint32_t>;
    using MappingKey = std::pair<ConceptId, Token>;
    std::map<PairKey, std::map<MappingKey, Token>> mappings_;
    Stats stats_;
};

// One pairwise agreement from a grounding dialogue: the tokens both sides
// held when the shared example was labelled, plus the adopted label (the
// first speaker's token, by convention).
struct GroundingAgreement {
    Token low_token = 0;   // token of the lower-numbered agent
    Token high_token = 0;  // token of the higher-numbered agent
    Token agreed_label = 0;
};

// Accumulated grounding agreements, per unordered agent pair. Agreements
// persist for the whole run and are reused at zero exchange cost; an
// agreement stale on either side must be re-grounded with a fresh exchange.
class GroundingState {
public:
    std::optional<GroundingAgreement> agreement(std::uint32_t agent_a, std::uint32_t agent_b,
                                                ConceptId c) const;
    void record(std::uint32_t agent_a, std::uint32_t agent_b, ConceptId c, Token token_a,
                Token token_b);

    // True when a recorded agreement still bridges the two current tokens.
    bool bridges(std::uint32_t agent_a, std::uint32_t agent_b, ConceptId c, Token token_a,
                 Token token_b) const;

    Translator translator(std::uint32_t from_agent, std::uint32_t to_agent) const;

    std::uint64_t exchanges_used() const { return exchanges_used_; }
    std::size_t agreement_count() const;

private:
    using PairKey = std::pair<std::uint32_t, std::uint32_t>;  // (low, high)
    std::map<PairKey, std::map<ConceptId, GroundingAgreement>> agreements_;
    std::uint64_t exchanges_used_ = 0;
};

// Overwrites every agent's model over standard concepts to equal the
// standard; extensions are retained. Charges c_sync per entry actually
// changed or added, so an immediate second call writes nothing and costs
// nothing.
std::pair<std::vector<Implementation>, CostLedger> universal_sync(
    std::vector<Implementation> agents, const Standard& standard, const CostParams& costs);

// Entries a sync pass would write for one agent (used for event reporting).
std::size_t sync_entries_needed(const Implementation& agent, const Standard& standard);

// Runs the task through an adaptor: for every required concept where both
// sides define the concept but tokens differ, a cached mapping is applied
// (c_map_apply) or a new one discovered from the two models (c_map_discover).
// Concepts missing from either side stay missing; a one-to-one mapping is not
// always possible.
std::pair<InteropOutcome, CostLedger> mediated_translate(Adaptor& adaptor,
                                                         const Implementation& a,
                                                         const Implementation& b, const Task& task,
                                                         const CostParams& costs);

struct GroundingResult {
    InteropOutcome outcome;
    CostLedger ledger;
    std::uint32_t exchanges = 0;
};

// Pairwise grounding dialogue: for each gap concept both sides define, one
// exchange records an agreement (adopting a's token as the label) until the
// budget runs out. Prior agreements are reused for free. `state` is updated
// in place.
GroundingResult grounding_dialogue(const Implementation& a, const Implementation& b,
                                   const Task& task, GroundingState& state, std::uint32_t budget,
                                   const CostParams& costs);

// SDO incremental revision: every (concept, token) pair held as a variant or
// extension by at least threshold_fraction of the implementations is written
// into the standard. The version increments at most once per call; entries
// are never removed. Throws std::invalid_argument on an empty implementation
// list or a threshold outside (0, 1].
std::pair<Standard, CostLedger> sdo_revise(const Standard& standard,
                                           const std::vector<Implementation>& implementations,
                                           double threshold_fraction, const CostParams& costs);

struct StrategyThresholds {
    double low = 1.0 / 3.0;
    double high = 2.0 / 3.0;
};

// Maps task-domain stability and homogeneity onto a conformance strategy:
// both high -> universal, both at least intermediate -> mediated, either low
// -> localized. At a threshold, >= goes to the more standardized strategy.
Strategy select_strategy(double stability, double homogeneity,
                         StrategyThresholds thresholds = {});

}  // namespace conflab
