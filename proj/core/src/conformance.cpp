#include "conflab/conformance.hpp"

#include <algorithm>
#include <stdexcept>

namespace conflab {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Universal: return "universal";
        case Strategy::Mediated: return "mediated";
        case Strategy::Localized: return "localized";
    }
    return "unknown";
}

std::optional<Token> Adaptor::lookup(std::uint32_t from_agent, std::uint32_t to_agent,
                                     ConceptId c, Token source) const {
    auto pit = mappings_.find(PairKey{from_agent, to_agent});
    if (pit == mappings_.end()) return std::nullopt;
    auto mit = pit->second.find(MappingKey{c, source});
    if (mit == pit->second.end()) return std::nullopt;
    return mit->second;
}

void Adaptor::store(std::uint32_t from_agent, std::uint32_t to_agent, ConceptId c, Token source,
                    Token target) {
    mappings_[PairKey{from_agent, to_agent}][MappingKey{c, source}] = target;
}

Translator Adaptor::translator(std::uint32_t from_agent, std::uint32_t to_agent) const {
    return [this, from_agent, to_agent](ConceptId c, Token source) {
        return lookup(from_agent, to_agent, c, source);
    };
}

std::size_t Adaptor::mapping_count() const {
    std::size_t n = 0;
    for (const auto& [pair, table] : mappings_) n += table.size();
    return n;
}

std::optional<GroundingAgreement> GroundingState::agreement(std::uint32_t agent_a,
                                                            std::uint32_t agent_b,
                                                            ConceptId c) const {
    const PairKey key{std::min(agent_a, agent_b), std::max(agent_a, agent_b)};
    auto pit = agreements_.find(key);
    if (pit == agreements_.end()) return std::nullopt;
    auto ait = pit->second.find(c);
    if (ait == pit->second.end()) return std::nullopt;
    return ait->second;
}

void GroundingState::record(std::uint32_t agent_a, std::uint32_t agent_b, ConceptId c,
                            Token token_a, Token token_b) {
    const bool a_is_low = agent_a < agent_b;
    const PairKey key{std::min(agent_a, agent_b), std::max(agent_a, agent_b)};
    GroundingAgreement agreement;
    agreement.low_token = a_is_low ? token_a : token_b;
    agreement.high_token = a_is_low ? token_b : token_a;
    agreement.agreed_label = token_a;  // first speaker's token becomes the label
    agreements_[key][c] = agreement;
    ++exchanges_used_;
}

bool GroundingState::bridges(std::uint32_t agent_a, std::uint32_t agent_b, ConceptId c,
                             Token token_a, Token token_b) const {
    const auto found = agreement(agent_a, agent_b, c);
    if (!found) return false;
    const bool a_is_low = agent_a < agent_b;
    const Token want_a = a_is_low ? found->low_token : found->high_token;
    const Token want_b = a_is_low ? found->high_token : found->low_token;
    return want_a == token_a && want_b == token_b;
}

Translator GroundingState::translator(std::uint32_t from_agent, std::uint32_t to_agent) const {
    return [this, from_agent, to_agent](ConceptId c, Token source) -> std::optional<Token> {
        const auto found = agreement(from_agent, to_agent, c);
        if (!found) return std::nullopt;
        const bool from_is_low = from_agent < to_agent;
        const Token want_from = from_is_low ? found->low_token : found->high_token;
        const Token to_token = from_is_low ? found->high_token : found->low_token;
        if (want_from != source) return std::nullopt;  // stale on the speaker's side
        return to_token;
    };
}

std::size_t GroundingState::agreement_count() const {
    std::size_t n = 0;
    for (const auto& [pair, table] : agreements_) n += table.size();
    return n;
}

std::size_t sync_entries_needed(const Implementation& agent, const Standard& standard) {
    std::size_t n = 0;
    for (const auto& [c, tok] : standard.model.entries) {
        const auto held = agent.model.token(c);
        if (!held || *held != tok) ++n;
    }
    return n;
}

std::pair<std::vector<Implementation>, CostLedger> universal_sync(
    std::vector<Implementation> agents, const Standard& standard, const CostParams& costs) {
    CostLedger ledger;
    std::size_t written = 0;
    for (Implementation& agent : agents) {
        const std::size_t need = sync_entries_needed(agent, standard);
        if (need == 0 && agent.base_standard_version == standard.version &&
            agent.base_standard_id == standard.standard_id) {
            continue;
        }
        for (const auto& [c, tok] : standard.model.entries) {
            auto held = agent.model.token(c);
            if (!held || *held != tok) {
                agent.model.entries[c] = tok;
                ++written;
            }
        }
        agent.base_standard_id = standard.standard_id;
        agent.base_standard_version = standard.version;
        detail::reclassify(agent, standard);
    }
    ledger.add(CostCategory::Sync, costs.c_sync * static_cast<double>(written));
    return {std::move(agents), ledger};
}

std::pair<InteropOutcome, CostLedger> mediated_translate(Adaptor& adaptor, const Implementation& a,
                                                         const Implementation& b, const Task& task,
                                                         const CostParams& costs) {
    CostLedger ledger;
    for (ConceptId c : task.required) {
        const auto ta = a.model.token(c);
        const auto tb = b.model.token(c);
        if (!ta || !tb) continue;  // unmappable, stays missing
        if (*ta == *tb) continue;
        const auto cached = adaptor.lookup(a.agent_id, b.agent_id, c, *ta);
        if (cached && *cached == *tb) {
            ++adaptor.stats_.applications;
            ledger.add(CostCategory::MapApply, costs.c_map_apply);
        } else {
            // Discovery inspects both models, so the inverse mapping comes
            // for free and is cached alongside.
            adaptor.store(a.agent_id, b.agent_id, c, *ta, *tb);
            adaptor.store(b.agent_id, a.agent_id, c, *tb, *ta);
            ++adaptor.stats_.discoveries;
            ledger.add(CostCategory::MapDiscover, costs.c_map_discover);
        }
    }
    InteropOutcome outcome =
        evaluate_interop(a, b, task, adaptor.translator(a.agent_id, b.agent_id));
    return {std::move(outcome), ledger};
}

GroundingResult grounding_dialogue(const Implementation& a, const Implementation& b,
                                   const Task& task, GroundingState& state, std::uint32_t budget,
                                   const CostParams& costs) {
    GroundingResult result;
    const GapReport gap = interoperability_gap(a, b, task);
    for (ConceptId c : gap.gap_concepts) {
        const auto ta = a.model.token(c);
        const auto tb = b.model.token(c);
        if (!ta || !tb) continue;  // nothing shared to label
        if (state.bridges(a.agent_id, b.agent_id, c, *ta, *tb)) continue;
        if (result.exchanges >= budget) break;
        state.record(a.agent_id, b.agent_id, c, *ta, *tb);
        ++result.exchanges;
        result.ledger.add(CostCategory::GroundExchange, costs.c_ground_exchange);
    }
    result.outcome = evaluate_interop(a, b, task, state.translator(a.agent_id, b.agent_id));
    return result;
}

std::pair<Standard, CostLedger> sdo_revise(const Standard& standard,
                                           const std::vector<Implementation>& implementations,
                                           double threshold_fraction, const CostParams& costs) {
    if (implementations.empty()) {
        throw std::invalid_argument("sdo_revise: implementation list is empty");
    }
    if (!(threshold_fraction > 0.0 && threshold_fraction <= 1.0)) {
        throw std::invalid_argument("sdo_revise: threshold_fraction must be in (0, 1]");
    }

    // Agreement is counted on (concept, token) pairs: the same non-standard
    // element, not merely the same concept.
    std::map<std::pair<ConceptId, Token>, std::size_t> counts;
    for (const Implementation& impl : implementations) {
        for (ConceptId c : impl.variants) counts[{c, impl.model.entries.at(c)}] += 1;
        for (ConceptId c : impl.extensions) counts[{c, impl.model.entries.at(c)}] += 1;
    }

    const double need =
        threshold_fraction * static_cast<double>(implementations.size()) - 1e-9;
    Standard out = standard;
    CostLedger ledger;
    bool changed = false;
    ConceptSet incorporated;
    for (const auto& [key, count] : counts) {
        const auto& [c, tok] = key;
        if (static_cast<double>(count) < need) continue;
        if (incorporated.count(c)) continue;  // first qualifying token wins
        const auto current = out.model.token(c);
        if (current && *current == tok) continue;
        out.model.entries[c] = tok;
        incorporated.insert(c);
        changed = true;
    }
    if (changed) {
        ++out.version;
        out.model.version = out.version;
        ledger.add(CostCategory::Revision, costs.c_revision);
    }
    return {std::move(out), ledger};
}

Strategy select_strategy(double stability, double homogeneity, StrategyThresholds thresholds) {
    if (!(stability >= 0.0 && stability <= 1.0) || !(homogeneity >= 0.0 && homogeneity <= 1.0)) {
        throw std::invalid_argument("select_strategy: inputs must be in [0,1]");
    }
    if (stability >= thresholds.high && homogeneity >= thresholds.high) {
        return Strategy::Universal;
    }
    if (stability >= thresholds.low && homogeneity >= thresholds.low) {
        return Strategy::Mediated;
    }
    return Strategy::Localized;
}

}  // namespace conflab
