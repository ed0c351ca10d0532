#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "conflab/model.hpp"
#include "conflab/rng.hpp"

namespace conflab {

// Stochastic sources of variation. All probabilities are per tick (task and
// implementation drift) or per revision (p_defect). residual_threshold is the
// occurrence count at which an unrecognized concept spawns a standard entry.
struct DriftParams {
    double p_task_drift = 0.0;
    double p_impl_drift = 0.0;
    double p_defect = 0.0;
    std::uint32_t residual_threshold = 1;
};

// Occurrence counts for concepts that fell outside the standard ("not
// elsewhere categorized"). Counts are strictly positive.
struct ResidualBucket {
    std::map<ConceptId, std::uint64_t> counts;

    bool operator==(const ResidualBucket&) const = default;
};

// Each template independently, with p_task_drift, gains a concept from the
// universe or loses one (50/50). Removal never empties a required set; a
// removal attempt on a singleton is a no-op.
TaskPopulation step_task_drift(const TaskPopulation& population, const DriftParams& params,
                               Rng& rng);

// With p_impl_drift, either one uniformly chosen entry's token is replaced
// with a fresh token, or one extension is added from the implementation's
// extension window (50/50). At most one mutation per call; the
// conformed/variants/extensions partition is preserved.
Implementation step_impl_drift(const Implementation& impl, const DriftParams& params, Rng& rng);

// Increments the occurrence count for an unrecognized concept.
ResidualBucket record_residual(ResidualBucket bucket, ConceptId unknown);

// Every bucket concept with count >= threshold is added to the standard with
// a fresh token and removed from the bucket; the version increments once if
// anything spawned. Standard entries are never removed or overwritten.
std::pair<Standard, ResidualBucket> spawn_from_residual(const ResidualBucket& bucket,
                                                        const Standard& standard,
                                                        std::uint32_t threshold);

// Quality error at publication time: with p_defect, one uniformly chosen
// standard entry's token is corrupted. Intended to run once per revision
// event; downstream the defect is indistinguishable from a variant.
Standard apply_revision_defect(const Standard& standard, const DriftParams& params, Rng& rng);

// |entries where standard and implementation disagree| / |standard|, counting
// standard entries the implementation lacks or alters plus every extension.
// Zero iff the model restricted to standard concepts equals the standard and
// has no extensions. Throws std::invalid_argument on an empty standard.
double divergence(const Standard& standard, const Implementation& impl);

}  // namespace conflab
