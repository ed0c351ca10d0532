#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "conflab/model.hpp"

namespace conflab {

// A task labelled with its technomarker value and whether the standard is
// actually suitable for it (the gold label).
struct LabeledSample {
    double marker = 0.0;
    bool suitable = false;
};

// Raised when a sample population contains only one class; ROC analysis and
// AUC are undefined there.
struct degenerate_population_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfusionCounts {
    std::uint64_t tp = 0;  // standard applied, appropriately
    std::uint64_t fp = 0;  // standard applied, inappropriately
    std::uint64_t tn = 0;  // standard withheld, appropriately
    std::uint64_t fn = 0;  // standard withheld, inappropriately

    std::uint64_t population() const { return tp + fp + tn + fn; }
    double sensitivity() const;  // tp / (tp + fn), also recall
    double specificity() const;  // tn / (tn + fp)
    double precision() const;    // tp / (tp + fp)
    double recall() const { return sensitivity(); }

    bool operator==(const ConfusionCounts&) const = default;
};

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double cutoff = 0.0;
};

// ROC curve over the canonical cutoff set: +inf, the midpoints between
// consecutive distinct marker values, and -inf. Points are ordered by
// (fpr, tpr), from (0,0) to (1,1); auc is the trapezoidal area.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

// Fraction of the task's required concepts lying in common_core(a, b)
// restricted to standard concepts. The built-in technomarker.
double technomarker_core_coverage(const Task& task, const Implementation& a,
                                  const Implementation& b, const Standard& standard);

// Confusion counts with the decision rule "apply the standard iff
// marker >= cutoff". Throws std::invalid_argument on an empty sample list.
ConfusionCounts confusion_at_cutoff(std::span<const LabeledSample> samples, double cutoff);

RocCurve roc_curve(std::span<const LabeledSample> samples);

// Probability that a uniformly random (suitable, unsuitable) pair is ordered
// correctly by the marker, ties credited one half. Equals the trapezoidal
// AUC; kept as an independent verification route.
double auc_pair_count(std::span<const LabeledSample> samples);

enum class CutoffCriterion { Youden, MinError };

// Cutoff maximizing tpr - fpr (Youden) or minimizing the weighted error rate
// fp_cost_ratio * fpr + (1 - tpr). Ties break toward the lower cutoff, i.e.
// wider standard application.
double optimal_cutoff(const RocCurve& curve, CutoffCriterion criterion,
                      double fp_cost_ratio = 1.0);

// Gold-label generator: true iff universal application of the standard alone
// completes the task — every required concept is in the standard and both
// agents hold the standard's token for it.
bool label_suitability(const Task& task, const Implementation& a, const Implementation& b,
                       const Standard& standard);

}  // namespace conflab
