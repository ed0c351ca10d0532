#include "conflab/sdt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conflab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_both_classes(std::span<const LabeledSample> samples, const char* op) {
    bool has_pos = false;
    bool has_neg = false;
    for (const LabeledSample& s : samples) {
        (s.suitable ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw degenerate_population_error(std::string(op) +
                                          ": population must contain both classes");
    }
}

}  // namespace

double ConfusionCounts::sensitivity() const {
    const std::uint64_t denom = tp + fn;
    return denom == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(denom);
}

double ConfusionCounts::specificity() const {
    const std::uint64_t denom = tn + fp;
    return denom == 0 ? 0.0 : static_cast<double>(tn) / static_cast<double>(denom);
}

double ConfusionCounts::precision() const {
    const std::uint64_t denom = tp + fp;
    return denom == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(denom);
}

double technomarker_core_coverage(const Task& task, const Implementation& a,
                                  const Implementation& b, const Standard& standard) {
    if (task.required.empty()) {
        throw std::invalid_argument("technomarker_core_coverage: task has no required concepts");
    }
    const ConceptSet core = common_core(a.model, b.model);
    std::size_t covered = 0;
    for (ConceptId c : task.required) {
        if (core.count(c) && standard.model.defines(c)) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(task.required.size());
}

ConfusionCounts confusion_at_cutoff(std::span<const LabeledSample> samples, double cutoff) {
    if (samples.empty()) {
        throw std::invalid_argument("confusion_at_cutoff: sample list is empty");
    }
    ConfusionCounts counts;
    for (const LabeledSample& s : samples) {
        const bool applied = s.marker >= cutoff;
        if (applied) {
            (s.suitable ? counts.tp : counts.fp) += 1;
        } else {
            (s.suitable ? counts.fn : counts.tn) += 1;
        }
    }
    return counts;
}

RocCurve roc_curve(std::span<const LabeledSample> samples) {
    require_both_classes(samples, "roc_curve");

    std::vector<double> markers;
    markers.reserve(samples.size());
    for (const LabeledSample& s : samples) markers.push_back(s.marker);
    std::sort(markers.begin(), markers.end());
    markers.erase(std::unique(markers.begin(), markers.end()), markers.end());

    std::vector<double> cutoffs;
    cutoffs.push_back(kInf);
    for (std::size_t i = markers.size(); i-- > 1;) {
        cutoffs.push_back((markers[i - 1] + markers[i]) / 2.0);
    }
    cutoffs.push_back(-kInf);

    RocCurve curve;
    curve.points.reserve(cutoffs.size());
    for (double cutoff : cutoffs) {
        const ConfusionCounts counts = confusion_at_cutoff(samples, cutoff);
        RocPoint p;
        p.cutoff = cutoff;
        p.fpr = static_cast<double>(counts.fp) / static_cast<double>(counts.fp + counts.tn);
        p.tpr = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
        curve.points.push_back(p);
    }

    double auc = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const RocPoint& lo = curve.points[i - 1];
        const RocPoint& hi = curve.points[i];
        auc += (hi.fpr - lo.fpr) * (lo.tpr + hi.tpr) / 2.0;
    }
    curve.auc = auc;
    return curve;
}

double auc_pair_count(std::span<const LabeledSample> samples) {
    require_both_classes(samples, "auc_pair_count");
    std::uint64_t pairs = 0;
    double score = 0.0;
    for (const LabeledSample& pos : samples) {
        if (!pos.suitable) continue;
        for (const LabeledSample& neg : samples) {
            if (neg.suitable) continue;
            ++pairs;
            if (pos.marker > neg.marker) {
                score += 1.0;
            } else if (pos.marker == neg.marker) {
                score += 0.5;
            }
        }
    }
    return score / static_cast<double>(pairs);
}

double optimal_cutoff(const RocCurve& curve, CutoffCriterion criterion, double fp_cost_ratio) {
    if (curve.points.empty()) {
        throw std::invalid_argument("optimal_cutoff: curve has no points");
    }
    double best_cutoff = curve.points.front().cutoff;
    double best_score = -kInf;
    for (const RocPoint& p : curve.points) {
        double score = 0.0;
        switch (criterion) {
            case CutoffCriterion::Youden:
                score = p.tpr - p.fpr;
                break;
            case CutoffCriterion::MinError:
                score = -(fp_cost_ratio * p.fpr + (1.0 - p.tpr));
                break;
        }
        // Points run from high cutoffs to low; >= lets later (lower) cutoffs
        // win ties, widening standard application.
        if (score >= best_score) {
            best_score = score;
            best_cutoff = p.cutoff;
        }
    }
    return best_cutoff;
}

bool label_suitability(const Task& task, const Implementation& a, const Implementation& b,
                       const Standard& standard) {
    for (ConceptId c : task.required) {
        const auto st = standard.model.token(c);
        if (!st) return false;
        const auto ta = a.model.token(c);
        const auto tb = b.model.token(c);
        if (!ta || *ta != *st) return false;
        if (!tb || *tb != *st) return false;
    }
    return true;
}

}  // namespace conflab
