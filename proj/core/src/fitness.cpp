#include "conflab/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conflab/sdt.hpp"

namespace conflab {

double PerformanceCurve::area() const {
    double a = 0.0;
    for (const CurveSegment& s : segments) a += (s.end - s.begin) * s.probability;
    return a;
}

double PerformanceCurve::value_at(double x) const {
    for (const CurveSegment& s : segments) {
        if (x >= s.begin && x < s.end) return s.probability;
    }
    return segments.empty() ? 0.0 : segments.back().probability;
}

PerformanceCurve performance_curve(const Implementation& impl, const Implementation& partner,
                                   const TaskPopulation& templates, const Standard& standard,
                                   std::uint32_t bins) {
    if (bins == 0) throw std::invalid_argument("performance_curve: bins must be >= 1");
    if (templates.templates.empty()) {
        throw std::invalid_argument("performance_curve: task population is empty");
    }

    std::vector<std::uint64_t> attempts(bins, 0);
    std::vector<std::uint64_t> successes(bins, 0);
    for (const Task& task : templates.templates) {
        const double marker = technomarker_core_coverage(task, impl, partner, standard);
        std::uint32_t bin = static_cast<std::uint32_t>(marker * static_cast<double>(bins));
        if (bin >= bins) bin = bins - 1;  // marker 1.0 lands in the last bin
        ++attempts[bin];
        if (evaluate_interop(impl, partner, task).success) ++successes[bin];
    }

    PerformanceCurve curve;
    curve.domain_begin = 0.0;
    curve.domain_end = 1.0;
    curve.segments.reserve(bins);
    for (std::uint32_t i = 0; i < bins; ++i) {
        CurveSegment seg;
        seg.begin = static_cast<double>(i) / static_cast<double>(bins);
        seg.end = static_cast<double>(i + 1) / static_cast<double>(bins);
        seg.probability = attempts[i] == 0 ? 0.0
                                           : static_cast<double>(successes[i]) /
                                                 static_cast<double>(attempts[i]);
        curve.segments.push_back(seg);
    }
    return curve;
}

FitnessDecomposition fitness_decomposition(const PerformanceCurve& reference,
                                           const PerformanceCurve& implemented) {
    if (reference.domain_begin != implemented.domain_begin ||
        reference.domain_end != implemented.domain_end) {
        throw std::invalid_argument("fitness_decomposition: curve domains differ");
    }

    // Merge the two step partitions, then integrate segment by segment.
    std::vector<double> cuts;
    cuts.push_back(reference.domain_begin);
    for (const CurveSegment& s : reference.segments) cuts.push_back(s.end);
    for (const CurveSegment& s : implemented.segments) cuts.push_back(s.end);
    cuts.push_back(reference.domain_end);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    FitnessDecomposition d;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const double width = cuts[i] - cuts[i - 1];
        if (width <= 0.0) continue;
        const double mid = (cuts[i - 1] + cuts[i]) / 2.0;
        const double ref = reference.value_at(mid);
        const double imp = implemented.value_at(mid);
        d.intrinsic_if += width * std::min(ref, imp);
        d.additional_af += width * std::max(imp - ref, 0.0);
        d.missing_mf += width * std::max(ref - imp, 0.0);
    }
    return d;
}

double potential_fitness(const FitnessDecomposition& d) {
    return d.intrinsic_if + d.additional_af + d.missing_mf;
}

double realized_fitness(const FitnessDecomposition& d) {
    return d.additional_af - d.missing_mf;
}

double fidelity(const FitnessDecomposition& d) {
    return d.intrinsic_if - (d.additional_af + d.missing_mf);
}

double expected_utility(double v, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("expected_utility: p must be in [0,1]");
    }
    if (!(v >= 0.0)) {
        throw std::invalid_argument("expected_utility: v must be non-negative");
    }
    return v * p;
}

}  // namespace conflab
