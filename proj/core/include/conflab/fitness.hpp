#pragma once

#include <cstdint>
#include <vector>

#include "conflab/model.hpp"

namespace conflab {

struct CurveSegment {
    double begin = 0.0;
    double end = 0.0;
    double probability = 0.0;

    bool operator==(const CurveSegment&) const = default;
};

// Success probability as a step function of the technomarker. Segments
// partition the closed domain; probabilities live in [0,1].
struct PerformanceCurve {
    double domain_begin = 0.0;
    double domain_end = 1.0;
    std::vector<CurveSegment> segments;

    double area() const;
    double value_at(double x) const;

    bool operator==(const PerformanceCurve&) const = default;
};

// The Box-1 decomposition of two performance curves: fitness shared by both
// (IF), fitness only the implemented curve achieves (AF), and fitness only
// the reference achieves (MF).
struct FitnessDecomposition {
    double intrinsic_if = 0.0;
    double additional_af = 0.0;
    double missing_mf = 0.0;
};

// Empirical success-probability curve over the core-coverage technomarker
// domain [0,1]: `bins` equal sub-intervals, each carrying the success rate of
// evaluate_interop over the templates whose marker falls in it (empty bins
// carry probability 0). Every template is evaluated exactly once, so the
// result is fully deterministic. Throws std::invalid_argument when bins is
// zero or the population is empty.
PerformanceCurve performance_curve(const Implementation& impl, const Implementation& partner,
                                   const TaskPopulation& templates, const Standard& standard,
                                   std::uint32_t bins);

// IF = integral of min(ref, impl); AF = integral of max(impl - ref, 0);
// MF = integral of max(ref - impl, 0). Exact over the merged step partition.
// Throws std::invalid_argument when the domains differ.
FitnessDecomposition fitness_decomposition(const PerformanceCurve& reference,
                                           const PerformanceCurve& implemented);

// PF = IF + AF + MF
double potential_fitness(const FitnessDecomposition& d);

// RF = AF - MF
double realized_fitness(const FitnessDecomposition& d);

// FI = IF - (AF + MF)
double fidelity(const FitnessDecomposition& d);

// F(ST) = v(ST) * p(ST). Throws std::invalid_argument when p is outside
// [0,1] or v is negative.
double expected_utility(double v, double p);

}  // namespace conflab
