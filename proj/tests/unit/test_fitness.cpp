#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "conflab/fitness.hpp"
#include "conflab/sdt.hpp"
#include "helpers.hpp"

using namespace conflab;
using namespace conflab::test;

namespace {

PerformanceCurve constant_curve(double p) {
    PerformanceCurve curve;
    curve.segments.push_back({0.0, 1.0, p});
    return curve;
}

PerformanceCurve random_curve(Rng& rng) {
    PerformanceCurve curve;
    const std::size_t pieces = 1 + rng.below(8);
    std::vector<double> cuts{0.0, 1.0};
    for (std::size_t i = 1; i < pieces; ++i) cuts.push_back(rng.uniform());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        curve.segments.push_back({cuts[i - 1], cuts[i], rng.uniform()});
    }
    return curve;
}

// Worked pair: reference 0.8 everywhere; implementation 1.0 on [0, 0.5] and
// 0.4 on [0.5, 1] -> IF 0.6, AF 0.1, MF 0.2.
PerformanceCurve worked_reference() { return constant_curve(0.8); }
PerformanceCurve worked_implemented() {
    PerformanceCurve curve;
    curve.segments.push_back({0.0, 0.5, 1.0});
    curve.segments.push_back({0.5, 1.0, 0.4});
    return curve;
}

}  // namespace

TEST_SUITE("fitness") {

TEST_CASE("worked decomposition example") {
    const FitnessDecomposition d = fitness_decomposition(worked_reference(), worked_implemented());
    CHECK(d.intrinsic_if == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(d.additional_af == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(d.missing_mf == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(potential_fitness(d) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(realized_fitness(d) == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(fidelity(d) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("identical curves have zero AF and MF") {
    Rng rng(4);
    for (int i = 0; i < 30; ++i) {
        const PerformanceCurve curve = random_curve(rng);
        const FitnessDecomposition d = fitness_decomposition(curve, curve);
        CHECK(d.additional_af == doctest::Approx(0.0));
        CHECK(d.missing_mf == doctest::Approx(0.0));
        CHECK(d.intrinsic_if == doctest::Approx(curve.area()).epsilon(1e-12));
    }
}

TEST_CASE("area identities hold on random step-curve pairs") {
    Rng rng(90210);
    for (int i = 0; i < 1000; ++i) {
        const PerformanceCurve ref = random_curve(rng);
        const PerformanceCurve imp = random_curve(rng);
        const FitnessDecomposition d = fitness_decomposition(ref, imp);
        CHECK(std::abs(d.intrinsic_if + d.additional_af - imp.area()) <= 1e-12);
        CHECK(std::abs(d.intrinsic_if + d.missing_mf - ref.area()) <= 1e-12);
        CHECK(d.intrinsic_if >= 0.0);
        CHECK(d.additional_af >= 0.0);
        CHECK(d.missing_mf >= 0.0);
        CHECK(std::abs(realized_fitness(d) - (imp.area() - ref.area())) <= 1e-12);
    }
}

TEST_CASE("swapping curves swaps AF and MF and keeps IF") {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const PerformanceCurve ref = random_curve(rng);
        const PerformanceCurve imp = random_curve(rng);
        const FitnessDecomposition d = fitness_decomposition(ref, imp);
        const FitnessDecomposition swapped = fitness_decomposition(imp, ref);
        CHECK(d.intrinsic_if == doctest::Approx(swapped.intrinsic_if).epsilon(1e-12));
        CHECK(d.additional_af == doctest::Approx(swapped.missing_mf).epsilon(1e-12));
        CHECK(d.missing_mf == doctest::Approx(swapped.additional_af).epsilon(1e-12));
    }
}

TEST_CASE("potential fitness dominates both areas") {
    Rng rng(23);
    for (int i = 0; i < 1000; ++i) {
        const PerformanceCurve ref = random_curve(rng);
        const PerformanceCurve imp = random_curve(rng);
        const FitnessDecomposition d = fitness_decomposition(ref, imp);
        CHECK(potential_fitness(d) >= std::max(ref.area(), imp.area()) - 1e-12);
        CHECK(fidelity(d) <= d.intrinsic_if + 1e-12);
        if (d.additional_af == 0.0 && d.missing_mf == 0.0) {
            CHECK(fidelity(d) == doctest::Approx(d.intrinsic_if));
        }
    }
}

TEST_CASE("fitness formulas on a fixed decomposition") {
    FitnessDecomposition d;
    d.intrinsic_if = 0.6;
    d.additional_af = 0.1;
    d.missing_mf = 0.2;
    CHECK(potential_fitness(d) == doctest::Approx(0.9));
    CHECK(realized_fitness(d) == doctest::Approx(-0.1));
    CHECK(fidelity(d) == doctest::Approx(0.3));

    FitnessDecomposition pure;
    pure.intrinsic_if = 0.42;
    CHECK(potential_fitness(pure) == doctest::Approx(0.42));
    CHECK(realized_fitness(pure) == doctest::Approx(0.0));
    CHECK(fidelity(pure) == doctest::Approx(0.42));
}

TEST_CASE("fitness_decomposition rejects mismatched domains") {
    PerformanceCurve narrow;
    narrow.domain_end = 0.5;
    narrow.segments.push_back({0.0, 0.5, 1.0});
    CHECK_THROWS_AS(fitness_decomposition(constant_curve(1.0), narrow), std::invalid_argument);
}

TEST_CASE("performance_curve is constant 1 for perfect agents on covered tasks") {
    const Standard standard = make_standard(12, 5);
    const Implementation a = exact_implementation(standard, 0);
    const Implementation b = exact_implementation(standard, 1);
    Rng rng(6);
    TaskPopulation population;
    population.universe_size = 12;
    for (int i = 0; i < 20; ++i) population.templates.push_back(random_task(12, 1, 6, rng));

    // With one bin the curve is constant 1.0; with more bins every task sits
    // in the top bin (marker 1.0) and empty bins carry probability 0.
    const PerformanceCurve whole = performance_curve(a, b, population, standard, 1);
    CHECK(whole.segments.size() == 1);
    CHECK(whole.segments[0].probability == doctest::Approx(1.0));
    CHECK(whole.area() == doctest::Approx(1.0));

    const PerformanceCurve curve = performance_curve(a, b, population, standard, 4);
    CHECK(curve.segments.back().probability == doctest::Approx(1.0));
    CHECK(curve.area() == doctest::Approx(0.25));
}

TEST_CASE("performance_curve is constant 0 for agents sharing nothing") {
    const Standard standard = make_standard(12, 5);
    Implementation a = exact_implementation(standard, 0);
    Implementation b;
    b.agent_id = 1;  // empty model: every task fails with marker 0
    Rng rng(6);
    TaskPopulation population;
    population.universe_size = 12;
    for (int i = 0; i < 10; ++i) population.templates.push_back(random_task(12, 1, 4, rng));

    const PerformanceCurve curve = performance_curve(a, b, population, standard, 5);
    for (const CurveSegment& seg : curve.segments) {
        CHECK(seg.probability == doctest::Approx(0.0));
    }
}

TEST_CASE("performance_curve bins match a brute-force recount") {
    const Standard standard = make_standard(14, 21);
    Rng rng(44);
    const Implementation a = random_implementation(standard, 0, rng);
    const Implementation b = random_implementation(standard, 1, rng);
    TaskPopulation population;
    population.universe_size = 14;
    for (int i = 0; i < 60; ++i) population.templates.push_back(random_task(14, 1, 6, rng));

    const std::uint32_t bins = 5;
    const PerformanceCurve curve = performance_curve(a, b, population, standard, bins);

    for (std::uint32_t bin = 0; bin < bins; ++bin) {
        std::uint64_t attempts = 0;
        std::uint64_t wins = 0;
        for (const Task& task : population.templates) {
            const double marker = technomarker_core_coverage(task, a, b, standard);
            auto slot = static_cast<std::uint32_t>(marker * bins);
            if (slot >= bins) slot = bins - 1;
            if (slot != bin) continue;
            ++attempts;
            if (evaluate_interop(a, b, task).success) ++wins;
        }
        const double expect =
            attempts == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(attempts);
        CHECK(curve.segments[bin].probability == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("performance_curve validates its inputs") {
    const Standard standard = make_standard(4, 5);
    const Implementation a = exact_implementation(standard, 0);
    TaskPopulation empty;
    CHECK_THROWS_AS(performance_curve(a, a, empty, standard, 4), std::invalid_argument);
    TaskPopulation one;
    Task t;
    t.required = {0};
    one.templates.push_back(t);
    CHECK_THROWS_AS(performance_curve(a, a, one, standard, 0), std::invalid_argument);
}

TEST_CASE("expected_utility multiplies value and probability") {
    CHECK(expected_utility(10.0, 0.8) == doctest::Approx(8.0));
    CHECK(expected_utility(123.0, 0.0) == doctest::Approx(0.0));
    CHECK(expected_utility(123.0, 1.0) == doctest::Approx(123.0));
    CHECK_THROWS_AS(expected_utility(1.0, 1.2), std::invalid_argument);
    CHECK_THROWS_AS(expected_utility(1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(expected_utility(-1.0, 0.5), std::invalid_argument);
}

}  // TEST_SUITE
