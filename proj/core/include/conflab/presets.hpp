#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conflab/engine.hpp"

namespace conflab::presets {

// Frozen scenario presets used by the experiment suites. The three regime
// presets differ in task stability and homogeneity; each carries the
// strategy its regime predicts to be cheapest. All share one cost vector so
// the comparison is about the world, not the prices.

ScenarioConfig stable_homogeneous();      // predicts universal conformance
ScenarioConfig intermediate();            // predicts mediation services
ScenarioConfig dynamic_heterogeneous();   // predicts localized conformance

// Preset for the shared-fraction cost sweep; its sweep over 0.0..1.0 has an
// interior cost minimum.
ScenarioConfig mediated_centre();

std::vector<std::pair<std::string, ScenarioConfig>> regime_presets();

}  // namespace conflab::presets
