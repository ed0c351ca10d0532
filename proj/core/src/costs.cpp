#include "conflab/costs.hpp"

#include <stdexcept>

namespace conflab {

const char* to_string(CostCategory c) {
    switch (c) {
        case CostCategory::Sync: return "sync";
        case CostCategory::Revision: return "revision";
        case CostCategory::MapDiscover: return "map_discover";
        case CostCategory::MapApply: return "map_apply";
        case CostCategory::GroundExchange: return "ground_exchange";
        case CostCategory::Failure: return "failure";
    }
    return "unknown";
}

void CostLedger::add(CostCategory category, double amount) {
    if (amount < 0.0) throw std::invalid_argument("CostLedger: negative amount");
    if (amount == 0.0) return;
    breakdown_[category] += amount;
    if (is_ahead_of_time(category)) {
        ahead_of_time_ += amount;
    } else {
        task_time_ += amount;
    }
}

void CostLedger::merge(const CostLedger& other) {
    for (const auto& [category, amount] : other.breakdown_) {
        breakdown_[category] += amount;
    }
    ahead_of_time_ += other.ahead_of_time_;
    task_time_ += other.task_time_;
}

double CostLedger::at(CostCategory category) const {
    auto it = breakdown_.find(category);
    return it == breakdown_.end() ? 0.0 : it->second;
}

}  // namespace conflab
