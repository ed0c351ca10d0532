#pragma once

#include <map>

namespace conflab {

// Unit prices for every kind of standardization and fitting work.
struct CostParams {
    double c_sync = 0.0;            // per concept synchronized to a standard
    double c_map_discover = 0.0;    // per new adaptor mapping discovered
    double c_map_apply = 0.0;       // per cached mapping applied
    double c_ground_exchange = 0.0; // per grounding example exchanged
    double c_revision = 0.0;        // fixed cost per standard revision
    double c_failure = 0.0;         // per failed task
};

enum class CostCategory {
    Sync,
    Revision,
    MapDiscover,
    MapApply,
    GroundExchange,
    Failure,
};

// Sync and revision work happen ahead of task time; everything else is
// task-time fitting work.
constexpr bool is_ahead_of_time(CostCategory c) {
    return c == CostCategory::Sync || c == CostCategory::Revision;
}

const char* to_string(CostCategory c);

// Additive cost ledger split into ahead-of-time (standardization) and
// task-time (fitting) totals, with a per-category breakdown. The two totals
// always sum to the breakdown sum.
class CostLedger {
public:
    void add(CostCategory category, double amount);
    void merge(const CostLedger& other);

    double ahead_of_time() const { return ahead_of_time_; }
    double task_time() const { return task_time_; }
    double total() const { return ahead_of_time_ + task_time_; }
    double at(CostCategory category) const;
    const std::map<CostCategory, double>& breakdown() const { return breakdown_; }

private:
    double ahead_of_time_ = 0.0;
    double task_time_ = 0.0;
    std::map<CostCategory, double> breakdown_;
};

}  // namespace conflab
