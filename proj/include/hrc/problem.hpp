#ifndef HRC_PROBLEM_HPP
#define HRC_PROBLEM_HPP

#include <vector>

#include "hrc/cost.hpp"
#include "hrc/world.hpp"

namespace hrc {

/// Single-agent action sequence with its cost under the owning problem's
/// cost model. Plans are immutable after construction.
struct Plan {
    AgentId owner = AgentId::Human;
    std::vector<PrimitiveAction> steps;
    ExtendedCost total_cost;
};

enum class JointProvenance { Centralized, Responsive };

/// Synchronized two-agent step sequence. A responsive trace that was cut
/// short by the risk executive carries failed = true; its steps then do not
/// reach the goal.
struct JointPlan {
    std::vector<JointStep> steps;
    ExtendedCost total_cost;
    JointProvenance provenance = JointProvenance::Centralized;
    bool failed = false;
};

struct Problem {
    Inventory inventory;
    WorldState initial_state;
    GoalSpec goal;
    CostModel cost_model;

    void validate() const;
};

ExtendedCost cost_of_plan(const Plan& plan, const CostModel& model);
ExtendedCost cost_of_plan(const JointPlan& plan, const CostModel& model);

}  // namespace hrc

#endif
