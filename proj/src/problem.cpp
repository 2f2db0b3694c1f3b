#include "hrc/problem.hpp"

#include <algorithm>
#include <stdexcept>

namespace hrc {

void Problem::validate() const {
    cost_model.validate();
    check_state_invariants(initial_state, inventory.size());
    for (ItemId it : goal.required_stack) {
        if (it >= inventory.size()) {
            throw std::invalid_argument("goal references item missing from the problem");
        }
    }
}

ExtendedCost cost_of_plan(const Plan& plan, const CostModel& model) {
    switch (model.mode) {
        case CostMode::StepCount:
            return ExtendedCost(static_cast<double>(plan.steps.size()));
        case CostMode::WeightedActions: {
            double total = 0.0;
            for (const auto& a : plan.steps) total += model.weight_for(a.kind);
            return ExtendedCost(total);
        }
        case CostMode::HumanOnly: {
            double total = 0.0;
            for (const auto& a : plan.steps) {
                if (a.actor == AgentId::Human) total += model.weight_for(a.kind);
            }
            return ExtendedCost(total);
        }
    }
    throw std::logic_error("unknown cost mode");
}

ExtendedCost cost_of_plan(const JointPlan& plan, const CostModel& model) {
    switch (model.mode) {
        case CostMode::StepCount:
            return ExtendedCost(static_cast<double>(plan.steps.size()));
        case CostMode::WeightedActions: {
            double total = 0.0;
            for (const auto& st : plan.steps) {
                total += model.weight_for(st.human_action.kind);
                total += model.weight_for(st.robot_action.kind);
            }
            return ExtendedCost(total);
        }
        case CostMode::HumanOnly: {
            double total = 0.0;
            for (const auto& st : plan.steps) {
                total += model.weight_for(st.human_action.kind);
            }
            return ExtendedCost(total);
        }
    }
    throw std::logic_error("unknown cost mode");
}

}  // namespace hrc
