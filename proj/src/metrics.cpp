#include "hrc/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace hrc {

std::optional<double> helpfulness(ExtendedCost cost_solo, ExtendedCost cost_team) {
    return signed_difference(cost_solo, cost_team);
}

std::optional<double> relative_helpfulness(ExtendedCost cost_solo_optimal,
                                           ExtendedCost cost_team) {
    if (cost_solo_optimal.is_infinite() || cost_solo_optimal.value() <= 0.0) {
        return std::nullopt;
    }
    if (cost_team.is_infinite()) return -std::numeric_limits<double>::infinity();
    return (cost_solo_optimal.value() - cost_team.value()) / cost_solo_optimal.value();
}

std::optional<double> normalized_helpfulness(double H, ExtendedCost cost_solo,
                                             ExtendedCost cost_best_team) {
    if (cost_solo.is_infinite()) return std::nullopt;
    auto denom = signed_difference(cost_solo, cost_best_team);
    if (!denom || *denom <= 0.0 || std::isinf(*denom)) return std::nullopt;
    return H / *denom;
}

ExpectedHelpfulness expected_helpfulness(const PlanDistribution& dist,
                                         ExtendedCost cost_solo_optimal) {
    double total_p = 0.0;
    double mean = 0.0;
    double second = 0.0;
    for (const auto& entry : dist.entries) {
        if (entry.probability < 0.0) throw std::invalid_argument("negative plan probability");
        auto hr = relative_helpfulness(cost_solo_optimal, entry.cost_team);
        if (!hr) throw std::invalid_argument("plan distribution entry has undefined H_R");
        total_p += entry.probability;
        mean += *hr * entry.probability;
        second += *hr * *hr * entry.probability;
    }
    if (std::fabs(total_p - 1.0) > 1e-9) {
        throw std::invalid_argument("plan probabilities must sum to 1");
    }
    double var = second - mean * mean;
    return {mean, std::sqrt(std::max(0.0, var))};
}

HelpfulnessReport report_from_costs(ExtendedCost cost_solo, ExtendedCost cost_team,
                                    ExtendedCost cost_best_team,
                                    ExtendedCost cost_solo_optimal) {
    HelpfulnessReport r;
    r.cost_solo = cost_solo;
    r.cost_team = cost_team;
    r.cost_best_team = cost_best_team;
    r.cost_solo_optimal = cost_solo_optimal;
    r.H = helpfulness(cost_solo, cost_team);
    if (r.H && std::isfinite(*r.H)) {
        r.H_N = normalized_helpfulness(*r.H, cost_solo, cost_best_team);
    }
    r.H_R = relative_helpfulness(cost_solo_optimal, cost_team);
    return r;
}

HelpfulnessReport report(const Problem& problem, const JointPlan& team_trace) {
    auto solo = plan_single(problem, AgentId::Human);
    auto joint = plan_joint(problem);
    ExtendedCost cost_solo = solo ? solo->total_cost : ExtendedCost::infinite();
    ExtendedCost cost_best = joint ? joint->total_cost : ExtendedCost::infinite();

    ExtendedCost cost_team = team_trace.total_cost;
    if (team_trace.failed) {
        // The human finishes alone from wherever execution stopped, paying
        // for any backtracking the robot caused.
        WorldState state = problem.initial_state;
        for (const auto& step : team_trace.steps) state = apply_joint(state, step);
        Problem completion = problem;
        completion.initial_state = solo_projection(state);
        auto finish = plan_single(completion, AgentId::Human);
        if (!finish) {
            cost_team = ExtendedCost::infinite();
        } else {
            cost_team = cost_of_plan(team_trace, problem.cost_model) + finish->total_cost;
        }
    }
    return report_from_costs(cost_solo, cost_team, cost_best, cost_solo);
}

}  // namespace hrc
