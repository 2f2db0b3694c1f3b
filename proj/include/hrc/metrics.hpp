#ifndef HRC_METRICS_HPP
#define HRC_METRICS_HPP

#include <optional>
#include <vector>

#include "hrc/planner.hpp"
#include "hrc/problem.hpp"

namespace hrc {

/// All inputs and outputs of one helpfulness evaluation. Metrics that have
/// no defined value stay nullopt; UNDEFINED is never coerced to 0 so that
/// "cannot help" stays distinguishable from "did not help".
struct HelpfulnessReport {
    ExtendedCost cost_solo;          // cost of the human's (observed or optimal) solo plan
    ExtendedCost cost_team;          // realized team cost (joint plan or responsive trace)
    ExtendedCost cost_best_team;     // optimal centralized team cost
    ExtendedCost cost_solo_optimal;  // optimal solo cost
    std::optional<double> H;         // may be +/-inf
    std::optional<double> H_N;
    std::optional<double> H_R;       // may be -inf
};

/// Definition of helpfulness: cost(solo) - cost(team). Undefined when both
/// costs are infinite.
std::optional<double> helpfulness(ExtendedCost cost_solo, ExtendedCost cost_team);

/// Fraction of the human's optimal solo effort the team eliminated.
/// Requires a positive finite solo optimum; -inf when the team cannot
/// finish at all.
std::optional<double> relative_helpfulness(ExtendedCost cost_solo_optimal,
                                           ExtendedCost cost_team);

/// H scaled by the best cost reduction any team plan could achieve;
/// optimal team plans score exactly 1. Undefined when the robot cannot
/// improve on the solo cost at all.
std::optional<double> normalized_helpfulness(double H, ExtendedCost cost_solo,
                                             ExtendedCost cost_best_team);

/// Team plan with its probability under the robot's belief.
struct WeightedPlan {
    ExtendedCost cost_team;
    double probability = 0.0;
};

struct PlanDistribution {
    std::vector<WeightedPlan> entries;
};

struct ExpectedHelpfulness {
    double mean = 0.0;
    double stddev = 0.0;
};

/// E[H_R] and its standard deviation over a plan distribution. Every entry
/// must have a defined H_R; probabilities must sum to 1.
ExpectedHelpfulness expected_helpfulness(const PlanDistribution& dist,
                                         ExtendedCost cost_solo_optimal);

/// Full evaluation of a realized team trace against the optimal solo and
/// centralized baselines for the problem.
HelpfulnessReport report(const Problem& problem, const JointPlan& team_trace);

/// Same, with the baselines supplied by the caller (the planners can be
/// expensive; episode code already has them).
HelpfulnessReport report_from_costs(ExtendedCost cost_solo, ExtendedCost cost_team,
                                    ExtendedCost cost_best_team,
                                    ExtendedCost cost_solo_optimal);

}  // namespace hrc

#endif
