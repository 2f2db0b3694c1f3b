#ifndef HRC_INTERACTION_HPP
#define HRC_INTERACTION_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hrc/metrics.hpp"
#include "hrc/planner.hpp"
#include "hrc/problem.hpp"

namespace hrc {

struct Observation {
    int time_step = 0;
    AgentId actor = AgentId::Human;
    PrimitiveAction action;
};

struct ObservationLog {
    std::vector<Observation> events;
};

struct GoalHypothesis {
    GoalSpec goal;
    double prior = 0.0;
    double posterior = 0.0;
};

/// Posterior over goal hypotheses. Hypotheses are kept sorted by dish name
/// so the argmax tie-break is deterministic.
struct Belief {
    std::vector<GoalHypothesis> hypotheses;
    double beta = 1.0;  // recognition sharpness

    static Belief uniform(std::vector<GoalSpec> goals, double beta);
    static Belief with_priors(std::vector<GoalHypothesis> hypotheses, double beta);

    const GoalSpec& inferred_goal() const;
    double posterior_of(const std::string& dish_name) const;
};

/// No consistent hypothesis remains; callers surface this as a distinct
/// outcome rather than guessing.
class RecognitionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FailurePolicy { HaltOnFailure, ContinueAfterFailure };

struct RiskConfig {
    double delta = 1.0;  // acceptable probability of team failure, in [0,1]
    FailurePolicy failure_policy = FailurePolicy::HaltOnFailure;
};

/// Metrics snapshot taken at the start of each time step, before the step
/// executes. Costs project the episode total as: steps elapsed + optimal
/// remaining team cost (solo remaining while the robot has not yet acted).
struct MetricSnapshot {
    int step = 0;
    ExtendedCost remaining_solo;
    ExtendedCost remaining_team;
    std::optional<double> H;
    std::optional<double> H_N;
    std::optional<double> H_R;
};

struct EpisodeTrace {
    JointPlan trace;  // provenance Responsive; failed mirrors the flag below
    std::vector<MetricSnapshot> snapshots;
    bool failed = false;            // halted on a wrong commitment
    bool wrong_commitment = false;  // some robot action was off every optimal completion
    bool timed_out = false;
    bool robot_stuck = false;  // responsive robot found no joint completion
    GoalSpec true_goal;
    ExtendedCost cost_team;  // realized cost, including the human's solo finish after a halt
    HelpfulnessReport final_report;
};

/// Shared planning services for decentralized execution: memoized solo and
/// joint completion costs per (state, goal), recognition, and the
/// responsive / risk-bounded robot action choices.
class InteractionEngine {
public:
    InteractionEngine(Inventory inventory, WorldState initial_state,
                      CostModel cost_model = CostModel::step_count());
    ~InteractionEngine();
    InteractionEngine(InteractionEngine&&) noexcept;

    const WorldState& initial_state() const;

    ExtendedCost solo_cost(const WorldState& state, const GoalSpec& goal);
    ExtendedCost joint_cost(const WorldState& state, const GoalSpec& goal);
    std::optional<JointPlan> joint_completion(const WorldState& state, const GoalSpec& goal);
    std::optional<Plan> solo_completion(const WorldState& state, const GoalSpec& goal);

    /// True iff the action begins some optimal joint completion of `goal`
    /// from `state`. No-ops are always consistent.
    bool robot_action_consistent(const WorldState& state, const GoalSpec& goal,
                                 const PrimitiveAction& action);

    /// Boltzmann recognition over cost differences: posterior(G) is
    /// proportional to prior(G) * exp(-beta * (consistent-cost - optimum)).
    /// Throws RecognitionFailure when every hypothesis has likelihood zero.
    Belief goal_posterior(const ObservationLog& log, const Belief& belief,
                          const WorldState& current_state);

    /// PReTCIL-style responsive choice: observe first, then take the first
    /// robot action of an optimal joint completion for the inferred goal.
    /// The initial state counts as the first observation, so with budget B
    /// the robot sits out steps 1..B-1.
    PrimitiveAction responsive_step(const WorldState& state, const Belief& belief,
                                    int steps_taken, int observe_budget,
                                    bool* no_completion = nullptr);

    /// Responsive choice gated by commitment risk: act only when the
    /// posterior mass of hypotheses inconsistent with the action is within
    /// the risk bound.
    PrimitiveAction risk_bounded_step(const WorldState& state, const Belief& belief,
                                      const RiskConfig& config, int steps_taken,
                                      int observe_budget);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct StepContext {
    const WorldState& state;
    const Belief& belief;
    const ObservationLog& log;
    int steps_taken = 0;
    bool robot_engaged = false;  // robot has taken a non-noop action
};

using RobotPolicy = std::function<PrimitiveAction(InteractionEngine&, const StepContext&)>;
using HumanPolicy = std::function<PrimitiveAction(InteractionEngine&, const GoalSpec& true_goal,
                                                  const StepContext&)>;

RobotPolicy make_responsive_robot(int observe_budget);
RobotPolicy make_risk_bounded_robot(RiskConfig config, int observe_budget);
RobotPolicy make_noop_robot();

/// Default human: works toward the true goal; coordinates with the robot's
/// share of the optimal joint completion once the robot has started acting,
/// plans solo otherwise.
HumanPolicy make_default_human();

struct EpisodeConfig {
    int observe_budget = 2;
    double beta = 1.0;
    FailurePolicy failure_policy = FailurePolicy::HaltOnFailure;
    int step_cap_factor = 4;  // cap = factor * optimal solo cost
};

EpisodeTrace simulate_episode(const Problem& problem, const GoalSpec& true_goal,
                              const Belief& prior_belief, const HumanPolicy& human_policy,
                              const RobotPolicy& robot_policy, const EpisodeConfig& config,
                              InteractionEngine* shared_engine = nullptr);

struct SweepRow {
    double delta = 0.0;
    int trial = 0;
    std::string true_goal;
    int steps = 0;
    bool failed = false;
    std::optional<double> H;
    std::optional<double> H_N;
    std::optional<double> H_R;
};

struct SweepAggregate {
    double delta = 0.0;
    double mean_HR = 0.0;
    double std_HR = 0.0;
    double failure_rate = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepAggregate> aggregates;
};

/// Monte Carlo risk sweep: for each delta, sample true goals from the
/// prior (trial seeds derive from `seed` + trial index, so the sequence is
/// reproducible and shared across deltas) and run the risk-bounded robot.
SweepResult risk_sweep(const Problem& problem, const Belief& prior_belief,
                       const std::vector<double>& deltas, int trials_per_delta,
                       std::uint64_t seed, const EpisodeConfig& config);

}  // namespace hrc

#endif
