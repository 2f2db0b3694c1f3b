#include "hrc/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace hrc {

namespace {

constexpr double kCostEps = 1e-9;

std::string goal_key(const GoalSpec& goal) {
    std::string key = goal.dish_name;
    key.push_back('\x01');
    for (ItemId it : goal.required_stack) key.push_back(static_cast<char>(it + 2));
    return key;
}

std::string action_key(const PrimitiveAction& a) {
    std::string key;
    key.push_back(static_cast<char>(a.kind));
    key.push_back(static_cast<char>(a.item));
    key.push_back(static_cast<char>(a.target.kind));
    key.push_back(static_cast<char>(a.target.top_item));
    return key;
}

}  // namespace

Belief Belief::uniform(std::vector<GoalSpec> goals, double beta) {
    std::vector<GoalHypothesis> hyps;
    hyps.reserve(goals.size());
    const double p = goals.empty() ? 0.0 : 1.0 / static_cast<double>(goals.size());
    for (auto& g : goals) hyps.push_back({std::move(g), p, p});
    return with_priors(std::move(hyps), beta);
}

Belief Belief::with_priors(std::vector<GoalHypothesis> hypotheses, double beta) {
    if (hypotheses.empty()) {
        throw std::invalid_argument("belief needs at least one goal hypothesis");
    }
    double total = 0.0;
    for (const auto& h : hypotheses) {
        if (h.prior < 0.0 || std::isnan(h.prior)) {
            throw std::invalid_argument("goal priors must be >= 0");
        }
        total += h.prior;
    }
    if (total <= 0.0) throw std::invalid_argument("goal priors must not all be zero");
    std::sort(hypotheses.begin(), hypotheses.end(),
              [](const GoalHypothesis& a, const GoalHypothesis& b) {
                  return a.goal.dish_name < b.goal.dish_name;
              });
    Belief b;
    b.beta = beta;
    b.hypotheses = std::move(hypotheses);
    for (auto& h : b.hypotheses) {
        h.prior /= total;
        h.posterior = h.prior;
    }
    return b;
}

const GoalSpec& Belief::inferred_goal() const {
    if (hypotheses.empty()) throw RecognitionFailure("belief holds no hypotheses");
    const GoalHypothesis* best = &hypotheses.front();
    for (const auto& h : hypotheses) {
        if (h.posterior > best->posterior) best = &h;  // name order breaks ties
    }
    return best->goal;
}

double Belief::posterior_of(const std::string& dish_name) const {
    for (const auto& h : hypotheses) {
        if (h.goal.dish_name == dish_name) return h.posterior;
    }
    throw std::invalid_argument("no hypothesis for dish: " + dish_name);
}

struct InteractionEngine::Impl {
    Inventory inventory;
    WorldState initial;
    CostModel model;

    std::unordered_map<std::string, std::optional<Plan>> solo_plans;
    std::unordered_map<std::string, std::optional<JointPlan>> joint_plans;
    std::unordered_map<std::string, bool> consistency;

    Problem problem_at(const WorldState& state, const GoalSpec& goal) const {
        return Problem{inventory, state, goal, model};
    }

    const std::optional<Plan>& solo(const WorldState& state, const GoalSpec& goal) {
        std::string key = goal_key(goal);
        key.push_back('\x02');
        key += state.canonical_key();
        auto it = solo_plans.find(key);
        if (it == solo_plans.end()) {
            it = solo_plans.emplace(std::move(key), plan_single(problem_at(state, goal),
                                                                AgentId::Human))
                     .first;
        }
        return it->second;
    }

    const std::optional<JointPlan>& joint(const WorldState& state, const GoalSpec& goal) {
        std::string key = goal_key(goal);
        key.push_back('\x02');
        key += state.canonical_key();
        auto it = joint_plans.find(key);
        if (it == joint_plans.end()) {
            it = joint_plans.emplace(std::move(key), plan_joint(problem_at(state, goal))).first;
        }
        return it->second;
    }

    // One joint step's contribution to the team cost under the model.
    double step_cost(const JointStep& step) const {
        switch (model.mode) {
            case CostMode::StepCount:
                return 1.0;
            case CostMode::WeightedActions:
                return model.weight_for(step.human_action.kind) +
                       model.weight_for(step.robot_action.kind);
            case CostMode::HumanOnly:
                return model.weight_for(step.human_action.kind);
        }
        throw std::logic_error("unknown cost mode");
    }
};

InteractionEngine::InteractionEngine(Inventory inventory, WorldState initial_state,
                                     CostModel cost_model)
    : impl_(std::make_unique<Impl>()) {
    impl_->inventory = std::move(inventory);
    impl_->initial = std::move(initial_state);
    impl_->model = std::move(cost_model);
    check_state_invariants(impl_->initial, impl_->inventory.size());
}

InteractionEngine::~InteractionEngine() = default;
InteractionEngine::InteractionEngine(InteractionEngine&&) noexcept = default;

const WorldState& InteractionEngine::initial_state() const { return impl_->initial; }

ExtendedCost InteractionEngine::solo_cost(const WorldState& state, const GoalSpec& goal) {
    const auto& plan = impl_->solo(state, goal);
    return plan ? plan->total_cost : ExtendedCost::infinite();
}

ExtendedCost InteractionEngine::joint_cost(const WorldState& state, const GoalSpec& goal) {
    const auto& plan = impl_->joint(state, goal);
    return plan ? plan->total_cost : ExtendedCost::infinite();
}

std::optional<Plan> InteractionEngine::solo_completion(const WorldState& state,
                                                       const GoalSpec& goal) {
    return impl_->solo(state, goal);
}

std::optional<JointPlan> InteractionEngine::joint_completion(const WorldState& state,
                                                             const GoalSpec& goal) {
    return impl_->joint(state, goal);
}

bool InteractionEngine::robot_action_consistent(const WorldState& state, const GoalSpec& goal,
                                                const PrimitiveAction& action) {
    if (action.is_noop()) return true;  // waiting never commits the team to anything
    std::string key = goal_key(goal);
    key.push_back('\x02');
    key += state.canonical_key();
    key.push_back('\x03');
    key += action_key(action);
    auto it = impl_->consistency.find(key);
    if (it != impl_->consistency.end()) return it->second;

    bool ok = false;
    ExtendedCost here = joint_cost(state, goal);
    if (here.is_finite() && here.value() > 0.0) {
        // The action is consistent iff some legal joint step containing it
        // stays on an optimal completion of the goal.
        for (const auto& human_action : legal_actions(state, AgentId::Human)) {
            JointStep step{human_action, action};
            if (!joint_legal(state, step)) continue;
            WorldState next = apply_joint(state, step);
            ExtendedCost after = joint_cost(next, goal);
            if (after.is_infinite()) continue;
            if (impl_->step_cost(step) + after.value() <= here.value() + kCostEps) {
                ok = true;
                break;
            }
        }
    }
    impl_->consistency.emplace(std::move(key), ok);
    return ok;
}

Belief InteractionEngine::goal_posterior(const ObservationLog& log, const Belief& belief,
                                         const WorldState& current_state) {
    int observed_steps = 0;
    for (const auto& ev : log.events) {
        if (ev.actor == AgentId::Human) ++observed_steps;
    }
    WorldState human_view = solo_projection(current_state);

    Belief out = belief;
    double total = 0.0;
    std::vector<double> weights(out.hypotheses.size(), 0.0);
    for (std::size_t i = 0; i < out.hypotheses.size(); ++i) {
        const auto& hyp = out.hypotheses[i];
        if (hyp.prior <= 0.0) continue;
        ExtendedCost optimum = solo_cost(impl_->initial, hyp.goal);
        ExtendedCost completion = solo_cost(human_view, hyp.goal);
        if (optimum.is_infinite() || completion.is_infinite()) continue;
        double consistent = static_cast<double>(observed_steps) + completion.value();
        weights[i] = hyp.prior * std::exp(-belief.beta * (consistent - optimum.value()));
        total += weights[i];
    }
    if (total <= 0.0) {
        throw RecognitionFailure("no goal hypothesis is consistent with the observations");
    }
    for (std::size_t i = 0; i < out.hypotheses.size(); ++i) {
        out.hypotheses[i].posterior = weights[i] / total;
    }
    return out;
}

PrimitiveAction InteractionEngine::responsive_step(const WorldState& state, const Belief& belief,
                                                   int steps_taken, int observe_budget,
                                                   bool* no_completion) {
    if (no_completion) *no_completion = false;
    // The initial state is the first observation, so the robot sits out
    // joint steps 1..budget-1 and engages from step `budget` on.
    if (steps_taken + 1 < observe_budget) return PrimitiveAction::noop(AgentId::Robot);
    const GoalSpec& inferred = belief.inferred_goal();
    const auto& plan = impl_->joint(state, inferred);
    if (!plan || plan->steps.empty()) {
        if (no_completion && !plan) *no_completion = true;
        return PrimitiveAction::noop(AgentId::Robot);
    }
    if (!plan->steps.front().robot_action.is_noop()) {
        return plan->steps.front().robot_action;
    }
    // The cached plan happens to schedule the robot's idle slack first; any
    // action opening some other optimal completion engages the robot sooner.
    for (const auto& action : legal_actions(state, AgentId::Robot)) {
        if (!action.is_noop() && robot_action_consistent(state, inferred, action)) {
            return action;
        }
    }
    return PrimitiveAction::noop(AgentId::Robot);
}

PrimitiveAction InteractionEngine::risk_bounded_step(const WorldState& state,
                                                     const Belief& belief,
                                                     const RiskConfig& config, int steps_taken,
                                                     int observe_budget) {
    PrimitiveAction intended = responsive_step(state, belief, steps_taken, observe_budget);
    if (intended.is_noop()) return intended;
    double inconsistent_mass = 0.0;
    for (const auto& hyp : belief.hypotheses) {
        if (hyp.posterior <= 0.0) continue;
        if (!robot_action_consistent(state, hyp.goal, intended)) {
            inconsistent_mass += hyp.posterior;
        }
    }
    if (inconsistent_mass <= config.delta + kCostEps) return intended;
    return PrimitiveAction::noop(AgentId::Robot);
}

RobotPolicy make_responsive_robot(int observe_budget) {
    return [observe_budget](InteractionEngine& engine, const StepContext& ctx) {
        return engine.responsive_step(ctx.state, ctx.belief, ctx.steps_taken, observe_budget);
    };
}

RobotPolicy make_risk_bounded_robot(RiskConfig config, int observe_budget) {
    return [config, observe_budget](InteractionEngine& engine, const StepContext& ctx) {
        return engine.risk_bounded_step(ctx.state, ctx.belief, config, ctx.steps_taken,
                                        observe_budget);
    };
}

RobotPolicy make_noop_robot() {
    return [](InteractionEngine&, const StepContext&) {
        return PrimitiveAction::noop(AgentId::Robot);
    };
}

HumanPolicy make_default_human() {
    return [](InteractionEngine& engine, const GoalSpec& true_goal, const StepContext& ctx) {
        bool robot_active = false;  // robot acted in the immediately preceding step
        for (auto it = ctx.log.events.rbegin(); it != ctx.log.events.rend(); ++it) {
            if (it->actor == AgentId::Robot) {
                robot_active = !it->action.is_noop();
                break;
            }
        }
        if (robot_active) {
            const auto plan = engine.joint_completion(ctx.state, true_goal);
            if (plan && !plan->steps.empty()) return plan->steps.front().human_action;
        }
        const auto solo = engine.solo_completion(ctx.state, true_goal);
        if (solo && !solo->steps.empty()) return solo->steps.front();
        // The robot may hold an item the human needs; fall in with the team plan.
        const auto plan = engine.joint_completion(ctx.state, true_goal);
        if (plan && !plan->steps.empty()) return plan->steps.front().human_action;
        return PrimitiveAction::noop(AgentId::Human);
    };
}

EpisodeTrace simulate_episode(const Problem& problem, const GoalSpec& true_goal,
                              const Belief& prior_belief, const HumanPolicy& human_policy,
                              const RobotPolicy& robot_policy, const EpisodeConfig& config,
                              InteractionEngine* shared_engine) {
    std::optional<InteractionEngine> local;
    if (!shared_engine) {
        local.emplace(problem.inventory, problem.initial_state, problem.cost_model);
    }
    InteractionEngine& engine = shared_engine ? *shared_engine : *local;

    EpisodeTrace ep;
    ep.true_goal = true_goal;
    ep.trace.provenance = JointProvenance::Responsive;

    ExtendedCost solo_total = engine.solo_cost(problem.initial_state, true_goal);
    ExtendedCost joint_total = engine.joint_cost(problem.initial_state, true_goal);
    const long cap = solo_total.is_finite()
                         ? std::max(1L, config.step_cap_factor *
                                            static_cast<long>(solo_total.value()))
                         : 64L;

    WorldState state = problem.initial_state;
    Belief belief = prior_belief;
    belief.beta = config.beta;
    ObservationLog log;
    int steps = 0;
    bool engaged = false;

    while (!goal_satisfied(state, true_goal)) {
        if (steps >= cap) {
            ep.timed_out = true;
            break;
        }

        MetricSnapshot snap;
        snap.step = steps + 1;
        snap.remaining_solo = engine.solo_cost(solo_projection(state), true_goal);
        snap.remaining_team = engaged ? engine.joint_cost(state, true_goal) : snap.remaining_solo;
        ExtendedCost projected = ExtendedCost(static_cast<double>(steps)) + snap.remaining_team;
        snap.H = helpfulness(solo_total, projected);
        if (snap.H && std::isfinite(*snap.H)) {
            snap.H_N = normalized_helpfulness(*snap.H, solo_total, joint_total);
        }
        snap.H_R = relative_helpfulness(solo_total, projected);
        ep.snapshots.push_back(snap);

        StepContext ctx{state, belief, log, steps, engaged};
        JointStep step{human_policy(engine, true_goal, ctx), robot_policy(engine, ctx)};
        if (!joint_legal(state, step)) {
            step.robot_action = PrimitiveAction::noop(AgentId::Robot);  // robot yields
        }

        bool consistent = step.robot_action.is_noop() ||
                          engine.robot_action_consistent(state, true_goal, step.robot_action);
        state = apply_joint(state, step);
        ep.trace.steps.push_back(step);
        ++steps;
        if (!step.robot_action.is_noop()) engaged = true;
        log.events.push_back({steps, AgentId::Human, step.human_action});
        log.events.push_back({steps, AgentId::Robot, step.robot_action});

        if (!consistent) {
            ep.wrong_commitment = true;
            if (config.failure_policy == FailurePolicy::HaltOnFailure) {
                ep.failed = true;
                break;
            }
        }
        belief = engine.goal_posterior(log, belief, state);
    }

    ep.trace.failed = ep.failed;
    ep.trace.total_cost = cost_of_plan(ep.trace, problem.cost_model);

    if (!ep.failed && !ep.timed_out) {
        ep.cost_team = ep.trace.total_cost;
    } else {
        // The human finishes alone from wherever execution stopped.
        ExtendedCost finish = engine.solo_cost(solo_projection(state), true_goal);
        ep.cost_team = finish.is_finite() ? ep.trace.total_cost + finish
                                          : ExtendedCost::infinite();
    }
    ep.final_report = report_from_costs(solo_total, ep.cost_team, joint_total, solo_total);
    return ep;
}

SweepResult risk_sweep(const Problem& problem, const Belief& prior_belief,
                       const std::vector<double>& deltas, int trials_per_delta,
                       std::uint64_t seed, const EpisodeConfig& config) {
    if (trials_per_delta <= 0) throw std::invalid_argument("trials_per_delta must be positive");
    SweepResult out;
    InteractionEngine engine(problem.inventory, problem.initial_state, problem.cost_model);
    HumanPolicy human = make_default_human();

    // The true-goal sequence depends only on the base seed and trial index,
    // so every delta sees the same sequence of tasks.
    std::vector<const GoalSpec*> trial_goals;
    trial_goals.reserve(static_cast<std::size_t>(trials_per_delta));
    for (int trial = 0; trial < trials_per_delta; ++trial) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double acc = 0.0;
        const GoalSpec* chosen = &prior_belief.hypotheses.back().goal;
        for (const auto& hyp : prior_belief.hypotheses) {
            acc += hyp.prior;
            if (u < acc) {
                chosen = &hyp.goal;
                break;
            }
        }
        trial_goals.push_back(chosen);
    }

    for (double delta : deltas) {
        RiskConfig rc{delta, config.failure_policy};
        RobotPolicy robot = make_risk_bounded_robot(rc, config.observe_budget);
        double sum = 0.0;
        double sum_sq = 0.0;
        int defined = 0;
        int failures = 0;
        for (int trial = 0; trial < trials_per_delta; ++trial) {
            const GoalSpec& goal = *trial_goals[static_cast<std::size_t>(trial)];
            EpisodeTrace ep = simulate_episode(problem, goal, prior_belief, human, robot,
                                               config, &engine);
            SweepRow row;
            row.delta = delta;
            row.trial = trial;
            row.true_goal = goal.dish_name;
            row.steps = static_cast<int>(ep.trace.steps.size());
            row.failed = ep.failed;
            row.H = ep.final_report.H;
            row.H_N = ep.final_report.H_N;
            row.H_R = ep.final_report.H_R;
            out.rows.push_back(std::move(row));
            if (ep.failed) ++failures;
            if (ep.final_report.H_R && std::isfinite(*ep.final_report.H_R)) {
                sum += *ep.final_report.H_R;
                sum_sq += *ep.final_report.H_R * *ep.final_report.H_R;
                ++defined;
            }
        }
        SweepAggregate agg;
        agg.delta = delta;
        if (defined > 0) {
            agg.mean_HR = sum / defined;
            agg.std_HR = std::sqrt(std::max(0.0, sum_sq / defined - agg.mean_HR * agg.mean_HR));
        }
        agg.failure_rate = static_cast<double>(failures) / trials_per_delta;
        out.aggregates.push_back(agg);
    }
    return out;
}

}  // namespace hrc
