#include "hrc/planner.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace hrc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double as_double(ExtendedCost c) { return c.raw(); }

// Goal items still needing a move: everything past the longest prefix of
// the dish that matches the goal stack.
std::size_t misplaced_count(const WorldState& s, const GoalSpec& goal) {
    std::size_t k = 0;
    while (k < goal.required_stack.size() && k < s.dish.size() &&
           s.dish[k] == goal.required_stack[k]) {
        ++k;
    }
    return goal.required_stack.size() - k;
}

bool holds_needed(const WorldState& s, const GoalSpec& goal, AgentId agent, std::size_t m) {
    const auto& h = s.held_by(agent);
    if (!h) return false;
    std::size_t n = goal.required_stack.size();
    for (std::size_t i = n - m; i < n; ++i) {
        if (goal.required_stack[i] == *h) return true;
    }
    return false;
}

// Lower-bound ingredients shared by the solo and joint heuristics.
struct GoalAnalysis {
    std::size_t m = 0;             // goal items still to be placed
    std::size_t dish_junk = 0;     // dish items above the matched prefix
    std::size_t blockers = 0;      // non-needed items that must be picked off
    bool human_holds_needed = false;
    bool robot_holds_needed = false;
};

GoalAnalysis analyze_goal(const WorldState& s, const GoalSpec& goal) {
    GoalAnalysis out;
    out.m = misplaced_count(s, goal);
    std::size_t lcp = goal.required_stack.size() - out.m;
    out.dish_junk = s.dish.size() > lcp ? s.dish.size() - lcp : 0;

    std::vector<bool> needed(256, false);
    for (std::size_t i = lcp; i < goal.required_stack.size(); ++i) {
        needed[goal.required_stack[i]] = true;
    }
    // Anything above a still-needed item (or stranded on the dish above the
    // matched prefix) needs at least one pick of its own.
    for (std::size_t i = lcp; i < s.dish.size(); ++i) {
        if (!needed[s.dish[i]]) ++out.blockers;
    }
    for (const auto& st : s.stacks) {
        bool needed_below = false;
        for (ItemId it : st) {
            if (needed_below && !needed[it]) ++out.blockers;
            if (needed[it]) needed_below = true;
        }
    }
    out.human_holds_needed = holds_needed(s, goal, AgentId::Human, out.m);
    out.robot_holds_needed = holds_needed(s, goal, AgentId::Robot, out.m);
    return out;
}

double solo_action_cost(const CostModel& model, const PrimitiveAction& a) {
    switch (model.mode) {
        case CostMode::StepCount: return 1.0;
        case CostMode::WeightedActions: return model.weight_for(a.kind);
        case CostMode::HumanOnly:
            return a.actor == AgentId::Human ? model.weight_for(a.kind) : 0.0;
    }
    return 1.0;
}

double joint_step_cost(const CostModel& model, const JointStep& st) {
    switch (model.mode) {
        case CostMode::StepCount: return 1.0;
        case CostMode::WeightedActions:
            return model.weight_for(st.human_action.kind) + model.weight_for(st.robot_action.kind);
        case CostMode::HumanOnly: return model.weight_for(st.human_action.kind);
    }
    return 1.0;
}

struct FrontierEntry {
    PriorityKey key;
    std::size_t node = 0;

    friend bool operator>(const FrontierEntry& a, const FrontierEntry& b) { return b.key < a.key; }
};

using Frontier =
    std::priority_queue<FrontierEntry, std::vector<FrontierEntry>, std::greater<FrontierEntry>>;

}  // namespace

ExtendedCost h_misplaced_solo(const WorldState& s, const GoalSpec& goal, AgentId agent) {
    GoalAnalysis a = analyze_goal(s, goal);
    // Each needed item costs a pick and a place (one saved if already in
    // hand); each blocker costs at least its pick.
    double est = 2.0 * static_cast<double>(a.m) + static_cast<double>(a.blockers);
    bool holds = agent == AgentId::Human ? a.human_holds_needed : a.robot_holds_needed;
    if (holds) est -= 1.0;
    return ExtendedCost(est);
}

ExtendedCost h_misplaced_joint(const WorldState& s, const GoalSpec& goal) {
    GoalAnalysis a = analyze_goal(s, goal);
    double actions = 2.0 * static_cast<double>(a.m) + static_cast<double>(a.blockers);
    if (a.human_holds_needed) actions -= 1.0;
    if (a.robot_holds_needed) actions -= 1.0;
    // Every dish touch (placement or junk removal) needs its own step.
    double dish_touches = static_cast<double>(a.m + a.dish_junk);
    return ExtendedCost(std::max(dish_touches, std::ceil(actions / 2.0)));
}

double helpfulness_heuristic_joint(const WorldState& s, const GoalSpec& goal,
                                   const HeuristicBundle& hb) {
    auto d = signed_difference(hb.h_human(s, goal), hb.h_joint(s, goal));
    return d.value_or(0.0);
}

double helpfulness_heuristic_responsive(const WorldState& s, const GoalSpec& inferred_goal,
                                        const HeuristicBundle& hb) {
    double hh = as_double(hb.h_human(s, inferred_goal));
    double hj = as_double(hb.h_joint(s, inferred_goal));
    if (hb.alpha == 0.0) return hh;  // avoid 0 * inf
    return hh - hb.alpha * hj;
}

PriorityKey search_priority(const SearchState& s, const GoalSpec& goal,
                            const HeuristicBundle& hb, const PriorityMode& mode) {
    double f_cost = s.g_joint + as_double(hb.h_joint(s.world, goal));
    std::string tie = s.world.canonical_key();

    PriorityKind kind = mode.kind == PriorityKind::Lexicographic ? mode.sense : mode.kind;
    if (kind == PriorityKind::CostOnly) {
        return {f_cost, 0.0, std::move(tie)};
    }

    if (!hb.g_human_solver) {
        throw std::logic_error("helpfulness priority requires a solo path-cost solver");
    }
    double g_human = as_double(hb.g_human_solver(s.world));
    double g_help = g_human - s.g_joint;  // g_joint is finite on the frontier
    double h_help = helpfulness_heuristic_joint(s.world, goal, hb);
    double f_help = g_help + h_help;
    if (std::isnan(f_help)) f_help = 0.0;

    switch (kind) {
        case PriorityKind::AssistiveTiebreak:
            return {f_cost, -f_help, std::move(tie)};
        case PriorityKind::IndependentTiebreak:
            return {f_cost, std::fabs(f_help), std::move(tie)};
        case PriorityKind::AdversarialTiebreak:
            return {f_cost, f_help, std::move(tie)};
        case PriorityKind::LinearCombo: {
            double w = mode.weight;
            if (w < 0.0 || w > 1.0) throw std::invalid_argument("linear combo weight outside [0,1]");
            double key = w * f_cost;
            if (w < 1.0) key -= (1.0 - w) * f_help;
            return {key, 0.0, std::move(tie)};
        }
        default:
            throw std::logic_error("unhandled priority kind");
    }
}

// ---------------------------------------------------------------------------
// Solo reachability (g_{A_H}): lazily expanded Dijkstra over human-only moves.
// ---------------------------------------------------------------------------

struct SoloReachability::Impl {
    Problem problem;
    AgentId agent;
    std::unordered_map<std::string, double> finalized;
    std::vector<WorldState> states;
    Frontier open;
    std::unordered_map<std::string, double> best;

    Impl(const Problem& p, AgentId a) : problem(p), agent(a) {
        push(p.initial_state, 0.0);
    }

    void push(const WorldState& w, double g) {
        std::string key = w.canonical_key();
        auto it = best.find(key);
        if (it != best.end() && it->second <= g) return;
        best[key] = g;
        states.push_back(w);
        open.push({{g, 0.0, std::move(key)}, states.size() - 1});
    }

    // Expands until `target_key` is finalized or the space is exhausted.
    ExtendedCost run_until(const std::string& target_key) {
        auto done = finalized.find(target_key);
        if (done != finalized.end()) return ExtendedCost(done->second);
        while (!open.empty()) {
            FrontierEntry e = open.top();
            open.pop();
            double g = e.key.primary;
            const std::string& key = e.key.tie;
            auto fin = finalized.find(key);
            if (fin != finalized.end()) continue;
            finalized.emplace(key, g);
            WorldState w = states[e.node];
            for (const auto& a : legal_actions(w, agent)) {
                if (a.is_noop()) continue;
                push(apply_single(w, a), g + solo_action_cost(problem.cost_model, a));
            }
            if (key == target_key) return ExtendedCost(g);
        }
        return ExtendedCost::infinite();
    }
};

SoloReachability::SoloReachability(const Problem& problem, AgentId agent)
    : impl_(std::make_unique<Impl>(problem, agent)) {}
SoloReachability::~SoloReachability() = default;
SoloReachability::SoloReachability(SoloReachability&&) noexcept = default;

ExtendedCost SoloReachability::cost_to(const WorldState& target) {
    // Single-agent moves never touch the other agent's hand, so a mismatch
    // there proves unreachability without exhausting the state space.
    AgentId other = other_agent(impl_->agent);
    if (target.held_by(other) != impl_->problem.initial_state.held_by(other)) {
        return ExtendedCost::infinite();
    }
    return impl_->run_until(target.canonical_key());
}

HeuristicBundle make_default_bundle(const Problem& problem,
                                    std::shared_ptr<SoloReachability> solo, double alpha) {
    HeuristicBundle hb;
    hb.h_human = [](const WorldState& s, const GoalSpec& g) {
        return h_misplaced_solo(s, g, AgentId::Human);
    };
    hb.h_joint = [](const WorldState& s, const GoalSpec& g) { return h_misplaced_joint(s, g); };
    if (!solo) solo = std::make_shared<SoloReachability>(problem, AgentId::Human);
    hb.g_human_solver = [solo](const WorldState& s) { return solo->cost_to(s); };
    hb.alpha = alpha;
    return hb;
}

// ---------------------------------------------------------------------------
// A* searches
// ---------------------------------------------------------------------------

namespace {

struct SoloNode {
    WorldState world;
    double g = 0.0;
    int parent = -1;
    PrimitiveAction action;
};

struct JointNode {
    WorldState world;
    double g = 0.0;
    int parent = -1;
    JointStep step;
};

bool passes(const ActionFilter& f, const WorldState& s, const PrimitiveAction& a) {
    return !f || f(s, a);
}

// Placing onto an existing stack costs the same as starting a new one but
// can only bury items (and, jointly, only adds conflicts), so some optimal
// plan never does it. The searches skip such moves; the unpruned oracle
// validates the equivalence.
bool prunable(const PrimitiveAction& a) {
    return a.kind == ActionKind::Place && a.target.kind == PlaceTargetKind::OntoStack;
}

double min_move_weight(const CostModel& model) {
    return std::min(model.weight_for(ActionKind::Pick), model.weight_for(ActionKind::Place));
}

// Admissible remaining-cost bound for a single agent: every misplaced goal
// item still needs a pick and a place, each costing at least the cheapest
// move weight. Zero when the agent's actions are free under the model.
double solo_h_weighted(const WorldState& s, const GoalSpec& goal, AgentId agent,
                       const CostModel& model) {
    double actions = h_misplaced_solo(s, goal, agent).value();
    switch (model.mode) {
        case CostMode::StepCount:
            return actions;
        case CostMode::WeightedActions:
            return actions * min_move_weight(model);
        case CostMode::HumanOnly:
            return agent == AgentId::Human ? actions * min_move_weight(model) : 0.0;
    }
    return 0.0;
}

// Joint analogue. Under StepCount two moves fit in one step; under
// WeightedActions both agents' moves are charged, so the solo action count
// is the bound; under HumanOnly the robot may do everything for free.
double joint_h_weighted(const WorldState& s, const GoalSpec& goal, const CostModel& model) {
    switch (model.mode) {
        case CostMode::StepCount:
            return h_misplaced_joint(s, goal).value();
        case CostMode::WeightedActions: {
            GoalAnalysis a = analyze_goal(s, goal);
            double actions = 2.0 * static_cast<double>(a.m) + static_cast<double>(a.blockers);
            if (a.human_holds_needed) actions -= 1.0;
            if (a.robot_holds_needed) actions -= 1.0;
            return actions * min_move_weight(model);
        }
        case CostMode::HumanOnly:
            return 0.0;
    }
    return 0.0;
}

struct OracleEntry {
    double g;
    std::string key;
    WorldState world;
    friend bool operator>(const OracleEntry& a, const OracleEntry& b) {
        if (a.g != b.g) return a.g > b.g;
        return a.key > b.key;
    }
};

}  // namespace

std::optional<Plan> plan_single(const Problem& problem, AgentId agent,
                                const SearchOptions& options) {
    problem.validate();
    const ActionFilter& filter =
        agent == AgentId::Human ? options.human_filter : options.robot_filter;

    std::vector<SoloNode> nodes;
    nodes.push_back({problem.initial_state, 0.0, -1, PrimitiveAction::noop(agent)});
    Frontier open;
    std::unordered_map<std::string, double> best;
    std::unordered_map<std::string, bool> closed;

    auto key_for = [&](const WorldState& w, double g) -> PriorityKey {
        return {g + solo_h_weighted(w, problem.goal, agent, problem.cost_model), 0.0,
                w.canonical_key()};
    };

    best[problem.initial_state.canonical_key()] = 0.0;
    open.push({key_for(problem.initial_state, 0.0), 0});

    while (!open.empty()) {
        FrontierEntry e = open.top();
        open.pop();
        const SoloNode& n = nodes[e.node];
        std::string ckey = n.world.canonical_key();
        if (closed.count(ckey)) continue;
        closed.emplace(ckey, true);

        if (goal_satisfied(n.world, problem.goal)) {
            Plan plan;
            plan.owner = agent;
            for (int i = static_cast<int>(e.node); nodes[i].parent >= 0; i = nodes[i].parent) {
                plan.steps.push_back(nodes[i].action);
            }
            std::reverse(plan.steps.begin(), plan.steps.end());
            plan.total_cost = ExtendedCost(n.g);
            ExtendedCost recomputed = cost_of_plan(plan, problem.cost_model);
            if (std::fabs(recomputed.raw() - n.g) > 1e-9) {
                throw std::logic_error("plan cost disagrees with cost model");
            }
            return plan;
        }

        double g = n.g;
        WorldState world = n.world;  // nodes may reallocate below
        for (const auto& a : legal_actions(world, agent)) {
            if (a.is_noop() || prunable(a)) continue;
            if (!passes(filter, world, a)) continue;
            WorldState next = apply_single(world, a);
            double ng = g + solo_action_cost(problem.cost_model, a);
            std::string nkey = next.canonical_key();
            auto it = best.find(nkey);
            if (it != best.end() && it->second <= ng) continue;
            best[nkey] = ng;
            nodes.push_back({std::move(next), ng, static_cast<int>(e.node), a});
            if (nodes.size() > options.node_limit) throw std::runtime_error("search node limit hit");
            open.push({key_for(nodes.back().world, ng), nodes.size() - 1});
        }
    }
    return std::nullopt;
}

std::optional<JointPlan> plan_joint(const Problem& problem, const SearchOptions& options) {
    problem.validate();
    const bool cost_only = options.mode.kind == PriorityKind::CostOnly;

    HeuristicBundle hb;
    if (!cost_only) {
        hb = make_default_bundle(problem);
        const CostModel& model = problem.cost_model;
        hb.h_human = [&model](const WorldState& s, const GoalSpec& g) {
            return ExtendedCost(solo_h_weighted(s, g, AgentId::Human, model));
        };
        hb.h_joint = [&model](const WorldState& s, const GoalSpec& g) {
            return ExtendedCost(joint_h_weighted(s, g, model));
        };
    }

    auto key_for = [&](const WorldState& w, double g) -> PriorityKey {
        if (cost_only) {
            return {g + joint_h_weighted(w, problem.goal, problem.cost_model), 0.0,
                    w.canonical_key()};
        }
        return search_priority({w, g}, problem.goal, hb, options.mode);
    };

    std::vector<JointNode> nodes;
    nodes.push_back({problem.initial_state, 0.0, -1, {}});
    Frontier open;
    std::unordered_map<std::string, double> best;
    std::unordered_map<std::string, bool> closed;
    best[problem.initial_state.canonical_key()] = 0.0;
    open.push({key_for(problem.initial_state, 0.0), 0});

    while (!open.empty()) {
        FrontierEntry e = open.top();
        open.pop();
        const JointNode& n = nodes[e.node];
        std::string ckey = n.world.canonical_key();
        if (closed.count(ckey)) continue;
        closed.emplace(ckey, true);

        if (goal_satisfied(n.world, problem.goal)) {
            JointPlan plan;
            plan.provenance = JointProvenance::Centralized;
            for (int i = static_cast<int>(e.node); nodes[i].parent >= 0; i = nodes[i].parent) {
                plan.steps.push_back(nodes[i].step);
            }
            std::reverse(plan.steps.begin(), plan.steps.end());
            plan.total_cost = ExtendedCost(n.g);
            ExtendedCost recomputed = cost_of_plan(plan, problem.cost_model);
            if (std::fabs(recomputed.raw() - n.g) > 1e-9) {
                throw std::logic_error("joint plan cost disagrees with cost model");
            }
            return plan;
        }

        double g = n.g;
        WorldState world = n.world;
        auto human_moves = legal_actions(world, AgentId::Human);
        auto robot_moves = legal_actions(world, AgentId::Robot);
        for (const auto& ha : human_moves) {
            if (prunable(ha)) continue;
            if (!passes(options.human_filter, world, ha)) continue;
            for (const auto& ra : robot_moves) {
                if (ha.is_noop() && ra.is_noop()) continue;  // never on an optimal path
                if (prunable(ra)) continue;
                if (!passes(options.robot_filter, world, ra)) continue;
                JointStep step{ha, ra};
                if (!joint_legal(world, step)) continue;
                WorldState next = apply_joint(world, step);
                double ng = g + joint_step_cost(problem.cost_model, step);
                std::string nkey = next.canonical_key();
                auto it = best.find(nkey);
                if (it != best.end() && it->second <= ng) continue;
                best[nkey] = ng;
                nodes.push_back({std::move(next), ng, static_cast<int>(e.node), step});
                if (nodes.size() > options.node_limit) {
                    throw std::runtime_error("search node limit hit");
                }
                open.push({key_for(nodes.back().world, ng), nodes.size() - 1});
            }
        }
    }
    return std::nullopt;
}

ExtendedCost oracle_cost(const Problem& problem, const OracleAgents& agents,
                         std::size_t max_items) {
    problem.validate();
    if (problem.inventory.size() > max_items) {
        throw std::invalid_argument("oracle bound exceeded");
    }
    // Uniform-cost search, no heuristic, no pruning beyond the visited set.
    std::priority_queue<OracleEntry, std::vector<OracleEntry>, std::greater<OracleEntry>> open;
    std::unordered_map<std::string, double> best;
    open.push({0.0, problem.initial_state.canonical_key(), problem.initial_state});
    best[open.top().key] = 0.0;

    while (!open.empty()) {
        OracleEntry e = open.top();
        open.pop();
        auto it = best.find(e.key);
        if (it != best.end() && it->second < e.g) continue;
        if (goal_satisfied(e.world, problem.goal)) return ExtendedCost(e.g);

        auto relax = [&](WorldState next, double ng) {
            std::string k = next.canonical_key();
            auto b = best.find(k);
            if (b != best.end() && b->second <= ng) return;
            best[k] = ng;
            open.push({ng, std::move(k), std::move(next)});
        };

        if (agents.joint) {
            for (const auto& ha : legal_actions(e.world, AgentId::Human)) {
                for (const auto& ra : legal_actions(e.world, AgentId::Robot)) {
                    if (ha.is_noop() && ra.is_noop()) continue;
                    JointStep step{ha, ra};
                    if (!joint_legal(e.world, step)) continue;
                    relax(apply_joint(e.world, step),
                          e.g + joint_step_cost(problem.cost_model, step));
                }
            }
        } else {
            for (const auto& a : legal_actions(e.world, agents.solo_agent)) {
                if (a.is_noop()) continue;
                relax(apply_single(e.world, a), e.g + solo_action_cost(problem.cost_model, a));
            }
        }
    }
    return ExtendedCost::infinite();
}

}  // namespace hrc
