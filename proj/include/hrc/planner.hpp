#ifndef HRC_PLANNER_HPP
#define HRC_PLANNER_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include "hrc/problem.hpp"

namespace hrc {

/// Per-agent action admissibility hook; null means every action is allowed.
/// Used to model restricted agents (an armless robot, a human who cannot
/// reach certain items).
using ActionFilter = std::function<bool(const WorldState&, const PrimitiveAction&)>;

/// State-cost heuristics and the solo path-cost solver feeding the
/// helpfulness-aware priority functions.
struct HeuristicBundle {
    std::function<ExtendedCost(const WorldState&, const GoalSpec&)> h_human;
    std::function<ExtendedCost(const WorldState&, const GoalSpec&)> h_joint;
    // Optimal human-only path cost from the problem's initial state to an
    // exact world state; infinite when the human alone cannot reach it.
    std::function<ExtendedCost(const WorldState&)> g_human_solver;
    double alpha = 1.0;  // expected human share of the joint plan, in [0,1]
};

enum class PriorityKind {
    CostOnly,
    AssistiveTiebreak,    // ties broken toward greatest helpfulness
    IndependentTiebreak,  // ties broken toward least |helpfulness|
    AdversarialTiebreak,  // ties broken toward least helpfulness
    LinearCombo,          // w*f_cost - (1-w)*f_help as a single key
    Lexicographic         // f_cost first, then the sense-selected key
};

struct PriorityMode {
    PriorityKind kind = PriorityKind::CostOnly;
    double weight = 1.0;  // LinearCombo only, in [0,1]
    PriorityKind sense = PriorityKind::AssistiveTiebreak;  // Lexicographic only

    static PriorityMode cost_only() { return {}; }
    static PriorityMode assistive() { return {PriorityKind::AssistiveTiebreak, 1.0, {}}; }
    static PriorityMode independent() { return {PriorityKind::IndependentTiebreak, 1.0, {}}; }
    static PriorityMode adversarial() { return {PriorityKind::AdversarialTiebreak, 1.0, {}}; }
    static PriorityMode linear_combo(double w) { return {PriorityKind::LinearCombo, w, {}}; }
};

/// Frontier entry: the world plus path cost accumulated so far.
struct SearchState {
    WorldState world;
    double g_joint = 0.0;
};

/// Ordered frontier key; ties below the declared keys fall back to the
/// canonical state encoding so searches are reproducible.
struct PriorityKey {
    double primary = 0.0;
    double secondary = 0.0;
    std::string tie;

    friend bool operator<(const PriorityKey& a, const PriorityKey& b) {
        if (a.primary != b.primary) return a.primary < b.primary;
        if (a.secondary != b.secondary) return a.secondary < b.secondary;
        return a.tie < b.tie;
    }
};

struct SearchOptions {
    PriorityMode mode = PriorityMode::cost_only();
    ActionFilter human_filter;
    ActionFilter robot_filter;
    std::size_t node_limit = 2'000'000;
};

// Admissible misplaced-item heuristics. An item counts as misplaced unless
// it sits in the dish at its goal position with everything below it correct.
ExtendedCost h_misplaced_solo(const WorldState& s, const GoalSpec& goal, AgentId agent);
ExtendedCost h_misplaced_joint(const WorldState& s, const GoalSpec& goal);

double helpfulness_heuristic_joint(const WorldState& s, const GoalSpec& goal,
                                   const HeuristicBundle& hb);
double helpfulness_heuristic_responsive(const WorldState& s, const GoalSpec& inferred_goal,
                                        const HeuristicBundle& hb);

PriorityKey search_priority(const SearchState& s, const GoalSpec& goal,
                            const HeuristicBundle& hb, const PriorityMode& mode);

/// Lazily-expanded human-only reachability search from a fixed initial
/// state; memoizes optimal solo path costs to exact states.
class SoloReachability {
public:
    SoloReachability(const Problem& problem, AgentId agent = AgentId::Human);
    ~SoloReachability();
    SoloReachability(SoloReachability&&) noexcept;

    ExtendedCost cost_to(const WorldState& target);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::optional<Plan> plan_single(const Problem& problem, AgentId agent,
                                const SearchOptions& options = {});
std::optional<JointPlan> plan_joint(const Problem& problem,
                                    const SearchOptions& options = {});

struct OracleAgents {
    bool joint = false;
    AgentId solo_agent = AgentId::Human;

    static OracleAgents solo(AgentId a) { return {false, a}; }
    static OracleAgents joint_team() { return {true, AgentId::Human}; }
};

/// Brute-force uniform-cost search with no heuristic and no pruning beyond
/// the visited set. Validation oracle for the planners; refuses instances
/// above the item bound.
ExtendedCost oracle_cost(const Problem& problem, const OracleAgents& agents,
                         std::size_t max_items = 8);

/// Misplaced-item heuristics packaged for the priority functions, with a
/// memoized solo solver rooted at the problem's initial state.
HeuristicBundle make_default_bundle(const Problem& problem,
                                    std::shared_ptr<SoloReachability> solo = nullptr,
                                    double alpha = 1.0);

}  // namespace hrc

#endif
