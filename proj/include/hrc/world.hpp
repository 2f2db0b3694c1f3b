#ifndef HRC_WORLD_HPP
#define HRC_WORLD_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrc/cost.hpp"

namespace hrc {

enum class AgentId : uint8_t { Human = 0, Robot = 1 };

inline AgentId other_agent(AgentId a) {
    return a == AgentId::Human ? AgentId::Robot : AgentId::Human;
}

std::string to_string(AgentId a);

using ItemId = uint8_t;

/// Item names for one problem; ids index into this table.
class Inventory {
public:
    Inventory() = default;
    explicit Inventory(std::vector<std::string> names);

    ItemId id_of(const std::string& name) const;       // throws on unknown name
    std::optional<ItemId> find(const std::string& name) const;
    const std::string& name_of(ItemId id) const;
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

/// Where a PLACE puts the held item.
enum class PlaceTargetKind : uint8_t {
    OntoStack,  // onto the table stack whose current top is `top_item`
    NewStack,   // start a fresh table stack
    Dish        // onto the dish assembly area
};

struct PlaceTarget {
    PlaceTargetKind kind = PlaceTargetKind::NewStack;
    ItemId top_item = 0;  // only meaningful for OntoStack

    static PlaceTarget onto(ItemId top) { return {PlaceTargetKind::OntoStack, top}; }
    static PlaceTarget new_stack() { return {PlaceTargetKind::NewStack, 0}; }
    static PlaceTarget dish() { return {PlaceTargetKind::Dish, 0}; }

    friend bool operator==(const PlaceTarget& a, const PlaceTarget& b) {
        return a.kind == b.kind && (a.kind != PlaceTargetKind::OntoStack || a.top_item == b.top_item);
    }
};

/// Pick, place or no-op for one agent. Picks name the item (which must top
/// its stack); places name the held item and a target.
struct PrimitiveAction {
    ActionKind kind = ActionKind::Noop;
    AgentId actor = AgentId::Human;
    ItemId item = 0;
    PlaceTarget target;

    static PrimitiveAction noop(AgentId a) { return {ActionKind::Noop, a, 0, {}}; }
    static PrimitiveAction pick(AgentId a, ItemId item) {
        return {ActionKind::Pick, a, item, {}};
    }
    static PrimitiveAction place(AgentId a, ItemId item, PlaceTarget t) {
        return {ActionKind::Place, a, item, t};
    }

    bool is_noop() const { return kind == ActionKind::Noop; }

    friend bool operator==(const PrimitiveAction& a, const PrimitiveAction& b) {
        if (a.kind != b.kind || a.actor != b.actor) return false;
        if (a.kind == ActionKind::Noop) return true;
        if (a.item != b.item) return false;
        return a.kind != ActionKind::Place || a.target == b.target;
    }
};

std::string to_string(const PrimitiveAction& a, const Inventory& inv);

/// One synchronized time step of the team.
struct JointStep {
    PrimitiveAction human_action = PrimitiveAction::noop(AgentId::Human);
    PrimitiveAction robot_action = PrimitiveAction::noop(AgentId::Robot);
};

/// Table stacks plus the dish assembly area and per-agent hold slots.
/// Every item appears exactly once across stacks, dish and hands; table
/// stacks are never empty (the dish may be).
struct WorldState {
    std::vector<std::vector<ItemId>> stacks;  // bottom-to-top
    std::vector<ItemId> dish;                 // bottom-to-top, may be empty
    std::array<std::optional<ItemId>, 2> held;  // indexed by AgentId

    const std::optional<ItemId>& held_by(AgentId a) const {
        return held[static_cast<std::size_t>(a)];
    }
    std::optional<ItemId>& held_by(AgentId a) {
        return held[static_cast<std::size_t>(a)];
    }

    /// Position-independent key: dish, sorted table stacks, hold slots.
    std::string canonical_key() const;

    friend bool operator==(const WorldState& a, const WorldState& b) {
        return a.canonical_key() == b.canonical_key();
    }
};

void check_state_invariants(const WorldState& s, std::size_t item_count);

/// Target stack contents for one dish, bottom-to-top. Satisfied only when
/// the dish area holds exactly this sequence.
struct GoalSpec {
    std::string dish_name;
    std::vector<ItemId> required_stack;
};

bool goal_satisfied(const WorldState& s, const GoalSpec& goal);

std::vector<PrimitiveAction> legal_actions(const WorldState& s, AgentId agent);
bool action_legal(const WorldState& s, const PrimitiveAction& a);
WorldState apply_single(const WorldState& s, const PrimitiveAction& a);
bool joint_legal(const WorldState& s, const JointStep& step);
WorldState apply_joint(const WorldState& s, const JointStep& step);

/// The state as the human alone would face it: anything in the robot's hand
/// is set down on a fresh table stack.
WorldState solo_projection(const WorldState& s);

enum class LayoutStyle { Organized, Cluttered, Custom };

/// Named initial arrangement of the full inventory into table stacks.
struct KitchenLayout {
    std::string name;
    LayoutStyle style = LayoutStyle::Custom;
    std::vector<std::vector<ItemId>> stack_assignment;
};

/// Deterministic initial state for a layout; validates the style invariant
/// and that every inventory item is placed exactly once.
WorldState build_kitchen(const KitchenLayout& layout, std::size_t item_count);

}  // namespace hrc

#endif
