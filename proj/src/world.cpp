#include "hrc/world.hpp"

#include <algorithm>
#include <stdexcept>

namespace hrc {

std::string to_string(AgentId a) {
    return a == AgentId::Human ? "human" : "robot";
}

Inventory::Inventory(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        for (std::size_t j = i + 1; j < names_.size(); ++j) {
            if (names_[i] == names_[j]) {
                throw std::invalid_argument("duplicate item name: " + names_[i]);
            }
        }
    }
    if (names_.size() > 250) throw std::invalid_argument("too many items");
}

ItemId Inventory::id_of(const std::string& name) const {
    auto id = find(name);
    if (!id) throw std::invalid_argument("unknown item: " + name);
    return *id;
}

std::optional<ItemId> Inventory::find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<ItemId>(i);
    }
    return std::nullopt;
}

const std::string& Inventory::name_of(ItemId id) const {
    return names_.at(id);
}

std::string to_string(const PrimitiveAction& a, const Inventory& inv) {
    switch (a.kind) {
        case ActionKind::Noop:
            return "noop";
        case ActionKind::Pick:
            return "pick " + inv.name_of(a.item);
        case ActionKind::Place:
            switch (a.target.kind) {
                case PlaceTargetKind::OntoStack:
                    return "place " + inv.name_of(a.item) + " on " + inv.name_of(a.target.top_item);
                case PlaceTargetKind::NewStack:
                    return "place " + inv.name_of(a.item) + " on table";
                case PlaceTargetKind::Dish:
                    return "place " + inv.name_of(a.item) + " on dish";
            }
    }
    return "?";
}

std::string WorldState::canonical_key() const {
    // Item bytes are offset by 2 so 0/1 stay free as separators.
    std::string key;
    key.reserve(dish.size() + stacks.size() * 4 + 8);
    for (ItemId it : dish) key.push_back(static_cast<char>(it + 2));
    key.push_back(1);
    std::vector<std::string> parts;
    parts.reserve(stacks.size());
    for (const auto& st : stacks) {
        std::string p;
        for (ItemId it : st) p.push_back(static_cast<char>(it + 2));
        parts.push_back(std::move(p));
    }
    std::sort(parts.begin(), parts.end());
    for (const auto& p : parts) {
        key += p;
        key.push_back(1);
    }
    for (const auto& h : held) {
        key.push_back(h ? static_cast<char>(*h + 2) : 0);
    }
    return key;
}

void check_state_invariants(const WorldState& s, std::size_t item_count) {
    std::vector<int> seen(item_count, 0);
    auto mark = [&](ItemId it) {
        if (it >= item_count) throw std::logic_error("item id out of range");
        if (seen[it]++) throw std::logic_error("item appears more than once");
    };
    for (const auto& st : s.stacks) {
        if (st.empty()) throw std::logic_error("empty table stack");
        for (ItemId it : st) mark(it);
    }
    for (ItemId it : s.dish) mark(it);
    for (const auto& h : s.held) {
        if (h) mark(*h);
    }
}

bool goal_satisfied(const WorldState& s, const GoalSpec& goal) {
    return s.dish == goal.required_stack;
}

namespace {

// Index of the table stack whose top is `item`, or -1.
int stack_topped_by(const WorldState& s, ItemId item) {
    for (std::size_t i = 0; i < s.stacks.size(); ++i) {
        if (s.stacks[i].back() == item) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

bool action_legal(const WorldState& s, const PrimitiveAction& a) {
    switch (a.kind) {
        case ActionKind::Noop:
            return true;
        case ActionKind::Pick: {
            if (s.held_by(a.actor)) return false;
            if (!s.dish.empty() && s.dish.back() == a.item) return true;
            return stack_topped_by(s, a.item) >= 0;
        }
        case ActionKind::Place: {
            const auto& held = s.held_by(a.actor);
            if (!held || *held != a.item) return false;
            switch (a.target.kind) {
                case PlaceTargetKind::NewStack:
                case PlaceTargetKind::Dish:
                    return true;
                case PlaceTargetKind::OntoStack:
                    return stack_topped_by(s, a.target.top_item) >= 0;
            }
        }
    }
    return false;
}

std::vector<PrimitiveAction> legal_actions(const WorldState& s, AgentId agent) {
    std::vector<PrimitiveAction> out;
    const auto& held = s.held_by(agent);
    if (!held) {
        for (const auto& st : s.stacks) {
            out.push_back(PrimitiveAction::pick(agent, st.back()));
        }
        if (!s.dish.empty()) {
            out.push_back(PrimitiveAction::pick(agent, s.dish.back()));
        }
    } else {
        for (const auto& st : s.stacks) {
            out.push_back(PrimitiveAction::place(agent, *held, PlaceTarget::onto(st.back())));
        }
        out.push_back(PrimitiveAction::place(agent, *held, PlaceTarget::new_stack()));
        out.push_back(PrimitiveAction::place(agent, *held, PlaceTarget::dish()));
    }
    out.push_back(PrimitiveAction::noop(agent));
    return out;
}

WorldState apply_single(const WorldState& s, const PrimitiveAction& a) {
    if (!action_legal(s, a)) {
        throw std::logic_error("illegal action applied");
    }
    WorldState next = s;
    switch (a.kind) {
        case ActionKind::Noop:
            break;
        case ActionKind::Pick: {
            if (!next.dish.empty() && next.dish.back() == a.item) {
                next.dish.pop_back();
            } else {
                int idx = stack_topped_by(next, a.item);
                next.stacks[idx].pop_back();
                if (next.stacks[idx].empty()) {
                    next.stacks.erase(next.stacks.begin() + idx);
                }
            }
            next.held_by(a.actor) = a.item;
            break;
        }
        case ActionKind::Place: {
            switch (a.target.kind) {
                case PlaceTargetKind::OntoStack: {
                    int idx = stack_topped_by(next, a.target.top_item);
                    next.stacks[idx].push_back(a.item);
                    break;
                }
                case PlaceTargetKind::NewStack:
                    next.stacks.push_back({a.item});
                    break;
                case PlaceTargetKind::Dish:
                    next.dish.push_back(a.item);
                    break;
            }
            next.held_by(a.actor).reset();
            break;
        }
    }
    return next;
}

namespace {

// Stack slot an action touches, for the disjointness rule. Dish is slot -1,
// table stacks are identified by their unique top item, new stacks touch
// nothing shared.
struct TouchedSlot {
    bool dish = false;
    bool table = false;
    ItemId top = 0;
};

std::optional<TouchedSlot> touched_slot(const WorldState& s, const PrimitiveAction& a) {
    switch (a.kind) {
        case ActionKind::Noop:
            return std::nullopt;
        case ActionKind::Pick: {
            if (!s.dish.empty() && s.dish.back() == a.item) return TouchedSlot{true, false, 0};
            return TouchedSlot{false, true, a.item};
        }
        case ActionKind::Place:
            switch (a.target.kind) {
                case PlaceTargetKind::Dish:
                    return TouchedSlot{true, false, 0};
                case PlaceTargetKind::OntoStack:
                    return TouchedSlot{false, true, a.target.top_item};
                case PlaceTargetKind::NewStack:
                    return std::nullopt;
            }
    }
    return std::nullopt;
}

}  // namespace

bool joint_legal(const WorldState& s, const JointStep& step) {
    if (step.human_action.actor != AgentId::Human || step.robot_action.actor != AgentId::Robot) {
        return false;
    }
    if (!action_legal(s, step.human_action) || !action_legal(s, step.robot_action)) {
        return false;
    }
    auto a = touched_slot(s, step.human_action);
    auto b = touched_slot(s, step.robot_action);
    if (!a || !b) return true;
    if (a->dish && b->dish) return false;
    if (a->table && b->table && a->top == b->top) return false;
    return true;
}

WorldState apply_joint(const WorldState& s, const JointStep& step) {
    if (!joint_legal(s, step)) {
        throw std::logic_error("conflicting or illegal joint step");
    }
    // Disjointness makes the application order irrelevant.
    return apply_single(apply_single(s, step.human_action), step.robot_action);
}

WorldState solo_projection(const WorldState& s) {
    WorldState out = s;
    auto& robot_hand = out.held_by(AgentId::Robot);
    if (robot_hand) {
        out.stacks.push_back({*robot_hand});
        robot_hand.reset();
    }
    return out;
}

WorldState build_kitchen(const KitchenLayout& layout, std::size_t item_count) {
    if (layout.style == LayoutStyle::Organized) {
        std::size_t multi = 0;
        for (const auto& st : layout.stack_assignment) {
            if (st.size() > 1) ++multi;
        }
        if (multi > 1) {
            throw std::invalid_argument("organized layout allows at most one multi-item stack");
        }
    } else if (layout.style == LayoutStyle::Cluttered) {
        if (layout.stack_assignment.size() != 6) {
            throw std::invalid_argument("cluttered layout needs exactly six stacks");
        }
        for (const auto& st : layout.stack_assignment) {
            if (st.size() > 3) {
                throw std::invalid_argument("cluttered stacks hold at most three items");
            }
        }
    }
    WorldState s;
    s.stacks = layout.stack_assignment;
    std::vector<int> seen(item_count, 0);
    for (const auto& st : s.stacks) {
        if (st.empty()) throw std::invalid_argument("layout contains an empty stack");
        for (ItemId it : st) {
            if (it >= item_count) throw std::invalid_argument("layout references unknown item");
            if (seen[it]++) throw std::invalid_argument("item placed twice in layout");
        }
    }
    for (std::size_t i = 0; i < item_count; ++i) {
        if (!seen[i]) throw std::invalid_argument("layout leaves an item unplaced");
    }
    return s;
}

}  // namespace hrc
