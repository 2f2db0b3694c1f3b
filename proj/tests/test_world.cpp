#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hrc/world.hpp"

using namespace hrc;

namespace {

Inventory small_inventory() {
    return Inventory({"a", "b", "c", "d", "e"});
}

WorldState singleton_state(std::size_t n) {
    WorldState s;
    for (std::size_t i = 0; i < n; ++i) s.stacks.push_back({static_cast<ItemId>(i)});
    return s;
}

// Random legal joint walk used by the property checks below.
WorldState random_walk(WorldState s, std::mt19937_64& rng, int steps,
                       std::size_t item_count) {
    for (int i = 0; i < steps; ++i) {
        auto ha = legal_actions(s, AgentId::Human);
        auto ra = legal_actions(s, AgentId::Robot);
        JointStep step{ha[rng() % ha.size()], ra[rng() % ra.size()]};
        if (!joint_legal(s, step)) continue;
        s = apply_joint(s, step);
        check_state_invariants(s, item_count);
    }
    return s;
}

}  // namespace

TEST_CASE("inventory rejects duplicates and resolves names") {
    CHECK_THROWS_AS(Inventory({"x", "x"}), std::invalid_argument);
    auto inv = small_inventory();
    CHECK(inv.id_of("c") == 2);
    CHECK_FALSE(inv.find("zz").has_value());
    CHECK_THROWS_AS(inv.id_of("zz"), std::invalid_argument);
    CHECK(inv.name_of(4) == "e");
}

TEST_CASE("goal satisfaction requires the dish to match exactly") {
    GoalSpec goal{"abc", {0, 1, 2}};
    WorldState s;
    s.dish = {0, 1, 2};
    CHECK(goal_satisfied(s, goal));

    SUBCASE("same stack on the table does not count") {
        WorldState t;
        t.stacks = {{0, 1, 2}};
        CHECK_FALSE(goal_satisfied(t, goal));
    }
    SUBCASE("an extra item on the dish does not count") {
        s.dish.push_back(3);
        CHECK_FALSE(goal_satisfied(s, goal));
    }
    SUBCASE("a prefix does not count") {
        s.dish.pop_back();
        CHECK_FALSE(goal_satisfied(s, goal));
    }
}

TEST_CASE("legal actions from an organized state") {
    WorldState s = singleton_state(3);
    auto acts = legal_actions(s, AgentId::Human);
    // one pick per stack top plus noop
    CHECK(acts.size() == 4);

    s.held_by(AgentId::Human) = 4;
    acts = legal_actions(s, AgentId::Human);
    // place onto each of 3 stacks, new stack, dish, noop
    CHECK(acts.size() == 6);
}

TEST_CASE("pick then place on a new stack restores the state") {
    WorldState s = singleton_state(4);
    auto key = s.canonical_key();
    auto picked = apply_single(s, PrimitiveAction::pick(AgentId::Human, 2));
    CHECK(picked.held_by(AgentId::Human) == 2);
    CHECK(picked.stacks.size() == 3);
    auto restored = apply_single(
        picked, PrimitiveAction::place(AgentId::Human, 2, PlaceTarget::new_stack()));
    CHECK(restored.canonical_key() == key);
}

TEST_CASE("dish top is pickable") {
    WorldState s = singleton_state(2);
    s.dish = {3, 4};
    CHECK(action_legal(s, PrimitiveAction::pick(AgentId::Robot, 4)));
    CHECK_FALSE(action_legal(s, PrimitiveAction::pick(AgentId::Robot, 3)));
    auto next = apply_single(s, PrimitiveAction::pick(AgentId::Robot, 4));
    CHECK(next.dish == std::vector<ItemId>{3});
}

TEST_CASE("illegal actions throw") {
    WorldState s = singleton_state(3);
    // picking a buried item
    s.stacks = {{0, 1}, {2}};
    CHECK_THROWS_AS(apply_single(s, PrimitiveAction::pick(AgentId::Human, 0)),
                    std::logic_error);
    // placing without holding
    CHECK_THROWS_AS(
        apply_single(s, PrimitiveAction::place(AgentId::Human, 0, PlaceTarget::dish())),
        std::logic_error);
}

TEST_CASE("joint steps must touch disjoint slots") {
    WorldState s = singleton_state(2);
    SUBCASE("both picking the same stack conflicts") {
        JointStep step{PrimitiveAction::pick(AgentId::Human, 0),
                       PrimitiveAction::pick(AgentId::Robot, 0)};
        CHECK_FALSE(joint_legal(s, step));
    }
    SUBCASE("picking different stacks is fine") {
        JointStep step{PrimitiveAction::pick(AgentId::Human, 0),
                       PrimitiveAction::pick(AgentId::Robot, 1)};
        CHECK(joint_legal(s, step));
        auto next = apply_joint(s, step);
        CHECK(next.stacks.empty());
        CHECK(next.held_by(AgentId::Human) == 0);
        CHECK(next.held_by(AgentId::Robot) == 1);
    }
    SUBCASE("both placing on the dish conflicts") {
        WorldState t;
        t.stacks = {{2}};
        t.held_by(AgentId::Human) = 0;
        t.held_by(AgentId::Robot) = 1;
        JointStep step{PrimitiveAction::place(AgentId::Human, 0, PlaceTarget::dish()),
                       PrimitiveAction::place(AgentId::Robot, 1, PlaceTarget::dish())};
        CHECK_FALSE(joint_legal(t, step));
        step.robot_action = PrimitiveAction::place(AgentId::Robot, 1, PlaceTarget::new_stack());
        CHECK(joint_legal(t, step));
    }
    SUBCASE("new-stack placements never conflict") {
        WorldState t;
        t.held_by(AgentId::Human) = 0;
        t.held_by(AgentId::Robot) = 1;
        JointStep step{PrimitiveAction::place(AgentId::Human, 0, PlaceTarget::new_stack()),
                       PrimitiveAction::place(AgentId::Robot, 1, PlaceTarget::new_stack())};
        CHECK(joint_legal(t, step));
        CHECK(apply_joint(t, step).stacks.size() == 2);
    }
}

TEST_CASE("joint application is order independent") {
    std::mt19937_64 rng(12345);
    WorldState s = singleton_state(5);
    for (int trial = 0; trial < 200; ++trial) {
        s = random_walk(s, rng, 1, 5);
        auto ha = legal_actions(s, AgentId::Human);
        auto ra = legal_actions(s, AgentId::Robot);
        for (const auto& h : ha) {
            for (const auto& r : ra) {
                JointStep step{h, r};
                if (!joint_legal(s, step)) continue;
                auto hr = apply_single(apply_single(s, h), r);
                auto rh = apply_single(apply_single(s, r), h);
                REQUIRE(hr.canonical_key() == rh.canonical_key());
            }
        }
    }
}

TEST_CASE("random walks conserve items") {
    std::mt19937_64 rng(99);
    auto s = random_walk(singleton_state(5), rng, 500, 5);
    check_state_invariants(s, 5);
}

TEST_CASE("canonical key ignores stack order") {
    WorldState a;
    a.stacks = {{0, 1}, {2}, {3}};
    WorldState b;
    b.stacks = {{3}, {0, 1}, {2}};
    CHECK(a.canonical_key() == b.canonical_key());
    CHECK(a == b);

    WorldState c;
    c.stacks = {{0}, {1, 2}, {3}};
    CHECK(a.canonical_key() != c.canonical_key());

    // dish contents are position-sensitive and distinct from table stacks
    WorldState d = a;
    d.stacks = {{2}, {3}};
    d.dish = {0, 1};
    CHECK(a.canonical_key() != d.canonical_key());
}

TEST_CASE("solo projection releases the robot's item onto the table") {
    WorldState s = singleton_state(2);
    s.held_by(AgentId::Robot) = 4;
    s.held_by(AgentId::Human) = 3;
    auto proj = solo_projection(s);
    CHECK_FALSE(proj.held_by(AgentId::Robot).has_value());
    CHECK(proj.held_by(AgentId::Human) == 3);
    CHECK(proj.stacks.size() == 3);
}

TEST_CASE("build_kitchen enforces layout invariants") {
    SUBCASE("organized singletons") {
        KitchenLayout l{"organized", LayoutStyle::Organized, {}};
        for (ItemId i = 0; i < 12; ++i) l.stack_assignment.push_back({i});
        auto s = build_kitchen(l, 12);
        CHECK(s.stacks.size() == 12);
        CHECK(s.dish.empty());
    }
    SUBCASE("organized allows one multi-item stack only") {
        KitchenLayout l{"organized", LayoutStyle::Organized, {{0, 1}, {2, 3}, {4}}};
        CHECK_THROWS_AS(build_kitchen(l, 5), std::invalid_argument);
    }
    SUBCASE("cluttered needs exactly six stacks of at most three") {
        KitchenLayout l{"cluttered", LayoutStyle::Cluttered,
                        {{0, 1, 2}, {3, 4, 5}, {6, 7}, {8, 9}, {10}, {11}}};
        CHECK(build_kitchen(l, 12).stacks.size() == 6);
        l.stack_assignment = {{0, 1, 2, 3}, {4, 5}, {6, 7}, {8, 9}, {10}, {11}};
        CHECK_THROWS_AS(build_kitchen(l, 12), std::invalid_argument);
        l.stack_assignment = {{0, 1, 2}, {3, 4, 5}, {6, 7}, {8, 9}, {10, 11}};
        CHECK_THROWS_AS(build_kitchen(l, 12), std::invalid_argument);
    }
    SUBCASE("every item must appear exactly once") {
        KitchenLayout dup{"x", LayoutStyle::Custom, {{0}, {0}, {1}}};
        CHECK_THROWS_AS(build_kitchen(dup, 2), std::invalid_argument);
        KitchenLayout missing{"x", LayoutStyle::Custom, {{0}}};
        CHECK_THROWS_AS(build_kitchen(missing, 2), std::invalid_argument);
    }
}
