#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hrc/domain_file.hpp"
#include "hrc/interaction.hpp"

using namespace hrc;

namespace {

struct Fixture {
    DomainFile domain = parse_domain(default_domain_text());
    Inventory inventory = domain_inventory(domain);
    WorldState organized;
    std::vector<GoalSpec> all_goals;

    Fixture() {
        organized = build_kitchen(domain_layout(domain, "organized"), inventory.size());
        for (const auto& d : domain.dishes) all_goals.push_back(domain_goal(domain, d.name));
    }

    Problem problem(const std::string& dish) const {
        Problem p;
        p.inventory = inventory;
        p.initial_state = organized;
        p.goal = *std::find_if(all_goals.begin(), all_goals.end(),
                               [&](const GoalSpec& g) { return g.dish_name == dish; });
        p.cost_model = CostModel::step_count();
        return p;
    }
};

}  // namespace

TEST_CASE("uniform belief and deterministic argmax") {
    Fixture fx;
    Belief b = Belief::uniform(fx.all_goals, 1.0);
    double total = 0.0;
    for (const auto& h : b.hypotheses) {
        CHECK(h.prior == doctest::Approx(1.0 / 6.0));
        CHECK(h.posterior == h.prior);
        total += h.posterior;
    }
    CHECK(total == doctest::Approx(1.0));
    // ties break toward the alphabetically first dish name
    CHECK(b.inferred_goal().dish_name == "blueberry_pie");
}

TEST_CASE("priors must be normalizable") {
    Fixture fx;
    CHECK_THROWS_AS(Belief::uniform({}, 1.0), std::invalid_argument);
    std::vector<GoalHypothesis> zero = {{fx.all_goals[0], 0.0, 0.0}};
    CHECK_THROWS_AS(Belief::with_priors(zero, 1.0), std::invalid_argument);
}

TEST_CASE("empty observation log keeps the prior") {
    Fixture fx;
    InteractionEngine engine(fx.inventory, fx.organized);
    Belief prior = Belief::uniform(fx.all_goals, 1.0);
    Belief post = engine.goal_posterior({}, prior, fx.organized);
    for (std::size_t i = 0; i < post.hypotheses.size(); ++i) {
        CHECK(post.hypotheses[i].posterior == doctest::Approx(prior.hypotheses[i].prior));
    }
}

TEST_CASE("beta zero ignores the observations") {
    Fixture fx;
    InteractionEngine engine(fx.inventory, fx.organized);
    Belief prior = Belief::uniform(fx.all_goals, 0.0);
    ItemId pan = fx.inventory.id_of("pan");
    WorldState after = apply_single(fx.organized, PrimitiveAction::pick(AgentId::Human, pan));
    ObservationLog log;
    log.events.push_back({1, AgentId::Human, PrimitiveAction::pick(AgentId::Human, pan)});
    Belief post = engine.goal_posterior(log, prior, after);
    for (const auto& h : post.hypotheses) CHECK(h.posterior == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("picking the pan points to the pie") {
    Fixture fx;
    InteractionEngine engine(fx.inventory, fx.organized);
    Belief prior = Belief::uniform(fx.all_goals, 1.0);
    ItemId pan = fx.inventory.id_of("pan");
    WorldState after = apply_single(fx.organized, PrimitiveAction::pick(AgentId::Human, pan));
    ObservationLog log;
    log.events.push_back({1, AgentId::Human, PrimitiveAction::pick(AgentId::Human, pan)});
    Belief post = engine.goal_posterior(log, prior, after);

    CHECK(post.inferred_goal().dish_name == "blueberry_pie");
    // Boltzmann weights by hand: the pie stays on its optimal path (cost gap
    // 0); every other dish must first put the pan back down (gap 2).
    double expected_pie = 1.0 / (1.0 + 5.0 * std::exp(-2.0));
    CHECK(post.posterior_of("blueberry_pie") == doctest::Approx(expected_pie));
    CHECK(post.posterior_of("fudge") ==
          doctest::Approx(std::exp(-2.0) / (1.0 + 5.0 * std::exp(-2.0))));
}

TEST_CASE("recognition failure when no hypothesis is achievable") {
    Inventory inv({"a", "b", "c", "d"});
    WorldState s;
    s.stacks = {{0}, {1}, {2}, {3}};
    InteractionEngine engine(inv, s);
    // a dish needing the same item twice can never be assembled
    GoalSpec impossible{"ghost", {0, 0, 1}};
    Belief prior = Belief::uniform({impossible}, 1.0);
    CHECK_THROWS_AS(engine.goal_posterior({}, prior, s), RecognitionFailure);
}

TEST_CASE("responsive robot observes first, then joins the inferred plan") {
    Fixture fx;
    InteractionEngine engine(fx.inventory, fx.organized);
    Belief pie_only = Belief::uniform({fx.problem("blueberry_pie").goal}, 1.0);

    SUBCASE("waits while observations are outstanding") {
        CHECK(engine.responsive_step(fx.organized, pie_only, 0, 2).is_noop());
        CHECK_FALSE(engine.responsive_step(fx.organized, pie_only, 1, 2).is_noop());
    }
    SUBCASE("budget zero with one hypothesis starts an optimal joint plan") {
        auto action = engine.responsive_step(fx.organized, pie_only, 0, 0);
        CHECK_FALSE(action.is_noop());
        CHECK(engine.robot_action_consistent(fx.organized, pie_only.inferred_goal(), action));
    }
}

TEST_CASE("commitment risk gates the responsive action") {
    Fixture fx;
    InteractionEngine engine(fx.inventory, fx.organized);
    std::vector<GoalSpec> three = {fx.problem("blueberry_pie").goal, fx.problem("fudge").goal,
                                   fx.problem("choco_chip_cookie").goal};
    Belief belief = Belief::uniform(three, 1.0);

    // the dishes share no early ingredients, so the pie-directed first action
    // carries risk 2/3
    PrimitiveAction intended = engine.responsive_step(fx.organized, belief, 0, 0);
    REQUIRE_FALSE(intended.is_noop());
    CHECK(engine.robot_action_consistent(fx.organized, three[0], intended));
    CHECK_FALSE(engine.robot_action_consistent(fx.organized, three[1], intended));
    CHECK_FALSE(engine.robot_action_consistent(fx.organized, three[2], intended));

    CHECK(engine.risk_bounded_step(fx.organized, belief, {0.1, {}}, 0, 0).is_noop());
    CHECK(engine.risk_bounded_step(fx.organized, belief, {0.7, {}}, 0, 0) == intended);

    SUBCASE("certainty acts at any bound") {
        Belief sure = Belief::uniform({three[0]}, 1.0);
        CHECK_FALSE(engine.risk_bounded_step(fx.organized, sure, {0.0, {}}, 0, 0).is_noop());
    }
    SUBCASE("no-ops are always safe") {
        CHECK(engine.robot_action_consistent(fx.organized, three[1],
                                             PrimitiveAction::noop(AgentId::Robot)));
    }
}

TEST_CASE("responsive pie episode reproduces the published trajectory") {
    Fixture fx;
    Problem p = fx.problem("blueberry_pie");
    Belief prior = Belief::uniform(fx.all_goals, 1.0);
    EpisodeConfig cfg;
    cfg.observe_budget = 2;
    EpisodeTrace ep = simulate_episode(p, p.goal, prior, make_default_human(),
                                       make_responsive_robot(2), cfg);

    CHECK_FALSE(ep.failed);
    CHECK_FALSE(ep.timed_out);
    REQUIRE(ep.trace.steps.size() == 6);
    REQUIRE(ep.snapshots.size() == 6);

    for (int i = 0; i < 2; ++i) {
        CHECK(*ep.snapshots[i].H == doctest::Approx(0.0));
        CHECK(*ep.snapshots[i].H_R == doctest::Approx(0.0));
    }
    for (int i = 2; i < 6; ++i) {
        CHECK(*ep.snapshots[i].H == doctest::Approx(4.0));
        CHECK(*ep.snapshots[i].H_N == doctest::Approx(1.0));
        CHECK(*ep.snapshots[i].H_R == doctest::Approx(0.4));
    }

    // the final metrics coincide with a from-scratch report over the trace
    auto whole = report(p, ep.trace);
    CHECK(*ep.final_report.H == doctest::Approx(*whole.H));
    CHECK(*ep.final_report.H_R == doctest::Approx(*whole.H_R));
}

TEST_CASE("a robot that never acts leaves helpfulness at zero") {
    Fixture fx;
    Problem p = fx.problem("sugar_cookie");
    Belief prior = Belief::uniform(fx.all_goals, 1.0);
    EpisodeConfig cfg;
    EpisodeTrace ep = simulate_episode(p, p.goal, prior, make_default_human(),
                                       make_noop_robot(), cfg);
    CHECK_FALSE(ep.failed);
    CHECK(ep.cost_team.value() == 6.0);  // the solo optimum
    CHECK(*ep.final_report.H == doctest::Approx(0.0));
}

TEST_CASE("a confident wrong belief makes the eager robot fail") {
    Fixture fx;
    Problem p = fx.problem("blueberry_pie");
    std::vector<GoalHypothesis> hyps = {{fx.problem("fudge").goal, 0.995, 0.0},
                                        {p.goal, 0.005, 0.0}};
    Belief prior = Belief::with_priors(hyps, 1.0);
    EpisodeConfig cfg;
    cfg.observe_budget = 2;
    EpisodeTrace ep = simulate_episode(p, p.goal, prior, make_default_human(),
                                       make_risk_bounded_robot({1.0, {}}, 2), cfg);
    CHECK(ep.failed);
    CHECK(ep.wrong_commitment);
    CHECK(ep.trace.steps.size() == 2);  // observed once, then grabbed for the fudge
    CHECK(*ep.final_report.H < 0.5);    // the detour cannot have helped

    SUBCASE("continue-after-failure still finishes the dish") {
        cfg.failure_policy = FailurePolicy::ContinueAfterFailure;
        EpisodeTrace cont = simulate_episode(p, p.goal, prior, make_default_human(),
                                             make_risk_bounded_robot({1.0, {}}, 2), cfg);
        CHECK(cont.wrong_commitment);
        CHECK_FALSE(cont.failed);
        CHECK_FALSE(cont.timed_out);
    }
}

TEST_CASE("risk sweep is deterministic and keyed to the seed") {
    Fixture fx;
    Problem p = fx.problem("blueberry_pie");
    std::vector<GoalSpec> three = {fx.problem("blueberry_pie").goal,
                                   fx.problem("sugar_cookie").goal,
                                   fx.problem("jelly_donut").goal};
    Belief prior = Belief::uniform(three, 1.0);
    EpisodeConfig cfg;
    cfg.observe_budget = 2;

    auto a = risk_sweep(p, prior, {0.1, 0.9}, 8, 42, cfg);
    auto b = risk_sweep(p, prior, {0.1, 0.9}, 8, 42, cfg);
    REQUIRE(a.rows.size() == 16);
    REQUIRE(a.aggregates.size() == 2);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].true_goal == b.rows[i].true_goal);
        CHECK(a.rows[i].steps == b.rows[i].steps);
        CHECK(a.rows[i].H_R == b.rows[i].H_R);
    }
    // the same trial index draws the same true goal at every delta
    for (int t = 0; t < 8; ++t) {
        CHECK(a.rows[t].true_goal == a.rows[8 + t].true_goal);
    }
    for (const auto& agg : a.aggregates) {
        CHECK(agg.failure_rate >= 0.0);
        CHECK(agg.failure_rate <= 1.0);
    }
}
