#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hrc/domain_file.hpp"
#include "hrc/metrics.hpp"

using namespace hrc;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Problem foodworld_problem(const std::string& layout, const std::string& dish) {
    DomainFile domain = parse_domain(default_domain_text());
    Problem p;
    p.inventory = domain_inventory(domain);
    p.initial_state = build_kitchen(domain_layout(domain, layout), p.inventory.size());
    p.goal = domain_goal(domain, dish);
    p.cost_model = CostModel::step_count();
    return p;
}

}  // namespace

TEST_CASE("helpfulness is the cost reduction, with signed infinities") {
    auto inf = ExtendedCost::infinite();
    CHECK(*helpfulness(ExtendedCost(10), ExtendedCost(6)) == 4.0);
    CHECK(*helpfulness(ExtendedCost(6), ExtendedCost(10)) == -4.0);
    CHECK(*helpfulness(inf, ExtendedCost(6)) == kInf);
    CHECK(*helpfulness(ExtendedCost(6), inf) == -kInf);
    CHECK_FALSE(helpfulness(inf, inf).has_value());  // undefined, not zero
}

TEST_CASE("relative helpfulness needs a positive finite solo optimum") {
    CHECK(*relative_helpfulness(ExtendedCost(10), ExtendedCost(6)) == doctest::Approx(0.4));
    CHECK(*relative_helpfulness(ExtendedCost(10), ExtendedCost(10)) == doctest::Approx(0.0));
    CHECK(*relative_helpfulness(ExtendedCost(10), ExtendedCost::infinite()) == -kInf);
    CHECK_FALSE(relative_helpfulness(ExtendedCost(0), ExtendedCost(0)).has_value());
    CHECK_FALSE(relative_helpfulness(ExtendedCost::infinite(), ExtendedCost(6)).has_value());
}

TEST_CASE("normalized helpfulness needs room for improvement") {
    CHECK(*normalized_helpfulness(4.0, ExtendedCost(10), ExtendedCost(6)) ==
          doctest::Approx(1.0));
    CHECK(*normalized_helpfulness(2.0, ExtendedCost(10), ExtendedCost(6)) ==
          doctest::Approx(0.5));
    // the robot cannot improve at all: denominator zero
    CHECK_FALSE(normalized_helpfulness(0.0, ExtendedCost(10), ExtendedCost(10)).has_value());
    CHECK_FALSE(normalized_helpfulness(4.0, ExtendedCost::infinite(), ExtendedCost(6)).has_value());
}

TEST_CASE("published-table identities hold for every dish and layout") {
    DomainFile domain = parse_domain(default_domain_text());
    for (const auto& layout : {"organized", "cluttered"}) {
        for (const auto& dish : domain.dishes) {
            CAPTURE(layout);
            CAPTURE(dish.name);
            Problem p = foodworld_problem(layout, dish.name);
            auto joint = plan_joint(p);
            REQUIRE(joint.has_value());
            auto r = report(p, *joint);
            REQUIRE(r.H.has_value());
            CHECK(*r.H == r.cost_solo.value() - r.cost_team.value());
            REQUIRE(r.H_N.has_value());
            CHECK(*r.H_N == doctest::Approx(1.0));  // the trace is itself optimal
            REQUIRE(r.H_R.has_value());
            CHECK(*r.H_R == doctest::Approx(*r.H / r.cost_solo.value()));
        }
    }
}

TEST_CASE("organized-kitchen reports match the published numbers") {
    Problem p = foodworld_problem("organized", "blueberry_pie");
    auto joint = plan_joint(p);
    REQUIRE(joint.has_value());
    auto r = report(p, *joint);
    CHECK(r.cost_solo.value() == 10.0);
    CHECK(r.cost_team.value() == 6.0);
    CHECK(*r.H == 4.0);
    CHECK(*r.H_N == doctest::Approx(1.0));
    CHECK(*r.H_R == doctest::Approx(0.4));

    Problem cookie = foodworld_problem("organized", "sugar_cookie");
    auto cookie_joint = plan_joint(cookie);
    REQUIRE(cookie_joint.has_value());
    auto cr = report(cookie, *cookie_joint);
    CHECK(cr.cost_solo.value() == 6.0);
    CHECK(cr.cost_team.value() == 4.0);
    CHECK(*cr.H_R == doctest::Approx(1.0 / 3.0));

    Problem fudge = foodworld_problem("organized", "fudge");
    auto fudge_joint = plan_joint(fudge);
    REQUIRE(fudge_joint.has_value());
    auto fr = report(fudge, *fudge_joint);
    CHECK(*fr.H_R == doctest::Approx(0.375));
}

TEST_CASE("a failed trace charges the human's solo finish") {
    Problem p = foodworld_problem("organized", "blueberry_pie");
    ItemId pan = p.inventory.id_of("pan");
    ItemId butter = p.inventory.id_of("butter");

    JointPlan trace;
    trace.provenance = JointProvenance::Responsive;
    trace.failed = true;
    trace.steps.push_back({PrimitiveAction::pick(AgentId::Human, pan),
                           PrimitiveAction::pick(AgentId::Robot, butter)});
    trace.total_cost = ExtendedCost(1.0);

    auto r = report(p, trace);
    // 1 step spent, then the human finishes alone in 9 (butter set back down)
    CHECK(r.cost_team.value() == 10.0);
    CHECK(*r.H == 0.0);
}

TEST_CASE("expected relative helpfulness over a plan distribution") {
    PlanDistribution dist;
    dist.entries = {{ExtendedCost(6.0), 0.5}, {ExtendedCost(5.0), 0.5}};
    auto e = expected_helpfulness(dist, ExtendedCost(10.0));
    CHECK(e.mean == doctest::Approx(0.45));
    CHECK(e.stddev == doctest::Approx(0.05));

    PlanDistribution single;
    single.entries = {{ExtendedCost(6.0), 1.0}};
    CHECK(expected_helpfulness(single, ExtendedCost(10.0)).mean == doctest::Approx(0.4));
    CHECK(expected_helpfulness(single, ExtendedCost(10.0)).stddev == doctest::Approx(0.0));

    PlanDistribution bad_sum;
    bad_sum.entries = {{ExtendedCost(6.0), 0.7}};
    CHECK_THROWS_AS(expected_helpfulness(bad_sum, ExtendedCost(10.0)), std::invalid_argument);

    PlanDistribution undefined;
    undefined.entries = {{ExtendedCost(6.0), 1.0}};
    CHECK_THROWS_AS(expected_helpfulness(undefined, ExtendedCost::infinite()),
                    std::invalid_argument);
}

TEST_CASE("scaling all costs scales H and leaves the ratios unchanged") {
    auto base = report_from_costs(ExtendedCost(10), ExtendedCost(6), ExtendedCost(6),
                                  ExtendedCost(10));
    auto scaled = report_from_costs(ExtendedCost(30), ExtendedCost(18), ExtendedCost(18),
                                    ExtendedCost(30));
    CHECK(*scaled.H == doctest::Approx(3.0 * *base.H));
    CHECK(*scaled.H_N == doctest::Approx(*base.H_N));
    CHECK(*scaled.H_R == doctest::Approx(*base.H_R));
}

TEST_CASE("monotonicity in team cost") {
    double prev_h = kInf;
    double prev_hr = kInf;
    for (double team = 2.0; team <= 14.0; team += 1.0) {
        auto r = report_from_costs(ExtendedCost(10), ExtendedCost(team), ExtendedCost(2),
                                   ExtendedCost(10));
        CHECK(*r.H <= prev_h);
        CHECK(*r.H_R <= prev_hr);
        prev_h = *r.H;
        prev_hr = *r.H_R;
    }
}
