// Command-line frontend: optimal plans, the helpfulness table, responsive
// episode traces, and Monte Carlo risk sweeps, all as CSV or plain text.
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hrc/domain_file.hpp"
#include "hrc/interaction.hpp"
#include "hrc/metrics.hpp"

using namespace hrc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitRecognitionFailure = 3;

std::string shortest_decimal(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Costs: integers under step counting, shortest round-trip otherwise.
std::string format_cost(ExtendedCost c, const CostModel& model) {
    if (c.is_infinite()) return "inf";
    double v = c.value();
    if (model.mode == CostMode::StepCount && v == std::floor(v)) {
        return std::to_string(static_cast<long long>(v));
    }
    return shortest_decimal(v);
}

std::string format_metric(const std::optional<double>& m) {
    if (!m) return "undefined";
    if (std::isinf(*m)) return *m > 0 ? "inf" : "-inf";
    return shortest_decimal(*m);
}

// Table mode prints repeating decimals rounded to 3 places (0.333, 0.429),
// with trailing zeros stripped (0.4, 1).
std::string format_metric_rounded(const std::optional<double>& m) {
    if (!m || std::isinf(*m)) return format_metric(m);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", *m);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

DomainFile load_domain(const std::string& path) {
    if (path.empty()) return parse_domain(default_domain_text());
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot open domain file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_domain(buffer.str());
}

Problem make_problem(const DomainFile& domain, const std::string& layout,
                     const std::string& dish) {
    Problem p;
    p.inventory = domain_inventory(domain);
    p.initial_state = build_kitchen(domain_layout(domain, layout), p.inventory.size());
    p.goal = domain_goal(domain, dish);
    p.cost_model = CostModel::step_count();
    return p;
}

// Writes to `out_path` when given, stdout otherwise.
int emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path);
    if (!out.good()) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitUsage;
    }
    out << text;
    return kExitOk;
}

std::vector<double> parse_delta_grid(const std::string& grid) {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(grid);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0 ||
        hi < lo) {
        throw CLI::ValidationError("--delta-grid", "expected a:b:step with step > 0 and b >= a");
    }
    std::vector<double> deltas;
    for (int i = 0;; ++i) {
        double d = lo + step * i;
        if (d > hi + 1e-9) break;
        deltas.push_back(std::min(d, hi));
    }
    return deltas;
}

int cmd_plan(const DomainFile& domain, const std::string& layout, const std::string& dish,
             const std::string& agents, const std::string& out_path) {
    Problem p = make_problem(domain, layout, dish);
    std::ostringstream out;
    if (agents == "solo") {
        auto plan = plan_single(p, AgentId::Human);
        if (!plan) {
            std::cerr << "no solution: the human alone cannot assemble " << dish << "\n";
            return kExitNoSolution;
        }
        for (std::size_t i = 0; i < plan->steps.size(); ++i) {
            out << (i + 1) << ". " << to_string(plan->steps[i], p.inventory) << "\n";
        }
        out << "cost: " << format_cost(plan->total_cost, p.cost_model) << "\n";
    } else {
        auto plan = plan_joint(p);
        if (!plan) {
            std::cerr << "no solution: the team cannot assemble " << dish << "\n";
            return kExitNoSolution;
        }
        for (std::size_t i = 0; i < plan->steps.size(); ++i) {
            out << (i + 1) << ". human: " << to_string(plan->steps[i].human_action, p.inventory)
                << " | robot: " << to_string(plan->steps[i].robot_action, p.inventory) << "\n";
        }
        out << "cost: " << format_cost(plan->total_cost, p.cost_model) << "\n";
    }
    return emit(out_path, out.str());
}

int cmd_table(const DomainFile& domain, const std::string& out_path) {
    std::ostringstream out;
    out << "layout,dish,cost_solo,cost_team,H,H_N,H_R\n";
    for (const auto& layout : domain.layouts) {
        for (const auto& dish : domain.dishes) {
            Problem p = make_problem(domain, layout.name, dish.name);
            auto joint = plan_joint(p);
            if (!joint) {
                std::cerr << "no solution: " << dish.name << " in layout " << layout.name
                          << "\n";
                return kExitNoSolution;
            }
            auto r = report(p, *joint);
            out << layout.name << ',' << dish.name << ','
                << format_cost(r.cost_solo, p.cost_model) << ','
                << format_cost(r.cost_team, p.cost_model) << ',' << format_metric(r.H) << ','
                << format_metric_rounded(r.H_N) << ',' << format_metric_rounded(r.H_R) << "\n";
        }
    }
    return emit(out_path, out.str());
}

int cmd_respond(const DomainFile& domain, const std::string& layout, const std::string& dish,
                int observe_budget, double beta, const std::string& out_path) {
    Problem p = make_problem(domain, layout, dish);
    std::vector<GoalSpec> goals;
    for (const auto& d : domain.dishes) goals.push_back(domain_goal(domain, d.name));
    Belief prior = Belief::uniform(goals, beta);

    EpisodeConfig cfg;
    cfg.observe_budget = observe_budget;
    cfg.beta = beta;
    EpisodeTrace ep = simulate_episode(p, p.goal, prior, make_default_human(),
                                       make_responsive_robot(observe_budget), cfg);
    if (ep.timed_out || ep.robot_stuck) {
        std::cerr << "no solution: the episode did not reach the goal\n";
        return kExitNoSolution;
    }

    std::ostringstream out;
    out << "step,remaining_solo_cost,remaining_team_cost,H,H_N,H_R\n";
    for (const auto& snap : ep.snapshots) {
        out << snap.step << ',' << format_cost(snap.remaining_solo, p.cost_model) << ','
            << format_cost(snap.remaining_team, p.cost_model) << ',' << format_metric(snap.H)
            << ',' << format_metric(snap.H_N) << ',' << format_metric(snap.H_R) << "\n";
    }
    return emit(out_path, out.str());
}

int cmd_risk_sweep(const DomainFile& domain, const std::string& layout,
                   std::vector<std::string> dishes, const std::string& grid, int trials,
                   std::uint64_t seed, int observe_budget, double beta,
                   const std::string& out_path) {
    if (dishes.empty()) {
        for (const auto& d : domain.dishes) dishes.push_back(d.name);
    }
    Problem p = make_problem(domain, layout, dishes.front());
    std::vector<GoalSpec> goals;
    for (const auto& name : dishes) goals.push_back(domain_goal(domain, name));
    Belief prior = Belief::uniform(goals, beta);

    EpisodeConfig cfg;
    cfg.observe_budget = observe_budget;
    cfg.beta = beta;
    SweepResult sweep = risk_sweep(p, prior, parse_delta_grid(grid), trials, seed, cfg);

    std::ostringstream rows;
    rows << "delta,trial,true_goal,steps,failed,H,H_N,H_R\n";
    for (const auto& row : sweep.rows) {
        rows << shortest_decimal(row.delta) << ',' << row.trial << ',' << row.true_goal << ','
             << row.steps << ',' << (row.failed ? 1 : 0) << ',' << format_metric(row.H) << ','
             << format_metric(row.H_N) << ',' << format_metric(row.H_R) << "\n";
    }
    std::ostringstream agg;
    agg << "delta,mean_HR,std_HR,failure_rate\n";
    for (const auto& a : sweep.aggregates) {
        agg << shortest_decimal(a.delta) << ',' << shortest_decimal(a.mean_HR) << ','
            << shortest_decimal(a.std_HR) << ',' << shortest_decimal(a.failure_rate) << "\n";
    }

    if (out_path.empty()) {
        std::cout << rows.str() << "\n" << agg.str();
        return kExitOk;
    }
    // per-trial rows at the given path, aggregates alongside it
    std::string agg_path = out_path;
    if (auto dot = agg_path.rfind('.'); dot != std::string::npos) {
        agg_path.insert(dot, ".aggregate");
    } else {
        agg_path += ".aggregate";
    }
    int rc = emit(out_path, rows.str());
    if (rc != kExitOk) return rc;
    return emit(agg_path, agg.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Foodworld helpfulness toolkit"};
    app.require_subcommand(1);

    std::string domain_path;
    std::string layout = "organized";
    std::string dish;
    std::string agents = "solo";
    std::string delta_grid = "0:1:0.1";
    std::string out_path;
    std::vector<std::string> sweep_dishes;
    int observe_budget = 2;
    double alpha = 1.0;
    double beta = 1.0;
    int trials = 50;
    std::uint64_t seed = 0;

    auto add_domain = [&](CLI::App* cmd) {
        cmd->add_option("--domain", domain_path, "Domain file (built-in Foodworld by default)");
        cmd->add_option("--out", out_path, "Write output to this file instead of stdout");
    };

    CLI::App* plan = app.add_subcommand("plan", "Print an optimal plan and its cost");
    add_domain(plan);
    plan->add_option("--layout", layout, "Kitchen layout name")->capture_default_str();
    plan->add_option("--dish", dish, "Dish to assemble")->required();
    plan->add_option("--agents", agents, "solo or joint")
        ->check(CLI::IsMember({"solo", "joint"}))
        ->capture_default_str();

    CLI::App* table = app.add_subcommand("table", "Helpfulness table over all dishes and layouts");
    add_domain(table);

    CLI::App* respond = app.add_subcommand("respond", "Per-step metrics of a responsive episode");
    add_domain(respond);
    respond->add_option("--layout", layout, "Kitchen layout name")->capture_default_str();
    respond->add_option("--dish", dish, "The human's true dish")->required();
    respond->add_option("--observe-budget", observe_budget, "Observations before the robot acts")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    respond->add_option("--alpha", alpha, "Expected human share used for plan tie-breaking")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    respond->add_option("--beta", beta, "Goal recognition sharpness")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    CLI::App* sweep = app.add_subcommand("risk-sweep", "Monte Carlo sweep over risk bounds");
    add_domain(sweep);
    sweep->add_option("--layout", layout, "Kitchen layout name")->capture_default_str();
    sweep->add_option("--dish", sweep_dishes,
                      "Candidate dish (repeatable; all dishes by default)");
    sweep->add_option("--delta-grid", delta_grid, "Risk bounds as a:b:step")
        ->capture_default_str();
    sweep->add_option("--trials", trials, "Episodes per risk bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--seed", seed, "Random seed (results are reproducible)")->required();
    sweep->add_option("--observe-budget", observe_budget, "Observations before the robot acts")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sweep->add_option("--beta", beta, "Goal recognition sharpness")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        DomainFile dom = load_domain(domain_path);
        if (plan->parsed()) return cmd_plan(dom, layout, dish, agents, out_path);
        if (table->parsed()) return cmd_table(dom, out_path);
        if (respond->parsed()) {
            return cmd_respond(dom, layout, dish, observe_budget, beta, out_path);
        }
        return cmd_risk_sweep(dom, layout, sweep_dishes, delta_grid, trials, seed,
                              observe_budget, beta, out_path);
    } catch (const RecognitionFailure& e) {
        std::cerr << "recognition failure: " << e.what() << "\n";
        return kExitRecognitionFailure;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
