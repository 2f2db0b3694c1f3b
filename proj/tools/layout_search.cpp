// Searches kitchen layouts whose optimal solo/joint costs match a target
// cost table. Used to reconstruct the cluttered kitchen and to check
// whether any organized variant can produce a given row.
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "hrc/domain_file.hpp"
#include "hrc/planner.hpp"

using namespace hrc;

namespace {

struct Target {
    std::string dish;
    double solo;
    double joint;
};

const std::vector<Target> kClutteredTargets = {
    {"sugar_cookie", 10, 6}, {"blueberry_pie", 16, 8}, {"fudge", 12, 6},
    {"jelly_donut", 14, 8},  {"choco_chip_cookie", 12, 6}, {"cake", 12, 6},
};

// 6 stacks of at most 3 items each, covering 12 items.
const std::vector<std::vector<int>> kPartitions = {
    {3, 3, 2, 2, 1, 1}, {3, 3, 3, 1, 1, 1}, {2, 2, 2, 2, 2, 2}, {3, 2, 2, 2, 2, 1},
};

int score_layout(const Inventory& inv, const DomainFile& dom,
                 const std::vector<std::vector<ItemId>>& stacks,
                 const std::vector<Target>& targets, int* distance) {
    WorldState s;
    s.stacks = stacks;
    int exact = 0;
    int dist = 0;
    for (const auto& t : targets) {
        Problem p{inv, s, domain_goal(dom, t.dish), CostModel::step_count()};
        auto solo = plan_single(p, AgentId::Human);
        auto joint = plan_joint(p);
        if (!solo || !joint) {
            dist += 100;
            continue;
        }
        double ds = std::abs(solo->total_cost.value() - t.solo);
        double dj = std::abs(joint->total_cost.value() - t.joint);
        if (ds == 0 && dj == 0) ++exact;
        dist += static_cast<int>(ds + dj);
    }
    if (distance) *distance = dist;
    return exact;
}

void print_layout(const Inventory& inv, const std::vector<std::vector<ItemId>>& stacks,
                  const DomainFile& dom, const std::vector<Target>& targets) {
    for (const auto& st : stacks) {
        std::printf("  stack:");
        for (ItemId it : st) std::printf(" %s", inv.name_of(it).c_str());
        std::printf("\n");
    }
    WorldState s;
    s.stacks = stacks;
    for (const auto& t : targets) {
        Problem p{inv, s, domain_goal(dom, t.dish), CostModel::step_count()};
        auto solo = plan_single(p, AgentId::Human);
        auto joint = plan_joint(p);
        std::printf("  # %-18s solo %2.0f (want %2.0f)  joint %2.0f (want %2.0f)\n",
                    t.dish.c_str(), solo->total_cost.raw(), t.solo, joint->total_cost.raw(),
                    t.joint);
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
    int rounds = argc > 2 ? std::atoi(argv[2]) : 2000;

    DomainFile dom = parse_domain(default_domain_text());
    Inventory inv = domain_inventory(dom);
    std::mt19937_64 rng(seed);

    std::vector<ItemId> order(inv.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<ItemId>(i);

    auto make_stacks = [&](const std::vector<ItemId>& perm, const std::vector<int>& part) {
        std::vector<std::vector<ItemId>> stacks;
        std::size_t at = 0;
        for (int sz : part) {
            stacks.emplace_back(perm.begin() + at, perm.begin() + at + sz);
            at += static_cast<std::size_t>(sz);
        }
        return stacks;
    };

    int best_exact = -1;
    int best_dist = 1 << 20;
    std::vector<std::vector<ItemId>> best_stacks;

    for (const auto& part : kPartitions) {
        // hill climbing with restarts over item permutations
        for (int restart = 0; restart < 8; ++restart) {
            std::vector<ItemId> perm = order;
            for (std::size_t i = perm.size() - 1; i > 0; --i) {
                std::swap(perm[i], perm[rng() % (i + 1)]);
            }
            int cur_dist;
            int cur_exact = score_layout(inv, dom, make_stacks(perm, part),
                                         kClutteredTargets, &cur_dist);
            for (int it = 0; it < rounds; ++it) {
                std::size_t a = rng() % perm.size();
                std::size_t b = rng() % perm.size();
                if (a == b) continue;
                std::swap(perm[a], perm[b]);
                int d;
                int e = score_layout(inv, dom, make_stacks(perm, part), kClutteredTargets, &d);
                if (e > cur_exact || (e == cur_exact && d <= cur_dist)) {
                    cur_exact = e;
                    cur_dist = d;
                } else {
                    std::swap(perm[a], perm[b]);
                }
            }
            if (cur_exact > best_exact || (cur_exact == best_exact && cur_dist < best_dist)) {
                best_exact = cur_exact;
                best_dist = cur_dist;
                best_stacks = make_stacks(perm, part);
                std::printf("new best: %d exact rows, distance %d\n", best_exact, best_dist);
                print_layout(inv, best_stacks, dom, kClutteredTargets);
                std::fflush(stdout);
            }
        }
    }
    std::printf("\nfinal best (%d exact, distance %d):\n", best_exact, best_dist);
    print_layout(inv, best_stacks, dom, kClutteredTargets);
    return 0;
}
