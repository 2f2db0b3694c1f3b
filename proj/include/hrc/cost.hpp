#ifndef HRC_COST_HPP
#define HRC_COST_HPP

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace hrc {

/// Non-negative plan cost, or infinity for "no plan exists".
class ExtendedCost {
public:
    ExtendedCost() : value_(0.0) {}
    explicit ExtendedCost(double v) : value_(v) {
        if (std::isnan(v) || v < 0.0) {
            throw std::invalid_argument("ExtendedCost must be >= 0");
        }
    }

    static ExtendedCost infinite() {
        ExtendedCost c;
        c.value_ = std::numeric_limits<double>::infinity();
        return c;
    }

    bool is_infinite() const { return std::isinf(value_); }
    bool is_finite() const { return !is_infinite(); }
    /// Finite value; throws if infinite.
    double value() const {
        if (is_infinite()) throw std::logic_error("infinite cost has no finite value");
        return value_;
    }
    /// Raw value, infinity allowed.
    double raw() const { return value_; }

    friend bool operator==(ExtendedCost a, ExtendedCost b) { return a.value_ == b.value_; }
    friend bool operator!=(ExtendedCost a, ExtendedCost b) { return !(a == b); }
    friend bool operator<(ExtendedCost a, ExtendedCost b) { return a.value_ < b.value_; }
    friend bool operator<=(ExtendedCost a, ExtendedCost b) { return a.value_ <= b.value_; }
    friend bool operator>(ExtendedCost a, ExtendedCost b) { return b < a; }
    friend bool operator>=(ExtendedCost a, ExtendedCost b) { return b <= a; }

    friend ExtendedCost operator+(ExtendedCost a, ExtendedCost b) {
        ExtendedCost c;
        c.value_ = a.value_ + b.value_;
        return c;
    }

private:
    double value_;
};

/// a - b as a signed extended real. Undefined (nullopt) when both are infinite:
/// the task is impossible with or without the robot.
std::optional<double> signed_difference(ExtendedCost a, ExtendedCost b);

enum class ActionKind { Pick, Place, Noop };

enum class CostMode { StepCount, WeightedActions, HumanOnly };

/// How a plan's steps aggregate into a cost. StepCount charges one unit per
/// step (per joint step for team plans). WeightedActions sums per-action
/// weights over all actors. HumanOnly sums weights over the human's actions
/// only, with a configurable no-op weight.
struct CostModel {
    CostMode mode = CostMode::StepCount;
    std::map<ActionKind, double> per_action_weights;
    double noop_weight = 0.0;

    static CostModel step_count() { return CostModel{}; }

    double weight_for(ActionKind kind) const;
    void validate() const;
};

std::string to_string(ActionKind kind);

}  // namespace hrc

#endif
