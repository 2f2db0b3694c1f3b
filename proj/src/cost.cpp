#include "hrc/cost.hpp"

namespace hrc {

std::optional<double> signed_difference(ExtendedCost a, ExtendedCost b) {
    if (a.is_infinite() && b.is_infinite()) return std::nullopt;
    if (a.is_infinite()) return std::numeric_limits<double>::infinity();
    if (b.is_infinite()) return -std::numeric_limits<double>::infinity();
    return a.value() - b.value();
}

double CostModel::weight_for(ActionKind kind) const {
    if (kind == ActionKind::Noop) return noop_weight;
    auto it = per_action_weights.find(kind);
    if (it == per_action_weights.end()) {
        throw std::invalid_argument("cost model has no weight for action kind " + to_string(kind));
    }
    return it->second;
}

void CostModel::validate() const {
    if (noop_weight < 0.0 || std::isnan(noop_weight) || std::isinf(noop_weight)) {
        throw std::invalid_argument("noop_weight must be finite and >= 0");
    }
    for (const auto& [kind, w] : per_action_weights) {
        (void)kind;
        if (w < 0.0 || std::isnan(w) || std::isinf(w)) {
            throw std::invalid_argument("action weights must be finite and >= 0");
        }
    }
}

std::string to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::Pick: return "pick";
        case ActionKind::Place: return "place";
        case ActionKind::Noop: return "noop";
    }
    return "?";
}

}  // namespace hrc
