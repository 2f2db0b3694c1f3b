#ifndef HRC_DOMAIN_FILE_HPP
#define HRC_DOMAIN_FILE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "hrc/world.hpp"

namespace hrc {

/// Parsed representation of a domain file. Line-oriented grammar, `#` starts
/// a comment anywhere:
///   items: <id>+
///   layout <name>:
///     stack: <id>+        (bottom-to-top, indented under its layout)
///   dish <name>: <id>+    (bottom-to-top, 3 to 5 items)
struct DomainFile {
    struct Layout {
        std::string name;
        std::vector<std::vector<std::string>> stacks;
    };
    struct Dish {
        std::string name;
        std::vector<std::string> items;
    };

    std::vector<std::string> items;
    std::vector<Layout> layouts;
    std::vector<Dish> dishes;

    const Layout* find_layout(const std::string& name) const;
    const Dish* find_dish(const std::string& name) const;
};

enum class DomainErrorKind { Syntax, Semantic };

class DomainError : public std::runtime_error {
public:
    DomainError(DomainErrorKind kind, int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          kind_(kind),
          line_(line),
          column_(column) {}

    DomainErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    DomainErrorKind kind_;
    int line_;
    int column_;
};

DomainFile parse_domain(const std::string& text);
std::string serialize_domain(const DomainFile& domain);

Inventory domain_inventory(const DomainFile& domain);
/// Layout names "organized"/"cluttered" (case-insensitive) carry their
/// style invariants; other names are custom.
KitchenLayout domain_layout(const DomainFile& domain, const std::string& layout_name);
GoalSpec domain_goal(const DomainFile& domain, const std::string& dish_name);

/// The shipped Foodworld domain (also installed as data/foodworld.domain).
const std::string& default_domain_text();

}  // namespace hrc

#endif
