#include "hrc/domain_file.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hrc {

namespace {

struct Token {
    std::string text;
    int column = 1;  // 1-based position in the source line
};

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Identifier reference waiting for the end-of-file resolution pass.
struct PendingRef {
    std::string name;
    int line;
    int column;
};

}  // namespace

const DomainFile::Layout* DomainFile::find_layout(const std::string& name) const {
    for (const auto& l : layouts) {
        if (l.name == name) return &l;
    }
    return nullptr;
}

const DomainFile::Dish* DomainFile::find_dish(const std::string& name) const {
    for (const auto& d : dishes) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

DomainFile parse_domain(const std::string& text) {
    DomainFile domain;
    std::vector<PendingRef> refs;
    DomainFile::Layout* open_layout = nullptr;

    auto require_identifier = [](const Token& tok, int line_no) {
        if (!valid_identifier(tok.text)) {
            throw DomainError(DomainErrorKind::Syntax, line_no, tok.column,
                              "invalid identifier '" + tok.text + "'");
        }
    };

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        bool indented = std::isspace(static_cast<unsigned char>(raw[0])) != 0;

        const Token& head = tokens.front();
        if (indented) {
            if (head.text != "stack:") {
                throw DomainError(DomainErrorKind::Syntax, line_no, head.column,
                                  "only 'stack:' lines may be indented");
            }
            if (!open_layout) {
                throw DomainError(DomainErrorKind::Syntax, line_no, head.column,
                                  "'stack:' outside a layout section");
            }
            if (tokens.size() < 2) {
                throw DomainError(DomainErrorKind::Syntax, line_no, head.column,
                                  "'stack:' needs at least one item");
            }
            std::vector<std::string> stack;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                require_identifier(tokens[i], line_no);
                for (const auto& st : open_layout->stacks) {
                    if (std::find(st.begin(), st.end(), tokens[i].text) != st.end()) {
                        throw DomainError(DomainErrorKind::Semantic, line_no, tokens[i].column,
                                          "item '" + tokens[i].text +
                                              "' placed twice in layout '" +
                                              open_layout->name + "'");
                    }
                }
                if (std::find(stack.begin(), stack.end(), tokens[i].text) != stack.end()) {
                    throw DomainError(DomainErrorKind::Semantic, line_no, tokens[i].column,
                                      "item '" + tokens[i].text + "' placed twice in layout '" +
                                          open_layout->name + "'");
                }
                refs.push_back({tokens[i].text, line_no, tokens[i].column});
                stack.push_back(tokens[i].text);
            }
            open_layout->stacks.push_back(std::move(stack));
            continue;
        }

        open_layout = nullptr;
        if (head.text == "items:") {
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                require_identifier(tokens[i], line_no);
                if (std::find(domain.items.begin(), domain.items.end(), tokens[i].text) !=
                    domain.items.end()) {
                    throw DomainError(DomainErrorKind::Semantic, line_no, tokens[i].column,
                                      "item '" + tokens[i].text + "' declared twice");
                }
                domain.items.push_back(tokens[i].text);
            }
        } else if (head.text == "layout") {
            if (tokens.size() != 2 || tokens[1].text.empty() || tokens[1].text.back() != ':') {
                throw DomainError(DomainErrorKind::Syntax, line_no, head.column,
                                  "expected 'layout <name>:'");
            }
            Token name = tokens[1];
            name.text.pop_back();
            require_identifier(name, line_no);
            if (domain.find_layout(name.text)) {
                throw DomainError(DomainErrorKind::Semantic, line_no, name.column,
                                  "layout '" + name.text + "' declared twice");
            }
            domain.layouts.push_back({name.text, {}});
            open_layout = &domain.layouts.back();
        } else if (head.text == "dish") {
            if (tokens.size() < 2 || tokens[1].text.empty() || tokens[1].text.back() != ':') {
                throw DomainError(DomainErrorKind::Syntax, line_no, head.column,
                                  "expected 'dish <name>: <item>...'");
            }
            Token name = tokens[1];
            name.text.pop_back();
            require_identifier(name, line_no);
            if (domain.find_dish(name.text)) {
                throw DomainError(DomainErrorKind::Semantic, line_no, name.column,
                                  "dish '" + name.text + "' declared twice");
            }
            std::vector<std::string> items;
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                require_identifier(tokens[i], line_no);
                if (std::find(items.begin(), items.end(), tokens[i].text) != items.end()) {
                    throw DomainError(DomainErrorKind::Semantic, line_no, tokens[i].column,
                                      "item '" + tokens[i].text + "' repeated in dish '" +
                                          name.text + "'");
                }
                refs.push_back({tokens[i].text, line_no, tokens[i].column});
                items.push_back(tokens[i].text);
            }
            if (items.size() < 3 || items.size() > 5) {
                throw DomainError(DomainErrorKind::Semantic, line_no, name.column,
                                  "dish '" + name.text + "' must list 3 to 5 items, got " +
                                      std::to_string(items.size()));
            }
            domain.dishes.push_back({name.text, std::move(items)});
        } else {
            throw DomainError(DomainErrorKind::Syntax, line_no, head.column,
                              "unknown directive '" + head.text + "'");
        }
    }

    // References may precede the items: declaration, so resolve them last.
    for (const auto& ref : refs) {
        if (std::find(domain.items.begin(), domain.items.end(), ref.name) ==
            domain.items.end()) {
            throw DomainError(DomainErrorKind::Semantic, ref.line, ref.column,
                              "unknown item '" + ref.name + "'");
        }
    }
    return domain;
}

std::string serialize_domain(const DomainFile& domain) {
    std::ostringstream out;
    out << "items:";
    for (const auto& it : domain.items) out << ' ' << it;
    out << '\n';
    for (const auto& layout : domain.layouts) {
        out << "layout " << layout.name << ":\n";
        for (const auto& st : layout.stacks) {
            out << "  stack:";
            for (const auto& it : st) out << ' ' << it;
            out << '\n';
        }
    }
    for (const auto& dish : domain.dishes) {
        out << "dish " << dish.name << ":";
        for (const auto& it : dish.items) out << ' ' << it;
        out << '\n';
    }
    return out.str();
}

Inventory domain_inventory(const DomainFile& domain) {
    return Inventory(domain.items);
}

KitchenLayout domain_layout(const DomainFile& domain, const std::string& layout_name) {
    const auto* found = domain.find_layout(layout_name);
    if (!found) throw std::invalid_argument("unknown layout: " + layout_name);
    Inventory inv = domain_inventory(domain);
    KitchenLayout out;
    out.name = found->name;
    std::string style = lower(found->name);
    out.style = style == "organized"   ? LayoutStyle::Organized
                : style == "cluttered" ? LayoutStyle::Cluttered
                                       : LayoutStyle::Custom;
    for (const auto& st : found->stacks) {
        std::vector<ItemId> ids;
        ids.reserve(st.size());
        for (const auto& name : st) ids.push_back(inv.id_of(name));
        out.stack_assignment.push_back(std::move(ids));
    }
    return out;
}

GoalSpec domain_goal(const DomainFile& domain, const std::string& dish_name) {
    const auto* found = domain.find_dish(dish_name);
    if (!found) throw std::invalid_argument("unknown dish: " + dish_name);
    Inventory inv = domain_inventory(domain);
    GoalSpec goal;
    goal.dish_name = found->name;
    for (const auto& name : found->items) goal.required_stack.push_back(inv.id_of(name));
    return goal;
}

}  // namespace hrc
