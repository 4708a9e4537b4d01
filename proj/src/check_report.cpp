#include "nicholson/check_report.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace nicholson {

CheckItem make_item(std::string name, double margin, std::string formula, bool advisory) {
    return CheckItem{std::move(name), margin >= 0.0, margin, std::move(formula), advisory};
}

CheckItem make_strict_item(std::string name, double margin, std::string formula, bool advisory) {
    if (margin == 0.0) {
        margin = -std::numeric_limits<double>::denorm_min();
    }
    return CheckItem{std::move(name), margin > 0.0, margin, std::move(formula), advisory};
}

void CheckReport::append(const CheckReport& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

bool CheckReport::all_pass() const noexcept {
    return std::all_of(items_.begin(), items_.end(),
                       [](const CheckItem& i) { return i.advisory || i.pass; });
}

const CheckItem& CheckReport::at(const std::string& name) const {
    auto it = std::find_if(items_.begin(), items_.end(),
                           [&](const CheckItem& i) { return i.name == name; });
    if (it == items_.end()) {
        throw std::out_of_range("no check item named '" + name + "'");
    }
    return *it;
}

bool CheckReport::contains(const std::string& name) const noexcept {
    return std::any_of(items_.begin(), items_.end(),
                       [&](const CheckItem& i) { return i.name == name; });
}

std::vector<std::string> CheckReport::failed_required() const {
    std::vector<std::string> out;
    for (const auto& i : items_) {
        if (!i.advisory && !i.pass) out.push_back(i.name);
    }
    return out;
}

void print_report(std::ostream& os, const CheckReport& report) {
    char buf[64];
    for (const auto& i : report.items()) {
        std::snprintf(buf, sizeof buf, "%.17g", i.margin);
        os << i.name << ' ' << (i.pass ? "PASS" : "FAIL") << (i.advisory ? " (advisory)" : "")
           << " margin=" << buf << "  [" << i.formula << "]\n";
    }
}

}  // namespace nicholson
