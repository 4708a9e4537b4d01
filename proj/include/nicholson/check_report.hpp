#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nicholson {

/// One certified condition. `margin >= 0` exactly when `pass` holds.
struct CheckItem {
    std::string name;
    bool pass = false;
    double margin = 0.0;
    std::string formula;
    /// Advisory items are reported but do not decide `CheckReport::all_pass`.
    bool advisory = false;
};

/// Non-strict condition `margin >= 0`.
CheckItem make_item(std::string name, double margin, std::string formula, bool advisory = false);

/// Strict condition `margin > 0`. A margin of exactly zero is reported as -denorm_min
/// so the sign still matches the outcome.
CheckItem make_strict_item(std::string name, double margin, std::string formula,
                           bool advisory = false);

class CheckReport {
public:
    CheckReport() = default;
    explicit CheckReport(std::vector<CheckItem> items) : items_(std::move(items)) {}

    void add(CheckItem item) { items_.push_back(std::move(item)); }
    void append(const CheckReport& other);

    const std::vector<CheckItem>& items() const noexcept { return items_; }

    /// True when every non-advisory item passes.
    bool all_pass() const noexcept;

    /// Throws std::out_of_range when absent.
    const CheckItem& at(const std::string& name) const;
    bool contains(const std::string& name) const noexcept;

    std::vector<std::string> failed_required() const;

private:
    std::vector<CheckItem> items_;
};

/// One line per item: name, PASS/FAIL, margin (17 significant digits), formula.
void print_report(std::ostream& os, const CheckReport& report);

}  // namespace nicholson
