#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pillai/rational.hpp"

namespace pillai {

struct BoundParams {
    long genus = 0;   // 0 for Q(x); larger values are for formula testing only
    long s_size = 1;  // |S|
};

// Ledger of every named constant computed on the way to a final enumeration
// bound. All entries are exact rationals; the single rounding step is the
// floor from `final` to `enumeration_limit`.
struct BoundReport {
    std::string theorem;  // "T1" | "T2" | "T3" | "Corollary" | "Lemma2"
    std::vector<std::pair<std::string, Rational>> constants;
    std::vector<std::string> case_trace;
    Rational final = 0;
    long enumeration_limit = 0;
    std::vector<std::string> sub_labels;
    std::vector<BoundReport> sub_reports;

    void set_constant(std::string name, Rational value) {
        constants.emplace_back(std::move(name), std::move(value));
    }

    const Rational* constant(std::string_view name) const {
        for (const auto& [k, v] : constants) {
            if (k == name) return &v;
        }
        return nullptr;
    }

    void add_sub(std::string label, BoundReport report) {
        sub_labels.push_back(std::move(label));
        sub_reports.push_back(std::move(report));
    }

    void finalize(Rational value) {
        final = std::move(value);
        enumeration_limit = std::max(0L, floor_to_long(final));
    }
};

}  // namespace pillai
