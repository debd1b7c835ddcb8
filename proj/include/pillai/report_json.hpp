#pragma once

#include <string>

#include <json.hpp>

#include "pillai/bound_report.hpp"
#include "pillai/config.hpp"
#include "pillai/recurrence.hpp"
#include "pillai/solver.hpp"

namespace pillai {

// Reports are emitted as one ordered JSON object per run. Field order is fixed
// by construction and all lists are sorted upstream, so identical inputs give
// byte-identical output.
using Json = nlohmann::ordered_json;

inline Json bound_json(const BoundReport& r) {
    Json j;
    j["theorem"] = r.theorem;
    Json constants = Json::object();
    for (const auto& [name, value] : r.constants) constants[name] = to_string(value);
    j["constants"] = std::move(constants);
    j["case_trace"] = r.case_trace;
    j["final"] = to_string(r.final);
    j["enumeration_limit"] = r.enumeration_limit;
    if (!r.sub_reports.empty()) {
        Json subs = Json::object();
        for (std::size_t i = 0; i < r.sub_reports.size(); ++i) {
            subs[r.sub_labels[i]] = bound_json(r.sub_reports[i]);
        }
        j["sub_reports"] = std::move(subs);
    }
    return j;
}

inline Json hypothesis_json(const HypothesisReport& r) {
    Json j;
    j["theorem"] = r.theorem;
    j["passed"] = r.passed;
    j["violations"] = r.violations;
    if (r.dominant_place && r.basis) {
        j["dominant_place"] = r.basis->place_str(*r.dominant_place);
    } else {
        j["dominant_place"] = nullptr;
    }
    j["N0"] = r.shift_g;
    j["N1"] = r.shift_h;
    return j;
}

inline Json recurrence_json(const Recurrence& rec) {
    Json terms = Json::array();
    for (const Term& t : rec.terms()) {
        Json term;
        term["a"] = t.coeff.str();
        term["alpha"] = t.root.str();
        terms.push_back(std::move(term));
    }
    return terms;
}

inline Json offsets_json(const std::pair<long, long>& offsets) {
    Json j;
    j["G"] = offsets.first;
    j["H"] = offsets.second;
    return j;
}

inline Json pairs_json(const std::vector<std::pair<long, long>>& pairs) {
    Json arr = Json::array();
    for (const auto& [n, m] : pairs) arr.push_back(Json::array({n, m}));
    return arr;
}

inline Json inputs_json(const ProblemConfig& cfg) {
    Json j;
    j["mode"] = cfg.mode;
    j["genus"] = cfg.genus;
    j["G"] = recurrence_json(cfg.build_g());
    j["H"] = recurrence_json(cfg.build_h());
    if (cfg.f) j["f"] = cfg.build_f().str();
    return j;
}

inline Json solution_set_json(const ProblemConfig& cfg, const SolutionSet& s) {
    Json j;
    j["kind"] = "solution_set";
    j["inputs"] = inputs_json(cfg);
    if (s.hypotheses) j["hypotheses"] = hypothesis_json(*s.hypotheses);
    j["bound"] = bound_json(s.bound);
    j["offsets"] = offsets_json(s.offsets);
    j["solutions"] = pairs_json(s.solutions);
    return j;
}

inline Json double_rep_json(const ProblemConfig& cfg, const DoubleRepSet& s) {
    Json j;
    j["kind"] = "double_representation_set";
    j["inputs"] = inputs_json(cfg);
    j["hypotheses"] = hypothesis_json(s.hypotheses);
    j["bound"] = bound_json(s.bound);
    j["offsets"] = offsets_json(s.offsets);
    Json collisions = Json::array();
    for (const DoubleRep& rep : s.collisions) {
        Json entry;
        entry["f"] = rep.value.str();
        entry["representations"] = pairs_json(rep.representations);
        collisions.push_back(std::move(entry));
    }
    j["collisions"] = std::move(collisions);
    return j;
}

}  // namespace pillai
