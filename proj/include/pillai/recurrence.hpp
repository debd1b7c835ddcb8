#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pillai/errors.hpp"
#include "pillai/independence.hpp"
#include "pillai/places.hpp"
#include "pillai/ratfunc.hpp"

namespace pillai {

struct Term {
    RatFunc coeff;  // a_i
    RatFunc root;   // alpha_i
};

// Simple linear recurrence in root/coefficient form: value at n is
// sum of coeff_i * root_i^n over the stored terms. `offset` records how many
// leading indices were discarded by preparatory shifts; reported solutions are
// in the shifted indexing and the caller translates by the offset.
class Recurrence {
public:
    Recurrence(std::vector<Term> terms, long offset = 0)
        : terms_(std::move(terms)), offset_(offset) {
        if (terms_.empty()) {
            throw DomainError(ErrorKind::InvalidArgument, "recurrence needs at least one term");
        }
        if (offset_ < 0) {
            throw DomainError(ErrorKind::InvalidArgument, "negative recurrence offset");
        }
        for (const Term& t : terms_) {
            if (t.coeff.is_zero() || t.root.is_zero()) {
                throw DomainError(ErrorKind::ZeroTerm, "zero coefficient or characteristic root");
            }
        }
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            for (std::size_t j = i + 1; j < terms_.size(); ++j) {
                if (terms_[i].root == terms_[j].root) {
                    throw DomainError(ErrorKind::DuplicateRoot,
                                      "characteristic roots must be pairwise distinct");
                }
            }
        }
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t order() const { return terms_.size(); }
    long offset() const { return offset_; }

    RatFunc eval(long n) const {
        if (n < 1) throw DomainError(ErrorKind::InvalidArgument, "recurrence index must be >= 1");
        RatFunc acc;
        for (const Term& t : terms_) acc = acc + t.coeff * t.root.pow(n);
        return acc;
    }

    bool is_polynomial() const {
        for (const Term& t : terms_) {
            if (!t.coeff.is_polynomial() || !t.root.is_polynomial()) return false;
        }
        return true;
    }

    std::vector<RatFunc> elements() const {
        std::vector<RatFunc> out;
        out.reserve(2 * terms_.size());
        for (const Term& t : terms_) {
            out.push_back(t.coeff);
            out.push_back(t.root);
        }
        return out;
    }

    Recurrence with_term_order(const std::vector<std::size_t>& order) const {
        std::vector<Term> reordered;
        reordered.reserve(terms_.size());
        for (std::size_t i : order) reordered.push_back(terms_.at(i));
        return Recurrence(std::move(reordered), offset_);
    }

private:
    std::vector<Term> terms_;
    long offset_;
};

// Discards the first k indices: coefficients absorb root^k and the offset
// grows by k, so eval(shifted, n) = eval(original, n + k).
inline Recurrence apply_shift(const Recurrence& g, long k) {
    if (k < 0) throw DomainError(ErrorKind::InvalidArgument, "shift must be nonnegative");
    if (k == 0) return g;
    std::vector<Term> terms;
    terms.reserve(g.order());
    for (const Term& t : g.terms()) terms.push_back({t.coeff * t.root.pow(k), t.root});
    return Recurrence(std::move(terms), g.offset() + k);
}

struct HypothesisReport {
    std::string theorem;  // "T1" | "T2" | "T3"
    bool passed = false;
    std::vector<std::string> violations;
    std::optional<Place> dominant_place;
    std::shared_ptr<const PlaceBasis> basis;  // interprets dominant_place
    long shift_g = 0;                         // N0: indices discarded from G
    long shift_h = 0;                         // N1: indices discarded from H

    void add_violation(std::string v) { violations.push_back(std::move(v)); }
    void settle() { passed = violations.empty(); }
};

class HypothesisViolation : public Error {
public:
    explicit HypothesisViolation(HypothesisReport report)
        : Error(describe(report)), report_(std::move(report)) {}

    const HypothesisReport& report() const { return report_; }

private:
    static std::string describe(const HypothesisReport& r) {
        std::string msg = "hypotheses for " + r.theorem + " violated";
        for (const std::string& v : r.violations) msg += "; " + v;
        return msg;
    }

    HypothesisReport report_;
};

namespace detail {

inline bool is_constant_element(const RatFunc& f) { return finite_height(f) == 0; }

inline std::string term_name(const char* family, std::size_t index) {
    return std::string(family) + "_" + std::to_string(index + 1);
}

// Root and root-ratio non-constancy for one recurrence family.
inline void check_family_roots(const Recurrence& g, const char* family, HypothesisReport& report) {
    const auto& terms = g.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (is_constant_element(terms[i].root)) {
            report.add_violation(term_name(family, i) + " in C");
        }
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            if (is_constant_element(terms[i].root / terms[j].root)) {
                report.add_violation("ratio " + term_name(family, i) + "/" + term_name(family, j) +
                                     " in C");
            }
        }
    }
}

}  // namespace detail

// No root and no distinct-index root ratio of either recurrence may be
// constant.
inline HypothesisReport check_theorem1_hypotheses(const Recurrence& g, const Recurrence& h) {
    HypothesisReport report;
    report.theorem = "T1";
    detail::check_family_roots(g, "alpha", report);
    detail::check_family_roots(h, "beta", report);
    report.settle();
    return report;
}

struct DominantRootResult {
    std::size_t index;  // position in the input term order
    Place place;
    std::shared_ptr<const PlaceBasis> basis;
    long root_valuation;
    Recurrence reordered;  // dominant term moved to the front
};

namespace detail {

// Index whose root valuation is strictly below every other root's and below
// zero; for order one the condition is vacuous but a pole place is still
// required so the result is usable downstream.
inline std::optional<std::size_t> dominant_index_at(const Recurrence& g, const Place& place,
                                                    const PlaceBasis& basis, bool vacuous_order_one) {
    const auto& terms = g.terms();
    if (terms.size() == 1) {
        if (vacuous_order_one) return 0;
        return valuation(terms[0].root, place, basis) < 0 ? std::optional<std::size_t>(0)
                                                          : std::nullopt;
    }
    std::size_t best = 0;
    long best_val = valuation(terms[0].root, place, basis);
    bool unique = true;
    for (std::size_t i = 1; i < terms.size(); ++i) {
        long v = valuation(terms[i].root, place, basis);
        if (v < best_val) {
            best = i;
            best_val = v;
            unique = true;
        } else if (v == best_val) {
            unique = false;
        }
    }
    if (unique && best_val < 0) return best;
    return std::nullopt;
}

inline std::vector<std::size_t> front_order(std::size_t n, std::size_t first) {
    std::vector<std::size_t> order;
    order.reserve(n);
    order.push_back(first);
    for (std::size_t i = 0; i < n; ++i) {
        if (i != first) order.push_back(i);
    }
    return order;
}

}  // namespace detail

// Searches every cluster of the joint basis of roots and coefficients, plus
// infinity, for a place where one root dominates. Among candidates the result
// minimizes the dominant valuation; ties prefer the lower root index, then the
// earlier place in scan order.
inline std::optional<DominantRootResult> find_nu_dominant(const Recurrence& g) {
    auto basis = std::make_shared<PlaceBasis>(gcd_free_basis(g.elements()));
    std::optional<DominantRootResult> best;
    for (const Place& place : basis->places()) {
        auto idx = detail::dominant_index_at(g, place, *basis, /*vacuous_order_one=*/false);
        if (!idx) continue;
        long v = valuation(g.terms()[*idx].root, place, *basis);
        if (!best || v < best->root_valuation ||
            (v == best->root_valuation && *idx < best->index)) {
            best = DominantRootResult{*idx, place, basis, v,
                                      g.with_term_order(detail::front_order(g.order(), *idx))};
        }
    }
    return best;
}

// Smallest N such that the first term's valuation is strictly least for every
// n > N. The per-competitor threshold is the floor of the crossover ratio.
inline long immediate_effect_threshold(const Recurrence& g, const Place& place,
                                       const PlaceBasis& basis) {
    const auto& terms = g.terms();
    if (terms.size() == 1) return 0;
    long v_root0 = valuation(terms[0].root, place, basis);
    long v_coeff0 = valuation(terms[0].coeff, place, basis);
    long threshold = 0;
    for (std::size_t i = 1; i < terms.size(); ++i) {
        long dv = valuation(terms[i].root, place, basis) - v_root0;
        if (dv <= 0) {
            throw DomainError(ErrorKind::NotDominant, "first root is not dominant at this place");
        }
        long da = v_coeff0 - valuation(terms[i].coeff, place, basis);
        threshold = std::max(threshold, floor_to_long(make_rational(da, dv)));
    }
    if (v_root0 >= 0) {
        throw DomainError(ErrorKind::NotDominant, "dominant root needs negative valuation");
    }
    return threshold;
}

// Smallest N after which the degree order of the roots transfers to the degree
// order of the full terms, for polynomial recurrences.
inline long weak_coefficients_threshold(const Recurrence& g) {
    if (!g.is_polynomial()) {
        throw DomainError(ErrorKind::NonPolynomialInput, "weak coefficients need polynomial terms");
    }
    const auto& terms = g.terms();
    long threshold = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j) {
            long dr = terms[i].root.num().degree() - terms[j].root.num().degree();
            if (dr <= 0) continue;
            long da = terms[j].coeff.num().degree() - terms[i].coeff.num().degree();
            threshold = std::max(threshold, floor_to_long(make_rational(da, dr)));
        }
    }
    return threshold;
}

namespace detail {

inline std::pair<long, long> relevance_key(const Term& t) {
    return {t.root.num().degree(), t.coeff.num().degree()};
}

}  // namespace detail

// Indices whose term degree is maximal for all large n: the lexicographic
// maximum of (deg root, deg coeff). Input order, ascending.
inline std::vector<std::size_t> relevant_indices(const Recurrence& g) {
    if (!g.is_polynomial()) {
        throw DomainError(ErrorKind::NonPolynomialInput, "relevant set needs polynomial terms");
    }
    auto best = detail::relevance_key(g.terms()[0]);
    for (const Term& t : g.terms()) best = std::max(best, detail::relevance_key(t));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.order(); ++i) {
        if (detail::relevance_key(g.terms()[i]) == best) out.push_back(i);
    }
    return out;
}

struct RelevanceOrdering {
    Recurrence ordered;
    std::size_t relevant_count;
};

// Terms sorted by (deg root desc, deg coeff desc, original index asc); the
// relevant set occupies the first `relevant_count` positions.
inline RelevanceOrdering order_by_relevance(const Recurrence& g) {
    if (!g.is_polynomial()) {
        throw DomainError(ErrorKind::NonPolynomialInput, "relevant set needs polynomial terms");
    }
    std::vector<std::size_t> order(g.order());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return detail::relevance_key(g.terms()[a]) > detail::relevance_key(g.terms()[b]);
    });
    return RelevanceOrdering{g.with_term_order(order), relevant_indices(g).size()};
}

// Injectivity of n -> value on [1, up_to], by canonical-form comparison.
inline bool check_no_multiple_values(const Recurrence& g, long up_to) {
    if (up_to < 1) throw DomainError(ErrorKind::InvalidArgument, "range must cover at least n = 1");
    std::map<RatFunc, long> seen;
    std::vector<RatFunc> powers;
    powers.reserve(g.order());
    for (const Term& t : g.terms()) powers.push_back(t.root);
    for (long n = 1; n <= up_to; ++n) {
        RatFunc value;
        for (std::size_t i = 0; i < g.order(); ++i) value = value + g.terms()[i].coeff * powers[i];
        if (!seen.emplace(std::move(value), n).second) return false;
        if (n < up_to) {
            for (std::size_t i = 0; i < g.order(); ++i) powers[i] = powers[i] * g.terms()[i].root;
        }
    }
    return true;
}

// Hypothesis-checked, shifted and reordered inputs for one bound mode.
struct PreparedPair {
    Recurrence g;
    Recurrence h;
    HypothesisReport report;
    std::size_t relevant_g = 1;  // meaningful for T3 only
    std::size_t relevant_h = 1;
};

inline PreparedPair prepare_theorem1(const Recurrence& g, const Recurrence& h) {
    return PreparedPair{g, h, check_theorem1_hypotheses(g, h)};
}

// Shared dominant place with immediate effect: scans the joint basis places in
// order and takes the first where both recurrences have a dominant root (an
// order-one recurrence dominates vacuously). Both sides are then shifted past
// their immediate-effect thresholds and checked for non-constant, independent
// leading roots.
inline PreparedPair prepare_theorem2(const Recurrence& g, const Recurrence& h) {
    HypothesisReport report;
    report.theorem = "T2";

    std::vector<RatFunc> elements = g.elements();
    for (const RatFunc& e : h.elements()) elements.push_back(e);
    auto basis = std::make_shared<PlaceBasis>(gcd_free_basis(elements));
    report.basis = basis;

    std::optional<Place> shared;
    std::size_t ig = 0, ih = 0;
    for (const Place& place : basis->places()) {
        auto a = detail::dominant_index_at(g, place, *basis, /*vacuous_order_one=*/true);
        if (!a) continue;
        auto b = detail::dominant_index_at(h, place, *basis, /*vacuous_order_one=*/true);
        if (!b) continue;
        shared = place;
        ig = *a;
        ih = *b;
        break;
    }
    if (!shared) {
        report.add_violation("no shared dominant place");
        report.settle();
        return PreparedPair{g, h, report};
    }
    report.dominant_place = *shared;

    Recurrence gr = g.with_term_order(detail::front_order(g.order(), ig));
    Recurrence hr = h.with_term_order(detail::front_order(h.order(), ih));
    long ng = g.order() > 1 ? immediate_effect_threshold(gr, *shared, *basis) : 0;
    long nh = h.order() > 1 ? immediate_effect_threshold(hr, *shared, *basis) : 0;
    report.shift_g = ng;
    report.shift_h = nh;
    Recurrence gs = apply_shift(gr, ng);
    Recurrence hs = apply_shift(hr, nh);

    bool g_const = detail::is_constant_element(gs.terms()[0].root);
    bool h_const = detail::is_constant_element(hs.terms()[0].root);
    if (g_const) report.add_violation("alpha_1 in C");
    if (h_const) report.add_violation("beta_1 in C");
    if (!g_const && !h_const &&
        !is_mult_independent(gs.terms()[0].root, hs.terms()[0].root)) {
        report.add_violation("alpha_1 and beta_1 multiplicatively dependent");
    }
    report.settle();
    return PreparedPair{std::move(gs), std::move(hs), std::move(report)};
}

// Polynomial recurrences shifted past their weak-coefficient thresholds and
// ordered by relevance; the relevant roots and their cross pairs with the
// leading roots carry the independence requirements.
inline PreparedPair prepare_theorem3(const Recurrence& g, const Recurrence& h) {
    HypothesisReport report;
    report.theorem = "T3";
    if (!g.is_polynomial()) report.add_violation("non-polynomial term in G");
    if (!h.is_polynomial()) report.add_violation("non-polynomial term in H");
    if (!report.violations.empty()) {
        report.settle();
        return PreparedPair{g, h, report};
    }

    long ng = weak_coefficients_threshold(g);
    long nh = weak_coefficients_threshold(h);
    report.shift_g = ng;
    report.shift_h = nh;
    RelevanceOrdering go = order_by_relevance(apply_shift(g, ng));
    RelevanceOrdering ho = order_by_relevance(apply_shift(h, nh));
    const Recurrence& gs = go.ordered;
    const Recurrence& hs = ho.ordered;

    auto check_relevant = [&report](const Recurrence& r, std::size_t count, const char* family) {
        for (std::size_t i = 0; i < count; ++i) {
            if (detail::is_constant_element(r.terms()[i].root)) {
                report.add_violation(detail::term_name(family, i) + " in C");
            }
        }
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = i + 1; j < count; ++j) {
                if (detail::is_constant_element(r.terms()[i].root / r.terms()[j].root)) {
                    report.add_violation("ratio " + detail::term_name(family, i) + "/" +
                                         detail::term_name(family, j) + " in C");
                }
            }
        }
    };
    check_relevant(gs, go.relevant_count, "alpha");
    check_relevant(hs, ho.relevant_count, "beta");

    auto independent_pair = [&report](const RatFunc& a, const RatFunc& b, const std::string& name) {
        if (detail::is_constant_element(a) || detail::is_constant_element(b)) return;
        if (!is_mult_independent(a, b)) report.add_violation(name + " multiplicatively dependent");
    };
    for (std::size_t j = 0; j < ho.relevant_count; ++j) {
        independent_pair(gs.terms()[0].root, hs.terms()[j].root,
                         "alpha_1 and " + detail::term_name("beta", j));
    }
    for (std::size_t i = 1; i < go.relevant_count; ++i) {
        independent_pair(gs.terms()[i].root, hs.terms()[0].root,
                         detail::term_name("alpha", i) + " and beta_1");
    }
    report.settle();
    return PreparedPair{gs, hs, std::move(report), go.relevant_count, ho.relevant_count};
}

}  // namespace pillai
