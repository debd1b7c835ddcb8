#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pillai/bound_report.hpp"
#include "pillai/errors.hpp"
#include "pillai/independence.hpp"
#include "pillai/places.hpp"
#include "pillai/recurrence.hpp"

namespace pillai {

// Height bound for the terms of a non-degenerate vanishing S-unit sum
// 1 + u_1 + ... + u_k = 0 (Brownawell-Masser): C(k,2) * (|S| + max(0, 2g - 2)).
inline long bm_bound(long k, const BoundParams& params) {
    if (k < 1) throw DomainError(ErrorKind::InvalidArgument, "term count must be positive");
    if (params.s_size < 1) throw DomainError(ErrorKind::InvalidArgument, "|S| must be positive");
    if (params.genus < 0) throw DomainError(ErrorKind::InvalidArgument, "genus must be nonnegative");
    return (k * (k - 1) / 2) * (params.s_size + std::max(0L, 2 * params.genus - 2));
}

// Closed-form bound for p^n - q^m = f over polynomials.
inline Rational corollary_bound(const Poly& p, const Poly& q, const Poly& f) {
    if (p.is_constant() || q.is_constant()) {
        throw DomainError(ErrorKind::ConstantBase, "bases must be non-constant polynomials");
    }
    if (f.is_zero()) throw DomainError(ErrorKind::ZeroF, "target polynomial must be nonzero");
    long num = 1 + p.degree() + q.degree() + 2 * f.degree();
    long den = std::min(p.degree(), q.degree());
    return make_rational(num, den);
}

namespace detail {

inline Rational rat_height(const RatFunc& f) { return Rational(finite_height(f)); }

// max over an empty range is 0; min over an empty range is "undefined" and the
// caller drops the branch.
class MaxAcc {
public:
    void add(const Rational& v) { value_ = std::max(value_, v); }
    const Rational& value() const { return value_; }

private:
    Rational value_ = 0;
};

class MinAcc {
public:
    void add(const Rational& v) {
        if (!value_ || v < *value_) value_ = v;
    }
    bool defined() const { return value_.has_value(); }
    const Rational& value() const { return *value_; }

private:
    std::optional<Rational> value_;
};

inline std::vector<RatFunc> joint_elements(const Recurrence& g, const Recurrence& h) {
    std::vector<RatFunc> elements = g.elements();
    for (const RatFunc& e : h.elements()) elements.push_back(e);
    return elements;
}

inline void trace_max(BoundReport& report,
                      std::initializer_list<std::pair<const char*, const Rational*>> branches) {
    const Rational* best = nullptr;
    for (const auto& b : branches) {
        if (b.second == nullptr) continue;
        if (best == nullptr || *b.second > *best) best = b.second;
    }
    if (best == nullptr) return;
    for (const auto& b : branches) {
        if (b.second != nullptr && *b.second == *best) report.case_trace.push_back(b.first);
    }
}

}  // namespace detail

// Bound for G_n - H_m = f with hypothesis-checked inputs. Constants C1..C7
// follow the fixed-target proof chain; C5 exists only when some family has two
// terms.
inline BoundReport theorem1_bound_prepared(const PreparedPair& prep, const RatFunc& f,
                                           long genus = 0) {
    if (!prep.report.passed) throw HypothesisViolation(prep.report);
    if (f.is_zero()) throw DomainError(ErrorKind::ZeroF, "target element must be nonzero");
    const Recurrence& g = prep.g;
    const Recurrence& h = prep.h;

    std::vector<RatFunc> elements = detail::joint_elements(g, h);
    elements.push_back(f);
    BoundParams params{genus, s_set_size(elements)};

    BoundReport report;
    report.theorem = "T1";
    report.set_constant("|S|", Rational(params.s_size));

    Rational c1(bm_bound(static_cast<long>(g.order() + h.order()), params));
    report.set_constant("C1", c1);

    detail::MaxAcc target_over_coeff;
    detail::MaxAcc coeff_height_g, coeff_height_h;
    detail::MaxAcc root_height;
    detail::MinAcc min_root_height;
    for (const Recurrence* rec : {&g, &h}) {
        detail::MaxAcc& coeff_acc = rec == &g ? coeff_height_g : coeff_height_h;
        for (const Term& t : rec->terms()) {
            target_over_coeff.add(detail::rat_height(f / t.coeff));
            coeff_acc.add(detail::rat_height(t.coeff));
            root_height.add(detail::rat_height(t.root));
            min_root_height.add(detail::rat_height(t.root));
        }
    }

    Rational c2 = c1 + target_over_coeff.value();
    Rational c3 = c2 / min_root_height.value();
    report.set_constant("C2", c2);
    report.set_constant("C3", c3);

    detail::MaxAcc coeff_ratio;
    detail::MinAcc root_ratio;
    for (const Recurrence* rec : {&g, &h}) {
        const auto& terms = rec->terms();
        for (std::size_t i = 0; i < terms.size(); ++i) {
            for (std::size_t j = i + 1; j < terms.size(); ++j) {
                coeff_ratio.add(detail::rat_height(terms[i].coeff / terms[j].coeff));
                root_ratio.add(detail::rat_height(terms[i].root / terms[j].root));
            }
        }
    }
    Rational c4 = c1 + coeff_ratio.value();
    report.set_constant("C4", c4);
    std::optional<Rational> c5;
    if (root_ratio.defined()) {
        c5 = c4 / root_ratio.value();
        report.set_constant("C5", *c5);
    }

    Rational c6 = c1 + coeff_height_g.value() + coeff_height_h.value() + c3 * root_height.value();
    Rational c7 = c6 / min_root_height.value();
    report.set_constant("C6", c6);
    report.set_constant("C7", c7);

    Rational final = std::max(c3, c7);
    if (c5) final = std::max(final, *c5);
    detail::trace_max(report, {{"C3", &c3}, {"C5", c5 ? &*c5 : nullptr}, {"C7", &c7}});
    report.finalize(final);
    return report;
}

inline BoundReport theorem1_bound(const Recurrence& g, const Recurrence& h, const RatFunc& f,
                                  long genus = 0) {
    return theorem1_bound_prepared(prepare_theorem1(g, h), f, genus);
}

namespace detail {

// Every minimal vanishing subsum of the four-block collision equation has at
// most 2(d + t) terms, so each Brownawell-Masser call is instantiated at the
// worst-case arity 2(d + t) - 1 after dividing one term out.
inline long worst_case_bm(const Recurrence& g, const Recurrence& h, const BoundParams& params) {
    return bm_bound(2 * static_cast<long>(g.order() + h.order()) - 1, params);
}

inline Rational lemma2_final(BoundReport& report, std::string label, const RatFunc& gamma,
                             const RatFunc& delta, const Rational& limit) {
    BoundReport sub = lemma2_bound(gamma, delta, limit);
    Rational final = sub.final;
    report.add_sub(std::move(label), std::move(sub));
    return final;
}

}  // namespace detail

// Bound on max{n1, m1, n2, m2} for double representations under the shared
// dominant root hypotheses. Exactly one structural case applies per (d, t);
// its proof constants are recorded under the names of that chain.
inline BoundReport theorem2_bound_prepared(const PreparedPair& prep, long genus = 0,
                                           const char* tag = "T2") {
    if (!prep.report.passed) throw HypothesisViolation(prep.report);
    const Recurrence& g = prep.g;
    const Recurrence& h = prep.h;
    std::size_t d = g.order(), t = h.order();

    BoundParams params{genus, s_set_size(detail::joint_elements(g, h))};
    Rational cbm(detail::worst_case_bm(g, h, params));

    BoundReport report;
    report.theorem = tag;
    report.set_constant("|S|", Rational(params.s_size));

    const RatFunc& a1 = g.terms()[0].coeff;
    const RatFunc& alpha1 = g.terms()[0].root;
    const RatFunc& b1 = h.terms()[0].coeff;
    const RatFunc& beta1 = h.terms()[0].root;

    if (d == 1 && t == 1) {
        report.case_trace.push_back("d=1,t=1");
        Rational c1 = cbm;
        Rational c2 = c1 + detail::rat_height(b1 / a1);
        Rational c3 = detail::lemma2_final(report, "no_vanishing_subsum", beta1, alpha1, c2);
        Rational c4 = detail::lemma2_final(report, "split_subsums", beta1, alpha1,
                                           detail::rat_height(a1 / b1));
        report.set_constant("C1", c1);
        report.set_constant("C2", c2);
        report.set_constant("C3", c3);
        report.set_constant("C4", c4);
        detail::trace_max(report, {{"no_vanishing_subsum", &c3}, {"split_subsums", &c4}});
        report.finalize(std::max(c3, c4));
        return report;
    }

    if (d == 1 || t == 1) {
        // One side has a single term; the multi-term side's top summand pins a
        // quotient of the leading roots, the remaining single-side exponent
        // follows from a bounded companion summand.
        bool g_single = (d == 1);
        report.case_trace.push_back(g_single ? "d=1,t>1" : "d>1,t=1");
        const Recurrence& multi = g_single ? h : g;
        const RatFunc& single_coeff = g_single ? a1 : b1;
        const RatFunc& single_root = g_single ? alpha1 : beta1;

        Rational c5 = cbm;
        Rational limit = c5 + detail::rat_height(a1 / b1);
        Rational c6 = detail::lemma2_final(report, "dominant_pair", single_root,
                                           multi.terms()[0].root, limit);
        detail::MaxAcc omega;
        omega.add(detail::rat_height(single_coeff) + c6 * detail::rat_height(single_root));
        for (const Term& term : multi.terms()) {
            omega.add(detail::rat_height(term.coeff) + c6 * detail::rat_height(term.root));
        }
        Rational c7 = cbm + omega.value() + detail::rat_height(single_coeff);
        Rational second = c7 / detail::rat_height(single_root);
        Rational c8 = std::max(c6, second);
        report.set_constant("C5", c5);
        report.set_constant("C6", c6);
        report.set_constant("C7", c7);
        report.set_constant("C8", c8);
        detail::trace_max(report, {{"dominant_pair", &c6}, {"companion_summand", &second}});
        report.finalize(c8);
        return report;
    }

    report.case_trace.push_back("d>1,t>1");
    Rational c9 = cbm;
    Rational limit = c9 + detail::rat_height(b1 / a1);
    Rational c10 = detail::lemma2_final(report, "dominant_pair", beta1, alpha1, limit);
    report.set_constant("C9", c9);
    report.set_constant("C10", c10);
    report.finalize(c10);
    return report;
}

inline BoundReport theorem2_bound(const Recurrence& g, const Recurrence& h, long genus = 0) {
    return theorem2_bound_prepared(prepare_theorem2(g, h), genus);
}

namespace detail {

// Ratio chain over one relevant family: mid = cbm + max H(c_1/c_i), then
// bound = mid / min H(r_i/r_1) over the relevant indices i >= 1. Undefined
// when the relevant set is a singleton.
struct RatioChain {
    Rational mid;
    Rational bound;
};

inline std::optional<RatioChain> relevant_ratio_bound(const Recurrence& rec, std::size_t relevant,
                                                      const Rational& cbm) {
    if (relevant < 2) return std::nullopt;
    MaxAcc coeff;
    MinAcc root;
    for (std::size_t i = 1; i < relevant; ++i) {
        coeff.add(rat_height(rec.terms()[0].coeff / rec.terms()[i].coeff));
        root.add(rat_height(rec.terms()[i].root / rec.terms()[0].root));
    }
    Rational mid = cbm + coeff.value();
    return RatioChain{mid, mid / root.value()};
}

// Companion-summand chain: the minor side's top term sits in a subsum with a
// major-side term whose exponent is already bounded by `major_bound`.
inline Rational companion_chain(const Recurrence& major, const Rational& major_bound,
                                const RatFunc& minor_coeff, const RatFunc& minor_root,
                                const Rational& cbm) {
    MaxAcc omega;
    for (const Term& term : major.terms()) {
        omega.add(rat_height(term.coeff) + major_bound * rat_height(term.root));
    }
    Rational num = cbm + omega.value() + rat_height(minor_coeff);
    return num / rat_height(minor_root);
}

}  // namespace detail

// Bound on max{n1, m1, n2, m2} under the weak-coefficient hypotheses. The
// d, t > 1 case cannot know which side carries the top degree, so both
// orientations are computed and the maximum is kept.
inline BoundReport theorem3_bound_prepared(const PreparedPair& prep, long genus = 0) {
    if (!prep.report.passed) throw HypothesisViolation(prep.report);
    const Recurrence& g = prep.g;
    const Recurrence& h = prep.h;
    std::size_t d = g.order(), t = h.order();

    if (d == 1 && t == 1) {
        BoundReport report = theorem2_bound_prepared(prep, genus, "T3");
        report.case_trace.insert(report.case_trace.begin(), "via_dominant_case");
        return report;
    }

    BoundParams params{genus, s_set_size(detail::joint_elements(g, h))};
    Rational cbm(detail::worst_case_bm(g, h, params));

    BoundReport report;
    report.theorem = "T3";
    report.set_constant("|S|", Rational(params.s_size));

    if (d == 1 || t == 1) {
        // Multi-term side is "major": its top summand meets either another
        // relevant major term (ratio chain) or the single side's term
        // (independent-pair chain); the single side then follows from a
        // bounded companion summand.
        bool g_single = (d == 1);
        report.case_trace.push_back(g_single ? "d=1,t>1" : "d>1,t=1");
        const Recurrence& major = g_single ? h : g;
        std::size_t major_relevant = g_single ? prep.relevant_h : prep.relevant_g;
        const RatFunc& minor_coeff = g_single ? g.terms()[0].coeff : h.terms()[0].coeff;
        const RatFunc& minor_root = g_single ? g.terms()[0].root : h.terms()[0].root;

        auto ratio = detail::relevant_ratio_bound(major, major_relevant, cbm);
        if (ratio) {
            report.set_constant("C1", cbm);
            report.set_constant("C2", ratio->mid);
            report.set_constant("C3", ratio->bound);
        }
        Rational c4 = cbm;
        Rational limit = c4 + detail::rat_height(minor_coeff / major.terms()[0].coeff);
        Rational c5 = detail::lemma2_final(report, "cross_pair", minor_root,
                                           major.terms()[0].root, limit);
        Rational c6 = c5;
        if (ratio) c6 = std::max(c6, ratio->bound);
        Rational second = detail::companion_chain(major, c6, minor_coeff, minor_root, cbm);
        Rational c8 = std::max(c6, second);
        report.set_constant("C4", c4);
        report.set_constant("C5", c5);
        report.set_constant("C6", c6);
        report.set_constant("C7", second * detail::rat_height(minor_root));
        report.set_constant("C8", c8);
        detail::trace_max(report, {{"relevant_ratio", ratio ? &ratio->bound : nullptr},
                                   {"cross_pair", &c5},
                                   {"companion_summand", &second}});
        report.finalize(c8);
        return report;
    }

    report.case_trace.push_back("d>1,t>1");
    auto orientation = [&](const char* prefix, const Recurrence& major, std::size_t major_relevant,
                           const Recurrence& minor, std::size_t minor_relevant) {
        std::string p(prefix);
        report.set_constant(p + ".C9", cbm);
        detail::MaxAcc cross;
        for (std::size_t j = 0; j < minor_relevant; ++j) {
            Rational limit = cbm + detail::rat_height(major.terms()[0].coeff / minor.terms()[j].coeff);
            cross.add(detail::lemma2_final(report,
                                           p + ".C10." + std::to_string(j + 1),
                                           minor.terms()[j].root, major.terms()[0].root, limit));
        }
        Rational c10 = cross.value();
        report.set_constant(p + ".C10", c10);

        Rational result = c10;
        auto c12 = detail::relevant_ratio_bound(major, major_relevant, cbm);
        if (c12) {
            report.set_constant(p + ".C11", cbm);
            report.set_constant(p + ".C12", c12->bound);
            auto c13 = detail::relevant_ratio_bound(minor, minor_relevant, cbm);
            if (c13) report.set_constant(p + ".C13", c13->bound);
            report.set_constant(p + ".C14", cbm);
            Rational c15 = detail::companion_chain(major, c12->bound, minor.terms()[0].coeff,
                                                   minor.terms()[0].root, cbm);
            report.set_constant(p + ".C15", c15);
            Rational minor_bound = c13 ? std::max(c13->bound, c15) : c15;
            result = std::max(result, std::max(c12->bound, minor_bound));
        }
        report.set_constant(p + ".C16", result);
        return result;
    };

    Rational g_major = orientation("G_major", g, prep.relevant_g, h, prep.relevant_h);
    Rational h_major = orientation("H_major", h, prep.relevant_h, g, prep.relevant_g);
    detail::trace_max(report, {{"G_major", &g_major}, {"H_major", &h_major}});
    report.finalize(std::max(g_major, h_major));
    return report;
}

inline BoundReport theorem3_bound(const Recurrence& g, const Recurrence& h, long genus = 0) {
    return theorem3_bound_prepared(prepare_theorem3(g, h), genus);
}

}  // namespace pillai
