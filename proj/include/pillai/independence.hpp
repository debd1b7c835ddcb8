#pragma once

#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pillai/bound_report.hpp"
#include "pillai/errors.hpp"
#include "pillai/places.hpp"

namespace pillai {

namespace detail {

// Valuation vector over the joint basis, infinity entry last.
inline std::vector<long> divisor_vector(const RatFunc& f, const PlaceBasis& basis) {
    Divisor d = divisor(f, basis);
    std::vector<long> v = d.finite_values();
    v.push_back(d.infinity_value());
    return v;
}

inline bool proportional(const std::vector<long>& u, const std::vector<long>& v) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            if (static_cast<long long>(u[i]) * v[j] != static_cast<long long>(u[j]) * v[i]) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace detail

// gamma^r * delta^s is constant for some (r, s) != (0, 0) exactly when the two
// divisor vectors are linearly dependent over Q; for nonzero inputs that means
// either vector vanishes (a constant element) or the vectors are proportional.
inline bool is_mult_independent(const RatFunc& gamma, const RatFunc& delta) {
    if (gamma.is_zero() || delta.is_zero()) {
        throw DomainError(ErrorKind::ZeroElement, "independence test on zero element");
    }
    if (gamma.is_constant() || delta.is_constant()) return false;
    PlaceBasis basis = gcd_free_basis({gamma, delta});
    std::vector<long> u = detail::divisor_vector(gamma, basis);
    std::vector<long> v = detail::divisor_vector(delta, basis);
    return !detail::proportional(u, v);
}

// Two places that jointly pin down the exponents of gamma^n / delta^m: all
// four valuations are nonzero and the two ratios v(gamma)/v(delta) differ.
struct SeparatingPair {
    Place nu;
    Place mu;
    Rational ratio_nu;
    Rational ratio_mu;
    std::shared_ptr<const PlaceBasis> basis;
};

// Picks, among all valid place pairs, the one minimizing the quotient constant
// of lemma2_bound (the L-free factor, so the choice is independent of L).
// Ties go to the first pair in basis scan order.
inline SeparatingPair find_separating_pair(const RatFunc& gamma, const RatFunc& delta) {
    if (gamma.is_zero() || delta.is_zero()) {
        throw DomainError(ErrorKind::ZeroElement, "separating pair of zero element");
    }
    if (gamma.is_constant() || delta.is_constant()) {
        throw DomainError(ErrorKind::ConstantInput, "separating pair needs non-constant inputs");
    }
    auto basis = std::make_shared<PlaceBasis>(gcd_free_basis({gamma, delta}));
    std::vector<long> u = detail::divisor_vector(gamma, *basis);
    std::vector<long> v = detail::divisor_vector(delta, *basis);
    std::vector<Place> places = basis->places();

    std::optional<SeparatingPair> best;
    Rational best_factor;
    for (std::size_t i = 0; i < places.size(); ++i) {
        if (u[i] == 0 || v[i] == 0) continue;
        for (std::size_t j = i + 1; j < places.size(); ++j) {
            if (u[j] == 0 || v[j] == 0) continue;
            Rational ri = make_rational(u[i], v[i]);
            Rational rj = make_rational(u[j], v[j]);
            if (ri == rj) continue;
            Rational factor = (make_rational(1, std::abs(v[i])) + make_rational(1, std::abs(v[j]))) /
                              abs(Rational(ri - rj));
            if (!best || factor < best_factor) {
                best = SeparatingPair{places[i], places[j], ri, rj, basis};
                best_factor = factor;
            }
        }
    }
    if (best) return *best;
    if (!is_mult_independent(gamma, delta)) {
        throw DomainError(ErrorKind::DependentInputs, "inputs are multiplicatively dependent");
    }
    throw DomainError(ErrorKind::NoSharedSupportCase,
                      "no separating pair: use the one-sided support branch");
}

// Effective bound C such that H(gamma^n / delta^m) <= L forces max{n, m} <= C,
// for multiplicatively independent non-constant gamma, delta.
//
// When some zero or pole of one element is unshared, the valuation there reads
// the exponent directly (n <= L or m <= L) and the other exponent follows from
// the height chain; each such branch bounds both exponents on its own and the
// applicable branches combine by minimum. With identical zero/pole supports a
// separating pair of places yields the constants C1..C4.
inline BoundReport lemma2_bound(const RatFunc& gamma, const RatFunc& delta, const Rational& limit) {
    if (gamma.is_zero() || delta.is_zero()) {
        throw DomainError(ErrorKind::ZeroElement, "quotient bound on zero element");
    }
    if (gamma.is_constant() || delta.is_constant()) {
        throw DomainError(ErrorKind::ConstantInput, "quotient bound needs non-constant inputs");
    }
    if (limit < 0) {
        throw DomainError(ErrorKind::InvalidArgument, "height limit must be nonnegative");
    }
    if (!is_mult_independent(gamma, delta)) {
        throw DomainError(ErrorKind::DependentInputs, "inputs are multiplicatively dependent");
    }

    BoundReport report;
    report.theorem = "Lemma2";
    report.set_constant("L", limit);

    PlaceBasis basis = gcd_free_basis({gamma, delta});
    std::vector<long> u = detail::divisor_vector(gamma, basis);
    std::vector<long> v = detail::divisor_vector(delta, basis);

    bool gamma_zero_unshared = false, gamma_pole_unshared = false;
    bool delta_zero_unshared = false, delta_pole_unshared = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] > 0 && v[i] <= 0) gamma_zero_unshared = true;
        if (u[i] < 0 && v[i] >= 0) gamma_pole_unshared = true;
        if (v[i] > 0 && u[i] <= 0) delta_zero_unshared = true;
        if (v[i] < 0 && u[i] >= 0) delta_pole_unshared = true;
    }

    Rational hg(finite_height(gamma));
    Rational hd(finite_height(delta));

    bool one_sided = gamma_zero_unshared || gamma_pole_unshared || delta_zero_unshared ||
                     delta_pole_unshared;
    if (one_sided) {
        // n <= L (resp. m <= L), then the other exponent via the height chain.
        Rational via_gamma = std::max(limit, Rational((limit + limit * hg) / hd));
        Rational via_delta = std::max(limit, Rational((limit + limit * hd) / hg));
        std::optional<Rational> best;
        std::string label;
        auto consider = [&](bool applies, const char* name, const Rational& value) {
            if (!applies) return;
            report.set_constant(std::string(name) + ".C", value);
            if (!best || value < *best) {
                best = value;
                label = name;
            }
        };
        consider(gamma_zero_unshared, "zero_of_gamma", via_gamma);
        consider(gamma_pole_unshared, "pole_of_gamma", via_gamma);
        consider(delta_zero_unshared, "zero_of_delta", via_delta);
        consider(delta_pole_unshared, "pole_of_delta", via_delta);
        report.case_trace.push_back(label);
        report.finalize(*best);
        return report;
    }

    SeparatingPair pair = find_separating_pair(gamma, delta);
    long vn = v[pair.nu.is_infinity() ? u.size() - 1 : pair.nu.index()];
    long vm = v[pair.mu.is_infinity() ? u.size() - 1 : pair.mu.index()];
    Rational c1 = limit / Rational(std::abs(vn)) + limit / Rational(std::abs(vm));
    Rational c2 = c1 / abs(Rational(pair.ratio_nu - pair.ratio_mu));
    Rational c3 = std::max(limit, c2);
    Rational c4 = limit + c3 * hg;
    Rational m_bound = c4 / hd;
    report.set_constant("C1", c1);
    report.set_constant("C2", c2);
    report.set_constant("C3", c3);
    report.set_constant("C4", c4);
    report.case_trace.push_back("shared_support");
    report.case_trace.push_back("separating pair (" + pair.basis->place_str(pair.nu) + ", " +
                                pair.basis->place_str(pair.mu) + ")");
    report.finalize(std::max(c3, m_bound));
    return report;
}

}  // namespace pillai
