#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pillai/bounds.hpp"
#include "pillai/errors.hpp"
#include "pillai/fingerprint.hpp"
#include "pillai/recurrence.hpp"

namespace pillai {

struct SolverOptions {
    int threads = 1;
};

// Certified solutions of G_n - H_m = f inside [1, enumeration_limit]^2, in the
// index scheme of the recurrences actually enumerated (offsets record any
// preparatory shift).
struct SolutionSet {
    BoundReport bound;
    std::optional<HypothesisReport> hypotheses;
    std::pair<long, long> offsets{0, 0};
    std::vector<std::pair<long, long>> solutions;
};

struct DoubleRep {
    RatFunc value;
    std::vector<std::pair<long, long>> representations;
};

struct DoubleRepSet {
    BoundReport bound;
    HypothesisReport hypotheses;
    std::pair<long, long> offsets{0, 0};
    std::vector<DoubleRep> collisions;
};

enum class DoubleRepMode { T2, T3 };

// Exact term-by-term evaluation along n = 1, 2, ...; each step multiplies the
// stored term values by their roots once.
class ExactSeq {
public:
    explicit ExactSeq(const Recurrence& rec) : rec_(&rec) {
        terms_.reserve(rec.order());
        for (const Term& t : rec.terms()) terms_.push_back(t.coeff * t.root);
    }

    RatFunc value() const {
        RatFunc acc;
        for (const RatFunc& t : terms_) acc = acc + t;
        return acc;
    }

    void advance() {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            terms_[i] = terms_[i] * rec_->terms()[i].root;
        }
    }

private:
    const Recurrence* rec_;
    std::vector<RatFunc> terms_;
};

// Independent oracle: plain exact evaluation and subtraction over the whole
// window, no bound logic and no fingerprints.
inline std::vector<std::pair<long, long>> brute_force_oracle(const Recurrence& g,
                                                             const Recurrence& h, const RatFunc& f,
                                                             long window) {
    if (window < 1) throw DomainError(ErrorKind::InvalidArgument, "window must be >= 1");
    std::map<RatFunc, std::vector<long>> g_values;
    {
        ExactSeq seq(g);
        for (long n = 1; n <= window; ++n) {
            g_values[seq.value()].push_back(n);
            if (n < window) seq.advance();
        }
    }
    std::vector<std::pair<long, long>> out;
    ExactSeq seq(h);
    for (long m = 1; m <= window; ++m) {
        auto it = g_values.find(f + seq.value());
        if (it != g_values.end()) {
            for (long n : it->second) out.emplace_back(n, m);
        }
        if (m < window) seq.advance();
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline void run_chunks(long lo, long hi, int threads,
                       const std::function<void(long, long)>& body) {
    long count = hi - lo + 1;
    if (count <= 0) return;
    int usable = std::max(1, threads);
    usable = static_cast<int>(std::min<long>(usable, count));
    if (usable == 1) {
        body(lo, hi);
        return;
    }
    std::vector<std::thread> pool;
    long chunk = (count + usable - 1) / usable;
    for (int i = 0; i < usable; ++i) {
        long a = lo + i * chunk;
        long b = std::min(hi, a + chunk - 1);
        if (a > b) break;
        pool.emplace_back(body, a, b);
    }
    for (auto& th : pool) th.join();
}

// Fingerprint-bucketed fixed-target enumeration with exact confirmation of
// every candidate pair.
inline std::vector<std::pair<long, long>> enumerate_fixed(const Recurrence& g, const Recurrence& h,
                                                          const RatFunc& f, long bound,
                                                          const SolverOptions& opts) {
    std::vector<std::pair<long, long>> out;
    if (bound < 1) return out;

    std::vector<RatFunc> base = joint_elements(g, h);
    base.push_back(f);
    fpr::ChannelPair channels = fpr::ChannelPair::choose(base);

    std::unordered_map<fpr::Fingerprint, std::vector<long>, fpr::FingerprintHash> g_map;
    {
        fpr::RecurrenceFpSeq seq(g, channels);
        for (long n = 1; n <= bound; ++n) {
            g_map[seq.value()].push_back(n);
            if (n < bound) seq.advance();
        }
    }
    fpr::Fingerprint f_fp = channels.of(f);

    int threads = std::max(1, opts.threads);
    std::vector<std::vector<std::pair<long, long>>> found(static_cast<std::size_t>(threads));
    std::atomic<int> next_slot{0};
    run_chunks(1, bound, threads, [&](long lo, long hi) {
        auto& local = found[static_cast<std::size_t>(next_slot.fetch_add(1))];
        fpr::RecurrenceFpSeq seq(h, channels);
        seq.seek(lo);
        for (long m = lo; m <= hi; ++m) {
            auto it = g_map.find(channels.add(f_fp, seq.value()));
            if (it != g_map.end()) {
                for (long n : it->second) local.emplace_back(n, m);
            }
            if (m < hi) seq.advance();
        }
    });

    for (const auto& local : found) {
        for (const auto& [n, m] : local) {
            if (g.eval(n) - h.eval(m) == f) out.emplace_back(n, m);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// On-range injectivity: fingerprint duplicates confirmed by exact evaluation.
inline bool has_multiple_values(const Recurrence& rec, long bound,
                                const fpr::ChannelPair& channels) {
    if (bound < 2) return false;
    std::vector<std::pair<fpr::Fingerprint, long>> seen;
    seen.reserve(static_cast<std::size_t>(bound));
    fpr::RecurrenceFpSeq seq(rec, channels);
    for (long n = 1; n <= bound; ++n) {
        seen.emplace_back(seq.value(), n);
        if (n < bound) seq.advance();
    }
    std::sort(seen.begin(), seen.end(),
              [](const auto& a, const auto& b) { return a.first < b.first || (a.first == b.first && a.second < b.second); });
    for (std::size_t i = 1; i < seen.size(); ++i) {
        if (seen[i].first == seen[i - 1].first &&
            rec.eval(seen[i].second) == rec.eval(seen[i - 1].second)) {
            return true;
        }
    }
    return false;
}

struct DiffEntry {
    fpr::Fingerprint fp;
    long n;
    long m;
};

}  // namespace detail

// Complete set of solutions of G_n - H_m = f below the T1 bound.
inline SolutionSet solve_fixed_f(const Recurrence& g, const Recurrence& h, const RatFunc& f,
                                 long genus = 0, const SolverOptions& opts = {}) {
    PreparedPair prep = prepare_theorem1(g, h);
    if (!prep.report.passed) throw HypothesisViolation(prep.report);
    if (f.is_zero()) throw DomainError(ErrorKind::ZeroF, "target element must be nonzero");
    BoundReport bound = theorem1_bound_prepared(prep, f, genus);
    SolutionSet result;
    result.solutions = detail::enumerate_fixed(prep.g, prep.h, f, bound.enumeration_limit, opts);
    result.bound = std::move(bound);
    result.hypotheses = std::move(prep.report);
    result.offsets = {prep.g.offset(), prep.h.offset()};
    return result;
}

// Complete set of solutions of p^n - q^m = f below the closed-form bound.
inline SolutionSet corollary_solve(const Poly& p, const Poly& q, const Poly& f,
                                   const SolverOptions& opts = {}) {
    Rational c = corollary_bound(p, q, f);
    BoundReport bound;
    bound.theorem = "Corollary";
    bound.set_constant("deg_p", Rational(p.degree()));
    bound.set_constant("deg_q", Rational(q.degree()));
    bound.set_constant("deg_f", Rational(f.degree()));
    bound.set_constant("C", c);
    bound.case_trace.push_back("pure_powers");
    bound.finalize(c);

    Recurrence g({Term{RatFunc(Poly(Rational(1))), RatFunc(p)}});
    Recurrence h({Term{RatFunc(Poly(Rational(1))), RatFunc(q)}});
    SolutionSet result;
    result.solutions = detail::enumerate_fixed(g, h, RatFunc(f), bound.enumeration_limit, opts);
    result.bound = std::move(bound);
    return result;
}

// Complete set of targets with two or more representations G_n - H_m inside
// the bound square, under the selected double-representation mode.
inline DoubleRepSet solve_double_rep(const Recurrence& g, const Recurrence& h, DoubleRepMode mode,
                                     long genus = 0, const SolverOptions& opts = {}) {
    PreparedPair prep =
        mode == DoubleRepMode::T2 ? prepare_theorem2(g, h) : prepare_theorem3(g, h);
    if (!prep.report.passed) throw HypothesisViolation(prep.report);
    BoundReport bound = mode == DoubleRepMode::T2 ? theorem2_bound_prepared(prep, genus)
                                                  : theorem3_bound_prepared(prep, genus);

    DoubleRepSet result;
    result.offsets = {prep.g.offset(), prep.h.offset()};
    long limit = bound.enumeration_limit;

    if (limit >= 1) {
        fpr::ChannelPair channels = fpr::ChannelPair::choose(detail::joint_elements(prep.g, prep.h));

        // The no-multiple-values assumption is re-verified on the range the
        // enumeration actually covers.
        for (const auto& [rec, name] :
             {std::pair<const Recurrence*, const char*>{&prep.g, "G"}, {&prep.h, "H"}}) {
            if (detail::has_multiple_values(*rec, limit, channels)) {
                prep.report.add_violation(std::string(name) + " has multiple values within the enumeration range");
                prep.report.settle();
                throw HypothesisViolation(prep.report);
            }
        }

        std::vector<detail::DiffEntry> entries(static_cast<std::size_t>(limit) *
                                               static_cast<std::size_t>(limit));
        int threads = std::max(1, opts.threads);
        detail::run_chunks(1, limit, threads, [&](long lo, long hi) {
            fpr::RecurrenceFpSeq gseq(prep.g, channels);
            gseq.seek(lo);
            for (long n = lo; n <= hi; ++n) {
                fpr::Fingerprint gn = gseq.value();
                fpr::RecurrenceFpSeq hseq(prep.h, channels);
                std::size_t row = static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(limit);
                for (long m = 1; m <= limit; ++m) {
                    entries[row + static_cast<std::size_t>(m - 1)] =
                        detail::DiffEntry{channels.sub(gn, hseq.value()), n, m};
                    if (m < limit) hseq.advance();
                }
                if (n < hi) gseq.advance();
            }
        });
        std::sort(entries.begin(), entries.end(), [](const detail::DiffEntry& a, const detail::DiffEntry& b) {
            if (!(a.fp == b.fp)) return a.fp < b.fp;
            if (a.n != b.n) return a.n < b.n;
            return a.m < b.m;
        });

        std::map<long, RatFunc> g_cache, h_cache;
        auto exact_value = [&](long n, long m) {
            auto gi = g_cache.find(n);
            if (gi == g_cache.end()) gi = g_cache.emplace(n, prep.g.eval(n)).first;
            auto hi = h_cache.find(m);
            if (hi == h_cache.end()) hi = h_cache.emplace(m, prep.h.eval(m)).first;
            return gi->second - hi->second;
        };

        std::map<RatFunc, std::vector<std::pair<long, long>>> exact_groups;
        std::size_t i = 0;
        while (i < entries.size()) {
            std::size_t j = i + 1;
            while (j < entries.size() && entries[j].fp == entries[i].fp) ++j;
            if (j - i >= 2) {
                for (std::size_t k = i; k < j; ++k) {
                    exact_groups[exact_value(entries[k].n, entries[k].m)].emplace_back(
                        entries[k].n, entries[k].m);
                }
            }
            i = j;
        }
        for (auto& [value, reps] : exact_groups) {
            if (reps.size() < 2) continue;
            std::sort(reps.begin(), reps.end());
            result.collisions.push_back(DoubleRep{value, reps});
        }
        std::sort(result.collisions.begin(), result.collisions.end(),
                  [](const DoubleRep& a, const DoubleRep& b) {
                      return a.representations < b.representations;
                  });
    }

    result.bound = std::move(bound);
    result.hypotheses = std::move(prep.report);
    return result;
}

}  // namespace pillai
