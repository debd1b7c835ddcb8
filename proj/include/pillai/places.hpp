#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pillai/errors.hpp"
#include "pillai/ratfunc.hpp"

namespace pillai {

// A place of Q(x): either one finite cluster of a PlaceBasis or the place at
// infinity. A cluster of degree k stands for k points of the complex line that
// no basis-expressible element can tell apart.
class Place {
public:
    static Place finite(std::size_t index) { return Place(index); }
    static Place infinity() { return Place(); }

    bool is_infinity() const { return !index_.has_value(); }

    std::size_t index() const {
        if (is_infinity()) throw InternalError("finite index of the infinite place");
        return *index_;
    }

    friend bool operator==(const Place& a, const Place& b) { return a.index_ == b.index_; }

private:
    Place() = default;
    explicit Place(std::size_t i) : index_(i) {}
    std::optional<std::size_t> index_;
};

// Pairwise-coprime monic squarefree non-constant polynomials over which every
// generating element factors exactly, plus an infinity flag. Clusters are kept
// in the canonical Poly order so identical inputs always give identical bases.
class PlaceBasis {
public:
    PlaceBasis() = default;

    PlaceBasis(std::vector<Poly> clusters, bool includes_infinity)
        : clusters_(std::move(clusters)), includes_infinity_(includes_infinity) {
        std::sort(clusters_.begin(), clusters_.end());
    }

    const std::vector<Poly>& clusters() const { return clusters_; }
    bool includes_infinity() const { return includes_infinity_; }

    std::size_t cluster_count() const { return clusters_.size(); }

    // All places in deterministic scan order: finite clusters, then infinity.
    std::vector<Place> places() const {
        std::vector<Place> out;
        out.reserve(clusters_.size() + 1);
        for (std::size_t i = 0; i < clusters_.size(); ++i) out.push_back(Place::finite(i));
        out.push_back(Place::infinity());
        return out;
    }

    std::string place_str(const Place& p) const {
        return p.is_infinity() ? std::string("inf") : clusters_.at(p.index()).str();
    }

private:
    std::vector<Poly> clusters_;
    bool includes_infinity_ = false;
};

namespace detail {

// Largest e with b^e | p; rem is the exact cofactor.
inline long extract_power(Poly& rem, const Poly& b) {
    long e = 0;
    while (true) {
        auto [q, r] = Poly::divrem(rem, b);
        if (!r.is_zero()) break;
        rem = std::move(q);
        ++e;
    }
    return e;
}

}  // namespace detail

// Builds the minimal gcd-free basis supporting every input: each numerator and
// denominator becomes a constant times a product of integer powers of the
// clusters. Refinement splits clusters until the decomposition is exact.
inline PlaceBasis gcd_free_basis(const std::vector<RatFunc>& elements) {
    bool inf = false;
    std::vector<Poly> work;
    for (const RatFunc& e : elements) {
        if (e.is_zero()) throw DomainError(ErrorKind::ZeroElement, "gcd-free basis of a zero element");
        if (e.num().degree() != e.den().degree()) inf = true;
        if (!e.num().is_constant()) work.push_back(e.num().monic());
        if (!e.den().is_constant()) work.push_back(e.den().monic());
    }

    std::vector<Poly> basis;
    for (const Poly& w : work) {
        for (;;) {
            Poly rem = w;
            for (const Poly& b : basis) detail::extract_power(rem, b);
            if (rem.is_constant()) break;

            Poly s = rem.squarefree_part();
            bool split = false;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                Poly g = Poly::gcd(s, basis[i]);
                if (g.degree() > 0 && g.degree() < basis[i].degree()) {
                    Poly other = Poly::divrem(basis[i], g).first.monic();
                    basis[i] = std::move(g);
                    basis.push_back(std::move(other));
                    split = true;
                    break;
                }
            }
            // s is coprime to every cluster once no split applies: all full
            // powers of each cluster were already removed from rem.
            if (!split) basis.push_back(std::move(s));
        }
    }
    return PlaceBasis(std::move(basis), inf);
}

// Valuation of f at one place of the basis. For a finite cluster this is the
// exponent in the exact decomposition; partial overlap between f and a cluster
// means the basis was built without f.
inline long valuation(const RatFunc& f, const Place& place, const PlaceBasis& basis) {
    if (f.is_zero()) throw DomainError(ErrorKind::ZeroElement, "valuation of zero");
    if (place.is_infinity()) return f.den().degree() - f.num().degree();
    const Poly& b = basis.clusters().at(place.index());
    auto exponent = [&b](const Poly& part) {
        Poly rem = part;
        long e = detail::extract_power(rem, b);
        if (Poly::gcd(rem, b).degree() > 0) {
            throw DomainError(ErrorKind::NotExpressible,
                              "element shares a proper factor with cluster " + b.str());
        }
        return e;
    };
    return exponent(f.num()) - exponent(f.den());
}

// Complete valuation vector of a nonzero basis-expressible element. The
// weighted sum over all places is zero; Divisor::weighted_sum lets callers
// re-check that identity.
class Divisor {
public:
    Divisor(std::shared_ptr<const PlaceBasis> basis, std::vector<long> finite, long infinity)
        : basis_(std::move(basis)), finite_(std::move(finite)), infinity_(infinity) {}

    const PlaceBasis& basis() const { return *basis_; }
    const std::vector<long>& finite_values() const { return finite_; }
    long infinity_value() const { return infinity_; }

    long at(const Place& p) const {
        return p.is_infinity() ? infinity_ : finite_.at(p.index());
    }

    long weighted_sum() const {
        long acc = infinity_;
        for (std::size_t i = 0; i < finite_.size(); ++i) {
            acc += finite_[i] * (basis_->clusters()[i].degree());
        }
        return acc;
    }

private:
    std::shared_ptr<const PlaceBasis> basis_;
    std::vector<long> finite_;
    long infinity_;
};

inline Divisor divisor(const RatFunc& f, const PlaceBasis& basis) {
    if (f.is_zero()) throw DomainError(ErrorKind::ZeroElement, "divisor of zero");
    std::vector<long> vals(basis.cluster_count(), 0);
    auto decompose = [&](const Poly& part, int sign) {
        Poly rem = part;
        for (std::size_t i = 0; i < basis.cluster_count(); ++i) {
            vals[i] += sign * detail::extract_power(rem, basis.clusters()[i]);
        }
        if (!rem.is_constant()) {
            throw DomainError(ErrorKind::NotExpressible,
                              "element does not split over the basis: leftover " + rem.str());
        }
    };
    decompose(f.num(), +1);
    decompose(f.den(), -1);
    long inf = f.den().degree() - f.num().degree();
    return Divisor(std::make_shared<PlaceBasis>(basis), std::move(vals), inf);
}

// Height of an element; H(0) is the distinguished infinite value rather than
// an error.
class Height {
public:
    static Height of(long v) { return Height(false, v); }
    static Height infinite() { return Height(true, 0); }

    bool is_infinite() const { return infinite_; }

    long value() const {
        if (infinite_) throw InternalError("numeric value of infinite height");
        return value_;
    }

    friend bool operator==(const Height& a, const Height& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

private:
    Height(bool inf, long v) : infinite_(inf), value_(v) {}
    bool infinite_;
    long value_;
};

// H(f) read off the reduced representation: max(deg num, deg den).
inline Height height(const RatFunc& f) {
    if (f.is_zero()) return Height::infinite();
    return Height::of(std::max(f.num().degree(), f.den().degree()));
}

// Same quantity summed place by place: -sum over places of min(0, v(f)),
// with each cluster weighted by its degree.
inline Height height_via_divisor(const RatFunc& f) {
    if (f.is_zero()) return Height::infinite();
    PlaceBasis basis = gcd_free_basis({f});
    Divisor d = divisor(f, basis);
    long acc = -std::min(0L, d.infinity_value());
    for (std::size_t i = 0; i < basis.cluster_count(); ++i) {
        acc -= std::min(0L, d.finite_values()[i]) * basis.clusters()[i].degree();
    }
    return Height::of(acc);
}

inline long finite_height(const RatFunc& f) {
    Height h = height(f);
    if (h.is_infinite()) throw InternalError("finite height requested for zero");
    return h.value();
}

// |S| for the minimal set S making all elements S-units: cluster degrees count
// with multiplicity, infinity counts once and only when some element actually
// has a zero or pole there.
inline long s_set_size(const std::vector<RatFunc>& elements) {
    PlaceBasis basis = gcd_free_basis(elements);
    long size = basis.includes_infinity() ? 1 : 0;
    for (const Poly& c : basis.clusters()) size += c.degree();
    if (size == 0) {
        throw DomainError(ErrorKind::AllConstant, "all generating elements are constants");
    }
    return size;
}

struct SUnitSpec {
    std::shared_ptr<const PlaceBasis> basis;
    long cardinality = 0;

    static SUnitSpec from_elements(const std::vector<RatFunc>& elements) {
        SUnitSpec spec;
        spec.cardinality = s_set_size(elements);
        spec.basis = std::make_shared<PlaceBasis>(gcd_free_basis(elements));
        return spec;
    }
};

// True when every zero and pole of f lies under the spec's places. f need not
// be basis-expressible: shared factors are stripped cluster by cluster.
inline bool is_s_unit(const RatFunc& f, const SUnitSpec& spec) {
    if (f.is_zero()) return false;
    auto supported = [&](const Poly& part) {
        Poly rem = part;
        for (const Poly& b : spec.basis->clusters()) {
            for (;;) {
                Poly g = Poly::gcd(rem, b);
                if (g.degree() == 0) break;
                rem = Poly::divrem(rem, g).first;
            }
        }
        return rem.is_constant();
    };
    if (!supported(f.num()) || !supported(f.den())) return false;
    if (!spec.basis->includes_infinity() && f.num().degree() != f.den().degree()) return false;
    return true;
}

}  // namespace pillai
