#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pillai/errors.hpp"
#include "pillai/rational.hpp"

namespace pillai {

// Dense univariate polynomial over Rational, coefficients stored by ascending
// power of x. The highest stored coefficient is nonzero; the zero polynomial
// stores nothing and reports degree -1.
class Poly {
public:
    Poly() = default;

    explicit Poly(Rational c) {
        if (c != 0) coeffs_.push_back(std::move(c));
    }

    explicit Poly(long c) : Poly(Rational(c)) {}

    static Poly from_coeffs(std::vector<Rational> c) {
        Poly p;
        p.coeffs_ = std::move(c);
        p.trim();
        return p;
    }

    static Poly variable() { return monomial(1, Rational(1)); }

    static Poly monomial(std::size_t k, Rational c) {
        Poly p;
        if (c != 0) {
            p.coeffs_.assign(k + 1, Rational(0));
            p.coeffs_[k] = std::move(c);
        }
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_constant() const { return coeffs_.size() <= 1; }

    const std::vector<Rational>& coeffs() const { return coeffs_; }

    const Rational& coeff(std::size_t k) const {
        static const Rational zero(0);
        return k < coeffs_.size() ? coeffs_[k] : zero;
    }

    const Rational& leading() const {
        if (is_zero()) throw InternalError("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    bool is_monic() const { return !is_zero() && leading() == 1; }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeff(i) + b.coeff(i);
        r.trim();
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeff(i) - b.coeff(i);
        r.trim();
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly r;
        r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;  // leading product of nonzeros is nonzero, no trim needed
    }

    friend Poly operator*(const Poly& a, const Rational& c) {
        if (c == 0) return Poly();
        Poly r = a;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    // Total order used for canonical sorting and map keys: degree first, then
    // coefficients by ascending power.
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
        if (a.coeffs_.size() != b.coeffs_.size()) {
            return a.coeffs_.size() <=> b.coeffs_.size();
        }
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            int c = cmp(a.coeffs_[i], b.coeffs_[i]);
            if (c != 0) return c <=> 0;
        }
        return std::strong_ordering::equal;
    }

    Poly monic() const {
        if (is_zero()) throw InternalError("monic form of zero polynomial");
        if (is_monic()) return *this;
        Poly r = *this;
        Rational inv = 1 / leading();
        for (auto& c : r.coeffs_) c *= inv;
        return r;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        Poly r;
        r.coeffs_.resize(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            r.coeffs_[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
        }
        r.trim();
        return r;
    }

    Poly pow(unsigned long k) const {
        Poly result(Rational(1));
        Poly base = *this;
        while (k > 0) {
            if (k & 1) result = result * base;
            k >>= 1;
            if (k > 0) base = base * base;
        }
        return result;
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    // Exact quotient and remainder, deg(rem) < deg(b).
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DomainError(ErrorKind::DivisionByZero, "polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly(), a};
        Poly rem = a;
        Poly quot;
        quot.coeffs_.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rational(0));
        const Rational& lead = b.leading();
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            long shift = rem.degree() - b.degree();
            Rational factor = rem.leading() / lead;
            quot.coeffs_[static_cast<std::size_t>(shift)] = factor;
            for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
                rem.coeffs_[static_cast<std::size_t>(shift) + i] -= factor * b.coeffs_[i];
            }
            rem.trim();
        }
        quot.trim();
        return {quot, rem};
    }

    static bool divides(const Poly& d, const Poly& a) {
        return divrem(a, d).second.is_zero();
    }

    // Monic greatest common divisor via the Euclidean scheme over Q.
    static Poly gcd(const Poly& a, const Poly& b) {
        if (a.is_zero() && b.is_zero()) {
            throw DomainError(ErrorKind::BothZero, "gcd of two zero polynomials");
        }
        if (a.is_zero()) return b.monic();
        if (b.is_zero()) return a.monic();
        Poly r0 = a.monic();
        Poly r1 = b.monic();
        while (!r1.is_zero()) {
            Poly r = divrem(r0, r1).second;
            r0 = std::move(r1);
            r1 = r.is_zero() ? std::move(r) : r.monic();
        }
        return r0;
    }

    // Monic p / gcd(p, p'); its degree counts the distinct complex roots of p.
    Poly squarefree_part() const {
        if (is_zero()) throw DomainError(ErrorKind::ZeroInput, "squarefree part of zero");
        if (is_constant()) return Poly(Rational(1));
        Poly g = gcd(*this, derivative());
        return divrem(*this, g).first.monic();
    }

    // Text form compatible with the expression grammar, descending powers.
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (long k = degree(); k >= 0; --k) {
            const Rational& c = coeff(static_cast<std::size_t>(k));
            if (c == 0) continue;
            Rational a = c > 0 ? c : Rational(-c);
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            bool unit = (a == 1);
            if (k == 0) {
                out += to_string(a);
            } else {
                if (!unit) {
                    out += to_string(a);
                    out += "*";
                }
                out += "x";
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

}  // namespace pillai
