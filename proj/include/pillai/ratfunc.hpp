#pragma once

#include <compare>
#include <string>
#include <utility>

#include "pillai/errors.hpp"
#include "pillai/poly.hpp"

namespace pillai {

// Reduced rational function num/den over Q. Canonical form: den is monic,
// gcd(num, den) = 1, and zero is represented as 0/1. Values are immutable
// after construction, so equality is plain component comparison.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}

    RatFunc(Poly num) : num_(std::move(num)), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)

    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) {
            throw DomainError(ErrorKind::ZeroDenominator, "rational function with zero denominator");
        }
        reduce();
    }

    static RatFunc constant(Rational c) { return RatFunc(Poly(std::move(c))); }
    static RatFunc variable() { return RatFunc(Poly::variable()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const {
        RatFunc r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ + b.num_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ - b.num_);
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        // Inputs are reduced, so only cross pairs can share factors.
        Poly g1 = Poly::gcd(a.num_, b.den_);
        Poly g2 = Poly::gcd(b.num_, a.den_);
        RatFunc r;
        r.num_ = Poly::divrem(a.num_, g1).first * Poly::divrem(b.num_, g2).first;
        r.den_ = Poly::divrem(a.den_, g2).first * Poly::divrem(b.den_, g1).first;
        r.normalize_leading();
        return r;
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DomainError(ErrorKind::DivisionByZero, "division by zero rational function");
        return a * b.inverse();
    }

    RatFunc inverse() const {
        if (is_zero()) throw DomainError(ErrorKind::DivisionByZero, "inverse of zero");
        RatFunc r;
        r.num_ = den_;
        r.den_ = num_;
        r.normalize_leading();
        return r;
    }

    RatFunc pow(long k) const {
        if (k == 0) return RatFunc(Poly(Rational(1)));
        if (k < 0) {
            if (is_zero()) throw DomainError(ErrorKind::ZeroToNegativePower, "0 raised to a negative power");
            return inverse().pow(-k);
        }
        RatFunc r;
        r.num_ = num_.pow(static_cast<unsigned long>(k));
        r.den_ = den_.pow(static_cast<unsigned long>(k));
        r.normalize_leading();  // powers of coprime parts stay coprime
        return r;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b) {
        if (auto c = a.num_ <=> b.num_; c != 0) return c;
        return a.den_ <=> b.den_;
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly(Rational(1));
            return;
        }
        if (!den_.is_constant()) {
            Poly g = Poly::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = Poly::divrem(num_, g).first;
                den_ = Poly::divrem(den_, g).first;
            }
        }
        normalize_leading();
    }

    void normalize_leading() {
        if (num_.is_zero()) {
            den_ = Poly(Rational(1));
            return;
        }
        if (!den_.is_monic()) {
            Rational inv = 1 / den_.leading();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_;
    Poly den_;
};

// A(f) for a univariate A over Q, evaluated by Horner's rule.
inline RatFunc compose(const Poly& a, const RatFunc& f) {
    RatFunc acc;
    for (std::size_t i = a.coeffs().size(); i-- > 0;) {
        acc = acc * f + RatFunc::constant(a.coeffs()[i]);
    }
    return acc;
}

}  // namespace pillai
