#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pillai/errors.hpp"
#include "pillai/ratfunc.hpp"
#include "pillai/recurrence.hpp"

namespace pillai::fpr {

// Modular screening for exact-value collision maps: sequence values are
// bucketed by their image at a fixed point of F_p over two channels, and only
// bucket members ever reach exact arithmetic. Equal values always share a
// fingerprint, so screening never loses a collision.

inline constexpr std::array<std::uint64_t, 6> kPrimes = {
    2305843009213693951ULL,  // 2^61 - 1
    2305843009213693921ULL,
    2305843009213693907ULL,
    2305843009213693723ULL,
    2305843009213693693ULL,
    2305843009213693669ULL,
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw InternalError("modular inverse of zero");
    return powmod(a, p - 2, p);
}

struct Channel {
    std::uint64_t prime;
    std::uint64_t point;
};

inline std::uint64_t residue_mod(const Integer& z, std::uint64_t p) {
    return mpz_fdiv_ui(z.get_mpz_t(), p);
}

// Image of a rational coefficient in F_p; undefined when p divides the
// denominator.
inline std::optional<std::uint64_t> residue(const Rational& q, std::uint64_t p) {
    std::uint64_t den = residue_mod(Integer(q.get_den()), p);
    if (den == 0) return std::nullopt;
    std::uint64_t num = residue_mod(Integer(q.get_num()), p);
    return mulmod(num, invmod(den, p), p);
}

inline std::optional<std::uint64_t> eval_poly(const Poly& poly, const Channel& ch) {
    std::uint64_t acc = 0;
    const auto& cs = poly.coeffs();
    for (std::size_t i = cs.size(); i-- > 0;) {
        auto c = residue(cs[i], ch.prime);
        if (!c) return std::nullopt;
        acc = addmod(mulmod(acc, ch.point, ch.prime), *c, ch.prime);
    }
    return acc;
}

inline std::optional<std::uint64_t> eval_ratfunc(const RatFunc& f, const Channel& ch) {
    auto num = eval_poly(f.num(), ch);
    auto den = eval_poly(f.den(), ch);
    if (!num || !den || *den == 0) return std::nullopt;
    return mulmod(*num, invmod(*den, ch.prime), ch.prime);
}

struct Fingerprint {
    std::array<std::uint64_t, 2> v{0, 0};

    friend bool operator==(const Fingerprint& a, const Fingerprint& b) { return a.v == b.v; }
    friend bool operator<(const Fingerprint& a, const Fingerprint& b) { return a.v < b.v; }
};

struct FingerprintHash {
    std::size_t operator()(const Fingerprint& f) const {
        std::uint64_t x = f.v[0] ^ (f.v[1] * 0x9e3779b97f4a7c15ULL);
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        return static_cast<std::size_t>(x);
    }
};

// Two deterministic channels under which every base element evaluates to a
// nonzero unit: the prime must not divide any coefficient denominator and the
// point must avoid the zeros of every numerator and denominator.
class ChannelPair {
public:
    static ChannelPair choose(const std::vector<RatFunc>& base) {
        ChannelPair out;
        std::size_t found = 0;
        for (std::uint64_t p : kPrimes) {
            if (!prime_usable(base, p)) continue;
            for (std::uint64_t x = 2; x < (1ULL << 20) && found < 2; ++x) {
                if (found == 1 && out.channels_[0].prime == p && out.channels_[0].point == x) {
                    continue;
                }
                Channel ch{p, x};
                if (!point_usable(base, ch)) continue;
                out.channels_[found++] = ch;
            }
            if (found == 2) return out;
        }
        throw InternalError("no usable fingerprint channel for these inputs");
    }

    const Channel& channel(std::size_t i) const { return channels_.at(i); }

    Fingerprint of(const RatFunc& f) const {
        Fingerprint fp;
        for (std::size_t i = 0; i < 2; ++i) {
            auto v = eval_ratfunc(f, channels_[i]);
            if (!v) throw InternalError("value not evaluable under chosen channel");
            fp.v[i] = *v;
        }
        return fp;
    }

    Fingerprint add(const Fingerprint& a, const Fingerprint& b) const {
        return {{addmod(a.v[0], b.v[0], channels_[0].prime),
                 addmod(a.v[1], b.v[1], channels_[1].prime)}};
    }

    Fingerprint sub(const Fingerprint& a, const Fingerprint& b) const {
        return {{submod(a.v[0], b.v[0], channels_[0].prime),
                 submod(a.v[1], b.v[1], channels_[1].prime)}};
    }

private:
    static bool prime_usable(const std::vector<RatFunc>& base, std::uint64_t p) {
        for (const RatFunc& f : base) {
            for (const Poly* part : {&f.num(), &f.den()}) {
                for (const Rational& c : part->coeffs()) {
                    if (residue_mod(Integer(c.get_den()), p) == 0) return false;
                }
            }
        }
        return true;
    }

    static bool point_usable(const std::vector<RatFunc>& base, const Channel& ch) {
        for (const RatFunc& f : base) {
            auto num = eval_poly(f.num(), ch);
            auto den = eval_poly(f.den(), ch);
            if (!num || !den || *num == 0 || *den == 0) return false;
        }
        return true;
    }

    std::array<Channel, 2> channels_{};
};

// Incremental fingerprints of a recurrence value along n = 1, 2, ...
class RecurrenceFpSeq {
public:
    RecurrenceFpSeq(const Recurrence& rec, const ChannelPair& channels) : channels_(&channels) {
        for (std::size_t c = 0; c < 2; ++c) {
            const Channel& ch = channels.channel(c);
            for (const Term& t : rec.terms()) {
                auto coeff = eval_ratfunc(t.coeff, ch);
                auto root = eval_ratfunc(t.root, ch);
                if (!coeff || !root) throw InternalError("recurrence term not evaluable");
                coeffs_[c].push_back(*coeff);
                roots_[c].push_back(*root);
            }
        }
        seek(1);
    }

    void seek(long n) {
        if (n < 1) throw InternalError("fingerprint sequence index must be >= 1");
        index_ = n;
        for (std::size_t c = 0; c < 2; ++c) {
            std::uint64_t p = channels_->channel(c).prime;
            states_[c].resize(roots_[c].size());
            for (std::size_t i = 0; i < roots_[c].size(); ++i) {
                states_[c][i] =
                    mulmod(coeffs_[c][i], powmod(roots_[c][i], static_cast<std::uint64_t>(n), p), p);
            }
        }
    }

    long index() const { return index_; }

    Fingerprint value() const {
        Fingerprint fp;
        for (std::size_t c = 0; c < 2; ++c) {
            std::uint64_t p = channels_->channel(c).prime;
            std::uint64_t acc = 0;
            for (std::uint64_t s : states_[c]) acc = addmod(acc, s, p);
            fp.v[c] = acc;
        }
        return fp;
    }

    void advance() {
        ++index_;
        for (std::size_t c = 0; c < 2; ++c) {
            std::uint64_t p = channels_->channel(c).prime;
            for (std::size_t i = 0; i < states_[c].size(); ++i) {
                states_[c][i] = mulmod(states_[c][i], roots_[c][i], p);
            }
        }
    }

private:
    const ChannelPair* channels_;
    std::array<std::vector<std::uint64_t>, 2> coeffs_;
    std::array<std::vector<std::uint64_t>, 2> roots_;
    std::array<std::vector<std::uint64_t>, 2> states_;
    long index_ = 1;
};

}  // namespace pillai::fpr
