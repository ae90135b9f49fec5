#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bap {

using int128 = __int128;

namespace detail {

inline int128 abs128(int128 v) { return v < 0 ? -v : v; }

inline int128 gcd128(int128 a, int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        const int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::string to_string128(int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

}  // namespace detail

/// Exact rational on 128-bit integers, always stored reduced with a positive
/// denominator. Wide enough for everything this library forms: objective
/// values are guarded to fit int64 at instance load, and the ratios we
/// compare against scale them by at most O(n^2) factors.
class Rational {
public:
    Rational() = default;
    Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
    Rational(int128 num, int128 den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const int128 g = detail::gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    /// "p/q" reduced, or just "p" for integers.
    std::string str() const {
        std::string s = detail::to_string128(num_);
        if (den_ != 1) s += "/" + detail::to_string128(den_);
        return s;
    }

    double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

private:
    int128 num_ = 0;
    int128 den_ = 1;
};

}  // namespace bap
