#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ttw {

/// Exact rational number on int64, always stored in lowest terms with a
/// positive denominator. Arithmetic goes through 128-bit intermediates and
/// throws std::overflow_error instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Parse "p/q", "p", or a decimal string like "1.5" / "-0.375".
    /// Decimal inputs convert exactly (power-of-ten denominator, then reduced).
    static Rational parse(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        auto slash = s.find('/');
        if (slash != std::string_view::npos) {
            std::int64_t p = parse_int(s.substr(0, slash));
            std::int64_t q = parse_int(s.substr(slash + 1));
            return Rational(p, q);
        }
        auto dot = s.find('.');
        if (dot == std::string_view::npos) return Rational(parse_int(s), 1);
        bool neg = s.front() == '-';
        std::string digits;
        std::int64_t den = 1;
        for (std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0; i < s.size(); ++i) {
            if (s[i] == '.') continue;
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Rational: bad digit");
            digits.push_back(s[i]);
            if (i > dot) {
                if (den > (1LL << 60) / 10) throw std::overflow_error("Rational: too many decimals");
                den *= 10;
            }
        }
        std::int64_t p = parse_int(digits);
        return Rational(neg ? -p : p, den);
    }

    /// Best small-denominator rational exactly reproducing the double x,
    /// or nullopt-like failure (returns false) if none exists with den <= max_den.
    static bool from_double_exact(double x, Rational& out, std::int64_t max_den = 100000000) {
        if (!std::isfinite(x)) return false;
        // continued-fraction convergents; accept only a bit-exact reconstruction
        double a = x;
        std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        for (int it = 0; it < 64; ++it) {
            double fl = std::floor(a);
            if (fl > 9e17 || fl < -9e17) return false;
            std::int64_t ai = static_cast<std::int64_t>(fl);
            std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
            if (q2 > max_den || q2 < 0) return false;
            if (static_cast<double>(p2) / static_cast<double>(q2) == x) {
                out = Rational(p2, q2);
                return true;
            }
            double frac = a - fl;
            if (frac <= 0) return false;
            a = 1.0 / frac;
            p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        }
        return false;
    }

    /// True when this rational is the square of another rational (and then
    /// writes the nonnegative square root).
    bool sqrt_exact(Rational& root) const {
        if (num_ < 0) return false;
        std::int64_t sn = isqrt(num_), sd = isqrt(den_);
        if (sn < 0 || sd < 0) return false;
        root = Rational(sn, sd);
        return true;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    }

    static Rational from_i128(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 an = n < 0 ? -n : n;
        i128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a;
    }

    static std::int64_t parse_int(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty integer");
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') { neg = s[0] == '-'; i = 1; }
        if (i == s.size()) throw std::invalid_argument("Rational: bad integer");
        i128 v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Rational: bad digit");
            v = v * 10 + (s[i] - '0');
            if (v > INT64_MAX) throw std::overflow_error("Rational: integer overflow");
        }
        return neg ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
    }

    // integer sqrt if perfect square, else -1
    static std::int64_t isqrt(std::int64_t v) {
        if (v < 0) return -1;
        auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
        for (std::int64_t c = r - 2; c <= r + 2; ++c)
            if (c >= 0 && c * c == v) return c;
        return -1;
    }
};

} // namespace ttw
