// Exact half-integer weights and 1/24-grid exponents.
#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace bergkern {

// A weight k with 2k stored, so 25/2 and 12 are both exact.
class HalfInt {
public:
    constexpr HalfInt() : twice_(0) {}
    static constexpr HalfInt from_twice(long t) { return HalfInt(t); }
    static constexpr HalfInt integer(long k) { return HalfInt(2 * k); }

    constexpr long twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr bool is_even_integer() const { return twice_ % 4 == 0; }
    constexpr long floor() const {
        return (twice_ >= 0 ? twice_ : twice_ - 1) / 2;
    }
    template <typename Real = long double>
    constexpr Real value() const { return Real(twice_) / Real(2); }

    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice_ == b.twice_; }
    friend constexpr bool operator!=(HalfInt a, HalfInt b) { return a.twice_ != b.twice_; }
    friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice_ < b.twice_; }

    // Accepts "12", "25/2", "-3/2".
    static HalfInt parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            return integer(parse_long(s));
        }
        long num = parse_long(s.substr(0, slash));
        long den = parse_long(s.substr(slash + 1));
        if (den == 2) return from_twice(num);
        if (den == 1) return integer(num);
        throw std::invalid_argument("weight denominator must be 1 or 2: " + s);
    }

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    constexpr explicit HalfInt(long t) : twice_(t) {}

    static long parse_long(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty number");
        char* end = nullptr;
        long v = std::strtol(s.c_str(), &end, 10);
        if (end != s.c_str() + s.size())
            throw std::invalid_argument("bad integer: " + s);
        return v;
    }

    long twice_;
};

// Exponent on the q^(1/24) grid: value num/24. All q-expansions here live on
// a grid lead + Z with lead a multiple of 1/24.
struct Exp24 {
    long num = 0;  // exponent = num / 24

    constexpr long double value() const { return (long double)num / 24.0L; }
    friend constexpr Exp24 operator+(Exp24 a, Exp24 b) { return {a.num + b.num}; }
    friend constexpr Exp24 operator-(Exp24 a, Exp24 b) { return {a.num - b.num}; }
    friend constexpr bool operator==(Exp24 a, Exp24 b) { return a.num == b.num; }

    std::string str() const { return std::to_string(num) + "/24"; }
};

}  // namespace bergkern
