#pragma once

#include <cassert>
#include <cstdint>
#include <string>

namespace podsim {

// Exact rational on 128-bit integers.
//
// Fluid-share rates are rationals (weight / weight-sum x cores), so work and
// quota integrals must be exact for per-period accruals like 40 ms out of a
// 100 ms period to come out as whole microseconds. Event times stay integer
// microseconds; only work accounting uses Frac.
//
// Denominators are bounded: after normalization, any denominator above
// kDenCap is deterministically rounded to the nearest multiple of 1/kDenCap.
// Scenario weights are small integers, so the cap is never hit in practice;
// it exists so adversarial weight sets cannot overflow the 128-bit
// intermediates.
class Frac {
public:
    using i128 = __int128;

    static constexpr std::int64_t kDenCap = std::int64_t{1} << 32;

    constexpr Frac() : num_(0), den_(1) {}
    constexpr Frac(std::int64_t v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)

    static Frac ratio(std::int64_t num, std::int64_t den) {
        assert(den != 0);
        Frac f;
        f.num_ = num;
        f.den_ = den;
        f.normalize();
        return f;
    }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Frac operator+(const Frac& o) const { return make(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    Frac operator-(const Frac& o) const { return make(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    Frac operator-() const { return make(-num_, den_); }
    Frac operator*(const Frac& o) const { return make(num_ * o.num_, den_ * o.den_); }
    Frac operator/(const Frac& o) const {
        assert(o.num_ != 0);
        return make(num_ * o.den_, den_ * o.num_);
    }

    Frac& operator+=(const Frac& o) { return *this = *this + o; }
    Frac& operator-=(const Frac& o) { return *this = *this - o; }
    Frac& operator*=(const Frac& o) { return *this = *this * o; }
    Frac& operator/=(const Frac& o) { return *this = *this / o; }

    bool operator==(const Frac& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Frac& o) const { return !(*this == o); }
    bool operator<(const Frac& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Frac& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Frac& o) const { return o < *this; }
    bool operator>=(const Frac& o) const { return o <= *this; }

    // Largest integer <= value.
    std::int64_t floor() const {
        i128 q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return static_cast<std::int64_t>(q);
    }

    // Smallest integer >= value.
    std::int64_t ceil() const {
        i128 q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return static_cast<std::int64_t>(q);
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::int64_t num() const { return static_cast<std::int64_t>(num_); }
    std::int64_t den() const { return static_cast<std::int64_t>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num());
        return std::to_string(num()) + "/" + std::to_string(den());
    }

    static Frac min(const Frac& a, const Frac& b) { return a <= b ? a : b; }
    static Frac max(const Frac& a, const Frac& b) { return a >= b ? a : b; }

private:
    static Frac make(i128 num, i128 den) {
        Frac f;
        f.num_ = num;
        f.den_ = den;
        f.normalize();
        return f;
    }

    static i128 gcd128(i128 a, i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void normalize() {
        assert(den_ != 0);
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        i128 g = gcd128(num_, den_);
        num_ /= g;
        den_ /= g;
        if (den_ > kDenCap) {
            // Deterministic quantization: nearest multiple of 1/kDenCap,
            // ties away from zero. Split into integer and fractional parts
            // first so the scaled numerator cannot overflow.
            i128 q = num_ / den_;
            i128 r = num_ % den_;  // same sign as num_
            i128 scaled = r * kDenCap;
            i128 frac = scaled / den_;
            i128 rem2 = scaled % den_;
            if (rem2 * 2 >= den_) ++frac;
            if (-rem2 * 2 >= den_) --frac;
            num_ = q * kDenCap + frac;
            den_ = kDenCap;
            i128 g2 = gcd128(num_, den_);
            if (num_ == 0) {
                den_ = 1;
            } else {
                num_ /= g2;
                den_ /= g2;
            }
        }
    }

    i128 num_;
    i128 den_;
};

inline Frac operator*(std::int64_t a, const Frac& f) { return Frac(a) * f; }

}  // namespace podsim
