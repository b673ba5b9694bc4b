#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ousemi {

/// Exact half-integer arithmetic. Stores twice the value so that sums of
/// multiples of 1/2 never round. Used for the anisotropic decay exponents,
/// where strict comparisons must be decidable.
class HalfInt {
public:
    constexpr HalfInt() = default;
    static constexpr HalfInt from_twice(std::int64_t tv) { return HalfInt(tv); }
    static constexpr HalfInt whole(std::int64_t n) { return HalfInt(2 * n); }
    static constexpr HalfInt half() { return HalfInt(1); }

    constexpr std::int64_t twice_value() const { return tv_; }
    constexpr bool is_integer() const { return tv_ % 2 == 0; }
    constexpr double to_double() const { return static_cast<double>(tv_) / 2.0; }

    constexpr HalfInt operator+(HalfInt o) const { return HalfInt(tv_ + o.tv_); }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt(tv_ - o.tv_); }
    constexpr HalfInt operator-() const { return HalfInt(-tv_); }
    constexpr HalfInt operator*(std::int64_t n) const { return HalfInt(tv_ * n); }
    HalfInt& operator+=(HalfInt o) { tv_ += o.tv_; return *this; }
    HalfInt& operator-=(HalfInt o) { tv_ -= o.tv_; return *this; }

    constexpr auto operator<=>(const HalfInt&) const = default;

    /// max(value, 0)
    constexpr HalfInt positive_part() const { return tv_ > 0 ? *this : HalfInt(0); }

    std::string str() const {
        if (is_integer()) return std::to_string(tv_ / 2);
        return std::to_string(tv_) + "/2";
    }

private:
    explicit constexpr HalfInt(std::int64_t tv) : tv_(tv) {}
    std::int64_t tv_ = 0;
};

inline HalfInt operator*(std::int64_t n, HalfInt h) { return h * n; }

}  // namespace ousemi
