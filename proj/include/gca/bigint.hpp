#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace gca {

// Sign-magnitude arbitrary-precision integer, base 2^32 limbs, least
// significant limb first.  Zero is the empty limb vector with sign +1.
class BigInt {
  public:
    BigInt() = default;
    BigInt(std::int64_t v);
    static BigInt from_string(std::string_view dec);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return limbs_.empty() ? 0 : sign_; }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    // Truncated division (quotient rounds toward zero), as in C++.
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    std::strong_ordering operator<=>(const BigInt& o) const;
    bool operator==(const BigInt& o) const;

    static BigInt gcd(BigInt a, BigInt b);

    // Value must fit; throws std::overflow_error otherwise.
    std::int64_t to_int64() const;
    bool fits_int64() const;
    std::string to_string() const;
    std::size_t hash() const;

  private:
    int sign_ = 1;
    std::vector<std::uint32_t> limbs_;

    void trim();
    static int cmp_mag(const BigInt& a, const BigInt& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>&,
                                              const std::vector<std::uint32_t>&);
    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>&,
                                              const std::vector<std::uint32_t>&);
};

}  // namespace gca
