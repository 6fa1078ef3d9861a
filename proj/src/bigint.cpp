#include "gca/bigint.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace gca {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(std::int64_t v) {
    if (v < 0) {
        sign_ = -1;
    }
    // Avoid overflow on INT64_MIN.
    std::uint64_t mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    while (mag != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
        mag >>= 32;
    }
    if (limbs_.empty()) sign_ = 1;
}

BigInt BigInt::from_string(std::string_view dec) {
    BigInt out;
    bool neg = false;
    std::size_t i = 0;
    if (i < dec.size() && (dec[i] == '-' || dec[i] == '+')) {
        neg = dec[i] == '-';
        ++i;
    }
    if (i == dec.size()) throw std::invalid_argument("BigInt: empty numeral");
    for (; i < dec.size(); ++i) {
        char c = dec[i];
        if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit in numeral");
        // out = out*10 + digit, in place
        std::uint64_t carry = static_cast<std::uint64_t>(c - '0');
        for (auto& limb : out.limbs_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * 10 + carry;
            limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        while (carry != 0) {
            out.limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
            carry >>= 32;
        }
    }
    if (neg && !out.limbs_.empty()) out.sign_ = -1;
    return out;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 1;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> out;
    out.reserve(big.size() + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::uint64_t cur = carry + big[i] + (i < small.size() ? small[i] : 0u);
        out.push_back(static_cast<std::uint32_t>(cur & 0xffffffffu));
        carry = cur >> 32;
    }
    if (carry) out.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow -
                           (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
        if (cur < 0) {
            cur += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<std::uint32_t>(cur));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    if (!out.limbs_.empty()) out.sign_ = -out.sign_;
    return out;
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    out.sign_ = 1;
    return out;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt out;
    if (a.sign_ == b.sign_) {
        out.limbs_ = BigInt::add_mag(a.limbs_, b.limbs_);
        out.sign_ = a.sign_;
    } else {
        int c = BigInt::cmp_mag(a, b);
        if (c == 0) return BigInt{};
        const BigInt& big = c > 0 ? a : b;
        const BigInt& small = c > 0 ? b : a;
        out.limbs_ = BigInt::sub_mag(big.limbs_, small.limbs_);
        out.sign_ = big.sign_;
    }
    out.trim();
    return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt{};
    BigInt out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                                out.limbs_[i + j] + carry;
            out.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        out.limbs_[i + b.limbs_.size()] += static_cast<std::uint32_t>(carry);
    }
    out.sign_ = a.sign_ * b.sign_;
    out.trim();
    return out;
}

// Knuth algorithm D on normalized magnitudes.
void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    int c = cmp_mag(a, b);
    if (c < 0) {
        q = BigInt{};
        r = a;
        return;
    }
    if (b.limbs_.size() == 1) {
        std::uint64_t d = b.limbs_[0];
        std::vector<std::uint32_t> quot(a.limbs_.size());
        std::uint64_t rem = 0;
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | a.limbs_[i];
            quot[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        q = BigInt{};
        q.limbs_ = std::move(quot);
        q.sign_ = a.sign_ * b.sign_;
        q.trim();
        r = BigInt{static_cast<std::int64_t>(rem)};
        if (a.sign_ < 0) r = -r;
        return;
    }

    // Normalize so the divisor's top limb has its high bit set.
    int shift = 0;
    for (std::uint32_t top = b.limbs_.back(); !(top & 0x80000000u); top <<= 1) ++shift;
    auto shl = [shift](const std::vector<std::uint32_t>& v) {
        std::vector<std::uint32_t> out(v.size() + 1, 0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] |= shift ? (v[i] << shift) : v[i];
            if (shift) out[i + 1] |= static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(v[i]) >> (32 - shift));
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    };
    std::vector<std::uint32_t> u = shl(a.limbs_);
    std::vector<std::uint32_t> v = shl(b.limbs_);
    const std::size_t n = v.size();
    const std::size_t m = u.size() - n;
    u.push_back(0);

    std::vector<std::uint32_t> quot(m + 1, 0);
    for (std::size_t j = m + 1; j-- > 0;) {
        std::uint64_t num = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        std::uint64_t qhat = num / v[n - 1];
        std::uint64_t rhat = num % v[n - 1];
        while (qhat >= kBase ||
               qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= kBase) break;
        }
        // u[j..j+n] -= qhat * v
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t prod = qhat * v[i] + carry;
            carry = prod >> 32;
            std::int64_t cur = static_cast<std::int64_t>(u[i + j]) -
                               static_cast<std::int64_t>(prod & 0xffffffffu) - borrow;
            if (cur < 0) {
                cur += static_cast<std::int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<std::uint32_t>(cur);
        }
        std::int64_t top = static_cast<std::int64_t>(u[j + n]) -
                           static_cast<std::int64_t>(carry) - borrow;
        if (top < 0) {
            // qhat was one too large: add v back once.
            --qhat;
            std::uint64_t add_carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t cur = static_cast<std::uint64_t>(u[i + j]) + v[i] + add_carry;
                u[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
                add_carry = cur >> 32;
            }
            top += static_cast<std::int64_t>(add_carry) + static_cast<std::int64_t>(kBase);
            top -= static_cast<std::int64_t>(kBase);
        }
        u[j + n] = static_cast<std::uint32_t>(top);
        quot[j] = static_cast<std::uint32_t>(qhat);
    }

    q = BigInt{};
    q.limbs_ = std::move(quot);
    q.sign_ = a.sign_ * b.sign_;
    q.trim();

    // Remainder: low n limbs of u, shifted back.
    u.resize(n);
    if (shift) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] >>= shift;
            if (i + 1 < u.size())
                u[i] |= static_cast<std::uint32_t>(
                    static_cast<std::uint64_t>(u[i + 1]) << (32 - shift));
        }
    }
    r = BigInt{};
    r.limbs_ = std::move(u);
    r.sign_ = a.sign_;
    r.trim();
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    int sa = sign(), sb = o.sign();
    if (sa != sb) return sa <=> sb;
    int c = cmp_mag(*this, o);
    if (sa < 0) c = -c;
    return c <=> 0;
}

bool BigInt::operator==(const BigInt& o) const {
    return sign() == o.sign() && limbs_ == o.limbs_;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = 1;
    b.sign_ = 1;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool BigInt::fits_int64() const {
    if (limbs_.size() > 2) return false;
    std::uint64_t mag = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) mag = (mag << 32) | limbs_[i];
    return sign_ > 0 ? mag <= static_cast<std::uint64_t>(INT64_MAX)
                     : mag <= static_cast<std::uint64_t>(INT64_MAX) + 1;
}

std::int64_t BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: value exceeds int64");
    std::uint64_t mag = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) mag = (mag << 32) | limbs_[i];
    return sign_ > 0 ? static_cast<std::int64_t>(mag)
                     : -static_cast<std::int64_t>(mag - 1) - 1;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::string digits;
    std::vector<std::uint32_t> work = limbs_;
    while (!work.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = work.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | work[i];
            work[i] = static_cast<std::uint32_t>(cur / 10);
            rem = cur % 10;
        }
        digits.push_back(static_cast<char>('0' + rem));
        while (!work.empty() && work.back() == 0) work.pop_back();
    }
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::size_t BigInt::hash() const {
    std::size_t h = sign_ < 0 ? 0x9e3779b97f4a7c15ull : 0;
    for (std::uint32_t limb : limbs_) h = h * 1099511628211ull + limb;
    return h;
}

}  // namespace gca
