#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "gca/bigint.hpp"

namespace gca {

struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DivisionByZeroError : std::domain_error {
    using std::domain_error::domain_error;
};

// Reduced fraction with positive denominator.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt num, BigInt den);
    Rational(std::int64_t n) : num_(n), den_(1) {}
    static Rational from_string(std::string_view s);  // "a/b" or "a"

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;
    Rational abs() const;

    std::strong_ordering operator<=>(const Rational& o) const;
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::string to_string() const;

  private:
    BigInt num_;
    BigInt den_;
    void reduce();
};

// |x| over Q: nonnegative rational magnitude.
class AbsValue {
  public:
    AbsValue() = default;
    explicit AbsValue(Rational r) : value_(r.abs()) {}
    const Rational& value() const { return value_; }
    bool operator==(const AbsValue&) const = default;
    auto operator<=>(const AbsValue& o) const { return value_ <=> o.value_; }
    std::string to_string() const { return value_.to_string(); }

  private:
    Rational value_;
};

// Exact coefficient field: Q (characteristic 0) or GF(p) for prime p < 2^31.
class CoeffField {
  public:
    static CoeffField rationals() { return CoeffField{0}; }
    static CoeffField prime_field(std::uint32_t p);
    // Accepts "Q", "GF(p)", "GFp" (case-insensitive).
    static CoeffField parse(std::string_view tag);

    bool is_rationals() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }
    std::string to_string() const;
    bool operator==(const CoeffField&) const = default;

  private:
    explicit CoeffField(std::uint32_t p) : p_(p) {}
    std::uint32_t p_;  // 0 means Q
};

// A scalar in a CoeffField, kept in canonical form (reduced fraction over Q,
// residue in [0, p) over GF(p)).
class FieldElem {
  public:
    FieldElem() : field_(CoeffField::rationals()), value_(Rational{}) {}
    static FieldElem zero(CoeffField f);
    static FieldElem one(CoeffField f);
    static FieldElem from_integer(CoeffField f, const BigInt& n);
    static FieldElem from_integer(CoeffField f, std::int64_t n);
    static FieldElem from_rational(Rational r);
    // Parses "a/b" over Q, integer residue over GF(p).
    static FieldElem parse(CoeffField f, std::string_view s);

    const CoeffField& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;
    const Rational& rational() const;  // Q only
    std::uint64_t residue() const;     // GF(p) only

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem operator-() const;
    FieldElem inverse() const;

    bool operator==(const FieldElem& o) const;

    // Q only; the magnitude used by the lower-bound certificate.
    AbsValue abs() const;

    std::string to_string() const;

  private:
    FieldElem(CoeffField f, std::variant<Rational, std::uint64_t> v)
        : field_(f), value_(std::move(v)) {}
    static void require_same(const FieldElem& a, const FieldElem& b);

    CoeffField field_;
    std::variant<Rational, std::uint64_t> value_;
};

enum class FieldOp { add, sub, mul, div };

// Spec-level dispatch entry point.
FieldElem field_arith(const FieldElem& a, const FieldElem& b, FieldOp op);

}  // namespace gca
