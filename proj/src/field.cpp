#include "gca/field.hpp"

#include <cctype>

namespace gca {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZeroError("Rational: zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt{1};
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
}

Rational Rational::from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational{BigInt::from_string(s), BigInt{1}};
    return Rational{BigInt::from_string(s.substr(0, slash)),
                    BigInt::from_string(s.substr(slash + 1))};
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational{a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) {
    return Rational{a.num_ * b.num_, a.den_ * b.den_};
}
Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DivisionByZeroError("Rational: division by zero");
    return Rational{a.num_ * b.den_, a.den_ * b.num_};
}
Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}
Rational Rational::abs() const {
    Rational out = *this;
    out.num_ = out.num_.abs();
    return out;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    return (num_ * o.den_) <=> (o.num_ * den_);
}

std::string Rational::to_string() const {
    if (den_ == BigInt{1}) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t out = 1;
    base %= p;
    while (exp != 0) {
        if (exp & 1) out = out * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return out;
}

}  // namespace

CoeffField CoeffField::prime_field(std::uint32_t p) {
    if (p >= (1u << 31)) throw std::invalid_argument("CoeffField: p must be < 2^31");
    if (!is_prime(p)) throw std::invalid_argument("CoeffField: p must be prime");
    return CoeffField{p};
}

CoeffField CoeffField::parse(std::string_view tag) {
    std::string t;
    for (char c : tag)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (t == "Q") return rationals();
    if (t.size() > 2 && t.compare(0, 2, "GF") == 0) {
        std::string_view body(t);
        body.remove_prefix(2);
        if (!body.empty() && body.front() == '(') {
            if (body.back() != ')') throw std::invalid_argument("CoeffField: unbalanced GF(p) tag");
            body.remove_prefix(1);
            body.remove_suffix(1);
        }
        std::uint64_t p = 0;
        for (char c : body) {
            if (c < '0' || c > '9') throw std::invalid_argument("CoeffField: bad GF(p) tag");
            p = p * 10 + static_cast<std::uint64_t>(c - '0');
            if (p >= (1ull << 31)) throw std::invalid_argument("CoeffField: p must be < 2^31");
        }
        return prime_field(static_cast<std::uint32_t>(p));
    }
    throw std::invalid_argument("CoeffField: unknown field tag '" + std::string(tag) + "'");
}

std::string CoeffField::to_string() const {
    return is_rationals() ? "Q" : "GF(" + std::to_string(p_) + ")";
}

FieldElem FieldElem::zero(CoeffField f) {
    if (f.is_rationals()) return FieldElem{f, Rational{}};
    return FieldElem{f, std::uint64_t{0}};
}

FieldElem FieldElem::one(CoeffField f) { return from_integer(f, 1); }

FieldElem FieldElem::from_integer(CoeffField f, const BigInt& n) {
    if (f.is_rationals()) return FieldElem{f, Rational{n, BigInt{1}}};
    BigInt r = n % BigInt{static_cast<std::int64_t>(f.characteristic())};
    std::int64_t v = r.to_int64();
    if (v < 0) v += f.characteristic();
    return FieldElem{f, static_cast<std::uint64_t>(v)};
}

FieldElem FieldElem::from_integer(CoeffField f, std::int64_t n) {
    return from_integer(f, BigInt{n});
}

FieldElem FieldElem::from_rational(Rational r) {
    return FieldElem{CoeffField::rationals(), std::move(r)};
}

FieldElem FieldElem::parse(CoeffField f, std::string_view s) {
    if (f.is_rationals()) return from_rational(Rational::from_string(s));
    return from_integer(f, BigInt::from_string(s));
}

bool FieldElem::is_zero() const {
    if (field_.is_rationals()) return std::get<Rational>(value_).is_zero();
    return std::get<std::uint64_t>(value_) == 0;
}

bool FieldElem::is_one() const { return *this == one(field_); }

const Rational& FieldElem::rational() const {
    if (!field_.is_rationals()) throw FieldMismatchError("FieldElem: not a rational");
    return std::get<Rational>(value_);
}

std::uint64_t FieldElem::residue() const {
    if (field_.is_rationals()) throw FieldMismatchError("FieldElem: not a prime-field residue");
    return std::get<std::uint64_t>(value_);
}

void FieldElem::require_same(const FieldElem& a, const FieldElem& b) {
    if (!(a.field_ == b.field_))
        throw FieldMismatchError("FieldElem: mixed fields " + a.field_.to_string() + " and " +
                                 b.field_.to_string());
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    FieldElem::require_same(a, b);
    if (a.field_.is_rationals())
        return FieldElem{a.field_, a.rational() + b.rational()};
    return FieldElem{a.field_, (a.residue() + b.residue()) % a.field_.characteristic()};
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    FieldElem::require_same(a, b);
    if (a.field_.is_rationals())
        return FieldElem{a.field_, a.rational() * b.rational()};
    return FieldElem{a.field_, a.residue() * b.residue() % a.field_.characteristic()};
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    FieldElem::require_same(a, b);
    return a * b.inverse();
}

FieldElem FieldElem::operator-() const {
    if (field_.is_rationals()) return FieldElem{field_, -rational()};
    std::uint64_t r = residue();
    return FieldElem{field_, r == 0 ? 0 : field_.characteristic() - r};
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw DivisionByZeroError("FieldElem: division by zero");
    if (field_.is_rationals())
        return FieldElem{field_, Rational{1} / rational()};
    // Fermat; p is prime and residue nonzero.
    return FieldElem{field_, mod_pow(residue(), field_.characteristic() - 2,
                                     field_.characteristic())};
}

bool FieldElem::operator==(const FieldElem& o) const {
    return field_ == o.field_ && value_ == o.value_;
}

AbsValue FieldElem::abs() const {
    if (!field_.is_rationals())
        throw FieldMismatchError("FieldElem: |.| is defined over Q only");
    return AbsValue{rational()};
}

std::string FieldElem::to_string() const {
    if (field_.is_rationals()) return rational().to_string();
    return std::to_string(residue());
}

FieldElem field_arith(const FieldElem& a, const FieldElem& b, FieldOp op) {
    switch (op) {
        case FieldOp::add: return a + b;
        case FieldOp::sub: return a - b;
        case FieldOp::mul: return a * b;
        case FieldOp::div: return a / b;
    }
    throw std::invalid_argument("field_arith: bad op");
}

}  // namespace gca
