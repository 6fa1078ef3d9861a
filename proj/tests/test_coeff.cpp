#include "doctest.h"

#include <random>

#include "gca/bigint.hpp"
#include "gca/field.hpp"
#include "gca/linalg.hpp"

using namespace gca;

namespace {

FieldElem q(std::int64_t n, std::int64_t d = 1) {
    return FieldElem::from_rational(Rational{BigInt{n}, BigInt{d}});
}

// Independent oracle: plain fraction Gaussian elimination to RREF, kernel by
// free columns.  Deliberately naive, used to cross-check the fraction-free
// main path.
std::vector<FieldVector> naive_kernel(FieldMatrix m) {
    const std::size_t rows = m.size(), cols = m.front().size();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m[sel][col].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        FieldElem inv = m[row][col].inverse();
        for (auto& e : m[row]) e = e * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row) continue;
            FieldElem f = m[i][col];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<FieldVector> basis;
    CoeffField f = m.front().front().field();
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        FieldVector v(cols, FieldElem::zero(f));
        v[free_col] = FieldElem::one(f);
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

// The six homogeneous equations in (c_e, c_b, c_c, c_d): pair sums vanish.
FieldMatrix pair_sum_system(CoeffField f) {
    auto one = FieldElem::one(f), zero = FieldElem::zero(f);
    return {
        {one, one, zero, zero}, {one, zero, one, zero}, {one, zero, zero, one},
        {zero, zero, one, one}, {zero, one, zero, one}, {zero, one, one, zero},
    };
}

}  // namespace

TEST_CASE("bigint arithmetic against int64") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> dist(-1000000000ll, 1000000000ll);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t a = dist(rng), b = dist(rng);
        CHECK((BigInt{a} + BigInt{b}).to_int64() == a + b);
        CHECK((BigInt{a} - BigInt{b}).to_int64() == a - b);
        CHECK((BigInt{a} * BigInt{b} == BigInt::from_string(std::to_string(a * b))) ==
              (a * b == a * b));
        if (b != 0) {
            CHECK((BigInt{a} / BigInt{b}).to_int64() == a / b);
            CHECK((BigInt{a} % BigInt{b}).to_int64() == a % b);
        }
    }
}

TEST_CASE("bigint big multiplication/division round trip") {
    BigInt a = BigInt::from_string("123456789012345678901234567890123456789");
    BigInt b = BigInt::from_string("98765432109876543210987654321");
    BigInt p = a * b;
    CHECK(p / a == b);
    CHECK(p / b == a);
    CHECK((p % a).is_zero());
    BigInt q, r;
    BigInt::divmod(p + BigInt{12345}, a, q, r);
    CHECK(q == b);
    CHECK(r == BigInt{12345});
    CHECK(p.to_string() ==
          "12193263113702179522618503273374485596336229233322374638011112635269");
    CHECK(BigInt::from_string(p.to_string()) == p);
}

TEST_CASE("field arithmetic examples") {
    // 1/3 + 1/6 = 1/2 over Q
    CHECK(field_arith(q(1, 3), q(1, 6), FieldOp::add) == q(1, 2));
    // 1 + 1 = 0 over GF(2)
    auto gf2 = CoeffField::prime_field(2);
    CHECK(field_arith(FieldElem::one(gf2), FieldElem::one(gf2), FieldOp::add) ==
          FieldElem::zero(gf2));
    // 2 * 1/2 = 1 over Q
    CHECK(field_arith(q(2), q(1, 2), FieldOp::mul) == q(1));
    CHECK_THROWS_AS(field_arith(q(1), FieldElem::zero(CoeffField::rationals()), FieldOp::div),
                    DivisionByZeroError);
    CHECK_THROWS_AS(field_arith(q(1), FieldElem::one(gf2), FieldOp::add), FieldMismatchError);
}

TEST_CASE("field tags") {
    CHECK(CoeffField::parse("Q").is_rationals());
    CHECK(CoeffField::parse("GF(7)").characteristic() == 7);
    CHECK(CoeffField::parse("GF2").characteristic() == 2);
    CHECK(CoeffField::parse("gf(31)").characteristic() == 31);
    CHECK_THROWS(CoeffField::parse("GF(4)"));
    CHECK_THROWS(CoeffField::parse("R"));
    CHECK(CoeffField::rationals().characteristic() == 0);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> num(-40, 40);
    std::uniform_int_distribution<std::int64_t> den(1, 20);
    auto gf = CoeffField::prime_field(97);
    for (int i = 0; i < 500; ++i) {
        FieldElem a = q(num(rng), den(rng)), b = q(num(rng), den(rng)), c = q(num(rng), den(rng));
        FieldElem ga = FieldElem::from_integer(gf, num(rng));
        FieldElem gb = FieldElem::from_integer(gf, num(rng));
        FieldElem gc = FieldElem::from_integer(gf, num(rng));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == FieldElem::zero(a.field()));
        if (!a.is_zero()) CHECK(a * a.inverse() == FieldElem::one(a.field()));
        CHECK((ga * gb) * gc == ga * (gb * gc));
        CHECK(ga * (gb + gc) == ga * gb + ga * gc);
        if (!ga.is_zero()) CHECK(ga * ga.inverse() == FieldElem::one(gf));
    }
}

TEST_CASE("pair-sum system kernel: trivial over Q, (1,1,1,1) over GF(2)") {
    auto kq = solve_homogeneous(pair_sum_system(CoeffField::rationals()));
    CHECK(kq.empty());

    auto gf2 = CoeffField::prime_field(2);
    auto k2 = solve_homogeneous(pair_sum_system(gf2));
    REQUIRE(k2.size() == 1);
    for (const auto& e : k2.front()) CHECK(e == FieldElem::one(gf2));
    CHECK(is_kernel_vector(pair_sum_system(gf2), k2.front()));
}

TEST_CASE("identity matrix has trivial kernel") {
    for (auto f : {CoeffField::rationals(), CoeffField::prime_field(5)}) {
        FieldMatrix m(4, FieldVector(4, FieldElem::zero(f)));
        for (int i = 0; i < 4; ++i) m[i][i] = FieldElem::one(f);
        CHECK(solve_homogeneous(m).empty());
    }
}

TEST_CASE("kernel vectors substitute back to zero and match the naive oracle") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::int64_t> num(-6, 6);
    std::uniform_int_distribution<std::int64_t> den(1, 4);
    for (int trial = 0; trial < 60; ++trial) {
        FieldMatrix m(6, FieldVector(4, FieldElem::zero(CoeffField::rationals())));
        for (auto& row : m)
            for (auto& e : row) e = q(num(rng), den(rng));
        auto kernel = solve_homogeneous(m);
        auto oracle = naive_kernel(m);
        REQUIRE(kernel.size() == oracle.size());
        for (std::size_t i = 0; i < kernel.size(); ++i) {
            CHECK(is_kernel_vector(m, kernel[i]));
            CHECK(kernel[i] == oracle[i]);
        }
    }
}

TEST_CASE("abs value") {
    CHECK(q(-3, 4).abs() == AbsValue{Rational{BigInt{3}, BigInt{4}}});
    CHECK(q(0).abs().value().is_zero());
    CHECK_THROWS_AS(FieldElem::one(CoeffField::prime_field(3)).abs(), FieldMismatchError);
}
