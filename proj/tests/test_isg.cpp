#include "doctest.h"

#include <random>

#include "gca/isg.hpp"
#include "gca/systems.hpp"

using namespace gca;

namespace {

GroupElem G(const char* names) { return GroupElem::parse(grigorchuk(), names); }
Word W(const char* digits) { return Word::from_digits(digits); }

Triple T(const char* alpha, const char* g, const char* beta) {
    return Triple::make(W(alpha), G(g), W(beta));
}

Triple random_triple(std::mt19937& rng) {
    std::uniform_int_distribution<int> len(0, 3), bit(0, 1), gen(0, 3), zero(0, 9);
    if (zero(rng) == 0) return Triple::zero(grigorchuk());
    auto rand_word = [&] {
        std::vector<Letter> w;
        int l = len(rng);
        for (int i = 0; i < l; ++i) w.push_back(bit(rng));
        return Word{w};
    };
    std::vector<int> sgens;
    int l = len(rng);
    for (int i = 0; i < l; ++i) sgens.push_back(gen(rng));
    return Triple::make(rand_word(), GroupElem::word(grigorchuk(), sgens), rand_word());
}

}  // namespace

TEST_CASE("multiplication cases") {
    // (alpha,g,beta)(beta,h,delta) = (alpha, g h, delta)
    Triple p = isg_mul(T("0", "b", "11"), T("11", "c", "1"));
    CHECK(triple_equal(p, T("0", "bc", "1")));
    CHECK(triple_equal(p, T("0", "d", "1")));
    // (0,e,0)(01,e,1) = (01, e, 1): first case with eps = 1.
    CHECK(triple_equal(isg_mul(T("0", "e", "0"), T("01", "e", "1")), T("01", "e", "1")));
    // Written with an empty range word the first factor strips a letter.
    CHECK(triple_equal(isg_mul(T("", "e", "0"), T("01", "e", "1")), T("1", "e", "1")));
    // Incomparable words give zero.
    CHECK(isg_mul(T("0", "e", "0"), T("1", "e", "1")).is_zero());
    // Zero absorbs.
    CHECK(isg_mul(Triple::zero(grigorchuk()), T("0", "e", "0")).is_zero());
    CHECK(isg_mul(T("0", "e", "0"), Triple::zero(grigorchuk())).is_zero());
}

TEST_CASE("second multiplication case threads the inverse cocycle") {
    // (alpha, g, gamma eps)(gamma, h, delta) with eps nonempty.
    Triple s = T("0", "b", "10");
    Triple t = T("1", "a", "0");
    // beta = 1 0, gamma = 1, eps = 0; h^-1 = a: a.0 = 1, a|_0 = e.
    Triple p = isg_mul(s, t);
    REQUIRE(!p.is_zero());
    CHECK(p.alpha() == W("0"));
    CHECK(p.beta() == W("01"));
    CHECK(elements_equal(p.g(), G("b")));
    // Oracle: theta_p = theta_s . theta_t pointwise.
    InfWord w = Word::from_digits("01") + InfWord::constant(1);
    CHECK(theta_apply(p, w) == theta_apply(s, theta_apply(t, w)));
}

TEST_CASE("star is an involution and s s* s = s") {
    Triple s = T("01", "ba", "1");
    CHECK(triple_equal(isg_star(isg_star(s)), s));
    CHECK(triple_equal(isg_mul(s, isg_mul(isg_star(s), s)), s));
    CHECK(isg_star(Triple::zero(grigorchuk())).is_zero());
    Triple st = isg_star(T("0", "b", "1"));
    CHECK(st.alpha() == W("1"));
    CHECK(st.beta() == W("0"));
    CHECK(elements_equal(st.g(), G("b")));
}

TEST_CASE("inverse semigroup axioms on random triples") {
    std::mt19937 rng(41);
    for (int i = 0; i < 400; ++i) {
        Triple s = random_triple(rng), t = random_triple(rng);
        CHECK(triple_equal(isg_mul(s, isg_mul(isg_star(s), s)), s));
        CHECK(triple_equal(isg_mul(isg_star(s), isg_mul(s, isg_star(s))), isg_star(s)));
        CHECK(triple_equal(isg_star(isg_mul(s, t)), isg_mul(isg_star(t), isg_star(s))));
    }
}

TEST_CASE("order relation") {
    CHECK(isg_leq(T("0", "e", "0"), Triple::unit(grigorchuk())));
    Triple s = T("01", "bc", "1");
    CHECK(isg_leq(s, s));
    // 1^2 0 is strongly fixed by b, so (110,e,110) <= (~,b,~).
    CHECK(isg_leq(Triple::idempotent(grigorchuk(), W("110")), T("", "b", "")));
    CHECK(!isg_leq(Triple::idempotent(grigorchuk(), W("10")), T("", "b", "")));
    CHECK(!isg_leq(Triple::unit(grigorchuk()), T("0", "e", "0")));
}

TEST_CASE("idempotents are the (alpha, e', alpha) with e' acting trivially below alpha") {
    CHECK(is_idempotent(Triple::zero(grigorchuk())));
    CHECK(is_idempotent(Triple::idempotent(grigorchuk(), W("011"))));
    CHECK(is_idempotent(T("011", "aa", "011")));
    CHECK(!is_idempotent(T("011", "b", "011")));
    CHECK(!is_idempotent(T("0", "e", "1")));
    std::mt19937 rng(43);
    for (int i = 0; i < 300; ++i) {
        Triple s = random_triple(rng);
        bool expect = s.is_zero() ||
                      (s.alpha() == s.beta() && is_identity(s.g()));
        CHECK(is_idempotent(s) == expect);
    }
}

TEST_CASE("theta examples") {
    InfWord ones = InfWord::constant(1);
    CHECK(theta_apply(T("", "b", ""), ones) == ones);
    // theta_{(alpha,e,beta)}(beta w) = alpha w.
    InfWord w = Word::from_digits("10") + InfWord::constant(0);
    CHECK(theta_apply(T("01", "e", "1"), w) ==
          Word::from_digits("010") + InfWord::constant(0));
    // theta_{(0,a,1)}(1 . 0^inf) = 0 1 0^inf since a.(0w) = 1w.
    CHECK(theta_apply(T("0", "a", "1"), Word::from_digits("1") + InfWord::constant(0)) ==
          Word::from_digits("01") + InfWord::constant(0));
    CHECK_THROWS_AS(theta_apply(T("0", "a", "1"), InfWord::constant(0)), std::domain_error);
}

TEST_CASE("theta is an action: theta_s . theta_t = theta_{st} on composable germs") {
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> bit(0, 1);
    int done = 0;
    for (int i = 0; i < 4000 && done < 200; ++i) {
        Triple s = random_triple(rng), t = random_triple(rng);
        if (s.is_zero() || t.is_zero()) continue;
        Triple st = isg_mul(s, t);
        if (st.is_zero()) continue;
        // Build a word in the domain of st and of t.
        InfWord w = st.beta() + (Word{std::vector<Letter>{bit(rng)}} + InfWord::constant(bit(rng)));
        if (!w.starts_with(t.beta())) continue;
        InfWord mid = theta_apply(t, w);
        if (!mid.starts_with(s.beta())) continue;
        CHECK(theta_apply(s, mid) == theta_apply(st, w));
        ++done;
    }
    CHECK(done == 200);
}

TEST_CASE("triple_restrict composes with theta") {
    Triple s = T("", "b", "");
    Triple r = triple_restrict(s, W("11"));
    CHECK(r.beta() == W("11"));
    CHECK(r.alpha() == W("11"));
    CHECK(elements_equal(r.g(), G("d")));  // b|_11 = d
    InfWord w = Word::from_digits("11") + InfWord::constant(0);
    CHECK(theta_apply(r, w) == theta_apply(s, w));
}
