#include "doctest.h"

#include <random>
#include <set>

#include "gca/action.hpp"
#include "gca/systems.hpp"

using namespace gca;

namespace {

GroupElem G(const char* names) { return GroupElem::parse(grigorchuk(), names); }
Word W(const char* digits) { return Word::from_digits(digits); }
InfWord ones() { return InfWord::constant(1); }

// Brute-force action comparison to a fixed depth: the oracle for equal().
bool brute_equal(const GroupElem& g, const GroupElem& h, int depth) {
    std::vector<Word> words{Word{}};
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (static_cast<int>(words[i].size()) >= depth) continue;
        for (Letter x = 0; x < g.system()->alphabet_size(); ++x) {
            Word w = words[i];
            w.push_back(x);
            words.push_back(w);
        }
    }
    for (const Word& w : words)
        if (act_word(g, w).first != act_word(h, w).first) return false;
    return true;
}

GroupElem random_word(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(0, 3);
    std::vector<int> sgens;
    int l = len(rng);
    for (int i = 0; i < l; ++i) sgens.push_back(gen(rng));
    return GroupElem::word(grigorchuk(), std::move(sgens));
}

}  // namespace

TEST_CASE("restriction table of the generators") {
    auto e = GroupElem::identity(grigorchuk());
    struct Line {
        const char* g;
        Letter x;
        Letter image;
        const char* restriction;
    };
    const Line table[] = {
        {"a", 0, 1, "e"}, {"a", 1, 0, "e"}, {"b", 0, 0, "a"}, {"b", 1, 1, "c"},
        {"c", 0, 0, "a"}, {"c", 1, 1, "d"}, {"d", 0, 0, "e"}, {"d", 1, 1, "b"},
    };
    for (const auto& line : table) {
        auto [y, r] = act_letter(G(line.g), line.x);
        CHECK(y == line.image);
        CHECK(elements_equal(r, G(line.restriction)));
    }
    for (Letter x : {0, 1}) {
        auto [y, r] = act_letter(e, x);
        CHECK(y == x);
        CHECK(is_identity(r));
    }
}

TEST_CASE("act_word examples") {
    // b fixes 1^5 0 with trivial restriction (eq. family, n = 1).
    auto [w1, r1] = act_word(G("b"), W("111110"));
    CHECK(w1 == W("111110"));
    CHECK(is_identity(r1));
    // a.(01) = 11 with trivial restriction.
    auto [w2, r2] = act_word(G("a"), W("01"));
    CHECK(w2 == W("11"));
    CHECK(is_identity(r2));
    // Empty word returns the element itself.
    auto [w3, r3] = act_word(G("bc"), Word{});
    CHECK(w3.empty());
    CHECK(r3.repr_equal(G("bc")));
}

TEST_CASE("act_infinite: b fixes 1^inf; unrolled-prefix oracle") {
    InfWord img = act_infinite(G("b"), ones());
    CHECK(img == ones());
    // 50-step oracle.
    CHECK(act_word(G("b"), ones().prefix(50)).first == ones().prefix(50));
    CHECK(act_infinite(GroupElem::identity(grigorchuk()),
                       InfWord{W("0100"), W("110")}) == InfWord{W("0100"), W("110")});
}

TEST_CASE("act_infinite on the adding machine: 1 . 1^inf = 0^inf") {
    auto sys = odometer2();
    GroupElem plus1 = GroupElem::shift(sys, 1);
    CHECK(act_infinite(plus1, InfWord::constant(1)) == InfWord::constant(0));
    // Unroll 50 letters as the oracle.
    Word fifty_ones = word_pow(W("1"), 50);
    CHECK(act_word(plus1, fifty_ones).first == word_pow(W("0"), 50));
    CHECK(act_infinite(plus1, InfWord::constant(0)) ==
          InfWord{W("1"), W("0")});
    CHECK(act_infinite(GroupElem::shift(sys, -1), InfWord::constant(0)) == InfWord::constant(1));
}

TEST_CASE("group relations via equal()") {
    CHECK(elements_equal(G("bc"), G("d")));
    CHECK(elements_equal(G("aa"), G("e")));
    CHECK(!elements_equal(G("b"), G("c")));
    CHECK(!brute_equal(G("b"), G("c"), 3));
    CHECK(elements_equal(G("cb"), G("d")));
    CHECK(elements_equal(G("db"), G("c")));
    CHECK(elements_equal(G("cd"), G("b")));
    CHECK(elements_equal(G("a^-1"), G("a")));
}

TEST_CASE("equal() agrees with the brute-force oracle on random words") {
    std::mt19937 rng(17);
    for (int t = 0; t < 150; ++t) {
        GroupElem g = random_word(rng, 6), h = random_word(rng, 6);
        CHECK(elements_equal(g, h) == brute_equal(g, h, 5));
    }
}

TEST_CASE("cocycle law on random elements and letters") {
    std::mt19937 rng(29);
    for (int t = 0; t < 100; ++t) {
        GroupElem g = random_word(rng, 4), h = random_word(rng, 4);
        for (Letter x : {0, 1}) {
            auto [hx, hr] = act_letter(h, x);
            auto [ghx, gr] = act_letter(g, hx);
            auto [px, pr] = act_letter(g * h, x);
            CHECK(px == ghx);
            CHECK(elements_equal(pr, gr * hr));
        }
    }
}

TEST_CASE("length preservation and the splitting identity") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> bit(0, 1), len(0, 6);
    for (int t = 0; t < 100; ++t) {
        GroupElem g = random_word(rng, 5);
        std::vector<Letter> letters;
        int l = len(rng);
        for (int i = 0; i < l; ++i) letters.push_back(bit(rng));
        Word w{letters};
        auto [img, rest] = act_word(g, w);
        CHECK(img.size() == w.size());
        // g(alpha beta) = (g.alpha)(g|_alpha . beta) on a random split.
        std::uniform_int_distribution<int> cut(0, l);
        int c = cut(rng);
        Word alpha = w.prefix(c), beta = w.suffix_from(c);
        auto [ia, ra] = act_word(g, alpha);
        auto [ib, rb] = act_word(ra, beta);
        CHECK(ia + ib == img);
        CHECK(elements_equal(rb, rest));
    }
}

TEST_CASE("nucleus of grigorchuk is {e,a,b,c,d}") {
    Nucleus nuc = compute_nucleus(grigorchuk());
    REQUIRE(nuc.elements.size() == 5);
    const char* expected[] = {"e", "a", "b", "c", "d"};
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(elements_equal(nuc.elements[i], G(expected[i])));
    for (const auto& n : nuc.elements)
        for (Letter x : {0, 1}) {
            GroupElem r = act_letter(n, x).second;
            bool in_nucleus = false;
            for (const auto& m : nuc.elements) in_nucleus = in_nucleus || elements_equal(r, m);
            CHECK(in_nucleus);
        }
}

TEST_CASE("nucleus of the adding machine is {e,+1,-1}") {
    Nucleus nuc = compute_nucleus(odometer2());
    REQUIRE(nuc.elements.size() == 3);
    std::set<std::int64_t> shifts;
    for (const auto& n : nuc.elements) shifts.insert(n.shift_value());
    CHECK(shifts == std::set<std::int64_t>{-1, 0, 1});
}

TEST_CASE("nucleus of a trivial action is {e}") {
    auto sys = ActionSystem::automaton(
        "trivial", 2, {GeneratorSpec{"t", {GeneratorRule{0, {}}, GeneratorRule{1, {}}}}});
    Nucleus nuc = compute_nucleus(sys);
    CHECK(nuc.elements.size() == 1);
}

TEST_CASE("fixed and strongly fixed words") {
    CHECK(is_strongly_fixed(G("d"), W("0")));
    CHECK(is_fixed(G("b"), W("1")));
    CHECK(!is_strongly_fixed(G("b"), W("1")));
    for (const char* w : {"", "0", "1", "0110"})
        CHECK(is_fixed(GroupElem::identity(grigorchuk()), W(w)));
}

TEST_CASE("MSFW families match the restriction display") {
    auto d_words = enumerate_msfw(G("d"), 7);
    CHECK(d_words == std::vector<Word>{W("0"), W("1110"), W("1111110")});
    auto b_words = enumerate_msfw(G("b"), 9);
    CHECK(b_words == std::vector<Word>{W("110"), W("111110"), W("111111110")});
    CHECK(enumerate_msfw(G("a"), 8).empty());
    CHECK_THROWS_AS(enumerate_msfw(G("e"), 5), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_msfw(G("aa"), 5), std::invalid_argument);
    // eq. families for n = 0..4: g = b,c,d at lengths 3n+3.
    struct Fam {
        const char* g;
        int offset;  // words 1^(3n+offset) 0
    } fams[] = {{"b", 2}, {"c", 1}, {"d", 0}};
    for (const auto& fam : fams) {
        for (int n = 0; n <= 4; ++n) {
            auto words = enumerate_msfw(G(fam.g), 3 * n + 3);
            std::vector<Word> expect;
            for (int k = 0; k <= n; ++k) {
                int len = 3 * k + fam.offset;
                if (len + 1 <= 3 * n + 3) expect.push_back(word_pow(W("1"), len) + W("0"));
            }
            CHECK(words == expect);
        }
    }
}

TEST_CASE("MSFW output is strongly fixed and prefix-free") {
    for (const char* g : {"b", "c", "d", "ab", "ad"}) {
        if (is_identity(G(g))) continue;
        auto words = enumerate_msfw(G(g), 8);
        for (const auto& w : words) {
            CHECK(is_strongly_fixed(G(g), w));
            for (std::size_t p = 1; p < w.size(); ++p)
                CHECK(!is_strongly_fixed(G(g), w.prefix(p)));
        }
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = 0; j < words.size(); ++j)
                if (i != j) CHECK(!words[i].is_prefix_of(words[j]));
    }
}

TEST_CASE("hausdorff_test: grigorchuk is non-Hausdorff with witness b") {
    auto res = hausdorff_test(grigorchuk());
    REQUIRE(res.verdict == HausdorffResult::Verdict::NonHausdorff);
    REQUIRE(res.witness.has_value());
    CHECK(elements_equal(*res.witness, G("b")));
    // The pumping cycle is b -> c -> d -> b along letter 1.
    REQUIRE(res.cycle.size() == 3);
    for (const auto& [elem, letter] : res.cycle) {
        (void)elem;
        CHECK(letter == 1);
    }
    CHECK(elements_equal(res.cycle[0].first, G("b")));
    CHECK(elements_equal(res.cycle[1].first, G("c")));
    CHECK(elements_equal(res.cycle[2].first, G("d")));
    // The identity is reached along letter 0 (from d).
    REQUIRE(!res.exit_path.empty());
    CHECK(res.exit_path.back().second == 0);
}

TEST_CASE("hausdorff_test: adding machine and trivial group are Hausdorff") {
    CHECK(hausdorff_test(odometer2()).verdict == HausdorffResult::Verdict::Hausdorff);
    // Oracle: +1 fixes no nonempty word up to length 8.
    GroupElem plus1 = GroupElem::shift(odometer2(), 1);
    std::vector<Word> words{Word{}};
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].size() >= 8) continue;
        for (Letter x : {0, 1}) {
            Word w = words[i];
            w.push_back(x);
            words.push_back(w);
            CHECK((act_word(plus1, w).first == w) == false);
        }
    }
    auto trivial = ActionSystem::automaton(
        "trivial", 2, {GeneratorSpec{"t", {GeneratorRule{0, {}}, GeneratorRule{1, {}}}}});
    CHECK(hausdorff_test(trivial).verdict == HausdorffResult::Verdict::Hausdorff);
}

TEST_CASE("faithfulness probe") {
    CHECK(faithfulness_probe(grigorchuk()).verdict == FaithfulnessResult::Verdict::Faithful);

    auto with_trivial_gen = ActionSystem::automaton(
        "bad", 2,
        {GeneratorSpec{"t", {GeneratorRule{1, {}}, GeneratorRule{0, {}}}},
         GeneratorSpec{"u", {GeneratorRule{0, {}}, GeneratorRule{1, {}}}}});
    auto res = faithfulness_probe(with_trivial_gen);
    REQUIRE(res.verdict == FaithfulnessResult::Verdict::NotFaithful);
    CHECK(res.witness->to_string() == "u");

    // A redundant generator b' == b is a relation, not unfaithfulness.
    auto specs = std::vector<GeneratorSpec>{
        {"a", {GeneratorRule{1, {}}, GeneratorRule{0, {}}}},
        {"b", {GeneratorRule{0, {0}}, GeneratorRule{1, {2}}}},
        {"c", {GeneratorRule{0, {0}}, GeneratorRule{1, {3}}}},
        {"d", {GeneratorRule{0, {}}, GeneratorRule{1, {1}}}},
        {"B", {GeneratorRule{0, {0}}, GeneratorRule{1, {2}}}},
    };
    auto redundant = ActionSystem::automaton("grig+", 2, specs);
    CHECK(elements_equal(GroupElem::parse(redundant, "B"), GroupElem::parse(redundant, "b")));
    CHECK(faithfulness_probe(redundant).verdict == FaithfulnessResult::Verdict::Faithful);
}

TEST_CASE("omega-faithfulness probe") {
    // F = {b,c,d} along 1^inf: the restrictions cycle through {b,c,d} and
    // every candidate word is fixed by one of them.
    auto res = omega_faithful_probe(grigorchuk(), {G("b"), G("c"), G("d")}, ones(), 6);
    CHECK(res.verdict == OmegaFaithfulResult::Verdict::FailureWitness);

    // A single element escapes: some word moves every restriction.
    auto res2 = omega_faithful_probe(grigorchuk(), {G("b")}, ones(), 6);
    CHECK(res2.verdict == OmegaFaithfulResult::Verdict::HoldsAt);
    CHECK(res2.n == 0);

    // a moves the first letter of 1^inf: vacuous input rejected.
    CHECK_THROWS_AS(omega_faithful_probe(grigorchuk(), {G("a")}, ones(), 4),
                    std::invalid_argument);
    // Adding machine: no fixed infinite words at all.
    CHECK_THROWS_AS(omega_faithful_probe(odometer2(), {GroupElem::shift(odometer2(), 1)},
                                         InfWord::constant(0), 4),
                    std::invalid_argument);
    // Identity in the family rejected.
    CHECK_THROWS_AS(omega_faithful_probe(grigorchuk(), {G("aa")}, ones(), 4),
                    std::invalid_argument);
}

TEST_CASE("act_infinite agrees with the 40-letter unrolled oracle on random inputs") {
    std::mt19937 rng(107);
    std::uniform_int_distribution<int> len(0, 4), bit(0, 1), plen(1, 3);
    for (int t = 0; t < 120; ++t) {
        GroupElem g = random_word(rng, 5);
        std::vector<Letter> pre, per;
        int pl = len(rng);
        for (int i = 0; i < pl; ++i) pre.push_back(bit(rng));
        int ql = plen(rng);
        for (int i = 0; i < ql; ++i) per.push_back(bit(rng));
        InfWord w{Word{pre}, Word{per}};
        InfWord img = act_infinite(g, w);
        CHECK(img.prefix(40) == act_word(g, w.prefix(40)).first);
    }
}

TEST_CASE("odometer actions match integer arithmetic") {
    auto sys = odometer2();
    std::mt19937 rng(109);
    std::uniform_int_distribution<std::int64_t> shift(-200, 200);
    std::uniform_int_distribution<int> len(1, 12), bit(0, 1);
    for (int t = 0; t < 300; ++t) {
        std::int64_t n = shift(rng);
        int l = len(rng);
        std::vector<Letter> letters;
        std::int64_t value = 0;
        for (int i = 0; i < l; ++i) {
            letters.push_back(bit(rng));
            value |= static_cast<std::int64_t>(letters.back()) << i;
        }
        auto [img, rest] = act_word(GroupElem::shift(sys, n), Word{letters});
        // Little-endian binary addition: image bits are (value + n) mod 2^l,
        // the restriction is the outgoing carry.
        std::int64_t total = value + n;
        std::int64_t modulus = std::int64_t{1} << l;
        std::int64_t reduced = ((total % modulus) + modulus) % modulus;
        std::int64_t carry = (total - reduced) / modulus;
        std::int64_t got = 0;
        for (int i = 0; i < l; ++i) got |= static_cast<std::int64_t>(img[i]) << i;
        CHECK(got == reduced);
        CHECK(rest.shift_value() == carry);
    }
}

TEST_CASE("a ternary system with genuine inverses: closure self-consistency") {
    // r cycles the letters with trivial restrictions; s restricts to r, r^-1
    // and itself.  Exercises alphabet 3 and non-involutive generators.
    auto sys = ActionSystem::automaton(
        "ternary", 3,
        {GeneratorSpec{"r", {GeneratorRule{1, {}}, GeneratorRule{2, {}}, GeneratorRule{0, {}}}},
         GeneratorSpec{"s", {GeneratorRule{0, {0}}, GeneratorRule{1, {2}},  // r, r^-1
                             GeneratorRule{2, {1}}}}});
    GroupElem r = GroupElem::parse(sys, "r");
    GroupElem rinv = r.inverse();
    CHECK(!elements_equal(r, rinv));
    CHECK(elements_equal(r * r * r, GroupElem::identity(sys)));
    CHECK(elements_equal(r * rinv, GroupElem::identity(sys)));
    Nucleus nuc = compute_nucleus(sys);
    CHECK(nuc.elements.size() >= 4);
    // Restriction closure and deep-product containment.
    auto in_nucleus = [&](const GroupElem& g) {
        for (const auto& n : nuc.elements)
            if (elements_equal(n, g)) return true;
        return false;
    };
    for (const auto& u : nuc.elements)
        for (Letter x = 0; x < 3; ++x) CHECK(in_nucleus(act_letter(u, x).second));
    std::mt19937 rng(113);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(nuc.elements.size()) - 1),
        letter(0, 2);
    for (int t = 0; t < 60; ++t) {
        GroupElem prod = nuc.elements[pick(rng)] * nuc.elements[pick(rng)];
        // Deep restrictions of nucleus products land back in the nucleus.
        GroupElem cur = prod;
        for (int d = 0; d < 6; ++d) cur = act_letter(cur, letter(rng)).second;
        CHECK(in_nucleus(cur));
    }
}
