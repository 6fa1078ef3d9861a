#include "doctest.h"

#include <random>

#include "gca/words.hpp"

using namespace gca;

TEST_CASE("word basics") {
    Word w = Word::from_digits("0110");
    CHECK(w.size() == 4);
    CHECK(w.prefix(2) == Word::from_digits("01"));
    CHECK(w.suffix_from(2) == Word::from_digits("10"));
    CHECK(Word::from_digits("01").is_prefix_of(w));
    CHECK(!Word::from_digits("10").is_prefix_of(w));
    CHECK((Word::from_digits("01") + Word::from_digits("10")) == w);
    CHECK(word_pow(Word::from_digits("1"), 3) == Word::from_digits("111"));
    CHECK(w.to_string() == "0110");
}

TEST_CASE("infinite word canonical form") {
    // Period made primitive.
    InfWord a{Word{}, Word::from_digits("0101")};
    CHECK(a.period() == Word::from_digits("01"));
    // Preperiod absorbed into the rotation.
    InfWord b{Word::from_digits("1"), Word::from_digits("1")};
    CHECK(b.preperiod().empty());
    CHECK(b.period() == Word::from_digits("1"));
    // Equivalent spellings of 011(01)^inf collapse to one canonical form.
    InfWord c{Word::from_digits("011"), Word::from_digits("01")};
    CHECK(c == InfWord{Word::from_digits("01"), Word::from_digits("10")});
    CHECK(c.prefix(6) == Word::from_digits("011010"));
}

TEST_CASE("infinite word indexing, drop, prepend") {
    InfWord x{Word::from_digits("00"), Word::from_digits("10")};
    CHECK(x.at(0) == 0);
    CHECK(x.at(1) == 0);
    CHECK(x.at(2) == 1);
    CHECK(x.at(3) == 0);
    CHECK(x.at(4) == 1);
    CHECK(x.prefix(5) == Word::from_digits("00101"));
    CHECK(x.starts_with(Word::from_digits("0010")));
    CHECK(!x.starts_with(Word::from_digits("01")));
    CHECK(x.drop(2) == InfWord{Word{}, Word::from_digits("10")});
    CHECK(x.drop(3) == InfWord{Word{}, Word::from_digits("01")});
    CHECK((Word::from_digits("11") + x.drop(2)) == InfWord{Word::from_digits("11"), Word::from_digits("10")});
}

TEST_CASE("canonicalization is stable under re-rotation (random)") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> bit(0, 1), len(1, 5), plen(0, 4), reps(1, 3);
    for (int t = 0; t < 300; ++t) {
        std::vector<Letter> per, pre;
        int l = len(rng);
        for (int i = 0; i < l; ++i) per.push_back(bit(rng));
        int pl = plen(rng);
        for (int i = 0; i < pl; ++i) pre.push_back(bit(rng));
        InfWord x{Word{pre}, Word{per}};
        // Same stream written with a repeated period and a shifted preperiod.
        std::vector<Letter> pre2 = pre;
        pre2.push_back(x.at(pre.size()));
        std::vector<Letter> per2;
        int start = static_cast<int>(pre.size()) + 1;
        int l2 = l * reps(rng);
        for (int i = 0; i < l2; ++i) per2.push_back(x.at(start + i));
        InfWord y{Word{pre2}, Word{per2}};
        CHECK(x == y);
        for (int i = 0; i < 12; ++i) CHECK(x.at(i) == y.at(i));
    }
}
