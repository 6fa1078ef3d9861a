#include "doctest.h"

#include <random>

#include "gca/katsura.hpp"

using namespace gca;

namespace {

const KatsuraTriple& paper() {
    static KatsuraTriple t = KatsuraTriple::paper();
    return t;
}

Word path_of(const KatsuraTriple& t, std::initializer_list<const char*> names) {
    Word w;
    for (const char* n : names) w.push_back(t.parse_edge(n));
    return w;
}

// (e11^0)^{n+1} e21 e32 e13 (e21 e12)^inf at vertex 1.
InfWord nesting_witness(const KatsuraTriple& t, int n) {
    Word pre = word_pow(Word{std::vector<Letter>{t.parse_edge("e11^0")}},
                        static_cast<std::size_t>(n) + 1) +
               path_of(t, {"e21", "e32", "e13"});
    Word per = path_of(t, {"e21", "e12"});
    return InfWord{pre, per};
}

}  // namespace

TEST_CASE("graph construction from the matrices") {
    const auto& t = paper();
    CHECK(t.vertex_count() == 3);
    CHECK(t.edge_count() == 11);  // 2+2+2 loops, 5 off-diagonal edges
    CHECK(t.odometer_shape());
    // e13 exists (A_{31} = 1); there is no family e31 (A_{13} = 0).
    CHECK(t.edge_letter(0, 2, 0).has_value());
    CHECK(!t.edge_letter(2, 0, 0).has_value());
    // Path convention: s(e_i) = r(e_{i+1}).
    CHECK(t.is_path(path_of(t, {"e21", "e32", "e13"})));
    CHECK(t.is_path(path_of(t, {"e13", "e21"})));  // s(e13) = 1 = r(e21)
    CHECK(!t.is_path(path_of(t, {"e13", "e23"})));
    CHECK(t.is_path(path_of(t, {"e23", "e32", "e23"})));
    CHECK_THROWS(KatsuraTriple::from_matrices({{0, 1}, {1, 0}}, {{5, 0}, {0, 0}}));
    CHECK_THROWS(KatsuraTriple::from_matrices({{1, 1}, {0, 0}}, {{0, 0}, {0, 0}}));
}

TEST_CASE("the seven table lines for the generator 1") {
    const auto& t = paper();
    struct Line {
        const char* edge;
        const char* image;
        std::int64_t phi;
    };
    const Line lines[] = {
        {"e11^0", "e11^1", 0}, {"e22^0", "e22^1", 0}, {"e33^0", "e33^1", 0},
        {"e11^1", "e11^0", 1}, {"e22^1", "e22^0", 1}, {"e33^1", "e33^0", 1},
        {"e12", "e12", 2},     {"e21", "e21", 2},     {"e32", "e32", 2},
        {"e23", "e23", 2},     {"e13", "e13", 0},
    };
    for (const auto& line : lines) {
        auto [image, phi] = t.act(1, t.parse_edge(line.edge));
        CHECK(t.edge_name(image) == line.image);
        CHECK(phi == line.phi);
    }
    // Identity acts trivially.
    for (Letter e = 0; e < t.edge_count(); ++e) {
        auto [image, phi] = t.act(0, e);
        CHECK(image == e);
        CHECK(phi == 0);
    }
}

TEST_CASE("cocycle composition: acting by m then m' equals m + m'") {
    const auto& t = paper();
    std::mt19937 rng(67);
    std::uniform_int_distribution<std::int64_t> dist(-9, 9);
    for (int i = 0; i < 300; ++i) {
        std::int64_t m = dist(rng), mp = dist(rng);
        Letter e = std::uniform_int_distribution<int>(0, t.edge_count() - 1)(rng);
        auto [e1, q1] = t.act(m, e);
        auto [e2, q2] = t.act(mp, e1);
        auto [e3, q3] = t.act(mp + m, e);
        CHECK(e3 == e2);
        CHECK(q3 == q2 + q1);
    }
}

TEST_CASE("negative action matches the inverse rule phi(-n,mu) = -phi(n,(-n).mu)") {
    const auto& t = paper();
    for (Letter e = 0; e < t.edge_count(); ++e)
        for (std::int64_t n : {1, 2, 3, 7}) {
            auto [moved, q] = t.act(-n, e);
            auto [back, qb] = t.act(n, moved);
            CHECK(back == e);
            CHECK(q == -qb);
        }
}

TEST_CASE("path action: loop words, loop-free words, eq:ndotv and eq:ndotw") {
    const auto& t = paper();
    // k 2^{|w|} . w = w with phi = k, on a loop word.
    Word w = path_of(t, {"e11^0", "e11^1", "e11^0"});
    for (std::int64_t k : {1, -2, 3}) {
        auto [img, phi] = t.act_path(k * 8, w);
        CHECK(img == w);
        CHECK(phi == k);
    }
    // Loop-free v with e13: m . v = v, phi = 0.
    Word v13 = path_of(t, {"e21", "e32", "e13"});
    for (std::int64_t m : {1, 5, -3}) {
        auto [img, phi] = t.act_path(m, v13);
        CHECK(img == v13);
        CHECK(phi == 0);
    }
    // Loop-free v without e13: m . v = v, phi = m 2^{|v|}.
    Word v = path_of(t, {"e23", "e32", "e23"});
    for (std::int64_t m : {1, 5, -3}) {
        auto [img, phi] = t.act_path(m, v);
        CHECK(img == v);
        CHECK(phi == m * 8);
    }
}

TEST_CASE("act_infinite stabilizes on growing cocycles and odometer tails") {
    const auto& t = paper();
    // (e23 e32)^inf is fixed by every m.
    InfWord x{Word{}, path_of(t, {"e23", "e32"})};
    CHECK(t.act_infinite(3, x) == x);
    CHECK(t.act_infinite(-5, x) == x);
    // A pure loop tail behaves like the binary odometer.
    InfWord loops = InfWord::constant(t.parse_edge("e11^0"));
    InfWord image = t.act_infinite(1, loops);
    CHECK(image.at(0) == t.parse_edge("e11^1"));
    CHECK(image.at(1) == t.parse_edge("e11^0"));
    CHECK(t.act_infinite(2, loops).at(0) == t.parse_edge("e11^0"));
    CHECK(t.act_infinite(2, loops).at(1) == t.parse_edge("e11^1"));
    // Witness paths stay fixed.
    InfWord wit = nesting_witness(t, 2);
    CHECK(t.act_infinite(8, wit) == wit);
}

TEST_CASE("fixed-path lattice: the nesting witnesses") {
    const auto& t = paper();
    for (int n = 0; n <= 4; ++n) {
        InfWord x = nesting_witness(t, n);
        std::int64_t big = 1ll << (n + 1), small = 1ll << n;
        CHECK(t.fixed(big, x) == KatsFixed::Fixed);
        CHECK(t.trivially_fixed(big, x));
        CHECK(t.fixed(small, x) == KatsFixed::NotFixed);
        // Oracle: direct comparison through act_infinite.
        CHECK(t.act_infinite(big, x) == x);
        CHECK(!(t.act_infinite(small, x) == x));
    }
}

TEST_CASE("fixed-path examples") {
    const auto& t = paper();
    InfWord x{Word{}, path_of(t, {"e23", "e32"})};
    for (std::int64_t l : {1, 2, 7, -4}) {
        CHECK(t.fixed(l, x) == KatsFixed::Fixed);
        CHECK(!t.trivially_fixed(l, x));  // no e13, no loops
    }
    // Odd l cannot fix a path leading with a loop.
    InfWord leading_loop{path_of(t, {"e11^0"}), path_of(t, {"e21", "e12"})};
    CHECK(t.fixed(3, leading_loop) == KatsFixed::NotFixed);
    CHECK(t.fixed(2, leading_loop) == KatsFixed::Fixed);
    // Odd l and even l agree with their lattice representatives on samples.
    std::mt19937 rng(71);
    InfWord samples[] = {x, leading_loop, nesting_witness(t, 1),
                         InfWord::constant(t.parse_edge("e22^0")),
                         InfWord{path_of(t, {"e13"}), path_of(t, {"e21", "e12"})}};
    for (const InfWord& s : samples)
        for (std::int64_t l : {3, 5, 7, -1, -9}) {
            CHECK((t.fixed(l, s) == KatsFixed::Fixed) == (t.fixed(1, s) == KatsFixed::Fixed));
            CHECK(t.trivially_fixed(l, s) == t.trivially_fixed(1, s));
        }
    for (const InfWord& s : samples)
        for (std::int64_t l : {12, 20, -4}) {
            std::int64_t rep = 1ll << KatsuraTriple::lattice_reduce(l).two_power;
            CHECK((t.fixed(l, s) == KatsFixed::Fixed) == (t.fixed(rep, s) == KatsFixed::Fixed));
        }
}

TEST_CASE("lattice_reduce") {
    CHECK(KatsuraTriple::lattice_reduce(5).odd);
    CHECK(KatsuraTriple::lattice_reduce(1).odd);
    CHECK(!KatsuraTriple::lattice_reduce(12).odd);
    CHECK(KatsuraTriple::lattice_reduce(12).two_power == 2);
    CHECK(KatsuraTriple::lattice_reduce(-8).two_power == 3);
    CHECK_THROWS_AS(KatsuraTriple::lattice_reduce(0), std::invalid_argument);
}

TEST_CASE("condition (S) cases") {
    const auto& t = paper();
    auto r1 = t.condition_s({1, 3}, 0);
    CHECK(r1.satisfied);
    CHECK(r1.case_name == "k = n");
    CHECK(r1.reduction == "F_1 \\ TF_1");
    CHECK(r1.samples_checked > 10);
    auto r2 = t.condition_s({2, 4}, 0);
    CHECK(r2.satisfied);
    CHECK(r2.case_name == "k = 0");
    CHECK(r2.reduction == "F_2 \\ TF_4");
    auto r3 = t.condition_s({1, 2}, 0);
    CHECK(r3.satisfied);
    CHECK(r3.case_name == "1 <= k < n");
    CHECK(r3.reduction == "F_1 \\ TF_2");
    CHECK_THROWS_AS(t.condition_s({}, 0), std::invalid_argument);
    CHECK_THROWS_AS(t.condition_s({0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(t.condition_s({1, 1}, 0), std::invalid_argument);
}

TEST_CASE("MSFW of the generator contains the alpha^(k) family") {
    const auto& t = paper();
    auto words = t.msfw_one(11);
    // alpha^(k) = (e23 e32)^k e13 for k = 1..5.
    for (int k = 1; k <= 5; ++k) {
        Word alpha = word_pow(path_of(t, {"e23", "e32"}), static_cast<std::size_t>(k)) +
                     path_of(t, {"e13"});
        CHECK(std::find(words.begin(), words.end(), alpha) != words.end());
        // Strongly fixed with no strongly fixed proper prefix.
        auto [img, phi] = t.act_path(1, alpha);
        CHECK(img == alpha);
        CHECK(phi == 0);
        for (std::size_t p = 1; p < alpha.size(); ++p) {
            auto [pi, pphi] = t.act_path(1, alpha.prefix(p));
            CHECK(pi == alpha.prefix(p));
            CHECK(pphi != 0);
        }
    }
}

TEST_CASE("report on the paper matrices") {
    const auto& t = paper();
    auto rep = t.report(9, 2);
    CHECK(rep.table_validated);
    CHECK(rep.irreducible);
    CHECK(rep.minimal);
    CHECK(!rep.hausdorff);
    CHECK(rep.msfw_witnesses.size() >= 3);
    CHECK(rep.condition_s_sets > 0);
    CHECK(rep.condition_s_all_satisfied);
    CHECK(rep.conclusion.find("simple") != std::string::npos);
}

TEST_CASE("report flags a reducible matrix") {
    // Two isolated vertices with double loops: reducible but valid.
    auto t = KatsuraTriple::from_matrices({{2, 0}, {0, 2}}, {{1, 0}, {0, 1}});
    auto rep = t.report(6, 1);
    CHECK(!rep.irreducible);
    CHECK(!rep.minimal);
}
