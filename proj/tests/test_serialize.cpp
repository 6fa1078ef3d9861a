#include "doctest.h"

#include "json.hpp"

#include "gca/reports.hpp"
#include "gca/serialize.hpp"

using namespace gca;

TEST_CASE("action spec round trip reproduces the behaviour") {
    SystemPtr grig = builtin_system("grigorchuk");
    std::string text = system_to_json(grig);
    SystemPtr back = system_from_json(text);
    CHECK(back->alphabet_size() == 2);
    CHECK(back->generator_count() == 4);
    // Same automaton: every generator acts identically on letters.
    for (std::size_t i = 0; i < 4; ++i)
        for (Letter x : {0, 1}) {
            auto [y1, r1] = act_letter(GroupElem::word(grig, {static_cast<int>(i)}), x);
            auto [y2, r2] = act_letter(GroupElem::word(back, {static_cast<int>(i)}), x);
            CHECK(y1 == y2);
            CHECK(r1.to_string() == r2.to_string());
        }
    CHECK(compute_nucleus(back).elements.size() == 5);

    SystemPtr od = system_from_json("{\"odometer\": 2}");
    CHECK(od->kind() == ActionSystem::Kind::Odometer);
    CHECK(system_from_json(system_to_json(od))->alphabet_size() == 2);
}

TEST_CASE("spec files with inverse restrictions parse") {
    // The binary odometer written as an automaton: t.(0w) = 1w, t.(1w) = 0(t.w).
    std::string text = R"({
      "alphabet": 2,
      "generators": [
        {"name": "t", "rules": [{"to": 1, "rest": []}, {"to": 0, "rest": ["t"]}]}
      ]
    })";
    SystemPtr sys = system_from_json(text);
    auto res = hausdorff_test(sys);
    CHECK(res.verdict == HausdorffResult::Verdict::Hausdorff);
    CHECK(compute_nucleus(sys).elements.size() == 3);
    // An inverse in a restriction word.
    std::string inv = R"({
      "alphabet": 2,
      "generators": [
        {"name": "t", "rules": [{"to": 1, "rest": []}, {"to": 0, "rest": ["t^-1"]}]}
      ]
    })";
    SystemPtr sys2 = system_from_json(inv);
    CHECK(compute_nucleus(sys2).elements.size() == 3);
}

TEST_CASE("algebra element round trip") {
    SystemPtr sys = builtin_system("grigorchuk");
    CoeffField q = CoeffField::rationals();
    AlgebraElement f{sys, q};
    f.add_term(BasicBisection::full(Triple::make(Word::from_digits("01"),
                                                 GroupElem::parse(sys, "bc"),
                                                 Word::from_digits("1"))),
               FieldElem::parse(q, "3/7"));
    f.add_term(BasicBisection::full(Triple::make(Word{}, GroupElem::parse(sys, "a"), Word{})),
               FieldElem::parse(q, "-2"));
    std::string text = algebra_to_json(f);
    AlgebraElement back = algebra_from_json(sys, q, text);
    CHECK(back.coeffs().size() == f.coeffs().size());
    CHECK(algebra_to_json(back) == text);
    // GF(p) coefficients.
    CoeffField gf5 = CoeffField::prime_field(5);
    AlgebraElement g{sys, gf5};
    g.add_term(BasicBisection::full(Triple::make(Word{}, GroupElem::parse(sys, "b"), Word{})),
               FieldElem::parse(gf5, "3"));
    CHECK(algebra_to_json(algebra_from_json(sys, gf5, algebra_to_json(g))) ==
          algebra_to_json(g));
}

TEST_CASE("katsura matrices from JSON") {
    std::string text = R"({"A": [[2,1,0],[1,2,1],[1,1,2]], "B": [[1,2,0],[2,1,2],[0,2,1]]})";
    KatsuraTriple t = katsura_from_json(text);
    CHECK(t.vertex_count() == 3);
    CHECK(t.edge_count() == 11);
    auto [image, phi] = t.act(1, t.parse_edge("e12"));
    CHECK(t.edge_name(image) == "e12");
    CHECK(phi == 2);
}

TEST_CASE("reports serialize deterministically and round trip byte-identically") {
    auto doc = grig_report_json(8);
    std::string once = doc.dump(2);
    std::string twice = grig_report_json(8).dump(2);
    CHECK(once == twice);
    // Parse and re-serialize: byte-identical.
    auto parsed = nlohmann::ordered_json::parse(once);
    CHECK(parsed.dump(2) == once);
    auto kats = katsura_report_json(KatsuraTriple::paper(), 7, 2);
    CHECK(nlohmann::ordered_json::parse(kats.dump(2)).dump(2) == kats.dump(2));
    CHECK(kats.dump(2) == katsura_report_json(KatsuraTriple::paper(), 7, 2).dump(2));
}

TEST_CASE("load_system rejects unknown names") {
    CHECK_THROWS_AS(load_system("no-such-system"), std::invalid_argument);
}
