#include "gca/reports.hpp"

#include <random>

#include "gca/linalg.hpp"
#include "gca/systems.hpp"

namespace gca {

using nlohmann::ordered_json;

namespace {

GroupElem grig(const char* name) { return GroupElem::parse(grigorchuk(), name); }

// The six displayed intersections, the quotient element, and the residue
// offset of its strongly fixed family 1^{3n+offset} 0.
struct PairLine {
    const char* g;
    const char* h;
    const char* quotient;
    int offset;
};
constexpr PairLine kPairs[6] = {{"b", "e", "b", 2}, {"c", "e", "c", 1}, {"d", "e", "d", 0},
                                {"c", "d", "b", 2}, {"b", "d", "c", 1}, {"c", "b", "d", 0}};

std::vector<Germ> grigint_sample_germs(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> ones(0, 9), pre_len(0, 3), per_len(1, 3), bit(0, 1),
        pick(0, 5);
    const char* elems[6] = {"e", "a", "b", "c", "d", "bc"};
    std::vector<Germ> out;
    while (static_cast<int>(out.size()) < count) {
        // Lead with a run of ones so the interesting cylinders get sampled.
        std::vector<Letter> pre(static_cast<std::size_t>(ones(rng)), 1);
        int pl = pre_len(rng);
        for (int i = 0; i < pl; ++i) pre.push_back(bit(rng));
        std::vector<Letter> per;
        int ql = per_len(rng);
        for (int i = 0; i < ql; ++i) per.push_back(bit(rng));
        InfWord w{Word{pre}, Word{per}};
        out.push_back(Germ::make(Triple::make(Word{}, grig(elems[pick(rng)]), Word{}), w));
    }
    return out;
}

}  // namespace

GrigIntCheck check_grigint_identity(int pair_index, int m, int samples, const Bounds& bounds) {
    if (pair_index < 0 || pair_index >= 6)
        throw std::invalid_argument("check_grigint_identity: pair index 0..5");
    const PairLine& line = kPairs[pair_index];
    GrigIntCheck check;
    check.name = "U_{" + std::string(line.g) + "," + std::to_string(m) + "} cap U_{" + line.h +
                 "," + std::to_string(m) + "} = union U'_{" + line.g + ",3n+" +
                 std::to_string(line.offset) + "} (3n+" + std::to_string(line.offset) +
                 " >= " + std::to_string(m) + ")";

    // Symbolic side: the quotient's minimal strongly fixed words are exactly
    // the family 1^{3n+offset} 0.
    auto msfw = enumerate_msfw(grig(line.quotient), 20, bounds);
    check.symbolic_ok = !msfw.empty();
    int n = 0;
    for (const Word& w : msfw) {
        Word expect = word_pow(Word::from_digits("1"),
                               static_cast<std::size_t>(3 * n + line.offset)) +
                      Word::from_digits("0");
        if (!(w == expect)) check.symbolic_ok = false;
        ++n;
    }

    BasicBisection ug = grig_u(grig(line.g), m, bounds);
    BasicBisection uh = grig_u(grig(line.h), m, bounds);
    auto germs = grigint_sample_germs(samples, 1000u + static_cast<unsigned>(pair_index) * 7u +
                                                   static_cast<unsigned>(m));
    for (const Germ& germ : germs) {
        bool lhs = germ_in(germ, ug, bounds) && germ_in(germ, uh, bounds);
        // The word lies in at most one U'-cylinder: the one matching its
        // leading run of ones (none if the word is 1^inf).
        bool rhs = false;
        bool all_ones = true;
        for (std::size_t i = 0; i < germ.word.preperiod().size(); ++i)
            all_ones = all_ones && germ.word.preperiod()[i] == 1;
        for (std::size_t i = 0; i < germ.word.period().size(); ++i)
            all_ones = all_ones && germ.word.period()[i] == 1;
        if (!all_ones) {
            int run = 0;
            while (germ.word.at(static_cast<std::size_t>(run)) == 1) ++run;
            if (germ.word.at(static_cast<std::size_t>(run)) == 0 && run >= m &&
                run % 3 == line.offset % 3)
                rhs = germ_in(germ, grig_u_prime(grig(line.g), run, bounds), bounds);
        }
        ++check.samples;
        if (lhs != rhs) ++check.mismatches;
    }
    return check;
}

ordered_json hausdorff_json(const HausdorffResult& res) {
    ordered_json doc;
    switch (res.verdict) {
        case HausdorffResult::Verdict::Hausdorff: doc["verdict"] = "Hausdorff"; break;
        case HausdorffResult::Verdict::NonHausdorff: doc["verdict"] = "NonHausdorff"; break;
        case HausdorffResult::Verdict::Undecided: doc["verdict"] = "Undecided"; break;
    }
    if (res.witness) doc["witness"] = res.witness->to_string();
    if (!res.cycle.empty()) {
        doc["cycle"] = ordered_json::array();
        for (const auto& [g, x] : res.cycle)
            doc["cycle"].push_back(g.to_string() + " --" + std::to_string(x) + "-->");
    }
    if (!res.exit_path.empty()) {
        doc["exit_to_identity"] = ordered_json::array();
        for (const auto& [g, x] : res.exit_path)
            doc["exit_to_identity"].push_back(g.to_string() + " --" + std::to_string(x) + "-->");
    }
    doc["detail"] = res.detail;
    return doc;
}

ordered_json support_json(const SupportReport& rep) {
    ordered_json doc;
    switch (rep.verdict) {
        case SupportReport::Verdict::Zero: doc["verdict"] = "Zero"; break;
        case SupportReport::Verdict::Nonsingular: doc["verdict"] = "NonsingularCertificate"; break;
        case SupportReport::Verdict::Singular: doc["verdict"] = "Singular"; break;
        case SupportReport::Verdict::Undecided: doc["verdict"] = "Undecided"; break;
    }
    if (rep.value) doc["region_value"] = rep.value->to_string();
    if (rep.region && rep.region->intersection)
        doc["region"] = rep.region->intersection->to_string();
    if (!rep.points.empty()) {
        doc["points"] = ordered_json::array();
        for (std::size_t i = 0; i < rep.points.size(); ++i) {
            ordered_json p;
            p["germ"] = rep.points[i].to_string();
            p["value"] = rep.point_values[i].to_string();
            doc["points"].push_back(std::move(p));
        }
    }
    doc["detail"] = rep.detail;
    return doc;
}

ordered_json region_report_json(const OpenRegionReport& rep) {
    ordered_json doc;
    switch (rep.verdict) {
        case OpenRegionReport::Verdict::RegularOpen: doc["verdict"] = "RegularOpen"; break;
        case OpenRegionReport::Verdict::NotRegularOpen: doc["verdict"] = "NotRegularOpen"; break;
        case OpenRegionReport::Verdict::Undecided: doc["verdict"] = "Undecided"; break;
    }
    if (rep.witness) doc["witness"] = rep.witness->to_string();
    doc["depth"] = rep.depth;
    doc["trace"] = rep.trace;
    return doc;
}

ordered_json grig_report_json(int depth, const Bounds& bounds) {
    ordered_json doc;
    doc["system"] = "grigorchuk";
    SystemPtr sys = grigorchuk();

    // Relations.
    const char* relations[][2] = {{"aa", "e"}, {"bb", "e"}, {"cc", "e"}, {"dd", "e"},
                                  {"bc", "d"}, {"cb", "d"}, {"db", "c"}, {"bd", "c"},
                                  {"cd", "b"}, {"dc", "b"}};
    doc["relations"] = ordered_json::array();
    bool all_relations = true;
    for (const auto& rel : relations) {
        bool holds = elements_equal(grig(rel[0]), grig(rel[1]), bounds);
        all_relations = all_relations && holds;
        ordered_json r;
        r["identity"] = std::string(rel[0]) + " = " + rel[1];
        r["holds"] = holds;
        doc["relations"].push_back(std::move(r));
    }
    doc["all_relations_hold"] = all_relations;

    // Nucleus and MSFW tables.
    Nucleus nuc = compute_nucleus(sys, bounds);
    doc["nucleus"] = ordered_json::array();
    for (const auto& g : nuc.elements) doc["nucleus"].push_back(g.to_string());
    doc["msfw"] = ordered_json::object();
    for (const char* g : {"a", "b", "c", "d"}) {
        ordered_json words = ordered_json::array();
        for (const Word& w : enumerate_msfw(grig(g), 20, bounds)) words.push_back(w.to_string());
        doc["msfw"][g] = std::move(words);
    }

    doc["hausdorff"] = hausdorff_json(hausdorff_test(sys, bounds));

    // Non-regular-open witness for Theta(b) cup Theta(c) cup Theta(d).
    std::vector<BasicBisection> family;
    for (const char* g : {"b", "c", "d"})
        family.push_back(BasicBisection::full(Triple::make(Word{}, grig(g), Word{})));
    doc["regular_open"] = region_report_json(regular_open_test(family, depth, bounds));

    // Intersection identities at m = 1..4.
    doc["intersection_identities"] = ordered_json::array();
    bool all_ids = true;
    for (int m = 1; m <= 4; ++m)
        for (int p = 0; p < 6; ++p) {
            GrigIntCheck check = check_grigint_identity(p, m, 50, bounds);
            all_ids = all_ids && check.symbolic_ok && check.mismatches == 0;
            ordered_json c;
            c["identity"] = check.name;
            c["symbolic_ok"] = check.symbolic_ok;
            c["samples"] = check.samples;
            c["mismatches"] = check.mismatches;
            doc["intersection_identities"].push_back(std::move(c));
        }
    doc["all_intersection_identities_hold"] = all_ids;

    // Char-0 kernel certificate: the six pair-sum equations force zero.
    {
        CoeffField q = CoeffField::rationals();
        FieldElem one = FieldElem::one(q), zero = FieldElem::zero(q);
        FieldMatrix system = {{one, one, zero, zero}, {one, zero, one, zero},
                              {one, zero, zero, one}, {zero, zero, one, one},
                              {zero, one, zero, one}, {zero, one, one, zero}};
        doc["char0_kernel_trivial"] = solve_homogeneous(system).empty();
    }

    // Char-2 singular element.
    {
        CoeffField gf2 = CoeffField::prime_field(2);
        std::vector<FieldElem> ones(4, FieldElem::one(gf2));
        auto rep = singular_test(grig_nucleus_family(ones, 1, bounds), depth, bounds);
        doc["char2_singular"] = support_json(rep);
    }
    doc["note"] =
        "char 0: no nonzero nucleus-family element is singular; char 2: a singular "
        "element exists";
    return doc;
}

ordered_json katsura_report_json(const KatsuraTriple& triple, int msfw_len,
                                 int condition_s_bound) {
    KatsuraReport rep = triple.report(msfw_len, condition_s_bound);
    ordered_json doc;
    doc["vertices"] = triple.vertex_count();
    doc["edges"] = triple.edge_count();
    doc["table_validated"] = rep.table_validated;
    doc["irreducible"] = rep.irreducible;
    doc["minimal"] = rep.minimal;
    doc["hausdorff"] = rep.hausdorff;
    doc["msfw_count_of_1"] = rep.msfw_witnesses.size();
    {
        ordered_json some = ordered_json::array();
        for (std::size_t i = 0; i < rep.msfw_witnesses.size() && i < 10; ++i)
            some.push_back(rep.msfw_witnesses[i]);
        doc["msfw_witnesses_of_1"] = std::move(some);
    }
    doc["effectiveness"] = rep.effectiveness_note;
    doc["condition_s"] = ordered_json::object();
    doc["condition_s"]["sets_tested"] = rep.condition_s_sets;
    doc["condition_s"]["all_satisfied"] = rep.condition_s_all_satisfied;
    if (triple.odometer_shape()) {
        auto sample = triple.condition_s({1, 2}, 0);
        ordered_json detail;
        detail["case"] = sample.case_name;
        detail["reduction"] = sample.reduction;
        detail["interior"] = sample.interior;
        detail["trace"] = sample.trace;
        doc["condition_s"]["example"] = std::move(detail);
    }
    doc["conclusion"] = rep.conclusion;
    return doc;
}

}  // namespace gca
