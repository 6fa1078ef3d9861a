#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gca/reports.hpp"
#include "gca/serialize.hpp"

using namespace gca;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUndecided = 1;
constexpr int kExitInputError = 2;

struct Options {
    std::string system = "grigorchuk";
    std::string spec;
    std::string field = "Q";
    int depth = 12;
    std::string format = "text";
    bool strict = false;
};

SystemPtr resolve_system(const Options& opt) {
    if (!opt.spec.empty()) return load_system(opt.spec);
    return load_system(opt.system);
}

// "nucleus:1,1,1,1", "@file.json", or inline JSON.
AlgebraElement parse_element(const Options& opt, const SystemPtr& sys, CoeffField field,
                             const std::string& spec, int m) {
    if (spec.rfind("nucleus:", 0) == 0) {
        if (!is_grigorchuk(sys))
            throw std::invalid_argument("nucleus: element syntax needs --system grigorchuk");
        std::vector<FieldElem> coeffs;
        std::stringstream body(spec.substr(8));
        std::string tok;
        while (std::getline(body, tok, ',')) coeffs.push_back(FieldElem::parse(field, tok));
        if (coeffs.size() != 4)
            throw std::invalid_argument("nucleus: element needs four coefficients c_e,c_b,c_c,c_d");
        return grig_nucleus_family(coeffs, m);
    }
    std::string text = spec;
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw std::invalid_argument("cannot read element file " + spec.substr(1));
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return algebra_from_json(sys, field, text);
}

// "gens:b,c,d" (full-cylinder Theta(~,g,~) family) or "@file.json".
std::vector<BasicBisection> parse_bisections(const SystemPtr& sys, const std::string& spec) {
    std::vector<BasicBisection> out;
    if (spec.rfind("gens:", 0) == 0) {
        std::stringstream body(spec.substr(5));
        std::string tok;
        while (std::getline(body, tok, ','))
            out.push_back(BasicBisection::full(
                Triple::make(Word{}, GroupElem::parse(sys, tok), Word{})));
        return out;
    }
    std::string text = spec;
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw std::invalid_argument("cannot read bisection file " + spec.substr(1));
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    auto doc = nlohmann::json::parse(text);
    for (const auto& term : doc) {
        Word alpha = Word::from_digits(term.at("alpha").get<std::string>());
        Word beta = Word::from_digits(term.at("beta").get<std::string>());
        GroupElem g = GroupElem::parse(sys, term.at("g").get<std::string>());
        out.push_back(BasicBisection::full(Triple::make(alpha, g, beta)));
    }
    return out;
}

void emit(const Options& opt, const ordered_json& doc) {
    if (opt.format == "json") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    // Text rendering: one "key: value" line per top-level entry.
    for (const auto& [key, value] : doc.items()) {
        if (value.is_string())
            std::cout << key << ": " << value.get<std::string>() << "\n";
        else
            std::cout << key << ": " << value.dump() << "\n";
    }
}

bool verdict_undecided(const ordered_json& doc) {
    if (doc.contains("verdict") && doc["verdict"] == "Undecided") return true;
    for (const auto& [key, value] : doc.items()) {
        (void)key;
        if (value.is_object() && verdict_undecided(value)) return true;
    }
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with self-similar actions, tight groupoids and their "
                 "Steinberg algebras"};
    app.fallthrough();
    Options opt;
    app.add_option("--system", opt.system, "builtin system name (grigorchuk, odometer2)");
    app.add_option("--spec", opt.spec, "action spec file (JSON)");
    app.add_option("--field", opt.field, "coefficient field tag: Q or GF(p)");
    app.add_option("--depth", opt.depth, "search depth bound");
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--strict", opt.strict, "exit 1 on Undecided verdicts");

    auto* cmd_hausdorff = app.add_subcommand("hausdorff", "MSFW finiteness test");
    auto* cmd_msfw = app.add_subcommand("msfw", "minimal strongly fixed words");
    std::string msfw_gen = "b";
    int msfw_len = 20;
    cmd_msfw->add_option("--generator", msfw_gen, "group element (generator word)");
    cmd_msfw->add_option("--max-len", msfw_len, "maximum word length");
    auto* cmd_nucleus = app.add_subcommand("nucleus", "contracting nucleus");
    auto* cmd_regular = app.add_subcommand("regular-open", "regular-open test for a union");
    std::string bis_spec = "gens:b,c,d";
    cmd_regular->add_option("--bisections", bis_spec, "gens:g1,g2,... or @file.json");
    auto* cmd_singular = app.add_subcommand("singular", "singular-support test");
    std::string elem_spec;
    int family_m = 1;
    cmd_singular->add_option("--element", elem_spec, "nucleus:c_e,c_b,c_c,c_d or @file.json")
        ->required();
    cmd_singular->add_option("--m", family_m, "cylinder depth of the nucleus family");
    auto* cmd_convolve = app.add_subcommand("convolve", "convolution of two elements");
    std::string lhs_spec, rhs_spec;
    cmd_convolve->add_option("--lhs", lhs_spec, "left element (@file.json or JSON)")->required();
    cmd_convolve->add_option("--rhs", rhs_spec, "right element (@file.json or JSON)")->required();
    auto* cmd_kats = app.add_subcommand("katsura-report", "Katsura triple report");
    std::string matrices = "katsura-paper";
    cmd_kats->add_option("--matrices", matrices, "katsura-paper or @file.json with A, B");
    auto* cmd_grig = app.add_subcommand("grig-report", "full Grigorchuk bundle");

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    try {
        ordered_json doc;
        if (app.got_subcommand(cmd_hausdorff)) {
            doc = hausdorff_json(hausdorff_test(resolve_system(opt)));
        } else if (app.got_subcommand(cmd_msfw)) {
            SystemPtr sys = resolve_system(opt);
            doc["element"] = msfw_gen;
            doc["max_len"] = msfw_len;
            doc["words"] = ordered_json::array();
            for (const Word& w : enumerate_msfw(GroupElem::parse(sys, msfw_gen), msfw_len))
                doc["words"].push_back(w.to_string());
        } else if (app.got_subcommand(cmd_nucleus)) {
            SystemPtr sys = resolve_system(opt);
            Nucleus nuc = compute_nucleus(sys);
            doc["size"] = nuc.elements.size();
            doc["elements"] = ordered_json::array();
            for (const auto& g : nuc.elements) doc["elements"].push_back(g.to_string());
        } else if (app.got_subcommand(cmd_regular)) {
            SystemPtr sys = resolve_system(opt);
            doc = region_report_json(regular_open_test(parse_bisections(sys, bis_spec),
                                                       opt.depth));
        } else if (app.got_subcommand(cmd_singular)) {
            SystemPtr sys = resolve_system(opt);
            CoeffField field = CoeffField::parse(opt.field);
            AlgebraElement f = parse_element(opt, sys, field, elem_spec, family_m);
            doc = support_json(singular_test(f, opt.depth));
        } else if (app.got_subcommand(cmd_convolve)) {
            SystemPtr sys = resolve_system(opt);
            CoeffField field = CoeffField::parse(opt.field);
            AlgebraElement lhs = parse_element(opt, sys, field, lhs_spec, family_m);
            AlgebraElement rhs = parse_element(opt, sys, field, rhs_spec, family_m);
            AlgebraElement prod = convolve(lhs, rhs);
            doc["field"] = field.to_string();
            doc["terms"] = nlohmann::ordered_json::parse(algebra_to_json(prod));
        } else if (app.got_subcommand(cmd_kats)) {
            KatsuraTriple triple = matrices == "katsura-paper"
                                       ? KatsuraTriple::paper()
                                       : [&] {
                                             std::string path = matrices;
                                             if (!path.empty() && path[0] == '@')
                                                 path = path.substr(1);
                                             std::ifstream in(path);
                                             if (!in)
                                                 throw std::invalid_argument(
                                                     "cannot read matrix file " + path);
                                             std::stringstream buf;
                                             buf << in.rdbuf();
                                             return katsura_from_json(buf.str());
                                         }();
            doc = katsura_report_json(triple);
        } else if (app.got_subcommand(cmd_grig)) {
            doc = grig_report_json(opt.depth);
        }
        emit(opt, doc);
        if (opt.strict && verdict_undecided(doc)) return kExitUndecided;
        return kExitOk;
    } catch (const UndecidedError& e) {
        std::cerr << "undecided at bound: " << e.what() << "\n";
        return opt.strict ? kExitUndecided : kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
