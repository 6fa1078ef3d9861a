#include "gca/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gca {

using nlohmann::json;
using nlohmann::ordered_json;

SystemPtr system_from_json(const std::string& text) {
    json doc = json::parse(text);
    if (doc.contains("odometer")) return ActionSystem::odometer(doc.at("odometer").get<int>());
    int alphabet = doc.at("alphabet").get<int>();
    std::string name = doc.value("name", "custom");
    // First pass collects names so restriction words can refer to any
    // generator regardless of order.
    std::vector<std::string> names;
    for (const auto& gen : doc.at("generators")) names.push_back(gen.at("name").get<std::string>());
    auto sgen_of = [&](const std::string& token) {
        std::string base = token;
        bool inverse = false;
        if (base.size() > 3 && base.substr(base.size() - 3) == "^-1") {
            inverse = true;
            base = base.substr(0, base.size() - 3);
        }
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == base)
                return inverse ? static_cast<int>(i + names.size()) : static_cast<int>(i);
        throw std::invalid_argument("action spec: unknown generator '" + token + "'");
    };
    std::vector<GeneratorSpec> gens;
    for (const auto& gen : doc.at("generators")) {
        GeneratorSpec spec;
        spec.name = gen.at("name").get<std::string>();
        for (const auto& rule : gen.at("rules")) {
            GeneratorRule r;
            r.image = rule.at("to").get<Letter>();
            if (rule.contains("rest"))
                for (const auto& tok : rule.at("rest"))
                    r.restriction.push_back(sgen_of(tok.get<std::string>()));
            spec.rules.push_back(std::move(r));
        }
        gens.push_back(std::move(spec));
    }
    return ActionSystem::automaton(std::move(name), alphabet, std::move(gens));
}

std::string system_to_json(const SystemPtr& sys) {
    ordered_json doc;
    if (sys->kind() == ActionSystem::Kind::Odometer) {
        doc["odometer"] = sys->alphabet_size();
        return doc.dump(2);
    }
    doc["name"] = sys->name();
    doc["alphabet"] = sys->alphabet_size();
    doc["generators"] = ordered_json::array();
    for (std::size_t i = 0; i < sys->generator_count(); ++i) {
        ordered_json gen;
        gen["name"] = sys->generator_name(i);
        gen["rules"] = ordered_json::array();
        for (Letter x = 0; x < sys->alphabet_size(); ++x) {
            const GeneratorRule& rule = sys->rule(static_cast<int>(i), x);
            ordered_json r;
            r["to"] = rule.image;
            r["rest"] = ordered_json::array();
            for (int s : rule.restriction) r["rest"].push_back(sys->sgen_name(s));
            gen["rules"].push_back(std::move(r));
        }
        doc["generators"].push_back(std::move(gen));
    }
    return doc.dump(2);
}

SystemPtr load_system(const std::string& name_or_path) {
    if (name_or_path == "grigorchuk" || name_or_path == "odometer2")
        return builtin_system(name_or_path);
    std::ifstream in(name_or_path);
    if (!in) throw std::invalid_argument("unknown builtin and unreadable file: " + name_or_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return system_from_json(buf.str());
}

std::string algebra_to_json(const AlgebraElement& f) {
    ordered_json doc = ordered_json::array();
    for (const auto& [b, c] : f.coeffs()) {
        ordered_json term;
        term["alpha"] = b.triple().alpha().to_string();
        term["g"] = b.triple().g().to_string();
        term["beta"] = b.triple().beta().to_string();
        term["coeff"] = c.to_string();
        doc.push_back(std::move(term));
    }
    return doc.dump(2);
}

AlgebraElement algebra_from_json(const SystemPtr& sys, CoeffField field,
                                 const std::string& text) {
    json doc = json::parse(text);
    if (!doc.is_array()) throw std::invalid_argument("algebra element: expected a JSON array");
    AlgebraElement f{sys, field};
    for (const auto& term : doc) {
        Word alpha = Word::from_digits(term.at("alpha").get<std::string>());
        Word beta = Word::from_digits(term.at("beta").get<std::string>());
        GroupElem g = GroupElem::parse(sys, term.at("g").get<std::string>());
        FieldElem c = FieldElem::parse(field, term.at("coeff").get<std::string>());
        f.add_term(BasicBisection::full(Triple::make(alpha, g, beta)), c);
    }
    return f;
}

KatsuraTriple katsura_from_json(const std::string& text) {
    json doc = json::parse(text);
    auto mat = [&](const char* key) {
        IntMatrix m;
        for (const auto& row : doc.at(key)) {
            m.emplace_back();
            for (const auto& v : row) m.back().push_back(v.get<std::int64_t>());
        }
        return m;
    };
    return KatsuraTriple::from_matrices(mat("A"), mat("B"));
}

}  // namespace gca
