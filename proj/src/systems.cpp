#include "gca/systems.hpp"

#include <mutex>
#include <stdexcept>

namespace gca {

namespace {
// Generator indices in the table below: a=0, b=1, c=2, d=3.
std::vector<GeneratorSpec> grigorchuk_table() {
    std::vector<GeneratorSpec> gens(4);
    gens[0] = {"a", {GeneratorRule{1, {}}, GeneratorRule{0, {}}}};
    gens[1] = {"b", {GeneratorRule{0, {0}}, GeneratorRule{1, {2}}}};
    gens[2] = {"c", {GeneratorRule{0, {0}}, GeneratorRule{1, {3}}}};
    gens[3] = {"d", {GeneratorRule{0, {}}, GeneratorRule{1, {1}}}};
    return gens;
}
}  // namespace

SystemPtr grigorchuk() {
    static SystemPtr sys = ActionSystem::automaton("grigorchuk", 2, grigorchuk_table());
    return sys;
}

SystemPtr odometer2() {
    static SystemPtr sys = ActionSystem::odometer(2);
    return sys;
}

SystemPtr builtin_system(std::string_view name) {
    if (name == "grigorchuk") return grigorchuk();
    if (name == "odometer2") return odometer2();
    throw std::invalid_argument("unknown builtin system '" + std::string(name) + "'");
}

bool is_grigorchuk(const SystemPtr& sys) { return sys == grigorchuk(); }

}  // namespace gca
