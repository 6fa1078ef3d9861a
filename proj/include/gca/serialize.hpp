#pragma once

#include <string>

#include "gca/katsura.hpp"
#include "gca/steinberg.hpp"
#include "gca/systems.hpp"

namespace gca {

// Action spec files: {"name": ..., "alphabet": k, "generators": [{"name":
// ..., "rules": [{"to": letter, "rest": ["a", "b^-1", ...]}, ...]}]}, or
// {"odometer": k}.  Relations may be listed for documentation; they are not
// interpreted.
SystemPtr system_from_json(const std::string& text);
std::string system_to_json(const SystemPtr& sys);

// Builtin name ("grigorchuk", "odometer2") or a path to a spec file.
SystemPtr load_system(const std::string& name_or_path);

// Algebra elements: [{"alpha": "01", "g": "bc", "beta": "1", "coeff": "1/2"},
// ...]; words are digit strings, g parses generator names.
std::string algebra_to_json(const AlgebraElement& f);
AlgebraElement algebra_from_json(const SystemPtr& sys, CoeffField field,
                                 const std::string& text);

// Katsura matrices: {"A": [[...]], "B": [[...]]}.
KatsuraTriple katsura_from_json(const std::string& text);

}  // namespace gca
