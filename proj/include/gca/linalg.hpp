#pragma once

#include <vector>

#include "gca/field.hpp"

namespace gca {

using FieldMatrix = std::vector<std::vector<FieldElem>>;
using FieldVector = std::vector<FieldElem>;

// Exact kernel basis of a rectangular homogeneous system over one field.
// Over Q the elimination is fraction-free (Bareiss) on cleared-denominator
// integer rows; over GF(p) it is modular.  Basis vectors are returned in
// reduced-row-echelon order (ascending free column); an empty result means
// the kernel is trivial.
std::vector<FieldVector> solve_homogeneous(const FieldMatrix& system);

// Substitutes a vector into the system; true iff every equation gives zero.
bool is_kernel_vector(const FieldMatrix& system, const FieldVector& v);

}  // namespace gca
