#include "gca/linalg.hpp"

#include <stdexcept>

namespace gca {

namespace {

CoeffField validate(const FieldMatrix& m) {
    if (m.empty() || m.front().empty())
        throw std::invalid_argument("solve_homogeneous: empty system");
    CoeffField f = m.front().front().field();
    for (const auto& row : m) {
        if (row.size() != m.front().size())
            throw std::invalid_argument("solve_homogeneous: ragged matrix");
        for (const auto& e : row)
            if (!(e.field() == f))
                throw FieldMismatchError("solve_homogeneous: mixed fields");
    }
    return f;
}

// In-place reduced row echelon form over the field; returns pivot columns.
std::vector<std::size_t> rref(FieldMatrix& m) {
    const std::size_t rows = m.size(), cols = m.front().size();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m[sel][col].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        FieldElem inv = m[row][col].inverse();
        for (std::size_t j = col; j < cols; ++j) m[row][j] = m[row][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            FieldElem factor = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = m[i][j] - factor * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Fraction-free forward elimination (Bareiss) on integer rows.  Returns the
// echelon matrix and pivot columns; all intermediate divisions are exact.
std::vector<std::size_t> bareiss(std::vector<std::vector<BigInt>>& m) {
    const std::size_t rows = m.size(), cols = m.front().size();
    std::vector<std::size_t> pivots;
    BigInt prev{1};
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m[sel][col].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                m[i][j] = (m[i][j] * m[row][col] - m[i][col] * m[row][j]) / prev;
            m[i][col] = BigInt{};
        }
        prev = m[row][col];
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<FieldVector> kernel_from_rref(const FieldMatrix& m,
                                          const std::vector<std::size_t>& pivots,
                                          CoeffField f) {
    const std::size_t cols = m.front().size();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<FieldVector> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        FieldVector v(cols, FieldElem::zero(f));
        v[free_col] = FieldElem::one(f);
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -m[k][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

std::vector<FieldVector> solve_homogeneous(const FieldMatrix& system) {
    CoeffField f = validate(system);
    if (f.is_rationals()) {
        // Clear denominators per row, then eliminate fraction-free.
        std::vector<std::vector<BigInt>> im(system.size());
        for (std::size_t i = 0; i < system.size(); ++i) {
            BigInt common{1};
            for (const auto& e : system[i])
                common = common * (e.rational().den() / BigInt::gcd(common, e.rational().den()));
            for (const auto& e : system[i])
                im[i].push_back(e.rational().num() * (common / e.rational().den()));
        }
        auto pivots = bareiss(im);
        // Finish the (small) triangular system over Q to reach RREF.
        FieldMatrix rat(im.size());
        for (std::size_t i = 0; i < im.size(); ++i)
            for (auto& x : im[i])
                rat[i].push_back(FieldElem::from_rational(Rational{std::move(x), BigInt{1}}));
        auto pivots2 = rref(rat);
        if (pivots2 != pivots)
            throw std::logic_error("solve_homogeneous: pivot disagreement");
        return kernel_from_rref(rat, pivots, f);
    }
    FieldMatrix work = system;
    auto pivots = rref(work);
    return kernel_from_rref(work, pivots, f);
}

bool is_kernel_vector(const FieldMatrix& system, const FieldVector& v) {
    for (const auto& row : system) {
        if (row.size() != v.size())
            throw std::invalid_argument("is_kernel_vector: size mismatch");
        FieldElem acc = FieldElem::zero(v.front().field());
        for (std::size_t j = 0; j < v.size(); ++j) acc = acc + row[j] * v[j];
        if (!acc.is_zero()) return false;
    }
    return true;
}

}  // namespace gca
