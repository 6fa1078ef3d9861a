#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gca/bounds.hpp"
#include "gca/words.hpp"

namespace gca {

// Division-with-remainder action of m on an edge index n within a family
// carrying matrix entries (a, b): m b + n = q a + r with 0 <= r < a.
// Returns (r, q).  Constexpr so the table binding is checked at build time.
constexpr std::pair<std::int64_t, std::int64_t> katsura_edge_action(std::int64_t m,
                                                                    std::int64_t a,
                                                                    std::int64_t b,
                                                                    std::int64_t n) {
    std::int64_t num = m * b + n;
    std::int64_t q = num / a;
    std::int64_t r = num % a;
    if (r < 0) {
        r += a;
        --q;
    }
    return {r, q};
}

// The action/cocycle table for the generator 1 (family entries (a,b)):
// diagonal loops (2,1): 1.e^0 = e^1 phi 0, 1.e^1 = e^0 phi 1;
// off-diagonal (1,2): edge fixed, phi 2; the (1,0) family: fixed, phi 0.
static_assert(katsura_edge_action(1, 2, 1, 0) == std::pair<std::int64_t, std::int64_t>{1, 0});
static_assert(katsura_edge_action(1, 2, 1, 1) == std::pair<std::int64_t, std::int64_t>{0, 1});
static_assert(katsura_edge_action(1, 1, 2, 0) == std::pair<std::int64_t, std::int64_t>{0, 2});
static_assert(katsura_edge_action(1, 1, 0, 0) == std::pair<std::int64_t, std::int64_t>{0, 0});

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct KatsuraEdge {
    int source = 0;  // family e_{ij}: source i
    int range = 0;   // range j
    int index = 0;   // 0 <= index < A_{ji}
};

enum class KatsFixed { Fixed, NotFixed };

struct LatticeClass {
    bool odd = false;
    int two_power = 0;  // F_l = F_{2^two_power} when even; F_1 when odd
    std::string to_string() const;
};

struct ConditionSResult {
    bool satisfied = true;
    std::string case_name;   // "k = n", "1 <= k < n", "k = 0"
    std::string reduction;   // the displayed intersection identity
    std::string interior;    // the interior identity
    std::vector<std::string> trace;
    int samples_checked = 0;
};

struct KatsuraReport {
    bool table_validated = false;
    bool irreducible = false;
    bool minimal = false;
    bool hausdorff = true;
    std::vector<std::string> msfw_witnesses;  // minimal strongly fixed paths of 1
    std::string effectiveness_note;
    int condition_s_sets = 0;
    bool condition_s_all_satisfied = false;
    std::string conclusion;
};

// A self-similar graph triple (Z, E_A, phi) from integer matrices A, B.
// Family e_{ij} has source i, range j, multiplicity A_{ji} and B-entry
// B_{ji}; paths are edge sequences with s(e_k) = r(e_{k+1}).
class KatsuraTriple {
  public:
    static KatsuraTriple from_matrices(IntMatrix a, IntMatrix b);
    static KatsuraTriple paper();  // the worked 3x3 example

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const IntMatrix& matrix_a() const { return a_; }
    const IntMatrix& matrix_b() const { return b_; }

    KatsuraEdge edge(Letter letter) const;
    std::optional<Letter> edge_letter(int source, int range, int index) const;
    std::string edge_name(Letter letter) const;
    Letter parse_edge(const std::string& name) const;
    bool is_loop(Letter letter) const;
    bool is_e13(Letter letter) const;  // the distinguished zero-cocycle family

    // True when every loop family is (2,1) and every non-loop family has
    // A-entry 1: the shape under which the 2-adic fixed-path lattice applies.
    bool odometer_shape() const { return odometer_shape_; }

    bool is_path(const Word& w) const;
    bool is_infinite_path(const InfWord& w) const;
    // Edges e with r(e) = v (words in the domain cylinder of vertex v).
    std::vector<Letter> edges_into(int vertex) const;

    // m . e and phi(m, e).
    std::pair<Letter, std::int64_t> act(std::int64_t m, Letter e) const;
    // Letterwise threading; returns (m . path, phi(m, path)).
    std::pair<Word, std::int64_t> act_path(std::int64_t m, const Word& path) const;
    // Image of an eventually periodic path; monotone-tail shortcut for
    // growing cocycles.  Throws UndecidedError past the bound.
    InfWord act_infinite(std::int64_t m, const InfWord& path,
                         std::size_t bound = 4096) const;

    KatsFixed fixed(std::int64_t l, const InfWord& x) const;
    bool trivially_fixed(std::int64_t l, const InfWord& x) const;

    static LatticeClass lattice_reduce(std::int64_t l);

    ConditionSResult condition_s(const std::vector<std::int64_t>& ls, int vertex) const;

    // Minimal strongly fixed paths of the generator 1, up to max_len.
    std::vector<Word> msfw_one(int max_len) const;

    KatsuraReport report(int msfw_len = 12, int condition_s_bound = 3) const;

  private:
    KatsuraTriple() = default;
    int n_ = 0;
    bool odometer_shape_ = false;
    IntMatrix a_, b_;
    std::vector<KatsuraEdge> edges_;
    std::vector<std::vector<Letter>> by_vertex_range_;  // letters with r(e) = v
    void validate_paper_table() const;
};

}  // namespace gca
