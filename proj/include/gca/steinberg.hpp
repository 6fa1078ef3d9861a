#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gca/field.hpp"
#include "gca/germs.hpp"

namespace gca {

// A Steinberg algebra element: a finite K-linear combination of normalized
// basic compact open bisections, f = sum c_D 1_D.  Zero coefficients are
// never stored and equal keys merge; iteration order is deterministic.
class AlgebraElement {
  public:
    AlgebraElement(SystemPtr sys, CoeffField field)
        : sys_(std::move(sys)), field_(field) {}
    static AlgebraElement indicator(const BasicBisection& b, CoeffField field);

    const SystemPtr& system() const { return sys_; }
    const CoeffField& field() const { return field_; }
    const std::map<BasicBisection, FieldElem>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    // Adds c 1_B into this element (merging and dropping zeros).
    void add_term(const BasicBisection& b, const FieldElem& c);

    std::string to_string() const;

  private:
    SystemPtr sys_;
    CoeffField field_;
    std::map<BasicBisection, FieldElem> coeffs_;
};

AlgebraElement alg_add(const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement alg_scale(const FieldElem& c, const AlgebraElement& f);
AlgebraElement alg_neg(const AlgebraElement& f);

// Convolution: the bilinear extension of 1_B * 1_D = 1_{Theta(st)}.
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g,
                        const Bounds& bounds = {});

// Pointwise value f(germ) = sum of c_D over D containing the germ.
FieldElem evaluate(const AlgebraElement& f, const Germ& germ, const Bounds& bounds = {});

// --- Disjointification ------------------------------------------------------

struct Region {
    enum class Interior { Open, Point, Unknown };
    std::vector<BasicBisection> members;   // the subset J (original keys)
    std::vector<BasicBisection> excluded;  // same-cylinder keys outside J
    // The common refined bisection when J collapses to a single basic one.
    std::optional<BasicBisection> intersection;
    FieldElem value;
    Interior interior = Interior::Unknown;
    std::optional<Germ> sample;  // a germ in the region (point regions: the point)
};

struct RegionDecomposition {
    std::vector<Region> regions;  // pairwise disjoint, empty regions dropped
};

// Refines all keys to a common cylinder depth and groups germs by which keys
// contain them.  Exact interior classification where the strongly-fixed
// structure is known (Grigorchuk Klein-four families); Unknown elsewhere.
RegionDecomposition disjointify(const AlgebraElement& f, int depth = 12,
                                const Bounds& bounds = {});

// --- Grigorchuk nucleus-family analysis --------------------------------------

struct GrigRegionValues {
    // Region values in the order of the six displayed intersections:
    // (e,b), (e,c), (e,d), (c,d), (b,d), (c,b).
    std::vector<FieldElem> k;      // six values
    std::vector<FieldElem> point;  // f(z_e), f(z_b), f(z_c), f(z_d)
    std::vector<std::string> region_names;
};

// For f = c_e 1_{U_{e,m}} + c_b 1_{U_{b,m}} + c_c 1_{U_{c,m}} + c_d 1_{U_{d,m}}.
GrigRegionValues grig_region_values(const std::vector<FieldElem>& coeffs, int m);

// Builds the nucleus-family element over the Grigorchuk system.
AlgebraElement grig_nucleus_family(const std::vector<FieldElem>& coeffs, int m,
                                   const Bounds& bounds = {});

// --- Singularity ------------------------------------------------------------

struct SupportReport {
    enum class Verdict { Zero, Nonsingular, Singular, Undecided };
    Verdict verdict = Verdict::Undecided;
    // Nonsingular: a certified-open region of supp(f) and its constant value.
    std::optional<Region> region;
    std::optional<FieldElem> value;
    // Singular: supp(f) is exactly this finite set of germs.
    std::vector<Germ> points;
    std::vector<FieldElem> point_values;
    int depth = 0;
    std::string detail;
};

// Three-valued singularity test; exact over the Grigorchuk Klein-four
// families (the nucleus family and its basic translates).
SupportReport singular_test(const AlgebraElement& f, int depth = 12, const Bounds& bounds = {});

struct LowerBoundCertificate {
    std::string region_name;   // region where |f| attains the bound
    AbsValue region_value;     // max_i |K_i|
    AbsValue bound;            // |f(z_e)| / 4
};

// For a nucleus-family element over Q with f(z_e) != 0: certifies
// max_i |K_i| >= |f(z_e)|/4 on a nonempty-interior region.
LowerBoundCertificate lower_bound_certificate(const AlgebraElement& f, const Bounds& bounds = {});

}  // namespace gca
