#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gca/isg.hpp"

namespace gca {

// A normalized basic compact open bisection Theta(t, C(t.beta)): the stored
// triple's source cylinder is the whole domain.  The group part is replaced
// by its canonical semantic representative, so two equal bisections compare
// equal as values.
class BasicBisection {
  public:
    // Theta(t, C(cylinder)); the domain is intersected with C(t.beta) and the
    // triple restricted accordingly.  Empty intersection gives nullopt.
    static std::optional<BasicBisection> make(const Triple& t, const Word& cylinder,
                                              const Bounds& bounds = {});
    static BasicBisection full(const Triple& t, const Bounds& bounds = {});

    const Triple& triple() const { return triple_; }
    const Word& domain() const { return triple_.beta(); }
    const SystemPtr& system() const { return triple_.system(); }
    int sem_id() const { return sem_id_; }

    // Restriction to the subcylinder C(beta eta).
    BasicBisection restrict(const Word& eta, const Bounds& bounds = {}) const;

    bool operator==(const BasicBisection& o) const;
    bool operator<(const BasicBisection& o) const;

    std::string to_string() const;

  private:
    BasicBisection(Triple t, int id) : triple_(std::move(t)), sem_id_(id) {}
    Triple triple_;
    int sem_id_;
};

// Theta(s) Theta(t) = Theta(st); nullopt when the product is zero (Empty).
std::optional<BasicBisection> bis_mul(const BasicBisection& b, const BasicBisection& d,
                                      const Bounds& bounds = {});

// Theta(s)^-1 = Theta(s*).
BasicBisection bis_inv(const BasicBisection& b, const Bounds& bounds = {});

// A germ [t; w] with w in the source cylinder of t.
struct Germ {
    Triple triple;
    InfWord word;

    static Germ make(Triple t, InfWord w);
    static Germ unit(SystemPtr sys, InfWord w);
    std::string to_string() const;
};

// Rewrites the representative at a deeper base point (absorbing the
// idempotent (prefix, 1, prefix)); the germ is unchanged.
Germ germ_refine(const Germ& g, std::size_t depth, const Bounds& bounds = {});

// Range point theta_t(w) and source point w.
InfWord germ_range(const Germ& g, const Bounds& bounds = {});

// Groupoid structure: [s; theta_t(y)] [t; y] = [st; y], and
// [t; y]^-1 = [t*; theta_t(y)].
Germ germ_inverse(const Germ& g, const Bounds& bounds = {});
Germ germ_mul(const Germ& a, const Germ& b, const Bounds& bounds = {});

// [s;w] = [t;w'] iff the words agree and the representatives restrict to a
// common triple at some prefix; decided with cycle detection along the tail.
bool germ_eq(const Germ& a, const Germ& b, const Bounds& bounds = {});

// Membership in a basic bisection: some tail prefix is strongly fixed by the
// comparison element (Lemma-style criterion).
bool germ_in(const Germ& g, const BasicBisection& b, const Bounds& bounds = {});

// Membership in the closure: every tail prefix extends to a strongly fixed
// word for the comparison element.
bool germ_in_closure(const Germ& g, const BasicBisection& b, const Bounds& bounds = {});

// --- Grigorchuk-specific machinery -----------------------------------------

enum class ZeFamily { AllFour, None };

// Whether the closure of B contains the four germs z_e, z_b, z_c, z_d over
// 1^inf (it contains one iff it contains all).  Grigorchuk systems only.
ZeFamily closure_ze_family(const BasicBisection& b, const Bounds& bounds = {});

// For B with the z-family in its closure, the unique h in {e,b,c,d} and depth
// n with B cap U_n = U_{h,n}, where U_{g,m} = Theta((~,g,~), C(1^m)).
std::pair<GroupElem, int> reduce_at_infinity(const BasicBisection& b, const Bounds& bounds = {});

// U_{g,m} and U'_{g,m} builders over the Grigorchuk system.
BasicBisection grig_u(const GroupElem& g, int m, const Bounds& bounds = {});
BasicBisection grig_u_prime(const GroupElem& g, int m, const Bounds& bounds = {});
Germ grig_z(const GroupElem& g);  // z_g = [(~,g,~), 1^inf]

// --- Regular-open testing ---------------------------------------------------

struct OpenRegionReport {
    enum class Verdict { RegularOpen, NotRegularOpen, Undecided };
    Verdict verdict = Verdict::Undecided;
    std::optional<Germ> witness;  // interior-of-closure point outside the set
    int depth = 0;
    std::vector<std::string> trace;
};

// Decides regular-openness of a finite union of basic bisections where the
// singular-point structure is known (single bisections, disjoint domains, the
// Grigorchuk z-family); degrades to Undecided elsewhere.
OpenRegionReport regular_open_test(const std::vector<BasicBisection>& family, int depth = 12,
                                   const Bounds& bounds = {});

}  // namespace gca
