#pragma once

#include <optional>
#include <string>

#include "gca/action.hpp"

namespace gca {

// An element of the triple inverse semigroup S_{G,X}: zero, or (alpha, g,
// beta) acting on the path space by beta w -> alpha (g.w).
class Triple {
  public:
    static Triple zero(SystemPtr sys);
    static Triple make(Word alpha, GroupElem g, Word beta);
    static Triple unit(SystemPtr sys);  // (empty, e, empty)
    static Triple idempotent(SystemPtr sys, Word alpha);

    bool is_zero() const { return zero_; }
    const Word& alpha() const { return alpha_; }
    const GroupElem& g() const { return g_; }
    const Word& beta() const { return beta_; }
    const SystemPtr& system() const { return sys_; }

    std::string to_string() const;

  private:
    bool zero_ = true;
    Word alpha_, beta_;
    GroupElem g_;
    SystemPtr sys_;
};

// (alpha,g,beta)(gamma,h,delta): composes when one source word extends the
// other's range word; zero otherwise (zero absorbs).
Triple isg_mul(const Triple& s, const Triple& t);

// Involution (alpha,g,beta)* = (beta, g^-1, alpha).
Triple isg_star(const Triple& s);

// Semantic equality: both zero, or words equal and group parts equal().
bool triple_equal(const Triple& s, const Triple& t, const Bounds& bounds = {});

// Natural order: s <= t iff t s* s = s.
bool isg_leq(const Triple& s, const Triple& t, const Bounds& bounds = {});

// Idempotency via s s = s.
bool is_idempotent(const Triple& s, const Bounds& bounds = {});

// theta_{(alpha,g,beta)}(beta w) = alpha (g . w); requires w in C(beta).
InfWord theta_apply(const Triple& s, const InfWord& w, const Bounds& bounds = {});

// (g . eta, g|_eta) applied to the triple: restriction of the bisection
// Theta(s) to the subcylinder C(beta eta), i.e. s (beta eta, 1, beta eta).
Triple triple_restrict(const Triple& s, const Word& eta);

}  // namespace gca
