#include "gca/isg.hpp"

#include <stdexcept>

namespace gca {

Triple Triple::zero(SystemPtr sys) {
    Triple t;
    t.sys_ = std::move(sys);
    return t;
}

Triple Triple::make(Word alpha, GroupElem g, Word beta) {
    if (!g.valid()) throw std::invalid_argument("Triple: invalid group element");
    Triple t;
    t.zero_ = false;
    t.alpha_ = std::move(alpha);
    t.beta_ = std::move(beta);
    t.sys_ = g.system();
    t.g_ = std::move(g);
    return t;
}

Triple Triple::unit(SystemPtr sys) {
    GroupElem e = GroupElem::identity(sys);
    return make(Word{}, std::move(e), Word{});
}

Triple Triple::idempotent(SystemPtr sys, Word alpha) {
    GroupElem e = GroupElem::identity(std::move(sys));
    return make(alpha, std::move(e), alpha);
}

std::string Triple::to_string() const {
    if (zero_) return "0";
    auto word = [](const Word& w) { return w.empty() ? std::string("~") : w.to_string(); };
    return "(" + word(alpha_) + ", " + g_.to_string() + ", " + word(beta_) + ")";
}

Triple isg_mul(const Triple& s, const Triple& t) {
    if (s.system() != t.system())
        throw std::invalid_argument("isg_mul: triples from different systems");
    if (s.is_zero() || t.is_zero()) return Triple::zero(s.system());
    if (s.beta().is_prefix_of(t.alpha())) {
        // gamma = beta eps: (alpha (g.eps), g|_eps h, delta)
        Word eps = t.alpha().suffix_from(s.beta().size());
        auto [img, rest] = act_word(s.g(), eps);
        return Triple::make(s.alpha() + img, rest * t.g(), t.beta());
    }
    if (t.alpha().is_prefix_of(s.beta())) {
        // beta = gamma eps: (alpha, g (h^-1|_eps)^-1, delta (h^-1.eps))
        Word eps = s.beta().suffix_from(t.alpha().size());
        GroupElem hinv = t.g().inverse();
        auto [img, rest] = act_word(hinv, eps);
        return Triple::make(s.alpha(), s.g() * rest.inverse(), t.beta() + img);
    }
    return Triple::zero(s.system());
}

Triple isg_star(const Triple& s) {
    if (s.is_zero()) return s;
    return Triple::make(s.beta(), s.g().inverse(), s.alpha());
}

bool triple_equal(const Triple& s, const Triple& t, const Bounds& bounds) {
    if (s.system() != t.system())
        throw std::invalid_argument("triple_equal: triples from different systems");
    if (s.is_zero() || t.is_zero()) return s.is_zero() == t.is_zero();
    return s.alpha() == t.alpha() && s.beta() == t.beta() &&
           elements_equal(s.g(), t.g(), bounds);
}

bool isg_leq(const Triple& s, const Triple& t, const Bounds& bounds) {
    return triple_equal(isg_mul(t, isg_mul(isg_star(s), s)), s, bounds);
}

bool is_idempotent(const Triple& s, const Bounds& bounds) {
    return triple_equal(isg_mul(s, s), s, bounds);
}

InfWord theta_apply(const Triple& s, const InfWord& w, const Bounds& bounds) {
    if (s.is_zero()) throw std::domain_error("theta_apply: zero has empty domain");
    if (!w.starts_with(s.beta()))
        throw std::domain_error("theta_apply: word outside the domain cylinder C(beta)");
    InfWord tail = w.drop(s.beta().size());
    return s.alpha() + act_infinite(s.g(), tail, bounds);
}

Triple triple_restrict(const Triple& s, const Word& eta) {
    if (s.is_zero()) return s;
    auto [img, rest] = act_word(s.g(), eta);
    return Triple::make(s.alpha() + img, rest, s.beta() + eta);
}

}  // namespace gca
