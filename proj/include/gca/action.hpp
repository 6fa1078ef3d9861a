#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gca/bounds.hpp"
#include "gca/words.hpp"

namespace gca {

class GroupElem;
class SemanticContext;

// One generator's behaviour on one letter: image letter plus the restriction,
// a word over signed generator ids (see ActionSystem::sgen conventions).
struct GeneratorRule {
    Letter image = 0;
    std::vector<int> restriction;
};

struct GeneratorSpec {
    std::string name;
    std::vector<GeneratorRule> rules;  // indexed by letter
};

// An immutable self-similar action: either an automaton system (generators
// given by letter/restriction tables, group elements are generator words) or
// a base-k odometer (Z acting by carry addition, elements are integers).
//
// Signed generator ids: s in [0, G) is generator s; s in [G, 2G) is the
// formal inverse of generator s - G.  Inverse tables are synthesized from the
// forward tables.
class ActionSystem : public std::enable_shared_from_this<ActionSystem> {
  public:
    enum class Kind { Automaton, Odometer };

    static std::shared_ptr<const ActionSystem> automaton(std::string name, int alphabet_size,
                                                         std::vector<GeneratorSpec> generators);
    static std::shared_ptr<const ActionSystem> odometer(int base);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int alphabet_size() const { return alphabet_size_; }
    std::size_t generator_count() const { return gens_.size(); }
    const std::string& generator_name(std::size_t i) const { return gens_[i].name; }
    std::optional<std::size_t> generator_index(std::string_view name) const;

    int sgen_count() const { return static_cast<int>(2 * gens_.size()); }
    int sgen_inverse(int s) const;
    const GeneratorRule& rule(int sgen, Letter x) const;
    std::string sgen_name(int s) const;

    // Lazily created per-system semantic interning context (thread-safe).
    SemanticContext& semantics() const;

    ~ActionSystem();

  private:
    ActionSystem() = default;
    Kind kind_ = Kind::Automaton;
    std::string name_;
    int alphabet_size_ = 2;
    struct Gen {
        std::string name;
        std::vector<GeneratorRule> rules;
        std::vector<GeneratorRule> inverse_rules;
    };
    std::vector<Gen> gens_;

    mutable std::mutex mu_;
    mutable std::unique_ptr<SemanticContext> semantics_;
};

using SystemPtr = std::shared_ptr<const ActionSystem>;

// A tree automorphism over an ActionSystem.  Automaton systems store a word
// of signed generator ids (empty word = identity); odometer systems store the
// integer shift.  Equality of elements is semantic, via elements_equal.
class GroupElem {
  public:
    GroupElem() = default;

    static GroupElem identity(SystemPtr sys);
    static GroupElem word(SystemPtr sys, std::vector<int> sgens);
    static GroupElem shift(SystemPtr sys, std::int64_t n);
    // Parses generator names: "abc" (single-letter names), "a b c", "a^-1 b";
    // odometer systems accept integers ("3", "-1") or "e".
    static GroupElem parse(SystemPtr sys, std::string_view text);

    bool valid() const { return sys_ != nullptr; }
    const SystemPtr& system() const { return sys_; }
    bool is_automaton() const;
    const std::vector<int>& sgens() const;
    std::int64_t shift_value() const;

    // Representation-level identity (empty word / zero shift), not semantic.
    bool trivial_repr() const;

    GroupElem inverse() const;
    friend GroupElem operator*(const GroupElem& a, const GroupElem& b);

    bool repr_equal(const GroupElem& o) const;
    std::string to_string() const;

  private:
    GroupElem(SystemPtr sys, std::variant<std::vector<int>, std::int64_t> payload)
        : sys_(std::move(sys)), payload_(std::move(payload)) {}
    SystemPtr sys_;
    std::variant<std::vector<int>, std::int64_t> payload_;
};

// g acting on one letter: (g . x, g|_x).
std::pair<Letter, GroupElem> act_letter(const GroupElem& g, Letter x);

// g acting on a finite word: (g . w, g|_w), by letter iteration.
std::pair<Word, GroupElem> act_word(const GroupElem& g, const Word& w);

// g acting on an eventually periodic word; cycle detection on (restriction,
// tail position) pairs.  Throws UndecidedError on a non-contracting
// trajectory (cycle bound exceeded).
InfWord act_infinite(const GroupElem& g, const InfWord& w, const Bounds& bounds = {});

// Semantic equality of tree automorphisms, decided by memoized pair
// recursion.  Throws UndecidedError past bounds.pair_cache visited pairs.
bool elements_equal(const GroupElem& g, const GroupElem& h, const Bounds& bounds = {});

bool is_identity(const GroupElem& g, const Bounds& bounds = {});

bool is_fixed(const GroupElem& g, const Word& alpha);
bool is_strongly_fixed(const GroupElem& g, const Word& alpha, const Bounds& bounds = {});

struct Nucleus {
    std::vector<GroupElem> elements;  // canonical representatives, identity first
};

// Restriction-closure of pairwise products, pruned to the eventual range,
// iterated to stability.  Throws UndecidedError ("contraction not certified")
// past bounds.nucleus elements.
Nucleus compute_nucleus(const SystemPtr& sys, const Bounds& bounds = {});

// All minimal strongly fixed words of length <= max_len, lexicographic.
// Rejects semantic identity input.
std::vector<Word> enumerate_msfw(const GroupElem& g, int max_len, const Bounds& bounds = {});

struct HausdorffResult {
    enum class Verdict { Hausdorff, NonHausdorff, Undecided };
    Verdict verdict = Verdict::Undecided;
    std::optional<GroupElem> witness;                 // nucleus element with infinite MSFW
    std::vector<std::pair<GroupElem, Letter>> cycle;  // pumping cycle in the fixed-word graph
    std::vector<std::pair<GroupElem, Letter>> exit_path;  // from the cycle to the identity
    std::string detail;
};

// MSFW_g finite for every nucleus g != e iff the germ groupoid is Hausdorff.
HausdorffResult hausdorff_test(const SystemPtr& sys, const Bounds& bounds = {});

struct FaithfulnessResult {
    enum class Verdict { Faithful, NotFaithful, Undecided };
    Verdict verdict = Verdict::Undecided;
    std::optional<GroupElem> witness;  // trivial generator, when NotFaithful
    std::string detail;
};

FaithfulnessResult faithfulness_probe(const SystemPtr& sys, int depth = 6,
                                      const Bounds& bounds = {});

struct OmegaFaithfulResult {
    enum class Verdict { HoldsAt, FailureWitness, Undecided };
    Verdict verdict = Verdict::Undecided;
    int n = 0;  // HoldsAt threshold
    std::string detail;
};

// Probes Definition "omega-faithful" along one fixed word x for a finite set
// F of non-identity elements; rejects vacuous inputs (x not everywhere in
// FW_f \ SFW_f).
OmegaFaithfulResult omega_faithful_probe(const SystemPtr& sys, const std::vector<GroupElem>& F,
                                         const InfWord& x, int depth = 6,
                                         const Bounds& bounds = {});

// Semantic interning plus memoized fixed-word-graph reachability for one
// system.  Ids are stable and deterministic (first-intern order).
class SemanticContext {
  public:
    explicit SemanticContext(const ActionSystem* sys) : sys_(sys) {}

    int intern(const GroupElem& g, const Bounds& bounds = {});
    GroupElem rep(int id) const;
    int identity_id(const Bounds& bounds = {});
    bool is_identity_id(int id, const Bounds& bounds = {});

    // Transitions id --x--> id' for letters x fixed by the element.
    std::vector<std::pair<Letter, int>> fixed_transitions(int id, const Bounds& bounds = {});

    // True iff the element has some strongly fixed word (the identity is
    // reachable in the fixed-word graph; 0 steps allowed).
    bool has_strongly_fixed_word(int id, const Bounds& bounds = {});

  private:
    const ActionSystem* sys_;
    mutable std::recursive_mutex mu_;
    std::vector<std::variant<std::vector<int>, std::int64_t>> reps_;
    std::map<std::pair<std::vector<int>, std::vector<int>>, bool> equal_cache_;
    std::map<int, std::vector<std::pair<Letter, int>>> transitions_;
    std::map<int, bool> sfw_cache_;

    bool payload_equal(const std::variant<std::vector<int>, std::int64_t>& a,
                       const std::variant<std::vector<int>, std::int64_t>& b,
                       const Bounds& bounds);
    friend bool elements_equal(const GroupElem&, const GroupElem&, const Bounds&);
};

}  // namespace gca
