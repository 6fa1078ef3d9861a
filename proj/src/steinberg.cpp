#include "gca/steinberg.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "gca/systems.hpp"

namespace gca {

namespace {

GroupElem grig(const char* name) { return GroupElem::parse(grigorchuk(), name); }

Word ones_word(int n) { return word_pow(Word::from_digits("1"), static_cast<std::size_t>(n)); }

// Residue r with 1^{3n+r} 0 strongly fixed: d -> 0, c -> 1, b -> 2.
int klein_residue(const GroupElem& u) {
    for (int r = 0; r < 3; ++r)
        if (is_strongly_fixed(u, ones_word(r) + Word::from_digits("0"))) return r;
    throw std::logic_error("klein_residue: element is not one of b, c, d");
}

}  // namespace

// ---------------------------------------------------------------------------
// AlgebraElement basics

AlgebraElement AlgebraElement::indicator(const BasicBisection& b, CoeffField field) {
    AlgebraElement f{b.system(), field};
    f.add_term(b, FieldElem::one(field));
    return f;
}

void AlgebraElement::add_term(const BasicBisection& b, const FieldElem& c) {
    if (!(c.field() == field_)) throw FieldMismatchError("AlgebraElement: coefficient field");
    if (b.system() != sys_) throw std::invalid_argument("AlgebraElement: mixed systems");
    auto it = coeffs_.find(b);
    if (it == coeffs_.end()) {
        if (!c.is_zero()) coeffs_.emplace(b, c);
        return;
    }
    FieldElem merged = it->second + c;
    if (merged.is_zero())
        coeffs_.erase(it);
    else
        it->second = merged;
}

std::string AlgebraElement::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [b, c] : coeffs_) {
        if (!out.empty()) out += " + ";
        out += c.to_string() + "*1_" + b.to_string();
    }
    return out;
}

AlgebraElement alg_add(const AlgebraElement& f, const AlgebraElement& g) {
    if (!(f.field() == g.field())) throw FieldMismatchError("alg_add: mixed fields");
    if (f.system() != g.system()) throw std::invalid_argument("alg_add: mixed systems");
    AlgebraElement out = f;
    for (const auto& [b, c] : g.coeffs()) out.add_term(b, c);
    return out;
}

AlgebraElement alg_scale(const FieldElem& c, const AlgebraElement& f) {
    AlgebraElement out{f.system(), f.field()};
    if (c.is_zero()) return out;
    for (const auto& [b, v] : f.coeffs()) out.add_term(b, c * v);
    return out;
}

AlgebraElement alg_neg(const AlgebraElement& f) {
    return alg_scale(-FieldElem::one(f.field()), f);
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g, const Bounds& bounds) {
    if (!(f.field() == g.field())) throw FieldMismatchError("convolve: mixed fields");
    if (f.system() != g.system()) throw std::invalid_argument("convolve: mixed systems");
    AlgebraElement out{f.system(), f.field()};
    for (const auto& [b, cb] : f.coeffs())
        for (const auto& [d, cd] : g.coeffs())
            if (auto p = bis_mul(b, d, bounds)) out.add_term(*p, cb * cd);
    return out;
}

FieldElem evaluate(const AlgebraElement& f, const Germ& germ, const Bounds& bounds) {
    FieldElem acc = FieldElem::zero(f.field());
    for (const auto& [b, c] : f.coeffs())
        if (germ_in(germ, b, bounds)) acc = acc + c;
    return acc;
}

// ---------------------------------------------------------------------------
// Region analysis

namespace {

struct RefinedClass {
    BasicBisection bisection;             // refined to the common domain
    std::vector<BasicBisection> members;  // original keys refining to it
    FieldElem value;
};

// Refines every key to the common domain depth and groups by domain word.
std::map<Word, std::vector<RefinedClass>> refine_classes(const AlgebraElement& f,
                                                         const Bounds& bounds) {
    std::size_t depth = 0;
    for (const auto& [b, c] : f.coeffs()) depth = std::max(depth, b.domain().size());
    std::map<Word, std::vector<RefinedClass>> by_domain;
    std::size_t budget = 4096;
    const int k = f.system()->alphabet_size();
    for (const auto& [b, c] : f.coeffs()) {
        std::deque<Word> frontier{Word{}};
        while (!frontier.empty()) {
            Word eta = std::move(frontier.front());
            frontier.pop_front();
            if (b.domain().size() + eta.size() < depth) {
                for (Letter x = 0; x < k; ++x) {
                    Word next = eta;
                    next.push_back(x);
                    frontier.push_back(std::move(next));
                }
                continue;
            }
            if (budget-- == 0)
                throw std::runtime_error("disjointify: exponential-region bound exceeded");
            BasicBisection refined = b.restrict(eta, bounds);
            auto& classes = by_domain[refined.domain()];
            auto it = std::find_if(classes.begin(), classes.end(), [&](const RefinedClass& rc) {
                return rc.bisection == refined;
            });
            if (it == classes.end()) {
                classes.push_back(RefinedClass{refined, {b}, c});
            } else {
                it->members.push_back(b);
                it->value = it->value + c;
            }
        }
    }
    return by_domain;
}

// Klein-four structure of a same-domain, same-range class group over the
// Grigorchuk system: pairwise quotients land in {b, c, d}.
struct KleinGroup {
    std::vector<std::vector<int>> residue;  // residue[i][j] for i != j
    bool klein = false;
};

KleinGroup analyze_group(const std::vector<RefinedClass>& classes,
                         const std::vector<std::size_t>& idx, const Bounds& bounds) {
    KleinGroup group;
    if (!is_grigorchuk(classes.front().bisection.system())) return group;
    SemanticContext& ctx = classes.front().bisection.system()->semantics();
    std::set<int> klein_ids;
    for (const char* n : {"b", "c", "d"}) klein_ids.insert(ctx.intern(grig(n), bounds));
    group.residue.assign(idx.size(), std::vector<int>(idx.size(), -1));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (i == j) continue;
            GroupElem u = classes[idx[i]].bisection.triple().g().inverse() *
                          classes[idx[j]].bisection.triple().g();
            if (!klein_ids.count(ctx.intern(u, bounds))) return group;
            group.residue[i][j] = klein_residue(u);
        }
    group.klein = true;
    return group;
}

Germ class_germ(const RefinedClass& rc, const InfWord& tail) {
    return Germ::make(rc.bisection.triple(), rc.bisection.domain() + tail);
}

void verify_sample(const Region& region, const Bounds& bounds) {
    if (!region.sample) return;
    for (const auto& b : region.members)
        if (!germ_in(*region.sample, b, bounds))
            throw std::logic_error("region sample escapes a member bisection");
    for (const auto& b : region.excluded)
        if (germ_in(*region.sample, b, bounds))
            throw std::logic_error("region sample hits an excluded bisection");
}

}  // namespace

RegionDecomposition disjointify(const AlgebraElement& f, int depth, const Bounds& bounds) {
    (void)depth;
    RegionDecomposition out;
    if (f.is_zero()) return out;
    auto by_domain = refine_classes(f, bounds);
    for (auto& [mu, classes] : by_domain) {
        // Classes with distinct range words never share germs.
        std::map<Word, std::vector<std::size_t>> by_alpha;
        for (std::size_t i = 0; i < classes.size(); ++i)
            by_alpha[classes[i].bisection.triple().alpha()].push_back(i);
        for (auto& [alpha, idx] : by_alpha) {
            if (idx.size() > 16)
                throw std::runtime_error("disjointify: exponential-region bound exceeded");
            KleinGroup group = analyze_group(classes, idx, bounds);
            auto original_members = [&](const std::vector<std::size_t>& sel) {
                std::vector<BasicBisection> ms;
                for (std::size_t i : sel)
                    for (const auto& b : classes[idx[i]].members) ms.push_back(b);
                return ms;
            };
            auto excluded_members = [&](const std::vector<std::size_t>& sel) {
                std::vector<BasicBisection> ms;
                for (std::size_t i = 0; i < idx.size(); ++i)
                    if (std::find(sel.begin(), sel.end(), i) == sel.end())
                        for (const auto& b : classes[idx[i]].members) ms.push_back(b);
                return ms;
            };
            auto value_of = [&](const std::vector<std::size_t>& sel) {
                FieldElem v = FieldElem::zero(f.field());
                for (std::size_t i : sel) v = v + classes[idx[i]].value;
                return v;
            };

            if (idx.size() == 1) {
                Region region;
                region.members = original_members({0});
                region.intersection = classes[idx[0]].bisection;
                region.value = value_of({0});
                region.interior = Region::Interior::Open;
                region.sample = class_germ(classes[idx[0]], InfWord::constant(1));
                if (!region.value.is_zero()) {
                    verify_sample(region, bounds);
                    out.regions.push_back(std::move(region));
                }
                continue;
            }
            if (!group.klein) {
                // Subsets carry unknown interiors; distinct membership
                // patterns keep the regions pairwise disjoint regardless.
                const std::size_t n = idx.size();
                for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
                    std::vector<std::size_t> sel;
                    for (std::size_t i = 0; i < n; ++i)
                        if (mask & (std::size_t{1} << i)) sel.push_back(i);
                    Region region;
                    region.members = original_members(sel);
                    region.excluded = excluded_members(sel);
                    region.value = value_of(sel);
                    if (sel.size() == 1) region.intersection = classes[idx[sel[0]]].bisection;
                    region.interior = Region::Interior::Unknown;
                    if (!region.value.is_zero()) out.regions.push_back(std::move(region));
                }
                continue;
            }
            // Klein group: singletons and pairs; three or more classes never
            // meet.
            const std::size_t n = idx.size();
            for (std::size_t i = 0; i < n; ++i) {
                Region region;
                region.members = original_members({i});
                region.excluded = excluded_members({i});
                region.intersection = classes[idx[i]].bisection;
                region.value = value_of({i});
                if (n == 4) {
                    region.interior = Region::Interior::Point;
                    region.sample = class_germ(classes[idx[i]], InfWord::constant(1));
                } else {
                    // A residue unused by the quotients keeps a subcylinder
                    // inside this class alone.
                    std::set<int> used;
                    for (std::size_t j = 0; j < n; ++j)
                        if (j != i) used.insert(group.residue[i][j]);
                    int r = 0;
                    while (used.count(r)) ++r;
                    region.interior = Region::Interior::Open;
                    region.sample = class_germ(
                        classes[idx[i]],
                        ones_word(r) + (Word::from_digits("0") + InfWord::constant(1)));
                }
                if (!region.value.is_zero()) {
                    verify_sample(region, bounds);
                    out.regions.push_back(std::move(region));
                }
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    Region region;
                    region.members = original_members({i, j});
                    region.excluded = excluded_members({i, j});
                    region.value = value_of({i, j});
                    region.interior = Region::Interior::Open;
                    region.sample = class_germ(
                        classes[idx[i]], ones_word(group.residue[i][j]) +
                                             (Word::from_digits("0") + InfWord::constant(1)));
                    if (!region.value.is_zero()) {
                        verify_sample(region, bounds);
                        out.regions.push_back(std::move(region));
                    }
                }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grigorchuk nucleus family

GrigRegionValues grig_region_values(const std::vector<FieldElem>& coeffs, int m) {
    if (coeffs.size() != 4)
        throw std::invalid_argument("grig_region_values: need (c_e, c_b, c_c, c_d)");
    const FieldElem &ce = coeffs[0], &cb = coeffs[1], &cc = coeffs[2], &cd = coeffs[3];
    GrigRegionValues out;
    out.k = {ce + cb, ce + cc, ce + cd, cc + cd, cb + cd, cc + cb};
    out.point = {ce, cb, cc, cd};
    const char* pairs[6][2] = {{"b", "e"}, {"c", "e"}, {"d", "e"},
                               {"c", "d"}, {"b", "d"}, {"c", "b"}};
    const int offset[6] = {2, 1, 0, 2, 1, 0};
    for (int i = 0; i < 6; ++i) {
        std::string nm = std::string("U_{") + pairs[i][0] + "," + std::to_string(m) +
                         "} cap U_{" + pairs[i][1] + "," + std::to_string(m) +
                         "} = union of U'_{" + pairs[i][0] + ",3n+" + std::to_string(offset[i]) +
                         "}, 3n+" + std::to_string(offset[i]) + " >= " + std::to_string(m);
        out.region_names.push_back(std::move(nm));
    }
    return out;
}

AlgebraElement grig_nucleus_family(const std::vector<FieldElem>& coeffs, int m,
                                   const Bounds& bounds) {
    if (coeffs.size() != 4)
        throw std::invalid_argument("grig_nucleus_family: need (c_e, c_b, c_c, c_d)");
    AlgebraElement f{grigorchuk(), coeffs.front().field()};
    const char* names[4] = {"e", "b", "c", "d"};
    for (int i = 0; i < 4; ++i) f.add_term(grig_u(grig(names[i]), m, bounds), coeffs[i]);
    return f;
}

// ---------------------------------------------------------------------------
// Singularity

namespace {

// Searches for a whole subcylinder of one key on which f is a nonzero
// constant: every other key must contain it entirely or miss it entirely
// (range mismatch, disjoint domain, or a quotient with no strongly fixed
// word).
std::optional<Region> certified_open_region(const AlgebraElement& f, int depth,
                                            const Bounds& bounds) {
    SemanticContext& ctx = f.system()->semantics();
    std::size_t max_domain = 0;
    for (const auto& [b, c] : f.coeffs()) max_domain = std::max(max_domain, b.domain().size());
    const int k = f.system()->alphabet_size();
    for (const auto& [key, coeff] : f.coeffs()) {
        std::deque<Word> frontier{Word{}};
        while (!frontier.empty()) {
            Word eta = std::move(frontier.front());
            frontier.pop_front();
            if (static_cast<int>(eta.size()) > depth) continue;
            if (key.domain().size() + eta.size() >= max_domain) {
                BasicBisection sub = key.restrict(eta, bounds);
                FieldElem value = coeff;
                bool certified = true;
                std::vector<BasicBisection> members{key};
                std::vector<BasicBisection> excluded;
                for (const auto& [other, c2] : f.coeffs()) {
                    if (other == key) continue;
                    if (!other.domain().is_prefix_of(sub.domain())) continue;  // disjoint
                    BasicBisection refined =
                        other.restrict(sub.domain().suffix_from(other.domain().size()), bounds);
                    if (!(refined.triple().alpha() == sub.triple().alpha())) {
                        excluded.push_back(other);
                        continue;
                    }
                    GroupElem u = sub.triple().g().inverse() * refined.triple().g();
                    int uid = ctx.intern(u, bounds);
                    if (ctx.is_identity_id(uid, bounds)) {
                        members.push_back(other);
                        value = value + c2;
                    } else if (!ctx.has_strongly_fixed_word(uid, bounds)) {
                        excluded.push_back(other);
                    } else {
                        certified = false;
                        break;
                    }
                }
                if (certified && !value.is_zero()) {
                    Region region;
                    region.members = std::move(members);
                    region.excluded = std::move(excluded);
                    region.intersection = sub;
                    region.value = value;
                    region.interior = Region::Interior::Open;
                    region.sample = Germ::make(sub.triple(), sub.domain() + InfWord::constant(0));
                    verify_sample(region, bounds);
                    return region;
                }
            }
            for (Letter x = 0; x < k; ++x) {
                Word next = eta;
                next.push_back(x);
                frontier.push_back(std::move(next));
            }
        }
    }
    return std::nullopt;
}

// Shortest strongly fixed word of the element with the given semantic id:
// BFS through the fixed-word graph to the identity, recording letters.
std::optional<Word> shortest_sfw(SemanticContext& ctx, int id, const Bounds& bounds) {
    std::map<int, std::pair<int, Letter>> parent;
    std::deque<int> queue{id};
    std::set<int> seen{id};
    if (ctx.is_identity_id(id, bounds)) return Word{};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto [x, w] : ctx.fixed_transitions(v, bounds)) {
            if (!seen.insert(w).second) continue;
            parent[w] = {v, x};
            if (ctx.is_identity_id(w, bounds)) {
                std::vector<Letter> letters;
                for (int cur = w; cur != id;) {
                    auto [p, px] = parent.at(cur);
                    letters.push_back(px);
                    cur = p;
                }
                std::reverse(letters.begin(), letters.end());
                return Word{letters};
            }
            queue.push_back(w);
            if (seen.size() > bounds.nucleus)
                throw UndecidedError("shortest_sfw: bound exceeded");
        }
    }
    return std::nullopt;
}

// The structure behind the worked example's z-family, for any coset of it:
// a same-range, same-domain group of four classes whose pairwise quotients
// form a Klein four-group of non-identity elements.  Certifies the unique
// "fixed but never strongly fixed" direction y, with every branch off y
// covered in one letter by some quotient.
struct Klein4Structure {
    InfWord direction;                 // the common singular tail
    std::vector<std::vector<Word>> pair_sfw;  // pair_sfw[i][j]: a shortest SFW of u_ij
};

std::optional<Klein4Structure> analyze_klein4(const std::vector<RefinedClass>& classes,
                                              const std::vector<std::size_t>& idx,
                                              const Bounds& bounds) {
    if (idx.size() != 4) return std::nullopt;
    const SystemPtr& sys = classes.front().bisection.system();
    SemanticContext& ctx = sys->semantics();
    GroupElem quot[4][4];
    int qid[4][4];
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            quot[i][j] = classes[idx[i]].bisection.triple().g().inverse() *
                         classes[idx[j]].bisection.triple().g();
            qid[i][j] = ctx.intern(quot[i][j], bounds);
            if (i != j && ctx.is_identity_id(qid[i][j], bounds)) return std::nullopt;
        }
    // Klein four-group closure: involutions and u_01 u_02 = u_03.
    for (std::size_t j = 1; j < 4; ++j)
        if (!is_identity(quot[0][j] * quot[0][j], bounds)) return std::nullopt;
    if (!elements_equal(quot[0][1] * quot[0][2], quot[0][3], bounds)) return std::nullopt;

    // Walk the singular direction: at each step exactly one letter is fixed
    // by all three with non-identity restrictions, every other letter is
    // strongly fixed in one step by some quotient, and the three restriction
    // classes stay distinct.
    const int k = sys->alphabet_size();
    std::array<int, 3> state{qid[0][1], qid[0][2], qid[0][3]};
    std::map<std::array<int, 3>, std::size_t> seen;
    std::vector<Letter> letters;
    for (;;) {
        if (letters.size() > bounds.cycle_steps)
            throw UndecidedError("analyze_klein4: direction walk exceeded bound");
        auto it = seen.find(state);
        if (it != seen.end()) {
            std::size_t start = it->second;
            Word pre{std::vector<Letter>(letters.begin(), letters.begin() + start)};
            Word per{std::vector<Letter>(letters.begin() + start, letters.end())};
            if (per.empty()) return std::nullopt;
            Klein4Structure out;
            out.direction = InfWord{pre, per};
            out.pair_sfw.assign(4, std::vector<Word>(4));
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) {
                    if (i == j) continue;
                    auto w = shortest_sfw(ctx, qid[i][j], bounds);
                    if (!w) return std::nullopt;  // pair region would be empty
                    out.pair_sfw[i][j] = *w;
                }
            return out;
        }
        seen.emplace(state, letters.size());
        int chosen = -1;
        std::array<int, 3> next{};
        for (Letter x = 0; x < k; ++x) {
            bool all_fixed = true;
            std::array<int, 3> restr{};
            bool any_identity = false;
            for (int t = 0; t < 3; ++t) {
                auto [y, r] = act_letter(ctx.rep(state[t]), x);
                if (y != x) {
                    all_fixed = false;
                    break;
                }
                restr[t] = ctx.intern(r, bounds);
                if (ctx.is_identity_id(restr[t], bounds)) any_identity = true;
            }
            if (all_fixed && !any_identity) {
                if (chosen >= 0) return std::nullopt;  // ambiguous direction
                chosen = x;
                next = restr;
            } else {
                // Branch letter: some quotient must strongly fix it outright.
                bool covered = false;
                for (int t = 0; t < 3 && !covered; ++t) {
                    auto [y, r] = act_letter(ctx.rep(state[t]), x);
                    covered = y == x && ctx.is_identity_id(ctx.intern(r, bounds), bounds);
                }
                if (!covered) return std::nullopt;
            }
        }
        if (chosen < 0) return std::nullopt;
        if (next[0] == next[1] || next[0] == next[2] || next[1] == next[2])
            return std::nullopt;  // classes would merge along the direction
        letters.push_back(chosen);
        state = next;
    }
}

}  // namespace

SupportReport singular_test(const AlgebraElement& f, int depth, const Bounds& bounds) {
    SupportReport report;
    report.depth = depth;
    if (f.is_zero()) {
        report.verdict = SupportReport::Verdict::Zero;
        report.detail = "no terms after cancellation";
        return report;
    }
    try {
        if (auto region = certified_open_region(f, depth, bounds)) {
            report.verdict = SupportReport::Verdict::Nonsingular;
            report.value = region->value;
            report.region = std::move(region);
            report.detail = "constant and nonzero on a whole basic subcylinder";
            return report;
        }
        // Klein-family analysis: every key over one domain cylinder, range
        // groups of four whose pairwise quotients form a Klein four-group
        // (the nucleus family and its basic translates).
        bool same_domain = true;
        const Word& domain = f.coeffs().begin()->first.domain();
        for (const auto& [b, c] : f.coeffs())
            same_domain = same_domain && b.domain() == domain;
        if (same_domain) {
            std::vector<RefinedClass> classes;
            for (const auto& [b, c] : f.coeffs())
                classes.push_back(RefinedClass{b, {b}, c});
            std::map<Word, std::vector<std::size_t>> by_alpha;
            for (std::size_t i = 0; i < classes.size(); ++i)
                by_alpha[classes[i].bisection.triple().alpha()].push_back(i);
            bool all_klein4 = true;
            std::vector<Germ> points;
            std::vector<FieldElem> point_values;
            std::optional<Region> nonzero_pair;
            for (auto& [alpha, idx] : by_alpha) {
                auto structure = analyze_klein4(classes, idx, bounds);
                if (!structure) {
                    all_klein4 = false;
                    break;
                }
                for (std::size_t i = 0; i < idx.size() && !nonzero_pair; ++i)
                    for (std::size_t j = i + 1; j < idx.size() && !nonzero_pair; ++j) {
                        FieldElem v = classes[idx[i]].value + classes[idx[j]].value;
                        if (v.is_zero()) continue;
                        // The subcylinder past a strongly fixed word of u_ij
                        // must be dead for the two other quotients.
                        SemanticContext& ctx = f.system()->semantics();
                        const Word& q = structure->pair_sfw[i][j];
                        bool open_certified = true;
                        for (std::size_t l = 0; l < idx.size(); ++l) {
                            if (l == i || l == j) continue;
                            GroupElem u = classes[idx[i]].bisection.triple().g().inverse() *
                                          classes[idx[l]].bisection.triple().g();
                            auto [img, rest] = act_word(u, q);
                            if (img == q &&
                                ctx.has_strongly_fixed_word(ctx.intern(rest, bounds), bounds))
                                open_certified = false;
                        }
                        if (!open_certified) continue;
                        Region region;
                        region.members = {classes[idx[i]].bisection, classes[idx[j]].bisection};
                        for (std::size_t l = 0; l < idx.size(); ++l)
                            if (l != i && l != j)
                                region.excluded.push_back(classes[idx[l]].bisection);
                        region.value = v;
                        region.interior = Region::Interior::Open;
                        region.sample = class_germ(classes[idx[i]], q + InfWord::constant(1));
                        verify_sample(region, bounds);
                        nonzero_pair = std::move(region);
                    }
                for (std::size_t i = 0; i < idx.size(); ++i) {
                    points.push_back(class_germ(classes[idx[i]], structure->direction));
                    point_values.push_back(classes[idx[i]].value);
                }
            }
            if (all_klein4 && nonzero_pair) {
                report.verdict = SupportReport::Verdict::Nonsingular;
                report.value = nonzero_pair->value;
                report.region = std::move(nonzero_pair);
                report.detail = "nonzero on a pairwise-intersection region of the family";
                return report;
            }
            if (all_klein4) {
                bool pairs_all_zero = true;
                for (auto& [alpha, idx] : by_alpha)
                    for (std::size_t i = 0; i < idx.size(); ++i)
                        for (std::size_t j = i + 1; j < idx.size(); ++j)
                            pairs_all_zero =
                                pairs_all_zero &&
                                (classes[idx[i]].value + classes[idx[j]].value).is_zero();
                if (pairs_all_zero) {
                    report.verdict = SupportReport::Verdict::Singular;
                    for (std::size_t i = 0; i < points.size(); ++i) {
                        FieldElem vi = evaluate(f, points[i], bounds);
                        if (!(vi == point_values[i]))
                            throw std::logic_error("singular_test: point value mismatch");
                        report.points.push_back(points[i]);
                        report.point_values.push_back(point_values[i]);
                    }
                    report.detail =
                        "all pairwise region values vanish; the support is exactly the "
                        "finite z-family translate";
                    return report;
                }
            }
        }
    } catch (const UndecidedError& e) {
        report.verdict = SupportReport::Verdict::Undecided;
        report.detail = e.what();
        return report;
    }
    report.verdict = SupportReport::Verdict::Undecided;
    report.detail = "no certificate at depth " + std::to_string(depth);
    return report;
}

LowerBoundCertificate lower_bound_certificate(const AlgebraElement& f, const Bounds& bounds) {
    if (!f.field().is_rationals())
        throw std::invalid_argument("lower_bound_certificate: defined over Q");
    if (!is_grigorchuk(f.system()))
        throw std::invalid_argument("lower_bound_certificate: Grigorchuk nucleus family only");
    if (f.is_zero()) throw std::invalid_argument("lower_bound_certificate: zero element");
    // Match the keys against the normalized nucleus family at one depth.
    const std::size_t m = f.coeffs().begin()->first.domain().size();
    const char* names[4] = {"e", "b", "c", "d"};
    std::vector<FieldElem> coeffs(4, FieldElem::zero(f.field()));
    std::size_t matched = 0;
    for (int i = 0; i < 4; ++i) {
        BasicBisection u = grig_u(grig(names[i]), static_cast<int>(m), bounds);
        auto it = f.coeffs().find(u);
        if (it != f.coeffs().end()) {
            coeffs[i] = it->second;
            ++matched;
        }
    }
    if (matched != f.coeffs().size())
        throw std::invalid_argument(
            "lower_bound_certificate: not a nucleus-family element at one depth");
    if (coeffs[0].is_zero())
        throw std::invalid_argument("lower_bound_certificate: requires f(z_e) != 0");

    GrigRegionValues values = grig_region_values(coeffs, static_cast<int>(m));
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.k.size(); ++i)
        if (values.k[best].abs() < values.k[i].abs()) best = i;
    AbsValue bound{coeffs[0].rational() * Rational{BigInt{1}, BigInt{4}}};
    if (values.k[best].abs() < bound)
        throw std::logic_error("lower_bound_certificate: bound violated (impossible)");
    return LowerBoundCertificate{values.region_names[best], values.k[best].abs(), bound};
}

}  // namespace gca
