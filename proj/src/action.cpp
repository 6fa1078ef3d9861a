#include "gca/action.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace gca {

namespace {

using Payload = std::variant<std::vector<int>, std::int64_t>;

const std::vector<int>& as_word(const Payload& p) { return std::get<std::vector<int>>(p); }

Payload identity_payload(const ActionSystem& sys) {
    if (sys.kind() == ActionSystem::Kind::Odometer) return std::int64_t{0};
    return std::vector<int>{};
}

std::pair<Letter, Payload> act_letter_payload(const ActionSystem& sys, const Payload& p,
                                              Letter x) {
    if (x < 0 || x >= sys.alphabet_size())
        throw std::invalid_argument("act_letter: letter out of range");
    if (sys.kind() == ActionSystem::Kind::Odometer) {
        std::int64_t n = std::get<std::int64_t>(p);
        std::int64_t k = sys.alphabet_size();
        std::int64_t sum = n + x;
        std::int64_t q = sum / k, r = sum % k;
        if (r < 0) {
            r += k;
            --q;
        }
        return {static_cast<Letter>(r), q};
    }
    // Thread the cocycle right to left: phi(g1..gk, x) = phi(g1, g2..gk.x) ... phi(gk, x).
    const auto& w = as_word(p);
    Letter cur = x;
    std::deque<int> restriction;
    for (std::size_t i = w.size(); i-- > 0;) {
        const GeneratorRule& rule = sys.rule(w[i], cur);
        restriction.insert(restriction.begin(), rule.restriction.begin(), rule.restriction.end());
        cur = rule.image;
    }
    return {cur, std::vector<int>(restriction.begin(), restriction.end())};
}

Payload payload_inverse(const ActionSystem& sys, const Payload& p) {
    if (sys.kind() == ActionSystem::Kind::Odometer) return -std::get<std::int64_t>(p);
    std::vector<int> out;
    const auto& w = as_word(p);
    out.reserve(w.size());
    for (std::size_t i = w.size(); i-- > 0;) out.push_back(sys.sgen_inverse(w[i]));
    return out;
}

Payload payload_mul(const ActionSystem& sys, const Payload& a, const Payload& b) {
    if (sys.kind() == ActionSystem::Kind::Odometer)
        return std::get<std::int64_t>(a) + std::get<std::int64_t>(b);
    std::vector<int> out = as_word(a);
    const auto& wb = as_word(b);
    out.insert(out.end(), wb.begin(), wb.end());
    return out;
}

void require_same_system(const GroupElem& a, const GroupElem& b) {
    if (a.system() != b.system())
        throw std::invalid_argument("group elements from different systems");
}

}  // namespace

// ---------------------------------------------------------------------------
// ActionSystem

std::shared_ptr<const ActionSystem> ActionSystem::automaton(std::string name, int alphabet_size,
                                                            std::vector<GeneratorSpec> generators) {
    if (alphabet_size < 2) throw std::invalid_argument("ActionSystem: alphabet size must be >= 2");
    if (generators.empty()) throw std::invalid_argument("ActionSystem: no generators");
    auto sys = std::shared_ptr<ActionSystem>(new ActionSystem());
    sys->kind_ = Kind::Automaton;
    sys->name_ = std::move(name);
    sys->alphabet_size_ = alphabet_size;
    const int gcount = static_cast<int>(generators.size());
    for (auto& spec : generators) {
        if (static_cast<int>(spec.rules.size()) != alphabet_size)
            throw std::invalid_argument("ActionSystem: generator '" + spec.name +
                                        "' needs one rule per letter");
        std::vector<bool> hit(alphabet_size, false);
        for (const auto& rule : spec.rules) {
            if (rule.image < 0 || rule.image >= alphabet_size)
                throw std::invalid_argument("ActionSystem: rule image out of range");
            if (hit[rule.image])
                throw std::invalid_argument("ActionSystem: generator '" + spec.name +
                                            "' letter map is not a bijection");
            hit[rule.image] = true;
            for (int s : rule.restriction)
                if (s < 0 || s >= 2 * gcount)
                    throw std::invalid_argument("ActionSystem: restriction id out of range");
        }
        Gen gen;
        gen.name = std::move(spec.name);
        gen.rules = std::move(spec.rules);
        sys->gens_.push_back(std::move(gen));
    }
    // Synthesize inverse tables: g^-1 maps y -> x where g.x = y, with
    // restriction (g|_x)^-1.
    for (auto& gen : sys->gens_) {
        gen.inverse_rules.assign(alphabet_size, GeneratorRule{});
        for (Letter x = 0; x < alphabet_size; ++x) {
            const GeneratorRule& fwd = gen.rules[x];
            GeneratorRule inv;
            inv.image = x;
            inv.restriction.reserve(fwd.restriction.size());
            for (std::size_t i = fwd.restriction.size(); i-- > 0;)
                inv.restriction.push_back(sys->sgen_inverse(fwd.restriction[i]));
            gen.inverse_rules[fwd.image] = std::move(inv);
        }
    }
    return sys;
}

std::shared_ptr<const ActionSystem> ActionSystem::odometer(int base) {
    if (base < 2) throw std::invalid_argument("ActionSystem: odometer base must be >= 2");
    auto sys = std::shared_ptr<ActionSystem>(new ActionSystem());
    sys->kind_ = Kind::Odometer;
    sys->name_ = "odometer" + std::to_string(base);
    sys->alphabet_size_ = base;
    return sys;
}

ActionSystem::~ActionSystem() = default;

std::optional<std::size_t> ActionSystem::generator_index(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return i;
    return std::nullopt;
}

int ActionSystem::sgen_inverse(int s) const {
    const int g = static_cast<int>(gens_.size());
    return s < g ? s + g : s - g;
}

const GeneratorRule& ActionSystem::rule(int sgen, Letter x) const {
    const int g = static_cast<int>(gens_.size());
    if (sgen < g) return gens_[sgen].rules[x];
    return gens_[sgen - g].inverse_rules[x];
}

std::string ActionSystem::sgen_name(int s) const {
    const int g = static_cast<int>(gens_.size());
    return s < g ? gens_[s].name : gens_[s - g].name + "^-1";
}

SemanticContext& ActionSystem::semantics() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!semantics_) {
        semantics_ = std::make_unique<SemanticContext>(this);
        // Seed the registry so canonical representatives are the short,
        // human-readable ones regardless of later intern order.
        SystemPtr self = shared_from_this();
        semantics_->intern(GroupElem::identity(self));
        if (kind_ == Kind::Automaton)
            for (std::size_t i = 0; i < gens_.size(); ++i)
                semantics_->intern(GroupElem::word(self, {static_cast<int>(i)}));
    }
    return *semantics_;
}

// ---------------------------------------------------------------------------
// GroupElem

GroupElem GroupElem::identity(SystemPtr sys) {
    Payload p = identity_payload(*sys);
    return GroupElem{std::move(sys), std::move(p)};
}

GroupElem GroupElem::word(SystemPtr sys, std::vector<int> sgens) {
    if (sys->kind() != ActionSystem::Kind::Automaton)
        throw std::invalid_argument("GroupElem::word: not an automaton system");
    for (int s : sgens)
        if (s < 0 || s >= sys->sgen_count())
            throw std::invalid_argument("GroupElem::word: bad generator id");
    return GroupElem{std::move(sys), std::move(sgens)};
}

GroupElem GroupElem::shift(SystemPtr sys, std::int64_t n) {
    if (sys->kind() != ActionSystem::Kind::Odometer)
        throw std::invalid_argument("GroupElem::shift: not an odometer system");
    return GroupElem{std::move(sys), n};
}

GroupElem GroupElem::parse(SystemPtr sys, std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (sys->kind() == ActionSystem::Kind::Odometer) {
        if (text.empty() || text == "e") return identity(sys);
        return shift(sys, std::stoll(std::string(text)));
    }
    if (text.empty() || text == "e" || text == "1") return identity(sys);
    std::vector<int> sgens;
    auto push_token = [&](std::string_view tok) {
        bool inverse = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            inverse = true;
            tok.remove_suffix(3);
        }
        auto idx = sys->generator_index(tok);
        if (!idx) throw std::invalid_argument("unknown generator '" + std::string(tok) + "'");
        int s = static_cast<int>(*idx);
        sgens.push_back(inverse ? sys->sgen_inverse(s) : s);
    };
    if (text.find_first_of(" \t*") != std::string_view::npos) {
        std::string buf(text);
        for (char& c : buf)
            if (c == '*') c = ' ';
        std::istringstream in(buf);
        std::string tok;
        while (in >> tok) push_token(tok);
    } else if (sys->generator_index(text) ||
               (text.size() > 3 && text.substr(text.size() - 3) == "^-1")) {
        push_token(text);
    } else {
        // Single-letter generator names run together, e.g. "abc".
        for (char c : text) push_token(std::string_view(&c, 1));
    }
    return word(std::move(sys), std::move(sgens));
}

bool GroupElem::is_automaton() const {
    return std::holds_alternative<std::vector<int>>(payload_);
}

const std::vector<int>& GroupElem::sgens() const { return std::get<std::vector<int>>(payload_); }

std::int64_t GroupElem::shift_value() const { return std::get<std::int64_t>(payload_); }

bool GroupElem::trivial_repr() const {
    if (is_automaton()) return sgens().empty();
    return shift_value() == 0;
}

GroupElem GroupElem::inverse() const {
    return GroupElem{sys_, payload_inverse(*sys_, payload_)};
}

GroupElem operator*(const GroupElem& a, const GroupElem& b) {
    require_same_system(a, b);
    return GroupElem{a.sys_, payload_mul(*a.sys_, a.payload_, b.payload_)};
}

bool GroupElem::repr_equal(const GroupElem& o) const {
    return sys_ == o.sys_ && payload_ == o.payload_;
}

std::string GroupElem::to_string() const {
    if (!valid()) return "<invalid>";
    if (!is_automaton()) {
        std::int64_t n = shift_value();
        if (n == 0) return "e";
        return (n > 0 ? "+" : "") + std::to_string(n);
    }
    if (sgens().empty()) return "e";
    bool single = true;
    for (std::size_t i = 0; i < sys_->generator_count(); ++i)
        single = single && sys_->generator_name(i).size() == 1;
    std::string out;
    for (std::size_t i = 0; i < sgens().size(); ++i) {
        std::string name = sys_->sgen_name(sgens()[i]);
        bool plain = single && name.size() == 1;
        if (i && !plain) out += " ";
        out += name;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Letter / word / infinite-word actions

std::pair<Letter, GroupElem> act_letter(const GroupElem& g, Letter x) {
    auto [y, r] = act_letter_payload(*g.system(), g.is_automaton()
                                                      ? Payload{g.sgens()}
                                                      : Payload{g.shift_value()},
                                     x);
    if (g.is_automaton())
        return {y, GroupElem::word(g.system(), std::move(std::get<std::vector<int>>(r)))};
    return {y, GroupElem::shift(g.system(), std::get<std::int64_t>(r))};
}

std::pair<Word, GroupElem> act_word(const GroupElem& g, const Word& w) {
    GroupElem cur = g;
    Word out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto [y, r] = act_letter(cur, w[i]);
        out.push_back(y);
        cur = std::move(r);
    }
    return {out, cur};
}

InfWord act_infinite(const GroupElem& g, const InfWord& w, const Bounds& bounds) {
    SemanticContext& ctx = g.system()->semantics();
    GroupElem cur = g;
    Word out_pre;
    for (std::size_t i = 0; i < w.preperiod().size(); ++i) {
        auto [y, r] = act_letter(cur, w.preperiod()[i]);
        out_pre.push_back(y);
        cur = std::move(r);
    }
    // Along the tail, detect a repeat of (restriction class, period position).
    std::vector<Letter> tail_out;
    std::map<std::pair<int, std::size_t>, std::size_t> seen;
    std::size_t pos = 0;
    for (std::size_t step = 0;; ++step) {
        if (step > bounds.cycle_steps)
            throw UndecidedError("act_infinite: non-contracting trajectory (cycle bound exceeded)");
        int id = ctx.intern(cur, bounds);
        auto key = std::make_pair(id, pos);
        auto it = seen.find(key);
        if (it != seen.end()) {
            std::size_t start = it->second;
            Word pre = out_pre + Word{std::vector<Letter>(tail_out.begin(),
                                                          tail_out.begin() + start)};
            Word per{std::vector<Letter>(tail_out.begin() + start, tail_out.end())};
            return InfWord{pre, per};
        }
        seen.emplace(key, tail_out.size());
        auto [y, r] = act_letter(cur, w.period()[pos]);
        tail_out.push_back(y);
        cur = std::move(r);
        pos = (pos + 1) % w.period().size();
    }
}

// ---------------------------------------------------------------------------
// Semantic equality

bool SemanticContext::payload_equal(const Payload& a, const Payload& b, const Bounds& bounds) {
    if (sys_->kind() == ActionSystem::Kind::Odometer)
        return std::get<std::int64_t>(a) == std::get<std::int64_t>(b);
    const auto& wa = as_word(a);
    const auto& wb = as_word(b);
    if (wa == wb) return true;
    auto norm = [](const std::vector<int>& x, const std::vector<int>& y) {
        return x <= y ? std::make_pair(x, y) : std::make_pair(y, x);
    };
    auto root = norm(wa, wb);
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto it = equal_cache_.find(root); it != equal_cache_.end()) return it->second;

    // Pair bisimulation: the elements differ iff some reachable restriction
    // pair acts differently on a letter.
    std::set<std::pair<std::vector<int>, std::vector<int>>> visited{root};
    std::deque<std::pair<std::vector<int>, std::vector<int>>> queue{root};
    bool result = true;
    while (!queue.empty() && result) {
        auto [u, v] = queue.front();
        queue.pop_front();
        for (Letter x = 0; x < sys_->alphabet_size() && result; ++x) {
            auto [xu, ru] = act_letter_payload(*sys_, u, x);
            auto [xv, rv] = act_letter_payload(*sys_, v, x);
            if (xu != xv) {
                result = false;
                equal_cache_[norm(u, v)] = false;
                break;
            }
            auto& wu = std::get<std::vector<int>>(ru);
            auto& wv = std::get<std::vector<int>>(rv);
            if (wu == wv) continue;
            auto next = norm(wu, wv);
            if (auto it = equal_cache_.find(next); it != equal_cache_.end()) {
                if (!it->second) result = false;
                continue;
            }
            if (visited.insert(next).second) {
                if (visited.size() > bounds.pair_cache)
                    throw UndecidedError("elements_equal: undecided at pair-cache bound");
                queue.push_back(next);
            }
        }
    }
    equal_cache_[root] = result;
    if (result)
        for (const auto& p : visited) equal_cache_[p] = true;
    return result;
}

bool elements_equal(const GroupElem& g, const GroupElem& h, const Bounds& bounds) {
    require_same_system(g, h);
    Payload pg = g.is_automaton() ? Payload{g.sgens()} : Payload{g.shift_value()};
    Payload ph = h.is_automaton() ? Payload{h.sgens()} : Payload{h.shift_value()};
    return g.system()->semantics().payload_equal(pg, ph, bounds);
}

bool is_identity(const GroupElem& g, const Bounds& bounds) {
    return elements_equal(g, GroupElem::identity(g.system()), bounds);
}

bool is_fixed(const GroupElem& g, const Word& alpha) {
    return act_word(g, alpha).first == alpha;
}

bool is_strongly_fixed(const GroupElem& g, const Word& alpha, const Bounds& bounds) {
    auto [image, rest] = act_word(g, alpha);
    return image == alpha && is_identity(rest, bounds);
}

// ---------------------------------------------------------------------------
// SemanticContext

int SemanticContext::intern(const GroupElem& g, const Bounds& bounds) {
    Payload p = g.is_automaton() ? Payload{g.sgens()} : Payload{g.shift_value()};
    std::lock_guard<std::recursive_mutex> lock(mu_);
    for (std::size_t i = 0; i < reps_.size(); ++i)
        if (payload_equal(reps_[i], p, bounds)) return static_cast<int>(i);
    reps_.push_back(std::move(p));
    return static_cast<int>(reps_.size()) - 1;
}

GroupElem SemanticContext::rep(int id) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    const Payload& p = reps_.at(static_cast<std::size_t>(id));
    SystemPtr sys = sys_->shared_from_this();
    if (std::holds_alternative<std::int64_t>(p))
        return GroupElem::shift(std::move(sys), std::get<std::int64_t>(p));
    return GroupElem::word(std::move(sys), std::get<std::vector<int>>(p));
}

int SemanticContext::identity_id(const Bounds& bounds) {
    return intern(GroupElem::identity(sys_->shared_from_this()), bounds);
}

bool SemanticContext::is_identity_id(int id, const Bounds& bounds) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return payload_equal(reps_.at(static_cast<std::size_t>(id)), identity_payload(*sys_), bounds);
}

std::vector<std::pair<Letter, int>> SemanticContext::fixed_transitions(int id,
                                                                       const Bounds& bounds) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto it = transitions_.find(id); it != transitions_.end()) return it->second;
    std::vector<std::pair<Letter, int>> out;
    const Payload p = reps_.at(static_cast<std::size_t>(id));
    for (Letter x = 0; x < sys_->alphabet_size(); ++x) {
        auto [y, r] = act_letter_payload(*sys_, p, x);
        if (y != x) continue;
        GroupElem re = std::holds_alternative<std::int64_t>(r)
                           ? GroupElem::shift(sys_->shared_from_this(), std::get<std::int64_t>(r))
                           : GroupElem::word(sys_->shared_from_this(),
                                             std::get<std::vector<int>>(r));
        out.emplace_back(x, intern(re, bounds));
    }
    transitions_[id] = out;
    return out;
}

bool SemanticContext::has_strongly_fixed_word(int id, const Bounds& bounds) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (auto it = sfw_cache_.find(id); it != sfw_cache_.end()) return it->second;
    std::set<int> visited{id};
    std::deque<int> queue{id};
    bool found = false;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        if (is_identity_id(cur, bounds)) {
            found = true;
            break;
        }
        for (auto [x, nxt] : fixed_transitions(cur, bounds)) {
            (void)x;
            if (visited.insert(nxt).second) {
                if (visited.size() > bounds.nucleus)
                    throw UndecidedError("strongly-fixed search: bound exceeded");
                queue.push_back(nxt);
            }
        }
    }
    sfw_cache_[id] = found;
    if (!found)
        for (int v : visited) sfw_cache_[v] = false;
    return found;
}

// ---------------------------------------------------------------------------
// Nucleus

Nucleus compute_nucleus(const SystemPtr& sys, const Bounds& bounds) {
    SemanticContext& ctx = sys->semantics();
    auto contains = [](const std::vector<int>& list, int id) {
        return std::find(list.begin(), list.end(), id) != list.end();
    };
    auto check_bound = [&](const std::vector<int>& list) {
        if (list.size() > bounds.nucleus)
            throw UndecidedError("compute_nucleus: contraction not certified (bound exceeded)");
    };
    auto close_restrictions = [&](std::vector<int>& list) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            GroupElem g = ctx.rep(list[i]);
            for (Letter x = 0; x < sys->alphabet_size(); ++x) {
                int id = ctx.intern(act_letter(g, x).second, bounds);
                if (!contains(list, id)) {
                    list.push_back(id);
                    check_bound(list);
                }
            }
        }
    };

    std::vector<int> current{ctx.identity_id(bounds)};
    if (sys->kind() == ActionSystem::Kind::Odometer) {
        for (std::int64_t n : {std::int64_t{1}, std::int64_t{-1}}) {
            int id = ctx.intern(GroupElem::shift(sys, n), bounds);
            if (!contains(current, id)) current.push_back(id);
        }
    } else {
        for (std::size_t i = 0; i < sys->generator_count(); ++i) {
            int fwd = ctx.intern(GroupElem::word(sys, {static_cast<int>(i)}), bounds);
            if (!contains(current, fwd)) current.push_back(fwd);
        }
        for (std::size_t i = 0; i < sys->generator_count(); ++i) {
            int inv = ctx.intern(
                GroupElem::word(sys, {sys->sgen_inverse(static_cast<int>(i))}), bounds);
            if (!contains(current, inv)) current.push_back(inv);
        }
    }
    close_restrictions(current);

    for (int round = 0; round < 64; ++round) {
        std::vector<int> pool = current;
        for (int a : current) {
            for (int b : current) {
                GroupElem prod = ctx.rep(a) * ctx.rep(b);
                int id = ctx.intern(prod, bounds);
                if (!contains(pool, id)) {
                    pool.push_back(id);
                    check_bound(pool);
                }
            }
        }
        close_restrictions(pool);

        // Eventual range: vertices reachable from a cycle of the full
        // restriction graph on the pool.
        std::map<int, std::size_t> index;
        for (std::size_t i = 0; i < pool.size(); ++i) index[pool[i]] = i;
        std::vector<std::vector<std::size_t>> adj(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i) {
            GroupElem g = ctx.rep(pool[i]);
            for (Letter x = 0; x < sys->alphabet_size(); ++x) {
                int id = ctx.intern(act_letter(g, x).second, bounds);
                adj[i].push_back(index.at(id));
            }
        }
        // Tarjan SCC.
        std::vector<int> low(pool.size(), -1), num(pool.size(), -1), comp(pool.size(), -1);
        std::vector<bool> on_stack(pool.size(), false);
        std::vector<std::size_t> stack;
        int counter = 0, comp_count = 0;
        std::vector<std::size_t> call;
        std::vector<std::size_t> edge_pos(pool.size(), 0);
        for (std::size_t root = 0; root < pool.size(); ++root) {
            if (num[root] != -1) continue;
            call.push_back(root);
            while (!call.empty()) {
                std::size_t v = call.back();
                if (num[v] == -1) {
                    num[v] = low[v] = counter++;
                    stack.push_back(v);
                    on_stack[v] = true;
                }
                bool advanced = false;
                while (edge_pos[v] < adj[v].size()) {
                    std::size_t w = adj[v][edge_pos[v]];
                    if (num[w] == -1) {
                        ++edge_pos[v];
                        call.push_back(w);
                        advanced = true;
                        break;
                    }
                    if (on_stack[w]) low[v] = std::min(low[v], num[w]);
                    ++edge_pos[v];
                }
                if (advanced) continue;
                if (low[v] == num[v]) {
                    while (true) {
                        std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comp_count;
                        if (w == v) break;
                    }
                    ++comp_count;
                }
                call.pop_back();
                if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
            }
        }
        std::vector<bool> cyclic(pool.size(), false);
        std::vector<std::size_t> comp_size(static_cast<std::size_t>(comp_count), 0);
        for (std::size_t i = 0; i < pool.size(); ++i) ++comp_size[comp[i]];
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (comp_size[comp[i]] > 1) cyclic[i] = true;
            for (std::size_t w : adj[i])
                if (w == i) cyclic[i] = true;
        }
        std::vector<bool> keep = cyclic;
        std::deque<std::size_t> queue;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (keep[i]) queue.push_back(i);
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t w : adj[v])
                if (!keep[w]) {
                    keep[w] = true;
                    queue.push_back(w);
                }
        }
        std::vector<int> pruned;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (keep[i]) pruned.push_back(pool[i]);

        if (pruned == current) {
            Nucleus out;
            for (int id : current) out.elements.push_back(ctx.rep(id));
            return out;
        }
        current = std::move(pruned);
    }
    throw UndecidedError("compute_nucleus: closure did not stabilize");
}

// ---------------------------------------------------------------------------
// MSFW enumeration and the Hausdorff test

std::vector<Word> enumerate_msfw(const GroupElem& g, int max_len, const Bounds& bounds) {
    if (is_identity(g, bounds))
        throw std::invalid_argument("enumerate_msfw: defined for g != identity only");
    SemanticContext& ctx = g.system()->semantics();
    std::vector<Word> out;
    // DFS in letter order; stop a branch at the identity restriction, so no
    // emitted word has a strongly fixed proper prefix.
    struct Frame {
        int id;
        Word word;
    };
    std::vector<Frame> stack{{ctx.intern(g, bounds), Word{}}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        auto trans = ctx.fixed_transitions(f.id, bounds);
        // Push in reverse so letters pop in ascending order.
        std::vector<Frame> next;
        for (auto [x, id2] : trans) {
            Word w2 = f.word;
            w2.push_back(x);
            if (ctx.is_identity_id(id2, bounds)) {
                out.push_back(std::move(w2));
            } else if (static_cast<int>(w2.size()) < max_len) {
                next.push_back(Frame{id2, std::move(w2)});
            }
        }
        for (std::size_t i = next.size(); i-- > 0;) stack.push_back(std::move(next[i]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

HausdorffResult hausdorff_test(const SystemPtr& sys, const Bounds& bounds) {
    HausdorffResult res;
    try {
        Nucleus nuc = compute_nucleus(sys, bounds);
        SemanticContext& ctx = sys->semantics();
        const int eid = ctx.identity_id(bounds);
        for (const GroupElem& g : nuc.elements) {
            int gid = ctx.intern(g, bounds);
            if (gid == eid || ctx.is_identity_id(gid, bounds)) continue;
            // Nodes reachable from g along fixed letters, not expanding the
            // identity (a minimal strongly fixed word ends there).
            std::set<int> reach{gid};
            std::deque<int> queue{gid};
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                if (ctx.is_identity_id(v, bounds)) continue;
                for (auto [x, w] : ctx.fixed_transitions(v, bounds)) {
                    (void)x;
                    if (reach.insert(w).second) queue.push_back(w);
                    if (reach.size() > bounds.nucleus)
                        throw UndecidedError("hausdorff_test: reachable-set bound exceeded");
                }
            }
            // Nodes that can still reach the identity.
            std::set<int> to_e;
            for (int v : reach)
                if (ctx.has_strongly_fixed_word(v, bounds)) to_e.insert(v);
            // A cycle among useful non-identity nodes pumps the MSFW family.
            std::set<int> useful;
            for (int v : reach)
                if (to_e.count(v) && !ctx.is_identity_id(v, bounds)) useful.insert(v);
            // DFS cycle detection restricted to useful nodes.
            std::map<int, int> state;  // 0 unseen / 1 active / 2 done
            std::vector<std::pair<int, Letter>> path;
            std::vector<std::pair<GroupElem, Letter>> cycle;
            std::function<bool(int)> dfs = [&](int v) -> bool {
                state[v] = 1;
                for (auto [x, w] : ctx.fixed_transitions(v, bounds)) {
                    if (!useful.count(w)) continue;
                    if (state[w] == 1) {
                        // Extract the cycle from the active path.
                        path.emplace_back(v, x);
                        std::size_t start = 0;
                        while (path[start].first != w) ++start;
                        for (std::size_t i = start; i < path.size(); ++i)
                            cycle.emplace_back(ctx.rep(path[i].first), path[i].second);
                        return true;
                    }
                    if (state[w] == 0) {
                        path.emplace_back(v, x);
                        if (dfs(w)) return true;
                        path.pop_back();
                    }
                }
                state[v] = 2;
                return false;
            };
            if (useful.count(gid) ? dfs(gid) : false) {
                res.verdict = HausdorffResult::Verdict::NonHausdorff;
                res.witness = g;
                res.cycle = cycle;
                // Shortest exit to the identity from the cycle head.
                int head = ctx.intern(cycle.front().first, bounds);
                std::map<int, std::pair<int, Letter>> parent;
                std::deque<int> bfs{head};
                std::set<int> seen{head};
                int goal = -1;
                while (!bfs.empty() && goal < 0) {
                    int v = bfs.front();
                    bfs.pop_front();
                    for (auto [x, w] : ctx.fixed_transitions(v, bounds)) {
                        if (!seen.insert(w).second) continue;
                        parent[w] = {v, x};
                        if (ctx.is_identity_id(w, bounds)) {
                            goal = w;
                            break;
                        }
                        bfs.push_back(w);
                    }
                }
                if (goal >= 0) {
                    std::vector<std::pair<GroupElem, Letter>> exit;
                    for (int v = goal; v != head;) {
                        auto [p, x] = parent.at(v);
                        exit.emplace_back(ctx.rep(p), x);
                        v = p;
                    }
                    std::reverse(exit.begin(), exit.end());
                    res.exit_path = std::move(exit);
                }
                res.detail = "nucleus element " + g.to_string() +
                             " has infinitely many minimal strongly fixed words";
                auto family = enumerate_msfw(g, 12, bounds);
                if (!family.empty()) {
                    res.detail += " (";
                    for (std::size_t i = 0; i < family.size() && i < 3; ++i) {
                        if (i) res.detail += ", ";
                        res.detail += family[i].to_string();
                    }
                    res.detail += ", ...)";
                }
                return res;
            }
        }
        res.verdict = HausdorffResult::Verdict::Hausdorff;
        res.detail = "every nucleus element has finitely many minimal strongly fixed words";
        return res;
    } catch (const UndecidedError& e) {
        res.verdict = HausdorffResult::Verdict::Undecided;
        res.detail = e.what();
        return res;
    }
}

// ---------------------------------------------------------------------------
// Faithfulness probes

FaithfulnessResult faithfulness_probe(const SystemPtr& sys, int depth, const Bounds& bounds) {
    (void)depth;
    FaithfulnessResult res;
    try {
        if (sys->kind() == ActionSystem::Kind::Automaton) {
            for (std::size_t i = 0; i < sys->generator_count(); ++i) {
                GroupElem g = GroupElem::word(sys, {static_cast<int>(i)});
                if (is_identity(g, bounds)) {
                    res.verdict = FaithfulnessResult::Verdict::NotFaithful;
                    res.witness = g;
                    res.detail = "generator '" + sys->generator_name(i) + "' acts as the identity";
                    return res;
                }
            }
        }
        Nucleus nuc = compute_nucleus(sys, bounds);
        // Nucleus representatives are pairwise distinct by construction; a
        // successful closure certifies the generators act faithfully as tree
        // automorphisms.
        res.verdict = FaithfulnessResult::Verdict::Faithful;
        res.detail = "nucleus of " + std::to_string(nuc.elements.size()) +
                     " pairwise distinct elements certified";
        return res;
    } catch (const UndecidedError& e) {
        res.verdict = FaithfulnessResult::Verdict::Undecided;
        res.detail = e.what();
        return res;
    }
}

OmegaFaithfulResult omega_faithful_probe(const SystemPtr& sys, const std::vector<GroupElem>& F,
                                         const InfWord& x, int depth, const Bounds& bounds) {
    if (F.empty()) throw std::invalid_argument("omega_faithful_probe: empty family");
    for (const GroupElem& f : F) {
        if (f.system() != sys)
            throw std::invalid_argument("omega_faithful_probe: element from another system");
        if (is_identity(f, bounds))
            throw std::invalid_argument("omega_faithful_probe: family must exclude the identity");
    }
    SemanticContext& ctx = sys->semantics();

    // Walk prefixes of x, keeping the restriction of every f.  Reject inputs
    // where some prefix leaves FW_f \ SFW_f (the probe would be vacuous).
    std::vector<GroupElem> restrictions = F;
    struct State {
        std::vector<int> ids;  // sorted restriction multiset
        std::size_t pos;
        bool operator<(const State& o) const { return std::tie(ids, pos) < std::tie(o.ids, o.pos); }
    };
    std::map<State, std::size_t> seen;
    std::vector<State> trace;
    std::size_t pos = 0;
    std::size_t pre_left = x.preperiod().size();
    std::size_t cycle_start = 0;
    for (std::size_t m = 0;; ++m) {
        if (m > bounds.cycle_steps)
            throw UndecidedError("omega_faithful_probe: prefix walk exceeded cycle bound");
        State st;
        for (const GroupElem& r : restrictions) {
            if (is_identity(r, bounds))
                throw std::invalid_argument(
                    "omega_faithful_probe: some prefix of x is strongly fixed (vacuous input)");
            st.ids.push_back(ctx.intern(r, bounds));
        }
        std::sort(st.ids.begin(), st.ids.end());
        st.pos = pre_left > 0 ? static_cast<std::size_t>(-1) - m : pos;  // preperiod states unique
        if (pre_left == 0) {
            auto it = seen.find(st);
            if (it != seen.end()) {
                cycle_start = it->second;
                break;
            }
            seen.emplace(st, m);
        }
        trace.push_back(st);
        Letter next = x.at(m);
        for (GroupElem& r : restrictions) {
            auto [y, rr] = act_letter(r, next);
            if (y != next)
                throw std::invalid_argument(
                    "omega_faithful_probe: x is not fixed by the whole family (vacuous input)");
            r = std::move(rr);
        }
        if (pre_left > 0) --pre_left;
        else pos = (pos + 1) % x.period().size();
    }

    // For each prefix state, search for a word moved by every restriction.
    auto escapes = [&](const State& st) -> bool {
        std::deque<Word> queue{Word{}};
        while (!queue.empty()) {
            Word w = std::move(queue.front());
            queue.pop_front();
            if (!w.empty()) {
                bool moved_by_all = true;
                for (int id : st.ids) {
                    if (act_word(ctx.rep(id), w).first == w) {
                        moved_by_all = false;
                        break;
                    }
                }
                if (moved_by_all) return true;
            }
            if (static_cast<int>(w.size()) < depth)
                for (Letter a = 0; a < sys->alphabet_size(); ++a) {
                    Word w2 = w;
                    w2.push_back(a);
                    queue.push_back(std::move(w2));
                }
        }
        return false;
    };
    std::vector<bool> ok(trace.size());
    for (std::size_t m = 0; m < trace.size(); ++m) ok[m] = escapes(trace[m]);

    OmegaFaithfulResult res;
    bool cycle_all_ok = true, cycle_all_fail = true;
    for (std::size_t m = cycle_start; m < trace.size(); ++m) {
        cycle_all_ok = cycle_all_ok && ok[m];
        cycle_all_fail = cycle_all_fail && !ok[m];
    }
    if (cycle_all_ok) {
        std::size_t n = cycle_start;
        while (n > 0 && ok[n - 1]) --n;
        res.verdict = OmegaFaithfulResult::Verdict::HoldsAt;
        res.n = static_cast<int>(n);
        res.detail = "every prefix from length " + std::to_string(n) +
                     " admits a word moved by all restrictions (restriction states cycle)";
        return res;
    }
    bool all_fail = cycle_all_fail;
    for (std::size_t m = 0; m < cycle_start && all_fail; ++m) all_fail = all_fail && !ok[m];
    if (all_fail) {
        res.verdict = OmegaFaithfulResult::Verdict::FailureWitness;
        res.detail = "at every tested prefix each candidate word to depth " +
                     std::to_string(depth) +
                     " is fixed by some restriction, and the restriction multiset cycles";
        return res;
    }
    res.verdict = OmegaFaithfulResult::Verdict::Undecided;
    res.detail = "mixed escape results within the restriction cycle at depth bound";
    return res;
}

}  // namespace gca
