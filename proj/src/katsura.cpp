#include "gca/katsura.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace gca {

namespace {

int two_valuation(std::int64_t l) {
    int v = 0;
    while (l % 2 == 0) {
        l /= 2;
        ++v;
    }
    return v;
}

}  // namespace

std::string LatticeClass::to_string() const {
    return odd ? "Odd" : "Pow2(" + std::to_string(two_power) + ")";
}

// ---------------------------------------------------------------------------
// Construction

KatsuraTriple KatsuraTriple::from_matrices(IntMatrix a, IntMatrix b) {
    KatsuraTriple t;
    t.n_ = static_cast<int>(a.size());
    if (t.n_ == 0) throw std::invalid_argument("KatsuraTriple: empty matrix");
    if (b.size() != a.size()) throw std::invalid_argument("KatsuraTriple: size mismatch");
    for (int i = 0; i < t.n_; ++i) {
        if (static_cast<int>(a[i].size()) != t.n_ || static_cast<int>(b[i].size()) != t.n_)
            throw std::invalid_argument("KatsuraTriple: matrices must be square");
        for (int j = 0; j < t.n_; ++j) {
            if (a[i][j] < 0) throw std::invalid_argument("KatsuraTriple: A entries must be >= 0");
            if (a[i][j] == 0 && b[i][j] != 0)
                throw std::invalid_argument(
                    "KatsuraTriple: B entry on a missing edge family (A entry 0)");
        }
    }
    // No sources: every vertex receives an edge (some A row is nonzero).
    for (int v = 0; v < t.n_; ++v) {
        bool receives = false;
        for (int i = 0; i < t.n_; ++i) receives = receives || a[v][i] > 0;
        if (!receives)
            throw std::invalid_argument("KatsuraTriple: vertex " + std::to_string(v + 1) +
                                        " receives no edge");
    }
    t.a_ = std::move(a);
    t.b_ = std::move(b);
    t.odometer_shape_ = true;
    for (int i = 0; i < t.n_; ++i)
        for (int j = 0; j < t.n_; ++j) {
            if (t.a_[i][j] == 0) continue;
            if (i == j && !(t.a_[i][j] == 2 && t.b_[i][j] == 1)) t.odometer_shape_ = false;
            if (i != j && t.a_[i][j] != 1) t.odometer_shape_ = false;
        }
    t.by_vertex_range_.assign(t.n_, {});
    // Family e_{ij}: source i, range j, A_{ji} parallel edges.
    for (int i = 0; i < t.n_; ++i)
        for (int j = 0; j < t.n_; ++j)
            for (int k = 0; k < t.a_[j][i]; ++k) {
                t.by_vertex_range_[j].push_back(static_cast<Letter>(t.edges_.size()));
                t.edges_.push_back(KatsuraEdge{i, j, k});
            }
    return t;
}

KatsuraTriple KatsuraTriple::paper() {
    KatsuraTriple t = from_matrices({{2, 1, 0}, {1, 2, 1}, {1, 1, 2}},
                                    {{1, 2, 0}, {2, 1, 2}, {0, 2, 1}});
    t.validate_paper_table();
    return t;
}

void KatsuraTriple::validate_paper_table() const {
    struct Line {
        const char* edge;
        const char* image;
        std::int64_t phi;
    };
    const Line table[] = {
        {"e11^0", "e11^1", 0}, {"e22^0", "e22^1", 0}, {"e33^0", "e33^1", 0},
        {"e11^1", "e11^0", 1}, {"e22^1", "e22^0", 1}, {"e33^1", "e33^0", 1},
        {"e12", "e12", 2},     {"e21", "e21", 2},     {"e32", "e32", 2},
        {"e23", "e23", 2},     {"e13", "e13", 0},
    };
    for (const Line& line : table) {
        auto [image, phi] = act(1, parse_edge(line.edge));
        if (edge_name(image) != line.image || phi != line.phi)
            throw std::logic_error(std::string("Katsura action table mismatch at ") + line.edge);
    }
}

// ---------------------------------------------------------------------------
// Edges and paths

KatsuraEdge KatsuraTriple::edge(Letter letter) const {
    return edges_.at(static_cast<std::size_t>(letter));
}

std::optional<Letter> KatsuraTriple::edge_letter(int source, int range, int index) const {
    for (std::size_t l = 0; l < edges_.size(); ++l)
        if (edges_[l].source == source && edges_[l].range == range && edges_[l].index == index)
            return static_cast<Letter>(l);
    return std::nullopt;
}

std::string KatsuraTriple::edge_name(Letter letter) const {
    const KatsuraEdge& e = edge(letter);
    std::string out = "e" + std::to_string(e.source + 1) + std::to_string(e.range + 1);
    if (a_[e.range][e.source] > 1) out += "^" + std::to_string(e.index);
    return out;
}

Letter KatsuraTriple::parse_edge(const std::string& name) const {
    if (name.size() < 3 || name[0] != 'e') throw std::invalid_argument("bad edge name " + name);
    int i = name[1] - '1';
    int j = name[2] - '1';
    int index = 0;
    if (name.size() > 4 && name[3] == '^') index = std::stoi(name.substr(4));
    auto letter = edge_letter(i, j, index);
    if (!letter) throw std::invalid_argument("no such edge " + name);
    return *letter;
}

bool KatsuraTriple::is_loop(Letter letter) const {
    const KatsuraEdge& e = edge(letter);
    return e.source == e.range;
}

bool KatsuraTriple::is_e13(Letter letter) const {
    // Any family whose B entry is zero kills the cocycle; in the worked
    // example that is exactly e13.
    const KatsuraEdge& e = edge(letter);
    return b_[e.range][e.source] == 0 && e.source != e.range;
}

bool KatsuraTriple::is_path(const Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0 || w[i] >= edge_count()) return false;
        if (i + 1 < w.size() && edge(w[i]).source != edge(w[i + 1]).range) return false;
    }
    return true;
}

bool KatsuraTriple::is_infinite_path(const InfWord& w) const {
    Word head = w.prefix(w.preperiod().size() + 2 * w.period().size());
    return is_path(head);
}

std::vector<Letter> KatsuraTriple::edges_into(int vertex) const {
    return by_vertex_range_.at(static_cast<std::size_t>(vertex));
}

// ---------------------------------------------------------------------------
// Action

std::pair<Letter, std::int64_t> KatsuraTriple::act(std::int64_t m, Letter e) const {
    const KatsuraEdge& ed = edge(e);
    std::int64_t a = a_[ed.range][ed.source];
    std::int64_t b = b_[ed.range][ed.source];
    auto [r, q] = katsura_edge_action(m, a, b, ed.index);
    return {*edge_letter(ed.source, ed.range, static_cast<int>(r)), q};
}

std::pair<Word, std::int64_t> KatsuraTriple::act_path(std::int64_t m, const Word& path) const {
    if (!is_path(path)) throw std::invalid_argument("act_path: not a path");
    Word out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        auto [image, q] = act(m, path[i]);
        out.push_back(image);
        m = q;
    }
    return {out, m};
}

InfWord KatsuraTriple::act_infinite(std::int64_t m, const InfWord& path,
                                    std::size_t bound) const {
    if (!is_infinite_path(path)) throw std::invalid_argument("act_infinite: not a path");
    Word out_pre;
    for (std::size_t i = 0; i < path.preperiod().size(); ++i) {
        auto [image, q] = act(m, path.preperiod()[i]);
        out_pre.push_back(image);
        m = q;
    }
    std::vector<Letter> tail_out;
    std::map<std::pair<std::int64_t, std::size_t>, std::size_t> seen;
    // Cocycle values at each return to tail position 0, for the monotone
    // shortcut when the cocycle doubles along a letterwise-fixed period.
    std::optional<std::int64_t> last_pass;
    bool last_period_fixed = true;
    std::size_t pos = 0;
    for (std::size_t step = 0;; ++step) {
        if (step > bound)
            throw UndecidedError("act_infinite: cocycle trajectory did not stabilize");
        if (pos == 0 && step > 0) {
            if (odometer_shape_ && last_pass && last_period_fixed && *last_pass != 0 &&
                m % *last_pass == 0) {
                std::int64_t ratio = m / *last_pass;
                bool power_of_two = ratio > 0 && (ratio & (ratio - 1)) == 0;
                if (power_of_two) {
                    // Future passes only gain 2-adic valuation: the whole
                    // tail stays letterwise fixed.
                    std::size_t start = tail_out.size() - path.period().size();
                    Word pre = out_pre + Word{std::vector<Letter>(tail_out.begin(),
                                                                  tail_out.begin() + start)};
                    return InfWord{pre, path.period()};
                }
            }
            last_pass = m;
            last_period_fixed = true;
        }
        auto key = std::make_pair(m, pos);
        if (auto it = seen.find(key); it != seen.end()) {
            std::size_t start = it->second;
            Word pre = out_pre +
                       Word{std::vector<Letter>(tail_out.begin(), tail_out.begin() + start)};
            Word per{std::vector<Letter>(tail_out.begin() + start, tail_out.end())};
            return InfWord{pre, per};
        }
        seen.emplace(key, tail_out.size());
        Letter x = path.period()[pos];
        auto [image, q] = act(m, x);
        if (image != x) last_period_fixed = false;
        tail_out.push_back(image);
        m = q;
        pos = (pos + 1) % path.period().size();
    }
}

// ---------------------------------------------------------------------------
// Fixed paths

KatsFixed KatsuraTriple::fixed(std::int64_t l, const InfWord& x) const {
    if (l == 0) throw std::invalid_argument("fixed: l must be nonzero");
    if (!odometer_shape_)
        throw std::invalid_argument("fixed: 2-adic lattice analysis needs the odometer shape");
    if (!is_infinite_path(x)) throw std::invalid_argument("fixed: not a path");
    // Budget automaton: E = 2-adic valuation headroom of the cocycle.  A
    // non-loop letter doubles the cocycle (E += 1) unless it kills it (then
    // the rest of the path is fixed); a loop letter requires divisibility
    // (E -= 1, never below zero).
    std::int64_t budget = two_valuation(l);
    std::map<std::size_t, std::int64_t> first_visit;  // period position -> budget
    std::size_t pos_abs = 0;
    for (;;) {
        if (pos_abs >= x.preperiod().size()) {
            std::size_t p = (pos_abs - x.preperiod().size()) % x.period().size();
            auto it = first_visit.find(p);
            if (it != first_visit.end()) {
                if (budget >= it->second) return KatsFixed::Fixed;  // monotone from here on
                it->second = budget;  // strictly decreasing: keep walking to the failure
            } else {
                first_visit.emplace(p, budget);
            }
        }
        Letter e = x.at(pos_abs);
        if (is_e13(e)) return KatsFixed::Fixed;  // cocycle zero: fixed from here on
        if (is_loop(e)) {
            if (budget <= 0) return KatsFixed::NotFixed;
            --budget;
        } else {
            ++budget;
        }
        ++pos_abs;
    }
}

bool KatsuraTriple::trivially_fixed(std::int64_t l, const InfWord& x) const {
    if (fixed(l, x) != KatsFixed::Fixed) return false;
    for (std::size_t i = 0; i < x.preperiod().size(); ++i)
        if (is_e13(x.preperiod()[i])) return true;
    for (std::size_t i = 0; i < x.period().size(); ++i)
        if (is_e13(x.period()[i])) return true;
    return false;
}

LatticeClass KatsuraTriple::lattice_reduce(std::int64_t l) {
    if (l == 0) throw std::invalid_argument("lattice_reduce: l must be nonzero");
    int v = two_valuation(l);
    return LatticeClass{v == 0, v};
}

// ---------------------------------------------------------------------------
// Condition (S)

namespace {

// Deterministic eventually periodic sample paths with range vertex v.
std::vector<InfWord> sample_paths(const KatsuraTriple& t, int vertex, int count,
                                  unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<InfWord> out;
    auto next_edges = [&](int source_needed) {
        std::vector<Letter> opts;
        for (Letter e = 0; e < t.edge_count(); ++e)
            if (t.edge(e).range == source_needed) opts.push_back(e);
        return opts;
    };
    int guard = 0;
    while (static_cast<int>(out.size()) < count && ++guard < count * 20) {
        std::uniform_int_distribution<int> pre_len(0, 5);
        std::vector<Letter> pre;
        int cur = vertex;  // range of the next edge
        int l = pre_len(rng);
        bool ok = true;
        for (int i = 0; i < l; ++i) {
            auto opts = next_edges(cur);
            if (opts.empty()) {
                ok = false;
                break;
            }
            Letter e = opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)];
            pre.push_back(e);
            cur = t.edge(e).source;
        }
        if (!ok) continue;
        // Walk until a vertex repeats; the segment between visits is a cycle.
        std::vector<Letter> walk;
        std::vector<int> verts{cur};
        int wcur = cur;
        std::size_t cycle_start = 0;
        for (int i = 0; i < 24; ++i) {
            auto opts = next_edges(wcur);
            if (opts.empty()) {
                ok = false;
                break;
            }
            Letter e = opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)];
            walk.push_back(e);
            wcur = t.edge(e).source;
            auto it = std::find(verts.begin(), verts.end(), wcur);
            if (it != verts.end()) {
                cycle_start = static_cast<std::size_t>(it - verts.begin());
                break;
            }
            verts.push_back(wcur);
        }
        if (!ok || walk.empty()) continue;
        std::vector<Letter> full_pre = pre;
        full_pre.insert(full_pre.end(), walk.begin(), walk.begin() + cycle_start);
        std::vector<Letter> period(walk.begin() + cycle_start, walk.end());
        if (period.empty()) continue;
        InfWord candidate{Word{full_pre}, Word{period}};
        if (!t.is_infinite_path(candidate)) continue;
        out.push_back(std::move(candidate));
    }
    return out;
}

}  // namespace

ConditionSResult KatsuraTriple::condition_s(const std::vector<std::int64_t>& ls,
                                            int vertex) const {
    if (ls.empty()) throw std::invalid_argument("condition_s: empty set");
    if (vertex < 0 || vertex >= n_) throw std::invalid_argument("condition_s: bad vertex");
    std::set<std::int64_t> distinct(ls.begin(), ls.end());
    if (distinct.size() != ls.size()) throw std::invalid_argument("condition_s: repeated l");
    for (std::int64_t l : ls)
        if (l == 0) throw std::invalid_argument("condition_s: l must be nonzero");

    if (!odometer_shape_)
        throw std::invalid_argument("condition_s: 2-adic lattice analysis needs the odometer shape");

    ConditionSResult res;
    int k = 0;
    int max_pow = 0, min_pow = 1 << 30;
    for (std::int64_t l : ls) {
        LatticeClass cls = lattice_reduce(l);
        if (cls.odd) {
            ++k;
        } else {
            max_pow = std::max(max_pow, cls.two_power);
            min_pow = std::min(min_pow, cls.two_power);
        }
        res.trace.push_back("l = " + std::to_string(l) + ": class " + cls.to_string() +
                            " (F_l = F_" + (cls.odd ? "1" : std::to_string(1ll << cls.two_power)) +
                            ", TF_l likewise)");
    }
    const int n = static_cast<int>(ls.size());
    std::int64_t small_rep, big_rep;
    if (k == n) {
        res.case_name = "k = n";
        res.reduction = "F_1 \\ TF_1";
        res.interior = "interior(union F_l) = TF_1";
        small_rep = 1;
        big_rep = 1;
    } else if (k == 0) {
        res.case_name = "k = 0";
        res.reduction = "F_" + std::to_string(1ll << min_pow) + " \\ TF_" +
                        std::to_string(1ll << max_pow);
        res.interior = "interior(union F_l) = TF_" + std::to_string(1ll << max_pow);
        small_rep = 1ll << min_pow;
        big_rep = 1ll << max_pow;
    } else {
        res.case_name = "1 <= k < n";
        res.reduction = "F_1 \\ TF_" + std::to_string(1ll << max_pow);
        res.interior = "interior(union F_l) = TF_" + std::to_string(1ll << max_pow);
        small_rep = 1;
        big_rep = 1ll << max_pow;
    }
    res.trace.push_back("intersection of F_l \\ TF_l = " + res.reduction);
    res.trace.push_back(res.interior + " (effectiveness: TF = interior of F)");
    res.trace.push_back(
        "x in " + res.reduction + " implies x not in TF_" +
        std::to_string(big_rep) + ", hence x outside the interior of the union");

    // Spot verification on sampled eventually periodic paths.
    auto samples = sample_paths(*this, vertex, 40, 12345u);
    for (const InfWord& x : samples) {
        bool lhs = true;
        for (std::int64_t l : ls)
            lhs = lhs && fixed(l, x) == KatsFixed::Fixed && !trivially_fixed(l, x);
        bool rhs = fixed(small_rep, x) == KatsFixed::Fixed && !trivially_fixed(big_rep, x) &&
                   fixed(big_rep, x) == KatsFixed::Fixed;
        // The reduction identity on this sample.
        if (lhs != rhs) {
            res.satisfied = false;
            res.trace.push_back("reduction identity failed on sample " + x.to_string());
            return res;
        }
        // Lattice claims F_l = F_{reduced class}.
        for (std::int64_t l : ls) {
            LatticeClass cls = lattice_reduce(l);
            std::int64_t rep = cls.odd ? 1 : (1ll << cls.two_power);
            if ((fixed(l, x) == KatsFixed::Fixed) != (fixed(rep, x) == KatsFixed::Fixed) ||
                trivially_fixed(l, x) != trivially_fixed(rep, x)) {
                res.satisfied = false;
                res.trace.push_back("lattice identity failed on sample " + x.to_string());
                return res;
            }
        }
        // Interior escape: when x is non-trivially fixed by the family, every
        // cylinder around it contains a path moved by the witnesses.
        if (lhs) {
            for (std::size_t p = 1; p <= 4; ++p) {
                Word mu = x.prefix(p);
                int end = edge(mu[mu.size() - 1]).source;
                std::optional<Letter> loop;
                for (Letter e = 0; e < edge_count(); ++e)
                    if (is_loop(e) && edge(e).range == end && edge(e).index == 0) loop = e;
                if (!loop) continue;
                InfWord y = mu + InfWord::constant(*loop);
                if (fixed(ls.front(), y) == KatsFixed::Fixed) {
                    res.satisfied = false;
                    res.trace.push_back("interior escape failed on sample " + y.to_string());
                    return res;
                }
            }
        }
        ++res.samples_checked;
    }
    return res;
}

// ---------------------------------------------------------------------------
// MSFW of the generator and the report

std::vector<Word> KatsuraTriple::msfw_one(int max_len) const {
    std::vector<Word> out;
    // DFS over paths threading the cocycle of 1; emit at the first zero
    // cocycle (minimality), prune unfixed letters.
    struct Frame {
        Word path;
        std::int64_t m;
        int source;  // source vertex of the last edge, -1 for the empty path
    };
    std::vector<Frame> stack{{Word{}, 1, -1}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (static_cast<int>(f.path.size()) >= max_len) continue;
        for (Letter e = edge_count(); e-- > 0;) {
            if (f.source >= 0 && edge(e).range != f.source) continue;
            auto [image, q] = act(f.m, e);
            if (image != e) continue;
            Word next = f.path;
            next.push_back(e);
            if (q == 0) {
                out.push_back(std::move(next));
            } else {
                stack.push_back(Frame{std::move(next), q, edge(e).source});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

KatsuraReport KatsuraTriple::report(int msfw_len, int condition_s_bound) const {
    msfw_len = std::min(msfw_len, 9);
    KatsuraReport rep;
    // Re-derive a few action rows from the matrix entries as a self-check.
    rep.table_validated = true;
    for (Letter e = 0; e < edge_count(); ++e)
        for (std::int64_t m : {std::int64_t{1}, std::int64_t{-1}, std::int64_t{5}}) {
            auto [image, q] = act(m, e);
            const KatsuraEdge& ed = edge(e);
            std::int64_t a = a_[ed.range][ed.source], b = b_[ed.range][ed.source];
            if (m * b + ed.index != q * a + edge(image).index) rep.table_validated = false;
        }

    // Irreducibility via reachability both ways in the family digraph.
    auto reachable = [&](bool forward) {
        std::set<int> seen{0};
        std::deque<int> queue{0};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (Letter e = 0; e < edge_count(); ++e) {
                const KatsuraEdge& ed = edge(e);
                int from = forward ? ed.source : ed.range;
                int to = forward ? ed.range : ed.source;
                if (from == v && seen.insert(to).second) queue.push_back(to);
            }
        }
        return seen.size() == static_cast<std::size_t>(n_);
    };
    rep.irreducible = reachable(true) && reachable(false);
    rep.minimal = rep.irreducible;

    auto witnesses = msfw_one(msfw_len);
    for (const Word& w : witnesses) {
        std::string name;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) name += " ";
            name += edge_name(w[i]);
        }
        rep.msfw_witnesses.push_back(std::move(name));
    }
    auto shorter = msfw_one(std::max(1, msfw_len - 2));
    rep.hausdorff = !(witnesses.size() > shorter.size() && witnesses.size() >= 2);

    rep.effectiveness_note =
        "non-trivially fixed paths avoid the zero-cocycle family, so every cylinder "
        "around them contains a moved path: the groupoid is effective";

    rep.condition_s_all_satisfied = true;
    std::vector<std::int64_t> pool;
    for (std::int64_t l = 1; l <= condition_s_bound; ++l) {
        pool.push_back(l);
        pool.push_back(-l);
    }
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i; j < pool.size(); ++j) {
            std::vector<std::int64_t> set;
            set.push_back(pool[i]);
            if (j != i) set.push_back(pool[j]);
            for (int v = 0; v < n_; ++v) {
                try {
                    auto res = condition_s(set, v);
                    ++rep.condition_s_sets;
                    rep.condition_s_all_satisfied =
                        rep.condition_s_all_satisfied && res.satisfied;
                } catch (const std::invalid_argument&) {
                    rep.condition_s_all_satisfied = false;
                }
            }
        }

    if (rep.minimal && rep.condition_s_all_satisfied) {
        rep.conclusion =
            "minimal, effective, condition (S) verified on all tested sets; every compact "
            "open set is regular open and the Steinberg algebras over every field are simple";
        if (!rep.hausdorff) rep.conclusion += " (groupoid non-Hausdorff)";
    } else {
        rep.conclusion = "simplicity certificate incomplete for these matrices";
    }
    return rep;
}

}  // namespace gca
