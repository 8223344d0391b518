#ifndef CUBIC_MW_DECOMPOSE_HPP
#define CUBIC_MW_DECOMPOSE_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "enumerate.hpp"
#include "parallel.hpp"

namespace cubic_mw {

// ---------------------------------------------------------------------------
// Composition table: the partial magma (i, j) -> k restricted to V_H
// ---------------------------------------------------------------------------

enum class Outcome : std::uint8_t { InVH, OutsideVH, Undefined };

struct PairOutcome {
    Outcome kind = Outcome::OutsideVH;
    std::size_t rank = 0;  // valid for InVH
};

/// All pairwise compositions and tangent-section rows of a registry.
///
/// Only InVH and Undefined entries are stored (per row, sorted by partner);
/// any pair absent from a row composes to a point outside V_H.
class CompositionTable {
   public:
    explicit CompositionTable(PointRegistry registry, unsigned threads = 1) : reg_(std::move(registry)) {
        const std::size_t n = reg_.size();
        rows_.resize(n + 1);
        tangent_.resize(n + 1);

        std::vector<std::vector<BigInt>> grads(n + 1);
        for (std::size_t i = 1; i <= n; ++i) grads[i] = gradient(reg_.surface().form(), reg_.at(i).point);

        std::atomic<std::size_t> next{1};
        auto worker = [&] {
            for (std::size_t i = next++; i <= n; i = next++) {
                const auto& x = reg_.at(i).point;
                for (std::size_t j = i + 1; j <= n; ++j) {
                    try {
                        const ProjPoint z = compose_points(reg_.surface().form(), x, reg_.at(j).point);
                        if (const auto k = reg_.rank_of(z)) rows_[i].push_back({static_cast<std::uint32_t>(j), static_cast<std::int32_t>(*k)});
                    } catch (const Error& e) {
                        if (e.code() != ErrorCode::LineOnSurface) throw;
                        rows_[i].push_back({static_cast<std::uint32_t>(j), kUndefined});
                    }
                }
                for (std::size_t j = 1; j <= n; ++j) {
                    if (j != i && dot(grads[i], reg_.at(j).point.coords()) == 0) tangent_[i].push_back(j);
                }
            }
        };
        detail::run_parallel(worker, threads);
    }

    const PointRegistry& registry() const noexcept { return reg_; }
    std::size_t size() const noexcept { return reg_.size(); }

    PairOutcome outcome(std::size_t i, std::size_t j) const {
        if (i == j) throw Error(ErrorCode::EqualPoints, "table has no diagonal; use tangent_row");
        if (i > j) std::swap(i, j);
        const auto& row = rows_.at(i);
        const auto it = std::lower_bound(row.begin(), row.end(), j, [](const Entry& e, std::size_t v) { return e.partner < v; });
        if (it == row.end() || it->partner != j) return {Outcome::OutsideVH, 0};
        if (it->result == kUndefined) return {Outcome::Undefined, 0};
        return {Outcome::InVH, static_cast<std::size_t>(it->result)};
    }

    /// Ranks j != i lying on the tangent section at i (the values of i o i in V_H).
    const std::vector<std::size_t>& tangent_row(std::size_t i) const { return tangent_.at(i); }

    /// Calls f(i, j, k) for every InVH entry with i < j.
    template <class F>
    void for_each_in_vh(F&& f) const {
        for (std::size_t i = 1; i < rows_.size(); ++i)
            for (const auto& e : rows_[i])
                if (e.result != kUndefined) f(i, static_cast<std::size_t>(e.partner), static_cast<std::size_t>(e.result));
    }

    std::size_t undefined_count() const {
        std::size_t c = 0;
        for (const auto& row : rows_)
            for (const auto& e : row) c += e.result == kUndefined;
        return c;
    }

   private:
    struct Entry {
        std::uint32_t partner;
        std::int32_t result;
    };
    static constexpr std::int32_t kUndefined = -1;

    PointRegistry reg_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::vector<std::size_t>> tangent_;
};

inline CompositionTable build_table(const PointRegistry& reg, unsigned threads = 1) {
    if (reg.empty()) throw Error(ErrorCode::InvalidCoefficients, "cannot tabulate an empty registry");
    return CompositionTable(reg, threads);
}

using RankPair = std::pair<std::size_t, std::size_t>;

/// For each rank x, every {y, z} with y, z < x and x = y o z; {y, y} means
/// x lies on the tangent section at y. Points without decompositions are
/// absent from the map.
inline std::map<std::size_t, std::vector<RankPair>> strong_decompositions(const CompositionTable& table) {
    std::map<std::size_t, std::vector<RankPair>> out;
    table.for_each_in_vh([&](std::size_t i, std::size_t j, std::size_t k) {
        if (i < k && j < k) out[k].push_back({i, j});
    });
    for (std::size_t y = 1; y <= table.size(); ++y)
        for (const auto x : table.tangent_row(y))
            if (y < x) out[x].push_back({y, y});
    for (auto& [_, pairs] : out) std::sort(pairs.begin(), pairs.end());
    return out;
}

// ---------------------------------------------------------------------------
// Closure under the partial composition
// ---------------------------------------------------------------------------

struct Derivation {
    std::size_t left = 0;
    std::size_t right = 0;  // == left for a tangent derivation
    bool tangent = false;

    RankPair key() const { return {left, right}; }
};

/// Breadth-first closure with back-pointers. generation[r] is 0 for seeds,
/// g for points first produced in round g, and -1 for unreached ranks.
struct Closure {
    std::vector<int> generation;
    std::vector<Derivation> derivation;
    int rounds = 0;

    bool contains(std::size_t r) const { return generation.at(r) >= 0; }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::size_t r = 1; r < generation.size(); ++r)
            if (generation[r] >= 0) out.push_back(r);
        return out;
    }
};

inline constexpr int kUnlimitedGenerations = std::numeric_limits<int>::max();

/// Closes `seeds` under binary InVH entries and tangent rows. Each new point
/// keeps the derivation with the smallest (left, right) rank pair among
/// those available in the round it first appears. Stops early once
/// `stop_at` is reached.
inline Closure close(const CompositionTable& table, const std::vector<std::size_t>& seeds,
                     std::optional<std::size_t> stop_at = std::nullopt, int max_generations = kUnlimitedGenerations) {
    const std::size_t n = table.size();
    Closure c;
    c.generation.assign(n + 1, -1);
    c.derivation.assign(n + 1, {});
    std::vector<std::size_t> reached, frontier;
    for (const auto s : seeds) {
        if (s == 0 || s > n) throw Error(ErrorCode::InvalidCoefficients, "seed rank out of range");
        if (c.generation[s] < 0) {
            c.generation[s] = 0;
            frontier.push_back(s);
        }
    }
    std::sort(frontier.begin(), frontier.end());
    reached = frontier;

    for (int g = 1; g <= max_generations && !frontier.empty(); ++g) {
        if (stop_at && c.contains(*stop_at)) break;
        std::map<std::size_t, Derivation> fresh;
        auto offer = [&](std::size_t k, Derivation d) {
            if (c.generation[k] >= 0) return;
            auto [it, inserted] = fresh.emplace(k, d);
            if (!inserted && d.key() < it->second.key()) it->second = d;
        };
        for (const auto u : frontier) {
            for (const auto v : reached) {
                if (u == v) continue;
                const auto o = table.outcome(u, v);
                if (o.kind == Outcome::InVH) offer(o.rank, {std::min(u, v), std::max(u, v), false});
            }
            for (const auto k : table.tangent_row(u)) offer(k, {u, u, true});
        }
        frontier.clear();
        for (const auto& [k, d] : fresh) {
            c.generation[k] = g;
            c.derivation[k] = d;
            frontier.push_back(k);
        }
        c.rounds = g;
        reached.insert(reached.end(), frontier.begin(), frontier.end());
        std::sort(reached.begin(), reached.end());
    }
    return c;
}

// ---------------------------------------------------------------------------
// Schemes: non-associative monomials in o with leaves given by rank
// ---------------------------------------------------------------------------

/// A binary expression tree. Nodes are stored in a flat vector; a node with
/// no children is a leaf naming a rank. Internal nodes carry the rank of
/// their value, or 0 when unannotated (e.g. freshly parsed text).
class Scheme {
   public:
    struct Node {
        std::size_t value = 0;
        int left = -1;
        int right = -1;
        bool is_leaf() const { return left < 0; }
    };

    int add_leaf(std::size_t rank) {
        nodes_.push_back({rank, -1, -1});
        return static_cast<int>(nodes_.size() - 1);
    }
    int add_node(int left, int right, std::size_t value = 0) {
        nodes_.push_back({value, left, right});
        return static_cast<int>(nodes_.size() - 1);
    }
    void set_root(int r) { root_ = r; }

    int root() const noexcept { return root_; }
    const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
    std::size_t target() const { return node(root_).value; }

    /// Nesting depth of o (a single leaf has depth 0).
    int depth() const { return depth_of(root_); }

    std::vector<std::size_t> leaves() const {
        std::vector<std::size_t> out;
        collect_leaves(root_, out);
        return out;
    }

    /// Structural equality ignoring internal annotations.
    bool same_shape(const Scheme& other) const { return shape_eq(root_, other, other.root_); }

   private:
    int depth_of(int i) const {
        const auto& nd = node(i);
        return nd.is_leaf() ? 0 : 1 + std::max(depth_of(nd.left), depth_of(nd.right));
    }
    void collect_leaves(int i, std::vector<std::size_t>& out) const {
        const auto& nd = node(i);
        if (nd.is_leaf()) {
            out.push_back(nd.value);
            return;
        }
        collect_leaves(nd.left, out);
        collect_leaves(nd.right, out);
    }
    bool shape_eq(int i, const Scheme& o, int j) const {
        const auto& a = node(i);
        const auto& b = o.node(j);
        if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf() && a.value == b.value;
        return shape_eq(a.left, o, b.left) && shape_eq(a.right, o, b.right);
    }

    std::vector<Node> nodes_;
    int root_ = -1;
};

inline constexpr std::string_view kComposeSymbol = "∘";

inline Scheme scheme_from_closure(const Closure& c, std::size_t target) {
    if (!c.contains(target)) throw Error(ErrorCode::InvalidCoefficients, "target not in closure");
    Scheme s;
    auto build = [&](auto&& self, std::size_t r) -> int {
        if (c.generation[r] == 0) return s.add_leaf(r);
        const auto& d = c.derivation[r];
        const int l = self(self, d.left);
        const int rr = self(self, d.right);
        return s.add_node(l, rr, r);
    };
    s.set_root(build(build, target));
    return s;
}

/// Fully parenthesized infix text, e.g. `5∘(1∘(35∘2))`; the outermost
/// application carries no parentheses.
inline std::string render_scheme(const Scheme& s) {
    auto render = [&](auto&& self, int i, bool top) -> std::string {
        const auto& nd = s.node(i);
        if (nd.is_leaf()) return std::to_string(nd.value);
        std::string body = self(self, nd.left, false) + std::string(kComposeSymbol) + self(self, nd.right, false);
        return top ? body : "(" + body + ")";
    };
    return render(render, s.root(), true);
}

/// Inverse of render_scheme. Internal nodes come back unannotated.
inline Scheme parse_scheme(std::string_view text) {
    Scheme s;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::ParseError, "scheme '" + std::string(text) + "' at offset " + std::to_string(pos) + ": " + why);
    };
    auto skip_ws = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    auto parse_expr = [&](auto&& self) -> int {
        auto parse_term = [&]() -> int {
            skip_ws();
            if (pos < text.size() && text[pos] == '(') {
                ++pos;
                const int inner = self(self);
                skip_ws();
                if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
                ++pos;
                return inner;
            }
            const std::size_t start = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
            if (start == pos) fail("expected rank or '('");
            return s.add_leaf(std::stoull(std::string(text.substr(start, pos - start))));
        };
        const int left = parse_term();
        skip_ws();
        if (text.substr(pos).starts_with(kComposeSymbol)) {
            pos += kComposeSymbol.size();
            const int right = parse_term();
            return s.add_node(left, right);
        }
        return left;
    };
    s.set_root(parse_expr(parse_expr));
    skip_ws();
    if (pos != text.size()) fail("trailing characters");
    return s;
}

/// Re-evaluates an annotated scheme bottom-up through the surface
/// arithmetic (not the table): secant nodes must compose to their recorded
/// value, and nodes with equal children must have their value on the
/// tangent section of the child.
inline bool verify_scheme(const Scheme& s, const PointRegistry& reg) {
    const auto& surface = reg.surface();
    auto eval = [&](auto&& self, int i) -> std::optional<std::size_t> {
        const auto& nd = s.node(i);
        if (nd.value == 0 || nd.value > reg.size()) return std::nullopt;
        if (nd.is_leaf()) return nd.value;
        const auto l = self(self, nd.left);
        const auto r = self(self, nd.right);
        if (!l || !r) return std::nullopt;
        const auto& target = reg.at(nd.value);
        if (*l == *r) {
            if (*l == nd.value || !on_tangent_section(surface, target, reg.at(*l))) return std::nullopt;
            return nd.value;
        }
        try {
            if (secant_compose(surface, reg.at(*l), reg.at(*r)).point != target.point) return std::nullopt;
        } catch (const Error&) {
            return std::nullopt;
        }
        return nd.value;
    };
    return s.root() >= 0 && eval(eval, s.root()).has_value();
}

/// Set-valued evaluation of an unannotated scheme inside V_H: a node with
/// equal children takes every V_H point on the child's tangent section.
inline std::set<std::size_t> evaluate_scheme(const Scheme& s, const PointRegistry& reg) {
    const auto& surface = reg.surface();
    auto eval = [&](auto&& self, int i) -> std::set<std::size_t> {
        const auto& nd = s.node(i);
        if (nd.is_leaf()) {
            if (nd.value == 0 || nd.value > reg.size()) return {};
            return {nd.value};
        }
        const auto ls = self(self, nd.left);
        const auto rs = self(self, nd.right);
        std::set<std::size_t> out;
        for (const auto a : ls) {
            for (const auto b : rs) {
                if (a == b) {
                    for (std::size_t k = 1; k <= reg.size(); ++k)
                        if (k != a && on_tangent_section(surface, reg.at(k), reg.at(a))) out.insert(k);
                    continue;
                }
                try {
                    if (const auto k = reg.rank_of(secant_compose(surface, reg.at(a), reg.at(b)).point)) out.insert(*k);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::LineOnSurface) throw;
                }
            }
        }
        return out;
    };
    return eval(eval, s.root());
}

// ---------------------------------------------------------------------------
// Weak decomposability and generators
// ---------------------------------------------------------------------------

struct WeakResult {
    bool decomposable = false;
    std::optional<Scheme> witness;
};

/// Whether rank x lies in the closure of {1, ..., x-1}. Intermediate values
/// may be any V_H point; the witness has minimum generation count.
inline WeakResult weak_closure(const CompositionTable& table, std::size_t x, int max_generations = kUnlimitedGenerations) {
    if (x == 0 || x > table.size()) throw Error(ErrorCode::InvalidCoefficients, "rank out of range");
    std::vector<std::size_t> seeds;
    for (std::size_t r = 1; r < x; ++r) seeds.push_back(r);
    const Closure c = close(table, seeds, x, max_generations);
    if (!c.contains(x)) return {};
    return {true, scheme_from_closure(c, x)};
}

inline std::vector<std::size_t> generators(const CompositionTable& table, int max_generations = kUnlimitedGenerations) {
    std::vector<std::size_t> out;
    for (std::size_t x = 1; x <= table.size(); ++x)
        if (!weak_closure(table, x, max_generations).decomposable) out.push_back(x);
    return out;
}

struct DecompositionReport {
    std::size_t points = 0;
    std::map<std::size_t, std::vector<RankPair>> strong;
    std::map<std::size_t, Scheme> weak;  // weakly but not strongly decomposable
    std::vector<std::size_t> generators;

    std::size_t strong_count() const { return strong.size(); }
    std::size_t weak_only_count() const { return weak.size(); }
    std::size_t generator_count() const { return generators.size(); }
};

inline DecompositionReport decompose(const CompositionTable& table, int max_generations = kUnlimitedGenerations) {
    DecompositionReport rep;
    rep.points = table.size();
    rep.strong = strong_decompositions(table);
    for (std::size_t x = 1; x <= table.size(); ++x) {
        if (rep.strong.count(x)) continue;
        auto w = weak_closure(table, x, max_generations);
        if (w.decomposable) {
            rep.weak.emplace(x, std::move(*w.witness));
        } else {
            rep.generators.push_back(x);
        }
    }
    return rep;
}

inline nlohmann::ordered_json report_to_json(const DecompositionReport& rep, const PointRegistry& reg,
                                             const nlohmann::ordered_json& config = nullptr) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["points"] = rep.points;
    j["strong_count"] = rep.strong_count();
    j["weak_only_count"] = rep.weak_only_count();
    j["generator_count"] = rep.generator_count();
    ordered_json gens = ordered_json::array();
    for (const auto g : rep.generators) {
        ordered_json c = ordered_json::array();
        for (const auto& v : reg.at(g).point.coords()) c.push_back(static_cast<std::int64_t>(v));
        gens.push_back(std::move(c));
    }
    j["generators"] = std::move(gens);
    ordered_json strong = ordered_json::object();
    for (const auto& [x, pairs] : rep.strong) {
        ordered_json arr = ordered_json::array();
        for (const auto& [y, z] : pairs) arr.push_back({y, z});
        strong[std::to_string(x)] = std::move(arr);
    }
    j["strong"] = std::move(strong);
    ordered_json weak = ordered_json::object();
    for (const auto& [x, s] : rep.weak) weak[std::to_string(x)] = render_scheme(s);
    j["weak_witnesses"] = std::move(weak);
    if (!config.is_null()) j["config"] = config;
    return j;
}

}  // namespace cubic_mw

#endif
