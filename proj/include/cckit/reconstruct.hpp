#pragma once

#include <deque>
#include <functional>
#include <map>

#include "core.hpp"

namespace cckit {

// A walk in the 1-skeleton: a start vertex and the edges taken in order.
struct EdgePath {
    Vertex start = 0;
    std::vector<Cell> edges;

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out{start};
        for (const Cell& e : edges) {
            Vertex cur = out.back();
            if (e.size() != 2 || (e[0] != cur && e[1] != cur)) throw Error(ErrorCode::BadPath, "edge does not continue the path");
            out.push_back(e[0] == cur ? e[1] : e[0]);
        }
        return out;
    }
    Vertex end() const { return vertices().back(); }
    bool empty() const { return edges.empty(); }
    bool operator==(const EdgePath&) const = default;

    static EdgePath through(const std::vector<Vertex>& vs) {
        EdgePath p;
        p.start = vs.front();
        for (std::size_t i = 1; i < vs.size(); ++i) p.edges.push_back(normalized({vs[i - 1], vs[i]}));
        return p;
    }
};

inline EdgePath reversed(const EdgePath& p) {
    auto vs = p.vertices();
    std::reverse(vs.begin(), vs.end());
    return EdgePath::through(vs);
}

inline EdgePath concat(const EdgePath& a, const EdgePath& b) {
    if (a.end() != b.start) throw Error(ErrorCode::BadPath, "paths do not meet");
    EdgePath out = a;
    out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
    return out;
}

inline void check_path(const Complex& k, const EdgePath& p) {
    for (const Cell& e : p.edges)
        if (e.size() != 2 || k.find(e) == no_cell || k.rank_of(e) != 1) throw Error(ErrorCode::BadPath, "path uses a non-edge");
    p.vertices();
}

// The 2-cell through both edges, if any.
inline std::optional<Id> common_2_cell(const Complex& k, const Cell& a, const Cell& b) {
    for (Id c : k.cells_containing(unite(a, b)))
        if (k.rank(c) == 2) return c;
    return std::nullopt;
}

// Connection from E_v to E_w across the edge {v, w}.
inline Cell connection_step(const Complex& k, Vertex v, Vertex w, const Cell& e) {
    Cell vw = normalized({v, w});
    if (!is_graph_based(k)) throw Error(ErrorCode::NotGraphBased, "connection needs a graph-based complex");
    if (k.find(vw) == no_cell) throw Error(ErrorCode::BadPath, "{v,w} is not an edge");
    if (e == vw) return vw;
    if (e.size() != 2 || !std::binary_search(e.begin(), e.end(), v) || k.find(e) == no_cell)
        throw Error(ErrorCode::BadPath, "e is not an edge at v");
    auto c = common_2_cell(k, e, vw);
    if (!c) throw Error(ErrorCode::EdgeNotMapped, "no 2-cell contains e and {v,w}");
    for (Id f : edges_at_in(k, w, k.cell(*c)))
        if (k.cell(f) != vw) return k.cell(f);
    throw Error(ErrorCode::EdgeNotMapped, "2-cell has no second edge at w");
}

inline Cell transport(const Complex& k, const EdgePath& p, const Cell& e) {
    check_path(k, p);
    auto vs = p.vertices();
    if (!std::binary_search(e.begin(), e.end(), p.start)) throw Error(ErrorCode::BadPath, "edge not at path start");
    Cell cur = e;
    for (std::size_t i = 1; i < vs.size(); ++i) cur = connection_step(k, vs[i - 1], vs[i], cur);
    return cur;
}

struct CheckResult {
    bool ok = true;
    std::vector<Cell> witness;
    explicit operator bool() const { return ok; }
};

inline CheckResult check_full(const Complex& k, int r) {
    CheckResult out;
    out.ok = is_full(k, r, &out.witness);
    return out;
}

inline CheckResult check_even(const Complex& k) {
    CheckResult out;
    Cell w;
    out.ok = is_even(k, &w);
    if (!out.ok) out.witness = {w};
    return out;
}

// l_C(v): the cycle around the component of C through v, based at v.
inline EdgePath loop_around(const Complex& k, Id c, Vertex v) {
    const Cell& cell = k.cell(c);
    std::vector<Vertex> walk{v};
    std::optional<Vertex> prev;
    Vertex cur = v;
    do {
        std::optional<Vertex> next;
        for (Id e : edges_at_in(k, cur, cell)) {
            const Cell& ec = k.cell(e);
            Vertex other = ec[0] == cur ? ec[1] : ec[0];
            if (other != prev) {
                next = other;
                break;
            }
        }
        if (!next || walk.size() > cell.size()) throw Error(ErrorCode::BadPath, "2-cell component is not a cycle");
        prev = cur;
        cur = *next;
        walk.push_back(cur);
    } while (cur != v);
    return EdgePath::through(walk);
}

inline CheckResult check_monodromy_free(const Complex& k) {
    CheckResult out;
    if (!is_graph_based(k)) {
        out.ok = false;
        return out;
    }
    for (Id c : k.of_rank(2))
        for (const VertexSet& comp : graph_components_on(k, k.cell(c))) {
            Vertex v = comp.front();
            EdgePath loop = loop_around(k, c, v);
            for (Id e : k.edges_at(v)) {
                const Cell& ec = k.cell(e);
                Vertex other = ec[0] == v ? ec[1] : ec[0];
                if (std::binary_search(comp.begin(), comp.end(), other)) continue;
                bool fixed;
                try {
                    fixed = transport(k, loop, ec) == ec;
                } catch (const Error&) {
                    fixed = false;
                }
                if (!fixed) {
                    out.ok = false;
                    out.witness = {k.cell(c), Cell{v}, ec};
                    return out;
                }
            }
        }
    return out;
}

// Closed and R-full.
inline CheckResult check_simple(const Complex& k) {
    CheckResult out;
    Cell w;
    if (!is_closed(k, &w)) {
        out.ok = false;
        if (!w.empty()) out.witness = {w};
        return out;
    }
    return check_full(k, k.max_rank());
}

// Common |E_v| when every vertex has the same degree.
inline std::optional<std::size_t> regularity(const Complex& k) {
    std::optional<std::size_t> n;
    for (Vertex v : k.vertices()) {
        std::size_t d = k.edges_at(v).size();
        if (n && *n != d) return std::nullopt;
        n = d;
    }
    return n;
}

// Common number of 2-cells on an edge.
inline std::optional<std::size_t> edge_regularity(const Complex& k) {
    std::optional<std::size_t> n;
    for (Id e : k.of_rank(1)) {
        std::size_t d = 0;
        for (Id c : k.cofaces(e))
            if (k.rank(c) == 2) ++d;
        if (n && *n != d) return std::nullopt;
        n = d;
    }
    return n;
}

struct Move {
    enum class Kind { TwoCell, Edge, EdgeInverse };
    Kind kind = Kind::TwoCell;
    Cell cell;       // the 2-cell, for TwoCell
    EdgePath sub;    // simple path inside the 2-cell, for TwoCell
    Cell edge;       // for Edge and EdgeInverse
    Vertex base = 0;
};

namespace detail {

inline bool is_simple_walk(const std::vector<Vertex>& vs) {
    std::set<Vertex> seen;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i + 1 == vs.size() && vs.size() > 2 && vs[i] == vs.front()) break;
        if (!seen.insert(vs[i]).second) return false;
    }
    return true;
}

// First index at which `needle` occurs as a contiguous run of `hay`.
inline std::optional<std::size_t> first_run(const std::vector<Vertex>& hay, const std::vector<Vertex>& needle) {
    if (needle.size() > hay.size()) return std::nullopt;
    for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i)
        if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i))) return i;
    return std::nullopt;
}

}  // namespace detail

// p^C: the rest of the loop around C from the start of p to its end.
inline EdgePath complementary_path(const Complex& k, const Cell& c, const EdgePath& p) {
    Id cid = k.find(c);
    if (cid == no_cell || k.rank(cid) != 2) throw Error(ErrorCode::IllegalMove, "not a 2-cell");
    if (p.empty()) throw Error(ErrorCode::IllegalMove, "empty sub-path");
    check_path(k, p);
    auto vs = p.vertices();
    for (const Cell& e : p.edges)
        if (!subset_of(e, c)) throw Error(ErrorCode::IllegalMove, "sub-path leaves the 2-cell");
    if (!detail::is_simple_walk(vs)) throw Error(ErrorCode::IllegalMove, "sub-path is not simple");
    EdgePath loop = loop_around(k, cid, vs.front());
    auto lv = loop.vertices();
    // orient the loop so that it starts with p
    if (lv.size() > 1 && lv[1] != vs[1]) std::reverse(lv.begin(), lv.end());
    if (!std::equal(vs.begin(), vs.end(), lv.begin())) throw Error(ErrorCode::IllegalMove, "sub-path does not follow the 2-cell");
    std::vector<Vertex> rest(lv.begin() + static_cast<std::ptrdiff_t>(vs.size() - 1), lv.end());
    std::reverse(rest.begin(), rest.end());
    return EdgePath::through(rest);
}

inline EdgePath apply_move(const Complex& k, const Move& m, const EdgePath& q) {
    check_path(k, q);
    auto qv = q.vertices();
    if (m.kind == Move::Kind::TwoCell) {
        EdgePath comp = complementary_path(k, m.cell, m.sub);
        auto pv = m.sub.vertices();
        auto at = detail::first_run(qv, pv);
        if (!at) return q;
        std::vector<Vertex> out(qv.begin(), qv.begin() + static_cast<std::ptrdiff_t>(*at));
        auto cv = comp.vertices();
        out.insert(out.end(), cv.begin(), cv.end());
        out.insert(out.end(), qv.begin() + static_cast<std::ptrdiff_t>(*at + pv.size()), qv.end());
        return EdgePath::through(out);
    }
    const Cell& e = m.edge;
    if (e.size() != 2 || k.find(e) == no_cell || !std::binary_search(e.begin(), e.end(), m.base))
        throw Error(ErrorCode::IllegalMove, "edge move needs an edge at its base vertex");
    Vertex u = e[0] == m.base ? e[1] : e[0];
    if (m.kind == Move::Kind::Edge) {
        auto at = detail::first_run(qv, {m.base, u, m.base});
        if (!at) return q;
        std::vector<Vertex> head(qv.begin(), qv.begin() + static_cast<std::ptrdiff_t>(*at + 1));
        std::vector<Vertex> tail(qv.begin() + static_cast<std::ptrdiff_t>(*at + 2), qv.end());
        if (std::count(head.begin(), head.end(), u) || std::count(tail.begin(), tail.end(), u)) return q;
        head.insert(head.end(), tail.begin() + 1, tail.end());
        return EdgePath::through(head);
    }
    if (std::count(qv.begin(), qv.end(), u)) return q;
    auto it = std::find(qv.begin(), qv.end(), m.base);
    if (it == qv.end()) return q;
    std::vector<Vertex> out(qv.begin(), it + 1);
    out.push_back(u);
    out.insert(out.end(), it, qv.end());
    return EdgePath::through(out);
}

struct Contraction {
    bool contractible = false;  // false means unknown
    std::vector<Move> moves;
    std::size_t explored = 0;
};

// Breadth-first search for a homotopy to the empty path. Inverse edge-moves
// are not generated, so a failure within the budget says nothing.
inline Contraction is_contractible_bounded(const Complex& k, const EdgePath& cycle, std::size_t budget) {
    check_path(k, cycle);
    if (cycle.end() != cycle.start) throw Error(ErrorCode::BadPath, "not a cycle");
    using Walk = std::vector<Vertex>;
    std::map<Walk, std::pair<Walk, Move>> parent;
    std::deque<Walk> queue;
    Walk root = cycle.vertices();
    parent.emplace(root, std::make_pair(Walk{}, Move{}));
    queue.push_back(root);
    Contraction out;
    auto finish = [&](Walk w) {
        out.contractible = true;
        while (w != root) {
            auto& [prev, mv] = parent.at(w);
            out.moves.push_back(mv);
            w = prev;
        }
        std::reverse(out.moves.begin(), out.moves.end());
    };
    while (!queue.empty() && out.explored < budget) {
        Walk w = queue.front();
        queue.pop_front();
        ++out.explored;
        if (w.size() == 1) {
            finish(w);
            return out;
        }
        EdgePath q = EdgePath::through(w);
        std::vector<Move> moves;
        for (std::size_t i = 0; i + 2 < w.size(); ++i)
            if (w[i] == w[i + 2]) {
                Move m;
                m.kind = Move::Kind::Edge;
                m.edge = normalized({w[i], w[i + 1]});
                m.base = w[i];
                moves.push_back(m);
            }
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j) {
                Walk sub(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j + 1));
                if (!detail::is_simple_walk(sub)) break;
                Cell span = normalized(Cell(sub.begin(), sub.end()));
                span.erase(std::unique(span.begin(), span.end()), span.end());
                for (Id c : k.cells_containing(span)) {
                    if (k.rank(c) != 2) continue;
                    bool inside = true;
                    for (std::size_t t = 1; t < sub.size() && inside; ++t)
                        inside = subset_of(normalized({sub[t - 1], sub[t]}), k.cell(c));
                    if (!inside) continue;
                    Move m;
                    m.kind = Move::Kind::TwoCell;
                    m.cell = k.cell(c);
                    m.sub = EdgePath::through(sub);
                    moves.push_back(m);
                }
            }
        for (const Move& m : moves) {
            Walk next;
            try {
                next = apply_move(k, m, q).vertices();
            } catch (const Error&) {
                continue;
            }
            if (parent.count(next)) continue;
            parent.emplace(next, std::make_pair(w, m));
            if (next.size() == 1) {
                finish(next);
                return out;
            }
            queue.push_back(next);
        }
    }
    return out;
}

// Covariant edge fields of a connected complex, one per edge at the seed.
// colors[v][e] is the index of the field through e at v.
struct FieldColoring {
    Vertex seed = 0;
    std::vector<Cell> seed_edges;
    std::map<Vertex, std::map<Cell, int>> colors;
    std::optional<std::pair<Cell, Cell>> inconsistency;  // (edge {a,b}, edge at a)

    bool consistent() const { return !inconsistency.has_value(); }
    std::vector<Cell> edges_of(Vertex v, const std::set<int>& cs) const {
        std::vector<Cell> out;
        for (const auto& [e, c] : colors.at(v))
            if (cs.count(c)) out.push_back(e);
        return out;
    }
};

inline FieldColoring color_fields(const Complex& k, Vertex seed) {
    if (!is_graph_based(k)) throw Error(ErrorCode::PreconditionFailed, "graph_based");
    if (k.vertex_cell(seed) == no_cell) throw Error(ErrorCode::UnknownVertex, "seed not in complex");
    FieldColoring f;
    f.seed = seed;
    int c = 0;
    for (Id e : k.edges_at(seed)) {
        f.seed_edges.push_back(k.cell(e));
        f.colors[seed][k.cell(e)] = c++;
    }
    std::deque<Vertex> queue{seed};
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Id eid : k.edges_at(v)) {
            const Cell& vw = k.cell(eid);
            Vertex w = vw[0] == v ? vw[1] : vw[0];
            if (f.colors.count(w)) continue;
            auto& cw = f.colors[w];
            for (const auto& [e, col] : f.colors.at(v)) cw[connection_step(k, v, w, e)] = col;
            queue.push_back(w);
        }
    }
    if (f.colors.size() != k.vertices().size()) throw Error(ErrorCode::PreconditionFailed, "connected");
    for (Id eid : k.of_rank(1)) {
        const Cell& ab = k.cell(eid);
        for (int side = 0; side < 2 && !f.inconsistency; ++side) {
            Vertex a = ab[side];
            Vertex b = ab[1 - side];
            for (const auto& [e, col] : f.colors.at(a)) {
                Cell t = connection_step(k, a, b, e);
                auto it = f.colors.at(b).find(t);
                if (it == f.colors.at(b).end() || it->second != col) {
                    f.inconsistency = std::make_pair(ab, e);
                    break;
                }
            }
        }
        if (f.inconsistency) break;
    }
    return f;
}

struct EdgeField {
    std::map<Vertex, Cell> assignment;
};

inline void require_field_preconditions(const Complex& k) {
    if (!is_graph_based(k)) throw Error(ErrorCode::PreconditionFailed, "graph_based");
    if (!is_connected(k)) throw Error(ErrorCode::PreconditionFailed, "connected");
    if (!is_full(k, 2)) throw Error(ErrorCode::PreconditionFailed, "full");
    if (!is_even(k)) throw Error(ErrorCode::PreconditionFailed, "even");
    if (!check_monodromy_free(k)) throw Error(ErrorCode::PreconditionFailed, "monodromy_free");
}

// Spanning-tree transport of the seed edge, checked on every other edge.
inline EdgeField extend_field(const Complex& k, Vertex seed, const Cell& seed_edge) {
    require_field_preconditions(k);
    FieldColoring f = color_fields(k, seed);
    if (f.inconsistency) {
        Error err(ErrorCode::FieldInconsistent, "transport is path dependent",
                  {Violation{ErrorCode::FieldInconsistent, "edge and transported edge", {f.inconsistency->first, f.inconsistency->second}, 0}});
        throw err;
    }
    auto it = f.colors.at(seed).find(seed_edge);
    if (it == f.colors.at(seed).end()) throw Error(ErrorCode::BadSeed, "seed edge not at seed vertex");
    EdgeField out;
    for (Vertex v : k.vertices()) out.assignment[v] = f.edges_of(v, {it->second}).front();
    return out;
}

struct InducedCell {
    Vertex seed = 0;
    std::vector<Cell> seed_edges;
    Complex complex;
};

namespace detail {

// J for the field colors `cs`, grown from v; also reports every vertex reached.
inline Complex grow_induced(const Complex& k, const FieldColoring& f, Vertex v, const std::set<int>& cs) {
    std::set<Vertex> domain{v};
    std::set<Id> cells2;
    std::deque<Vertex> queue{v};
    while (!queue.empty()) {
        Vertex w = queue.front();
        queue.pop_front();
        auto sw = f.edges_of(w, cs);
        for (Id c : k.star_of(w)) {
            if (k.rank(c) != 2 || cells2.count(c)) continue;
            bool inside = true;
            for (Id e : edges_at_in(k, w, k.cell(c)))
                if (!std::binary_search(sw.begin(), sw.end(), k.cell(e))) inside = false;
            if (!inside) continue;
            cells2.insert(c);
            for (Vertex u : k.cell(c))
                if (domain.insert(u).second) queue.push_back(u);
        }
    }
    std::set<Id> ids(cells2.begin(), cells2.end());
    for (Vertex w : domain) {
        ids.insert(k.vertex_cell(w));
        for (const Cell& e : f.edges_of(w, cs)) ids.insert(k.find(e));
    }
    return subcomplex(k, std::vector<Id>(ids.begin(), ids.end()));
}

inline Complex two_skeleton(const Complex& k) { return k.max_rank() > 2 ? skeleton(k, 2) : k; }

}  // namespace detail

inline InducedCell induced_subcomplex(const Complex& k_in, Vertex v, const std::vector<Cell>& s_v) {
    Complex k = detail::two_skeleton(k_in);
    require_field_preconditions(k);
    if (!is_local(k)) throw Error(ErrorCode::PreconditionFailed, "local");
    std::vector<Id> ev = k.edges_at(v);
    if (s_v.size() < 2 || s_v.size() >= ev.size()) throw Error(ErrorCode::BadSeed, "need 2 <= |S_v| < |E_v|");
    FieldColoring f = color_fields(k, v);
    if (f.inconsistency)
        throw Error(ErrorCode::FieldInconsistent, "transport is path dependent",
                    {Violation{ErrorCode::FieldInconsistent, "edge and transported edge", {f.inconsistency->first, f.inconsistency->second}, 0}});
    std::set<int> cs;
    for (const Cell& e : s_v) {
        auto it = f.colors.at(v).find(normalized(e));
        if (it == f.colors.at(v).end()) throw Error(ErrorCode::BadSeed, "seed edge not at seed vertex");
        cs.insert(it->second);
    }
    if (cs.size() != s_v.size()) throw Error(ErrorCode::BadSeed, "repeated seed edge");
    InducedCell out;
    out.seed = v;
    for (const Cell& e : s_v) out.seed_edges.push_back(normalized(e));
    std::sort(out.seed_edges.begin(), out.seed_edges.end());
    out.complex = detail::grow_induced(k, f, v, cs);
    return out;
}

// Vertex sets of all r-regular induced cells, each built once: a (vertex,
// field set) couple is marked as soon as the growing cell reaches it.
inline std::vector<Cell> induced_cells(const Complex& k, const FieldColoring& f, int r) {
    std::vector<Cell> out;
    int n = static_cast<int>(f.seed_edges.size());
    for_each_subset(static_cast<std::size_t>(n), static_cast<std::size_t>(r), [&](const std::vector<std::size_t>& idx) {
        std::set<int> cs(idx.begin(), idx.end());
        std::set<Vertex> selected;
        for (Vertex v : k.vertices()) {
            if (selected.count(v)) continue;
            Complex j = detail::grow_induced(k, f, v, cs);
            for (Vertex w : j.vertices()) selected.insert(w);
            out.push_back(j.vertices());
        }
        return true;
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Pair (x, y) of a collection whose common part is disconnected, if any.
inline std::optional<std::pair<Cell, Cell>> singular_pair(const Complex& k, const std::vector<Cell>& coll) {
    for (std::size_t i = 0; i < coll.size(); ++i)
        for (std::size_t j = i + 1; j < coll.size(); ++j) {
            Cell m = intersect(coll[i], coll[j]);
            if (!m.empty() && !graph_connected_on(k, m)) return std::make_pair(coll[i], coll[j]);
        }
    return std::nullopt;
}

// The simple complex whose 2-skeleton is k2, with rank-r cells the induced r-cells.
inline Complex ambient_complex(const Complex& k2) {
    if (k2.max_rank() != 2) throw Error(ErrorCode::PredicateFailed, "input must be a 2-complex");
    auto fail = [](const char* what, std::vector<Cell> w = {}) {
        throw Error(ErrorCode::PredicateFailed, what, {Violation{ErrorCode::PredicateFailed, what, std::move(w), 0}});
    };
    if (!is_graph_based(k2)) fail("graph_based");
    if (!is_local(k2)) fail("local");
    if (!is_even(k2)) fail("even");
    {
        std::vector<Cell> w;
        if (!is_full(k2, 2, &w)) fail("full", w);
    }
    {
        auto m = check_monodromy_free(k2);
        if (!m) fail("monodromy_free", m.witness);
    }
    if (k2.vertices().empty()) return k2;
    FieldColoring f = color_fields(k2, k2.vertices().front());
    if (f.inconsistency) fail("simply_connected", {f.inconsistency->first, f.inconsistency->second});
    int n = static_cast<int>(f.seed_edges.size());
    auto ranked = k2.ranked_cells();
    for (int r = 2; r < n; ++r) {
        std::vector<Cell> coll;
        if (r == 2)
            for (Id c : k2.of_rank(2)) coll.push_back(k2.cell(c));
        else
            coll = induced_cells(k2, f, r);
        if (auto bad = singular_pair(k2, coll))
            throw Error(ErrorCode::NonSingularCollection, "induced cells meet in a disconnected set",
                        {Violation{ErrorCode::NonSingularCollection, "pair", {bad->first, bad->second}, 0}});
        if (r > 2)
            for (const Cell& c : coll) ranked.emplace_back(c, r);
    }
    return build_complex(ranked);
}

}  // namespace cckit
