#pragma once

#include <numeric>
#include <set>

#include "complex.hpp"

namespace cckit {

inline Complex subcomplex(const Complex& k, const std::vector<Id>& ids) {
    std::vector<std::pair<Cell, int>> out;
    out.reserve(ids.size());
    for (Id i : ids) out.emplace_back(k.cell(i), k.rank(i));
    return Complex::assemble(std::move(out));
}

inline Complex skeleton(const Complex& k, int r) {
    if (r < 0 || (!k.empty() && r > k.max_rank()))
        throw Error(ErrorCode::KOutOfRange, "skeleton rank out of range");
    std::vector<Id> ids;
    for (Id i = 0; i < k.size(); ++i)
        if (k.rank(i) <= r) ids.push_back(i);
    return subcomplex(k, ids);
}

inline Complex restriction(const Complex& k, const VertexSet& a) {
    Cell s = normalized(a);
    for (Vertex v : s)
        if (!k.contains(Cell{v})) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    return subcomplex(k, k.cells_within(s));
}

inline Complex relabel(const Complex& k, const std::function<Vertex(Vertex)>& f) {
    std::vector<std::pair<Cell, int>> out;
    out.reserve(k.size());
    for (Id i = 0; i < k.size(); ++i) {
        Cell c;
        c.reserve(k.cell(i).size());
        for (Vertex v : k.cell(i)) c.push_back(f(v));
        out.emplace_back(std::move(c), k.rank(i));
    }
    return Complex::assemble(std::move(out));
}

// Vertices renumbered 0..n-1 in increasing order; old ids kept in `origin`.
inline Complex compact(const Complex& k, std::vector<Vertex>* origin = nullptr) {
    std::unordered_map<Vertex, Vertex> to;
    for (Vertex v : k.vertices()) to.emplace(v, static_cast<Vertex>(to.size()));
    if (origin) *origin = k.vertices();
    return relabel(k, [&](Vertex v) { return to.at(v); });
}

inline Complex shifted(const Complex& k, Vertex offset) {
    return relabel(k, [offset](Vertex v) { return v + offset; });
}

inline Vertex vertex_bound(const Complex& k) {
    return k.vertices().empty() ? 0 : k.vertices().back() + 1;
}

inline std::vector<Id> maximal_cells(const Complex& k) {
    std::vector<Id> out;
    for (Id i = 0; i < k.size(); ++i)
        if (k.cofaces(i).empty()) out.push_back(i);
    return out;
}

inline bool is_pure(const Complex& k) {
    int r = k.max_rank();
    for (Id i : maximal_cells(k))
        if (k.rank(i) != r) return false;
    return true;
}

inline bool is_graph_based(const Complex& k) {
    for (Id i : k.of_rank(1))
        if (k.cell(i).size() != 2) return false;
    return true;
}

inline Complex boundary(const Complex& k) {
    if (!is_pure(k)) throw Error(ErrorCode::NotPure, "boundary needs a pure complex");
    int r = k.max_rank();
    std::set<Id> ids;
    for (Id y : k.of_rank(r - 1)) {
        if (k.cofaces(y).size() != 1) continue;
        for (Id i : k.cells_within(k.cell(y))) ids.insert(i);
    }
    return subcomplex(k, std::vector<Id>(ids.begin(), ids.end()));
}

// Disjoint-set forest over arbitrary vertex ids.
class UnionFind {
public:
    Vertex find(Vertex v) {
        auto it = parent_.find(v);
        if (it == parent_.end()) {
            parent_.emplace(v, v);
            return v;
        }
        if (it->second == v) return v;
        Vertex r = find(it->second);
        parent_[v] = r;
        return r;
    }
    void unite(Vertex a, Vertex b) {
        Vertex ra = find(a);
        Vertex rb = find(b);
        if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
    }

private:
    std::unordered_map<Vertex, Vertex> parent_;
};

// Connectivity of the 1-skeleton induced on the vertex set a.
inline bool graph_connected_on(const Complex& k, const Cell& a) {
    if (a.size() <= 1) return true;
    UnionFind uf;
    for (Vertex v : a) uf.find(v);
    for (Vertex v : a)
        for (Id e : k.edges_at(v)) {
            const Cell& c = k.cell(e);
            if (c.size() == 2 && c[0] == v && std::binary_search(a.begin(), a.end(), c[1])) uf.unite(c[0], c[1]);
        }
    Vertex r = uf.find(a.front());
    for (Vertex v : a)
        if (uf.find(v) != r) return false;
    return true;
}

// Vertex classes of the relation "lie in a common cell".
inline std::vector<VertexSet> components(const Complex& k) {
    UnionFind uf;
    for (const Cell& c : k.cells())
        for (Vertex v : c) uf.unite(c.front(), v);
    std::map<Vertex, VertexSet> groups;
    for (Vertex v : k.vertices()) groups[uf.find(v)].push_back(v);
    std::vector<VertexSet> out;
    for (auto& [r, vs] : groups) out.push_back(vs);
    return out;
}

inline std::vector<VertexSet> graph_components_on(const Complex& k, const Cell& a) {
    UnionFind uf;
    for (Vertex v : a) uf.find(v);
    for (Vertex v : a)
        for (Id e : k.edges_at(v)) {
            const Cell& c = k.cell(e);
            if (c.size() == 2 && std::binary_search(a.begin(), a.end(), c[0]) &&
                std::binary_search(a.begin(), a.end(), c[1]))
                uf.unite(c[0], c[1]);
        }
    std::map<Vertex, VertexSet> groups;
    for (Vertex v : a) groups[uf.find(v)].push_back(v);
    std::vector<VertexSet> out;
    for (auto& [r, vs] : groups) out.push_back(vs);
    return out;
}

inline bool is_connected(const Complex& k) {
    return is_graph_based(k) && graph_connected_on(k, k.vertices());
}

inline bool is_cell_connected(const Complex& k, Cell* witness = nullptr) {
    if (!is_graph_based(k)) return false;
    for (Id i = 0; i < k.size(); ++i)
        if (k.rank(i) >= 2 && !graph_connected_on(k, k.cell(i))) {
            if (witness) *witness = k.cell(i);
            return false;
        }
    return true;
}

inline bool is_local(const Complex& k) { return is_connected(k) && is_cell_connected(k); }

inline bool is_non_branching(const Complex& k, Cell* witness = nullptr) {
    int r = k.max_rank();
    for (Id y : k.of_rank(r - 1))
        if (k.cofaces(y).size() > 2) {
            if (witness) *witness = k.cell(y);
            return false;
        }
    return true;
}

inline bool is_non_singular(const Complex& k) {
    return is_graph_based(k) && is_pure(k) && is_non_branching(k);
}

inline bool is_closed(const Complex& k, Cell* witness = nullptr) {
    if (!is_non_singular(k)) return false;
    int r = k.max_rank();
    for (Id y : k.of_rank(r - 1))
        if (k.cofaces(y).size() != 2) {
            if (witness) *witness = k.cell(y);
            return false;
        }
    return true;
}

// Vertices are maximal-rank cells; edges come from sub-maximal cells with two cofaces.
struct DualGraph {
    std::vector<Id> nodes;
    std::vector<std::pair<Id, Id>> edges;
};

inline DualGraph dual_graph_raw(const Complex& k) {
    DualGraph g;
    int r = k.max_rank();
    g.nodes = k.of_rank(r);
    for (Id y : k.of_rank(r - 1))
        if (k.cofaces(y).size() == 2) g.edges.emplace_back(k.cofaces(y)[0], k.cofaces(y)[1]);
    return g;
}

inline DualGraph dual_graph(const Complex& k) {
    if (!is_non_singular(k)) throw Error(ErrorCode::NotNonSingular, "dual graph needs a non-singular complex");
    return dual_graph_raw(k);
}

inline bool nodes_connected(const std::vector<Id>& nodes, const std::vector<std::pair<Id, Id>>& edges) {
    if (nodes.size() <= 1) return true;
    UnionFind uf;
    for (Id n : nodes) uf.find(n);
    for (auto [a, b] : edges)
        if (std::binary_search(nodes.begin(), nodes.end(), a) && std::binary_search(nodes.begin(), nodes.end(), b))
            uf.unite(a, b);
    Vertex root = uf.find(nodes.front());
    for (Id n : nodes)
        if (uf.find(n) != root) return false;
    return true;
}

inline bool is_strongly_connected(const Complex& k) {
    if (k.empty()) return true;
    DualGraph g = dual_graph_raw(k);
    return nodes_connected(g.nodes, g.edges);
}

// Maximal-rank cells containing x.
inline std::vector<Id> top_cells_over(const Complex& k, const Cell& x) {
    std::vector<Id> out;
    int r = k.max_rank();
    for (Id i : k.cells_containing(x))
        if (k.rank(i) == r) out.push_back(i);
    return out;
}

inline std::optional<Cell> find_pinch(const Complex& k) {
    if (k.empty()) return std::nullopt;
    DualGraph g = dual_graph_raw(k);
    for (Id i = 0; i < k.size(); ++i) {
        auto over = top_cells_over(k, k.cell(i));
        if (!nodes_connected(over, g.edges)) return k.cell(i);
    }
    return std::nullopt;
}

// Returns a witness cell when K or its boundary has a pinch.
inline std::optional<Cell> pinch_witness(const Complex& k) {
    if (auto p = find_pinch(k)) return p;
    if (!is_pure(k)) return std::nullopt;
    return find_pinch(boundary(k));
}

inline bool is_non_pinching(const Complex& k) { return !pinch_witness(k).has_value(); }

inline bool is_simplicial(const Complex& k, Cell* witness = nullptr) {
    for (Id i = 0; i < k.size(); ++i) {
        const Cell& c = k.cell(i);
        bool ok = k.rank(i) == static_cast<int>(c.size()) - 1;
        if (ok && c.size() >= 2) {
            for (std::size_t j = 0; j < c.size() && ok; ++j) {
                Cell f = c;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
                ok = k.contains(f);
            }
        }
        if (!ok) {
            if (witness) *witness = c;
            return false;
        }
    }
    return true;
}

inline bool is_even(const Complex& k, Cell* witness = nullptr) {
    for (Id c : k.of_rank(2))
        for (const auto& comp : graph_components_on(k, k.cell(c)))
            if (comp.size() % 2 != 0) {
                if (witness) *witness = k.cell(c);
                return false;
            }
    return true;
}

// E_v^x: edges of x through v.
inline std::vector<Id> edges_at_in(const Complex& k, Vertex v, const Cell& x) {
    std::vector<Id> out;
    for (Id e : k.edges_at(v))
        if (subset_of(k.cell(e), x)) out.push_back(e);
    return out;
}

inline void for_each_subset(std::size_t n, std::size_t m, const std::function<bool(const std::vector<std::size_t>&)>& f) {
    if (m > n) return;
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (!f(idx)) return;
        std::size_t i = m;
        while (i > 0 && idx[i - 1] == n - m + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// r-fullness: every k-subset S of E_v (2 <= k <= r) is E_v^x for a k-cell x.
// Witness: the vertex followed by the uncovered edges.
inline bool is_full(const Complex& k, int r, std::vector<Cell>* witness = nullptr) {
    if (!is_graph_based(k)) return false;
    for (Vertex v : k.vertices()) {
        std::vector<Id> ev = k.edges_at(v);
        for (int s = 2; s <= r; ++s) {
            std::set<std::vector<Id>> present;
            for (Id x : k.star_of(v))
                if (k.rank(x) == s) present.insert(edges_at_in(k, v, k.cell(x)));
            bool ok = true;
            for_each_subset(ev.size(), static_cast<std::size_t>(s), [&](const std::vector<std::size_t>& idx) {
                std::vector<Id> sub;
                for (std::size_t i : idx) sub.push_back(ev[i]);
                if (!present.count(sub)) {
                    ok = false;
                    if (witness) {
                        witness->assign(1, Cell{v});
                        for (Id e : sub) witness->push_back(k.cell(e));
                    }
                    return false;
                }
                return true;
            });
            if (!ok) return false;
        }
    }
    return true;
}

struct Flag {
    std::string name;
    bool value = true;
    std::vector<Cell> witness;
};

struct PropertyReport {
    std::vector<Flag> flags;

    const Flag& get(const std::string& n) const {
        for (const auto& f : flags)
            if (f.name == n) return f;
        throw Error(ErrorCode::PredicateFailed, "unknown flag " + n);
    }
    bool operator[](const std::string& n) const { return get(n).value; }
};

inline PropertyReport classify(const Complex& k) {
    PropertyReport rep;
    auto add = [&](const std::string& name, bool v, std::vector<Cell> w = {}) {
        rep.flags.push_back({name, v, v ? std::vector<Cell>{} : std::move(w)});
    };
    int r = k.max_rank();

    Cell w;
    bool gb = true;
    for (Id e : k.of_rank(1))
        if (k.cell(e).size() != 2) {
            gb = false;
            w = k.cell(e);
            break;
        }
    add("graph_based", gb, {w});

    bool pure = true;
    Cell pw;
    for (Id i : maximal_cells(k))
        if (k.rank(i) != r) {
            pure = false;
            pw = k.cell(i);
            break;
        }
    add("pure", pure, {pw});

    Cell bw;
    bool nb = is_non_branching(k, &bw);
    add("non_branching", nb, {bw});

    bool ns = gb && pure && nb;
    add("non_singular", ns, {!gb ? w : !pure ? pw : bw});

    Cell cw;
    bool closed = is_closed(k, &cw);
    if (!ns) cw = !gb ? w : !pure ? pw : bw;
    add("closed", closed, {cw});

    bool conn = is_connected(k);
    std::vector<Cell> connw;
    if (!conn) {
        if (!gb) connw = {w};
        else {
            auto comps = graph_components_on(k, k.vertices());
            if (comps.size() >= 2) connw = {Cell{comps[0].front()}, Cell{comps[1].front()}};
        }
    }
    add("connected", conn, connw);

    Cell ccw;
    bool cc = is_cell_connected(k, &ccw);
    if (!gb) ccw = w;
    add("cell_connected", cc, {ccw});

    bool sc = is_strongly_connected(k);
    std::vector<Cell> scw;
    if (!sc) {
        DualGraph g = dual_graph_raw(k);
        UnionFind uf;
        for (Id n : g.nodes) uf.find(n);
        for (auto [a, b] : g.edges) uf.unite(a, b);
        Vertex root = uf.find(g.nodes.front());
        scw.push_back(k.cell(g.nodes.front()));
        for (Id n : g.nodes)
            if (uf.find(n) != root) {
                scw.push_back(k.cell(n));
                break;
            }
    }
    add("strongly_connected", sc, scw);

    auto pinch = pinch_witness(k);
    add("non_pinching", !pinch.has_value(), pinch ? std::vector<Cell>{*pinch} : std::vector<Cell>{});

    add("local", conn && cc, !conn ? connw : std::vector<Cell>{ccw});

    Cell sw;
    bool simp = is_simplicial(k, &sw);
    add("simplicial", simp, {sw});

    Cell ew;
    bool ev = is_even(k, &ew);
    add("even", ev, {ew});

    for (int s = 2; s <= r; ++s) {
        std::vector<Cell> fw;
        bool f = is_full(k, s, &fw);
        if (!f && fw.empty() && !gb) fw = {w};
        add("full(" + std::to_string(s) + ")", f, fw);
    }
    return rep;
}

// Least cell containing both, if any.
inline std::optional<Id> join(const Complex& k, const Cell& a, const Cell& b) {
    Cell u = unite(a, b);
    auto over = k.cells_containing(u);
    if (over.empty()) return std::nullopt;
    Cell m = k.cell(over.front());
    for (Id i : over) m = intersect(m, k.cell(i));
    Id j = k.find(m);
    if (j == no_cell || !subset_of(u, m)) return std::nullopt;
    return j;
}

// Least upper bound of a family of cells (nullopt when none exists).
inline std::optional<Id> join_all(const Complex& k, const std::vector<Id>& ids) {
    Cell u;
    for (Id i : ids) u = unite(u, k.cell(i));
    auto over = k.cells_containing(u);
    if (over.empty()) return std::nullopt;
    Cell m = k.cell(over.front());
    for (Id i : over) m = intersect(m, k.cell(i));
    Id j = k.find(m);
    if (j == no_cell) return std::nullopt;
    return j;
}

inline std::vector<Id> star(const Complex& k, const Cell& x) {
    if (!k.contains(x)) throw Error(ErrorCode::CellNotFound, "star of unknown cell");
    std::vector<Id> out;
    for (Id i = 0; i < k.size(); ++i)
        if (join(k, x, k.cell(i))) out.push_back(i);
    return out;
}

inline std::vector<Id> link(const Complex& k, const Cell& x) {
    std::vector<Id> out;
    for (Id i : star(k, x))
        if (!meets(k.cell(i), x)) out.push_back(i);
    return out;
}

inline long long euler_characteristic(const Complex& k) {
    long long chi = 0;
    for (Id i = 0; i < k.size(); ++i) chi += (k.rank(i) % 2 == 0) ? 1 : -1;
    return chi;
}

}  // namespace cckit
