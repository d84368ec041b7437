#pragma once

#include "map.hpp"

namespace cckit {

// bdiv(K): vertex i is the flag {x_i} where x_i is the i-th cell of K.
struct Bdiv {
    ComplexPtr base;
    ComplexPtr complex;
    std::vector<std::vector<Id>> chain;  // bdiv id -> flag as K ids, increasing
    CcMap rho;                           // flag -> its top cell
};

inline Bdiv barycentric(const ComplexPtr& k) {
    std::vector<std::vector<Id>> flags;
    std::vector<Id> cur;
    std::function<void(Id)> grow = [&](Id x) {
        cur.push_back(x);
        flags.push_back(cur);
        for (Id y : k->cells_containing(k->cell(x)))
            if (k->rank(y) > k->rank(x)) grow(y);
        cur.pop_back();
    };
    for (Id x = 0; x < k->size(); ++x) grow(x);

    std::vector<std::pair<Cell, int>> ranked;
    ranked.reserve(flags.size());
    for (const auto& f : flags) {
        Cell c(f.begin(), f.end());
        std::sort(c.begin(), c.end());
        ranked.emplace_back(std::move(c), static_cast<int>(f.size()) - 1);
    }
    Bdiv b;
    b.base = k;
    b.complex = share(Complex::assemble(ranked));
    b.chain.resize(b.complex->size());
    for (const auto& f : flags) {
        Cell c(f.begin(), f.end());
        std::sort(c.begin(), c.end());
        b.chain[b.complex->find(c)] = f;
    }
    b.rho = CcMap{b.complex, k, {}};
    b.rho.image.resize(b.complex->size());
    for (Id i = 0; i < b.complex->size(); ++i) b.rho.image[i] = b.chain[i].back();
    return b;
}

inline Bdiv barycentric(const Complex& k) { return barycentric(share(k)); }

struct OrientedGraph {
    VertexSet vertices;
    std::vector<std::pair<Vertex, Vertex>> arcs;  // (from, to)
};

// Orient each bdiv edge {x, y} with x strictly inside y from x to y.
inline OrientedGraph inclusion_orientation(const Bdiv& b) {
    OrientedGraph g;
    g.vertices = b.complex->vertices();
    for (Id e : b.complex->of_rank(1)) {
        Vertex u = b.complex->cell(e)[0];
        Vertex w = b.complex->cell(e)[1];
        if (b.base->rank(u) < b.base->rank(w)) g.arcs.emplace_back(u, w);
        else g.arcs.emplace_back(w, u);
    }
    std::sort(g.arcs.begin(), g.arcs.end());
    return g;
}

inline OrientedGraph reversed(OrientedGraph g) {
    for (auto& [a, b] : g.arcs) std::swap(a, b);
    std::sort(g.arcs.begin(), g.arcs.end());
    return g;
}

inline bool is_transitive(const OrientedGraph& g) {
    std::set<std::pair<Vertex, Vertex>> arcs(g.arcs.begin(), g.arcs.end());
    std::map<Vertex, std::vector<Vertex>> out;
    for (auto [a, b] : g.arcs) out[a].push_back(b);
    for (auto [a, b] : g.arcs)
        for (Vertex c : out[b])
            if (!arcs.count({a, c})) return false;
    return true;
}

// Rebuild K from the oriented 1-skeleton of bdiv(K): the rank of a flag-vertex is
// the longest directed path ending there, and its cell is the set of sources below it.
inline Complex reconstruct_from_oriented_bdiv(const OrientedGraph& g) {
    std::map<Vertex, std::vector<Vertex>> in, out;
    std::map<Vertex, int> indeg;
    for (Vertex v : g.vertices) indeg[v] = 0;
    for (auto [a, b] : g.arcs) {
        if (!indeg.count(a) || !indeg.count(b) || a == b)
            throw Error(ErrorCode::NotABdivGraph, "arc outside the vertex set");
        out[a].push_back(b);
        in[b].push_back(a);
        ++indeg[b];
    }
    std::vector<Vertex> topo;
    std::vector<Vertex> ready;
    for (auto [v, d] : indeg)
        if (d == 0) ready.push_back(v);
    while (!ready.empty()) {
        Vertex v = ready.back();
        ready.pop_back();
        topo.push_back(v);
        for (Vertex w : out[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    if (topo.size() != g.vertices.size()) throw Error(ErrorCode::NotABdivGraph, "orientation has a directed cycle");

    std::map<Vertex, int> depth;
    std::map<Vertex, Cell> below;
    for (Vertex v : topo) {
        int d = 0;
        Cell s;
        for (Vertex u : in[v]) {
            d = std::max(d, depth[u] + 1);
            s = unite(s, below[u]);
        }
        if (in[v].empty()) s = Cell{v};
        depth[v] = d;
        below[v] = s;
    }
    std::vector<std::pair<Cell, int>> ranked;
    for (Vertex v : g.vertices) ranked.emplace_back(below[v], depth[v]);
    try {
        return build_complex(std::move(ranked));
    } catch (const Error& e) {
        throw Error(ErrorCode::NotABdivGraph, std::string("reconstruction is not a cc: ") + e.what());
    }
}

}  // namespace cckit
