#pragma once

#include "core.hpp"

namespace cckit {

// R-cells containing a.
inline std::vector<Id> dual_set(const Complex& k, const Cell& a) {
    if (!is_pure(k)) throw Error(ErrorCode::NotPure, "dual set needs a pure complex");
    if (a.empty()) throw Error(ErrorCode::EmptySet, "dual set of the empty set");
    return top_cells_over(k, normalized(a));
}

// The dual of a closed complex with the bijection between primal and dual cells.
// Dual vertex i is the i-th maximal cell of the primal in canonical order.
struct Dual {
    Complex complex;
    std::vector<Id> primal_top;  // dual vertex -> primal R-cell id
    std::vector<Id> to_dual;     // primal id -> dual id
    std::vector<Id> to_primal;   // dual id -> primal id
};

inline Dual dual_closed(const Complex& k) {
    Cell w;
    if (!k.empty() && !is_closed(k, &w)) throw Error(ErrorCode::NotClosed, "duality needs a closed complex");
    Dual d;
    int r = k.max_rank();
    d.primal_top = k.of_rank(r);
    std::unordered_map<Id, Vertex> pos;
    for (Id i = 0; i < d.primal_top.size(); ++i) pos[d.primal_top[i]] = static_cast<Vertex>(i);
    std::vector<Cell> cells(k.size());
    std::vector<std::pair<Cell, int>> ranked;
    for (Id i = 0; i < k.size(); ++i) {
        Cell c;
        for (Id z : top_cells_over(k, k.cell(i))) c.push_back(pos[z]);
        std::sort(c.begin(), c.end());
        cells[i] = c;
        ranked.emplace_back(c, r - k.rank(i));
    }
    d.complex = Complex::assemble(std::move(ranked));
    d.to_dual.resize(k.size());
    d.to_primal.resize(k.size());
    for (Id i = 0; i < k.size(); ++i) {
        Id j = d.complex.find(cells[i]);
        d.to_dual[i] = j;
        d.to_primal[j] = i;
    }
    return d;
}

inline Complex dual(const Complex& k) { return dual_closed(k).complex; }

// A member of a tilde-dual: a maximal cell of K (boundary = false) or a
// maximal cell of the boundary (boundary = true), both given by their id in K.
struct TaggedCell {
    bool boundary = false;
    Id id = no_cell;
    auto operator<=>(const TaggedCell&) const = default;
};

inline std::vector<TaggedCell> tilde_dual_set(const Complex& k, const Complex& bd, const Cell& a) {
    std::vector<TaggedCell> out;
    for (Id z : top_cells_over(k, a)) out.push_back({false, z});
    if (bd.empty()) return out;
    bool inside = true;
    for (Vertex v : a)
        if (!bd.contains(Cell{v})) inside = false;
    if (!inside) return out;
    int r = bd.max_rank();
    for (Id y : bd.cells_containing(a))
        if (bd.rank(y) == r) out.push_back({true, k.find(bd.cell(y))});
    return out;
}

inline std::vector<TaggedCell> tilde_dual_set(const Complex& k, const Cell& a) {
    if (!is_non_singular(k)) throw Error(ErrorCode::NotNonSingular, "tilde dual needs a non-singular complex");
    Cell s = normalized(a);
    if (s.empty()) throw Error(ErrorCode::EmptySet, "tilde dual of the empty set");
    return tilde_dual_set(k, boundary(k), s);
}

}  // namespace cckit
