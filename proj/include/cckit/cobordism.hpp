#pragma once

#include "duality.hpp"
#include "iso.hpp"

namespace cckit {

// K_B: cells meeting B without lying inside it.
inline std::vector<Id> collar(const Complex& k, const VertexSet& b) {
    std::vector<Id> out;
    for (Id i = 0; i < k.size(); ++i) {
        std::size_t n = intersect(k.cell(i), b).size();
        if (n != 0 && n != k.cell(i).size()) out.push_back(i);
    }
    return out;
}

inline std::vector<Id> collar(const Complex& k, const Complex& j) { return collar(k, j.vertices()); }

// E_J^x: the collar edges inside x.
inline std::vector<Id> collar_edges(const Complex& k, const VertexSet& b, const Cell& x) {
    std::vector<Id> out;
    for (Id e : k.cells_within(x))
        if (k.rank(e) == 1 && intersect(k.cell(e), b).size() == 1) out.push_back(e);
    return out;
}

inline bool is_subcomplex(const Complex& k, const Complex& j) {
    for (Id i = 0; i < j.size(); ++i) {
        Id c = k.find(j.cell(i));
        if (c == no_cell || k.rank(c) != j.rank(i)) return false;
    }
    return true;
}

inline bool is_non_degenerate(const Complex& k, const Complex& j, Cell* witness = nullptr) {
    for (Id i = 0; i < k.size(); ++i)
        if (!j.contains(k.cell(i)) && subset_of(k.cell(i), j.vertices())) {
            if (witness) *witness = k.cell(i);
            return false;
        }
    return true;
}

// Midsection vertices are the ids in K of the collar edges.
struct Midsection {
    Complex complex;
    std::map<Cell, Id> origin;  // midsection cell -> cell of K_J
};

inline Midsection midsection(const Complex& k, const Complex& j) {
    if (!is_local(k)) throw Error(ErrorCode::PreconditionFailed, "K must be local");
    if (!is_subcomplex(k, j) || j.size() >= k.size()) throw Error(ErrorCode::PreconditionFailed, "J must be a proper sub-complex");
    if (!is_non_degenerate(k, j)) throw Error(ErrorCode::PreconditionFailed, "(K, J) is degenerate");
    std::vector<Id> kj = collar(k, j);
    if (kj.empty()) throw Error(ErrorCode::PreconditionFailed, "empty collar");
    Midsection m;
    std::vector<std::pair<Cell, int>> ranked;
    for (Id x : kj) {
        auto es = collar_edges(k, j.vertices(), k.cell(x));
        Cell c(es.begin(), es.end());
        ranked.emplace_back(c, k.rank(x) - 1);
        m.origin[c] = x;
    }
    try {
        m.complex = build_complex(ranked);
    } catch (const Error& e) {
        throw Error(ErrorCode::PreconditionFailed, std::string("midsection is not a complex: ") + e.what(), e.details());
    }
    return m;
}

// Connected components of a complex as sub-complexes.
inline std::vector<Complex> component_complexes(const Complex& k) {
    std::vector<Complex> out;
    for (const VertexSet& vs : components(k)) out.push_back(restriction(k, vs));
    return out;
}

inline bool is_local_relative(const Complex& k, const Complex& j, std::string* why = nullptr) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (!is_non_degenerate(k, j)) return fail("degenerate");
    if (!is_local(k)) return fail("K not local");
    for (const Complex& j0 : component_complexes(j)) {
        for (Id x : collar(k, j0))
            if (!graph_connected_on(j0, intersect(j0.vertices(), k.cell(x)))) return fail("J0 n x disconnected");
        if (!is_cell_connected(midsection(k, j0).complex)) return fail("midsection not cell-connected");
    }
    return true;
}

// E_J^x -> J n x is an isomorphism onto J.
inline bool is_exactly_collared(const Complex& k, const Complex& j) {
    if (j.empty()) return true;
    Midsection m;
    try {
        m = midsection(k, j);
    } catch (const Error&) {
        return false;
    }
    VertexMap f;
    for (Vertex e : m.complex.vertices()) {
        Cell hit = intersect(k.cell(e), j.vertices());
        f[e] = hit.front();
    }
    if (!is_isomorphism(m.complex, j, f)) return false;
    for (const auto& [c, x] : m.origin)
        if (map_cell(f, c) != intersect(k.cell(x), j.vertices())) return false;
    return true;
}

inline bool in_class_b(const Complex& j) {
    return j.empty() || (is_closed(j) && is_non_pinching(j) && is_cell_connected(j));
}

inline bool in_class_c(const Complex& k) { return is_non_singular(k) && is_non_pinching(k) && is_local(k); }

inline std::vector<Complex> boundary_components(const Complex& k) { return component_complexes(boundary(k)); }

inline Complex union_of(const std::vector<Complex>& parts) {
    std::vector<std::pair<Cell, int>> ranked;
    for (const Complex& p : parts)
        for (auto& rc : p.ranked_cells()) ranked.push_back(rc);
    return Complex::assemble(ranked);
}

struct Cobordism {
    Complex k;
    Complex removed;
};

struct CobordismReport {
    std::vector<Violation> failures;
    bool ok() const { return failures.empty(); }
};

inline CobordismReport check_cobordism(const Complex& k, const Complex& j) {
    CobordismReport rep;
    auto add = [&](const std::string& what, std::vector<Cell> w = {}) {
        rep.failures.push_back(Violation{ErrorCode::ValidationFailed, what, std::move(w), -1});
    };
    if (k.empty()) {
        add("empty complex");
        return rep;
    }
    if (!is_non_singular(k)) {
        add("K is not non-singular");
        return rep;
    }
    if (auto p = pinch_witness(k)) add("K is pinching", {*p});
    Cell w;
    if (!is_cell_connected(k, &w)) add("K is not cell-connected", {w});
    if (!is_connected(k)) add("K is not connected");
    Complex bd = boundary(k);
    if (!is_subcomplex(bd, j)) {
        add("removed part is not inside the boundary");
        return rep;
    }
    if (!j.empty() && j.max_rank() != k.max_rank() - 1) add("removed part has the wrong rank");
    if (!in_class_b(j)) add("removed part is not closed, non-pinching and cell-connected");
    for (const Complex& j0 : component_complexes(j))
        for (const Complex& b0 : boundary_components(k))
            if (!intersect(j0.vertices(), b0.vertices()).empty() && !is_subcomplex(j0, b0))
                add("removed part is not a union of boundary components", {b0.vertices()});
    if (!is_non_degenerate(k, j, &w)) {
        add("(K, J) is degenerate", {w});
        return rep;
    }
    if (rep.ok()) {
        std::string why;
        bool local = false;
        try {
            local = is_local_relative(k, j, &why);
        } catch (const Error& e) {
            why = e.what();
        }
        if (!local) add("(K, J) is not local: " + why);
    }
    return rep;
}

inline Cobordism validate_cobordism(const Complex& k, const Complex& j) {
    auto rep = check_cobordism(k, j);
    if (!rep.ok()) throw Error(ErrorCode::ValidationFailed, rep.failures.front().what, rep.failures);
    return {k, j};
}

// Removed part given by indices into boundary_components(k).
inline Complex removed_components(const Complex& k, const std::vector<int>& idx) {
    auto comps = boundary_components(k);
    std::vector<Complex> parts;
    for (int i : idx) {
        if (i < 0 || static_cast<std::size_t>(i) >= comps.size()) throw Error(ErrorCode::BadParams, "no such boundary component");
        parts.push_back(comps[static_cast<std::size_t>(i)]);
    }
    return union_of(parts);
}

struct DualCobordism {
    Cobordism cob;
    std::vector<TaggedCell> vertex_origin;  // indexed by dual vertex id
    std::map<Cell, std::pair<bool, Id>> cell_origin;  // dual cell -> (is a boundary dual, cell of K)
};

// Vertices of the dual are the R-cells of K followed by the (R-1)-cells of dK.
inline DualCobordism dual_cobordism(const Cobordism& c) {
    const Complex& k = c.k;
    const Complex& j = c.removed;
    Complex bd = boundary(k);
    int r = k.max_rank();
    DualCobordism out;
    std::map<TaggedCell, Vertex> vid;
    for (Id z : k.of_rank(r)) {
        vid[{false, z}] = static_cast<Vertex>(out.vertex_origin.size());
        out.vertex_origin.push_back({false, z});
    }
    for (Id y : bd.of_rank(r - 1)) {
        TaggedCell t{true, k.find(bd.cell(y))};
        vid[t] = static_cast<Vertex>(out.vertex_origin.size());
        out.vertex_origin.push_back(t);
    }
    std::vector<std::pair<Cell, int>> ranked;
    std::vector<std::pair<Cell, int>> removed;
    for (Id x = 0; x < k.size(); ++x) {
        const Cell& xc = k.cell(x);
        if (j.contains(xc)) continue;
        Cell d;
        for (const TaggedCell& t : tilde_dual_set(k, bd, xc)) d.push_back(vid.at(t));
        std::sort(d.begin(), d.end());
        ranked.emplace_back(d, r - k.rank(x));
        out.cell_origin[d] = {false, x};
        if (bd.contains(xc)) {
            Cell e;
            for (Id y : bd.cells_containing(xc))
                if (bd.rank(y) == r - 1) e.push_back(vid.at({true, k.find(bd.cell(y))}));
            std::sort(e.begin(), e.end());
            int rk = r - 1 - bd.rank(bd.find(xc));
            ranked.emplace_back(e, rk);
            removed.emplace_back(e, rk);
            out.cell_origin[e] = {true, x};
        }
    }
    try {
        Complex kd = build_complex(ranked);
        Complex jd = removed.empty() ? Complex{} : build_complex(removed);
        out.cob = validate_cobordism(kd, jd);
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationFailed, std::string("dual cobordism: ") + e.what(), e.details());
    }
    return out;
}

// Isomorphism of cobordisms: K to K' carrying J onto J'.
inline std::optional<VertexMap> cobordism_isomorphism(const Cobordism& a, const Cobordism& b) {
    std::map<Vertex, int> la, lb;
    for (Vertex v : a.k.vertices()) la[v] = a.removed.contains(Cell{v}) ? 1 : 0;
    for (Vertex v : b.k.vertices()) lb[v] = b.removed.contains(Cell{v}) ? 1 : 0;
    auto f = find_isomorphism(a.k, b.k, la, lb);
    if (!f) return f;
    for (const Cell& c : a.removed.cells())
        if (!b.removed.contains(map_cell(*f, c))) return std::nullopt;
    if (a.removed.size() != b.removed.size()) return std::nullopt;
    return f;
}

}  // namespace cckit
