#pragma once

#include "duality.hpp"
#include "subdivision.hpp"

namespace cckit::gen {

inline void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::BadParams, what);
}

// All non-empty subsets of the given cells, ranked by size - 1.
inline Complex simplicial_closure(const std::vector<Cell>& tops) {
    std::set<Cell> all;
    for (const Cell& t0 : tops) {
        Cell t = normalized(t0);
        std::size_t n = t.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
            Cell c;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t{1} << i)) c.push_back(t[i]);
            all.insert(c);
        }
    }
    std::vector<std::pair<Cell, int>> ranked;
    for (const Cell& c : all) ranked.emplace_back(c, static_cast<int>(c.size()) - 1);
    return Complex::assemble(std::move(ranked));
}

inline Complex simplex(int r) {
    require(r >= 0, "simplex rank must be non-negative");
    Cell all(static_cast<std::size_t>(r + 1));
    std::iota(all.begin(), all.end(), 0);
    return simplicial_closure({all});
}

// Boundary of the r-simplex: a closed (r-1)-cc on r+1 vertices.
inline Complex simplex_boundary(int r) {
    require(r >= 1, "simplex_boundary needs R >= 1");
    std::vector<Cell> tops;
    for (int skip = 0; skip <= r; ++skip) {
        Cell c;
        for (int v = 0; v <= r; ++v)
            if (v != skip) c.push_back(static_cast<Vertex>(v));
        tops.push_back(c);
    }
    return simplicial_closure(tops);
}

inline Complex cycle(int n) {
    require(n >= 3, "cycle needs n >= 3");
    std::vector<std::pair<Cell, int>> ranked;
    for (int i = 0; i < n; ++i) {
        ranked.push_back({{static_cast<Vertex>(i)}, 0});
        ranked.push_back({{static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)}, 1});
    }
    return Complex::assemble(std::move(ranked));
}

inline Complex path(int n) {
    require(n >= 1, "path needs n >= 1");
    std::vector<std::pair<Cell, int>> ranked;
    for (int i = 0; i <= n; ++i) ranked.push_back({{static_cast<Vertex>(i)}, 0});
    for (int i = 0; i < n; ++i) ranked.push_back({{static_cast<Vertex>(i), static_cast<Vertex>(i + 1)}, 1});
    return Complex::assemble(std::move(ranked));
}

// m x n unit squares of the square lattice; vertex (i, j) is i * (n + 1) + j.
inline Complex grid(int m, int n) {
    require(m >= 1 && n >= 1, "grid needs positive sizes");
    auto id = [n](int i, int j) { return static_cast<Vertex>(i * (n + 1) + j); };
    std::vector<std::pair<Cell, int>> ranked;
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j) {
            ranked.push_back({{id(i, j)}, 0});
            if (i < m) ranked.push_back({{id(i, j), id(i + 1, j)}, 1});
            if (j < n) ranked.push_back({{id(i, j), id(i, j + 1)}, 1});
            if (i < m && j < n) ranked.push_back({{id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)}, 2});
        }
    return Complex::assemble(std::move(ranked));
}

// C_n times a path of length h; vertex (level l, position i) is l * n + i.
inline Complex cylinder(int n, int h) {
    require(n >= 3 && h >= 1, "cylinder needs n >= 3 and h >= 1");
    auto id = [n](int l, int i) { return static_cast<Vertex>(l * n + ((i % n) + n) % n); };
    std::vector<std::pair<Cell, int>> ranked;
    for (int l = 0; l <= h; ++l)
        for (int i = 0; i < n; ++i) {
            ranked.push_back({{id(l, i)}, 0});
            ranked.push_back({{id(l, i), id(l, i + 1)}, 1});
            if (l < h) {
                ranked.push_back({{id(l, i), id(l + 1, i)}, 1});
                ranked.push_back({{id(l, i), id(l, i + 1), id(l + 1, i), id(l + 1, i + 1)}, 2});
            }
        }
    return Complex::assemble(std::move(ranked));
}

// base x [0, 1]: bottom copy keeps ids, top copy is shifted by vertex_bound(base).
inline Complex prism(const Complex& base) {
    require(!base.empty(), "prism of the empty complex");
    Vertex off = vertex_bound(base);
    std::vector<std::pair<Cell, int>> ranked;
    for (Id i = 0; i < base.size(); ++i) {
        const Cell& c = base.cell(i);
        Cell top;
        for (Vertex v : c) top.push_back(v + off);
        ranked.push_back({c, base.rank(i)});
        ranked.push_back({top, base.rank(i)});
        ranked.push_back({unite(c, top), base.rank(i) + 1});
    }
    return Complex::assemble(std::move(ranked));
}

// Two tetrahedra sharing the triangle {0, 1, 2}.
inline Complex bitetra() { return simplicial_closure({{0, 1, 2, 3}, {0, 1, 2, 4}}); }

// One 3-cell whose boundary is a 4 x 3 square torus; vertex (i, j) is 3 * i + j.
inline Complex torus_cell() {
    auto id = [](int i, int j) { return static_cast<Vertex>(3 * (((i % 4) + 4) % 4) + (((j % 3) + 3) % 3)); };
    std::vector<std::pair<Cell, int>> ranked;
    Cell all;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) {
            all.push_back(id(i, j));
            ranked.push_back({{id(i, j)}, 0});
            ranked.push_back({{id(i, j), id(i + 1, j)}, 1});
            ranked.push_back({{id(i, j), id(i, j + 1)}, 1});
            ranked.push_back({{id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)}, 2});
        }
    ranked.push_back({all, 3});
    return Complex::assemble(std::move(ranked));
}

// Triangulated m x n torus: two triangles per lattice square.
inline Complex triangulated_torus(int m, int n) {
    require(m >= 3 && n >= 3, "triangulated torus needs m, n >= 3");
    auto id = [m, n](int i, int j) { return static_cast<Vertex>(n * (((i % m) + m) % m) + (((j % n) + n) % n)); };
    std::vector<Cell> tops;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            tops.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tops.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    return simplicial_closure(tops);
}

inline Complex dual_bdiv(const Complex& k) { return dual(*barycentric(k).complex); }

// Family name plus integer parameters, as used by the CLI.
inline Complex generate(const std::string& family, const std::vector<int>& p) {
    auto arg = [&](std::size_t i) {
        require(i < p.size(), "missing generator parameter");
        return p[i];
    };
    if (family == "simplex_boundary") return simplex_boundary(arg(0));
    if (family == "simplex") return simplex(arg(0));
    if (family == "cycle") return cycle(arg(0));
    if (family == "path") return path(arg(0));
    if (family == "grid") return grid(arg(0), arg(1));
    if (family == "cylinder") return cylinder(arg(0), arg(1));
    if (family == "bitetra") return bitetra();
    if (family == "torus_cell") return torus_cell();
    if (family == "torus_surface") return boundary(torus_cell());
    if (family == "triangulated_torus") return triangulated_torus(arg(0), arg(1));
    const std::string pre = "prism:";
    const std::string db = "dual_bdiv:";
    if (family.rfind(pre, 0) == 0) return compact(prism(generate(family.substr(pre.size()), p)));
    if (family.rfind(db, 0) == 0) return dual_bdiv(generate(family.substr(db.size()), p));
    throw Error(ErrorCode::BadParams, "unknown family " + family);
}

}  // namespace cckit::gen
