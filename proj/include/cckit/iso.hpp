#pragma once

#include "core.hpp"

namespace cckit {

using VertexMap = std::map<Vertex, Vertex>;

namespace detail {

// Color refinement: start from the rank/size profile of the cells through v,
// then mix in the colors of cell-mates until the partition is stable.
inline std::unordered_map<Vertex, int> refine_colors(const Complex& k, const std::map<Vertex, int>& seed) {
    std::unordered_map<Vertex, std::vector<int>> keys;
    for (Vertex v : k.vertices()) {
        std::vector<std::pair<int, int>> prof;
        for (Id i : k.star_of(v)) prof.emplace_back(k.rank(i), static_cast<int>(k.cell(i).size()));
        std::sort(prof.begin(), prof.end());
        auto it = seed.find(v);
        std::vector<int> key{it == seed.end() ? 0 : it->second};
        for (auto [r, s] : prof) {
            key.push_back(r);
            key.push_back(s);
        }
        keys[v] = std::move(key);
    }
    std::unordered_map<Vertex, int> color;
    std::size_t classes = 0;
    for (int round = 0; round < 64; ++round) {
        std::map<std::vector<int>, int> table;
        for (auto& [v, key] : keys) table.emplace(key, 0);
        int n = 0;
        for (auto& [key, c] : table) c = n++;
        for (auto& [v, key] : keys) color[v] = table[key];
        if (table.size() == classes) break;
        classes = table.size();
        for (Vertex v : k.vertices()) {
            std::vector<std::vector<int>> parts;
            for (Id i : k.star_of(v)) {
                std::vector<int> p{k.rank(i)};
                for (Vertex u : k.cell(i))
                    if (u != v) p.push_back(color[u]);
                std::sort(p.begin() + 1, p.end());
                parts.push_back(std::move(p));
            }
            std::sort(parts.begin(), parts.end());
            std::vector<int> key{color[v]};
            for (auto& p : parts) {
                key.push_back(-1);
                key.insert(key.end(), p.begin(), p.end());
            }
            keys[v] = std::move(key);
        }
    }
    return color;
}

}  // namespace detail

// Vertex bijection inducing a rank-preserving bijection of cells, or nullopt.
// Optional labels constrain which vertices may correspond.
inline std::optional<VertexMap> find_isomorphism(const Complex& a, const Complex& b,
                                                const std::map<Vertex, int>& labels_a = {},
                                                const std::map<Vertex, int>& labels_b = {}) {
    if (a.size() != b.size() || a.vertices().size() != b.vertices().size()) return std::nullopt;
    if (a.f_vector() != b.f_vector()) return std::nullopt;
    {
        std::vector<std::pair<int, std::size_t>> sa, sb;
        for (Id i = 0; i < a.size(); ++i) sa.emplace_back(a.rank(i), a.cell(i).size());
        for (Id i = 0; i < b.size(); ++i) sb.emplace_back(b.rank(i), b.cell(i).size());
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    if (a.empty()) return VertexMap{};

    // Refine both complexes jointly so color numbers are comparable.
    Vertex off = vertex_bound(a);
    std::vector<std::pair<Cell, int>> joint = a.ranked_cells();
    for (auto [c, r] : b.ranked_cells()) {
        for (auto& v : c) v += off;
        joint.emplace_back(std::move(c), r);
    }
    std::map<Vertex, int> seed;
    for (auto [v, l] : labels_a) seed[v] = l + 1;
    for (auto [v, l] : labels_b) seed[v + off] = l + 1;
    Complex ab = Complex::assemble(std::move(joint));
    auto color = detail::refine_colors(ab, seed);

    std::map<int, std::pair<int, int>> tally;
    for (Vertex v : a.vertices()) ++tally[color[v]].first;
    for (Vertex v : b.vertices()) ++tally[color[v + off]].second;
    for (auto& [c, t] : tally)
        if (t.first != t.second) return std::nullopt;

    // Order a's vertices: rarest color first, then breadth first through cells.
    std::vector<Vertex> order;
    {
        std::set<Vertex> placed;
        std::vector<Vertex> pool = a.vertices();
        std::stable_sort(pool.begin(), pool.end(), [&](Vertex x, Vertex y) {
            return tally[color[x]].first < tally[color[y]].first;
        });
        for (Vertex s : pool) {
            if (placed.count(s)) continue;
            std::vector<Vertex> queue{s};
            placed.insert(s);
            for (std::size_t q = 0; q < queue.size(); ++q) {
                Vertex v = queue[q];
                order.push_back(v);
                for (Id i : a.star_of(v))
                    for (Vertex u : a.cell(i))
                        if (placed.insert(u).second) queue.push_back(u);
            }
        }
    }

    std::map<int, std::vector<Vertex>> by_color;
    for (Vertex w : b.vertices()) by_color[color[w + off]].push_back(w);

    std::unordered_map<Vertex, Vertex> f;
    std::unordered_map<Vertex, Vertex> used;

    auto consistent = [&](Vertex v, Vertex w) {
        for (Id i : a.star_of(v)) {
            const Cell& c = a.cell(i);
            Cell img;
            img.reserve(c.size());
            bool full = true;
            for (Vertex u : c) {
                if (u == v) {
                    img.push_back(w);
                    continue;
                }
                auto it = f.find(u);
                if (it == f.end()) {
                    full = false;
                    break;
                }
                img.push_back(it->second);
            }
            if (!full) continue;
            std::sort(img.begin(), img.end());
            Id j = b.find(img);
            if (j == no_cell || b.rank(j) != a.rank(i)) return false;
        }
        // mirror check from b's side
        for (Id j : b.star_of(w)) {
            const Cell& c = b.cell(j);
            bool full = true;
            Cell pre;
            for (Vertex u : c) {
                if (u == w) {
                    pre.push_back(v);
                    continue;
                }
                auto it = used.find(u);
                if (it == used.end()) {
                    full = false;
                    break;
                }
                pre.push_back(it->second);
            }
            if (!full) continue;
            std::sort(pre.begin(), pre.end());
            Id i = a.find(pre);
            if (i == no_cell || a.rank(i) != b.rank(j)) return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
        if (depth == order.size()) return true;
        Vertex v = order[depth];
        for (Vertex w : by_color[color[v]]) {
            if (used.count(w)) continue;
            if (!consistent(v, w)) continue;
            f[v] = w;
            used[w] = v;
            if (search(depth + 1)) return true;
            f.erase(v);
            used.erase(w);
        }
        return false;
    };
    if (!search(0)) return std::nullopt;

    VertexMap out;
    for (auto [v, w] : f) out[v] = w;
    for (Id i = 0; i < a.size(); ++i) {
        Cell img;
        for (Vertex u : a.cell(i)) img.push_back(out[u]);
        std::sort(img.begin(), img.end());
        Id j = b.find(img);
        if (j == no_cell || b.rank(j) != a.rank(i)) return std::nullopt;
    }
    return out;
}

inline bool is_isomorphic(const Complex& a, const Complex& b) { return find_isomorphism(a, b).has_value(); }

inline Cell map_cell(const VertexMap& f, const Cell& c) {
    Cell out;
    out.reserve(c.size());
    for (Vertex v : c) out.push_back(f.at(v));
    std::sort(out.begin(), out.end());
    return out;
}

// True when f carries every cell of a onto a cell of b of equal rank, bijectively.
inline bool is_isomorphism(const Complex& a, const Complex& b, const VertexMap& f) {
    if (a.size() != b.size() || f.size() != a.vertices().size()) return false;
    std::set<Vertex> img;
    for (auto [v, w] : f) img.insert(w);
    if (img.size() != f.size()) return false;
    for (Id i = 0; i < a.size(); ++i) {
        for (Vertex v : a.cell(i))
            if (!f.count(v)) return false;
        Id j = b.find(map_cell(f, a.cell(i)));
        if (j == no_cell || b.rank(j) != a.rank(i)) return false;
    }
    return true;
}

}  // namespace cckit
