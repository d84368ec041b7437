#pragma once

#include <functional>
#include <map>
#include <memory>

#include "core.hpp"

namespace cckit {

// Facet order of a complex together with, for each step k, a shelling of the
// boundary of the k-th facet that starts with the intersection complex of that step.
struct Shelling {
    std::vector<Cell> order;
    std::vector<std::shared_ptr<const Shelling>> steps;
};

namespace detail {

// Cells of K inside z that also lie inside one of the earlier facets.
inline Complex step_intersection(const Complex& k, const Cell& z, const std::vector<Cell>& earlier) {
    std::vector<Id> ids;
    for (Id i : k.cells_within(z)) {
        const Cell& c = k.cell(i);
        for (const Cell& e : earlier)
            if (subset_of(c, e)) {
                ids.push_back(i);
                break;
            }
    }
    return subcomplex(k, ids);
}

inline Complex facet_boundary(const Complex& k, const Cell& z) {
    std::vector<Id> ids;
    for (Id i : k.cells_within(z))
        if (k.cell(i) != z) ids.push_back(i);
    return subcomplex(k, ids);
}

inline std::vector<Cell> top_cells(const Complex& k) {
    std::vector<Cell> out;
    for (Id i : k.of_rank(k.max_rank())) out.push_back(k.cell(i));
    return out;
}

class ShellSearch {
public:
    std::shared_ptr<const Shelling> find(const Complex& k, const std::vector<Cell>& prefix) {
        auto key = std::make_pair(k.cells(), prefix);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto out = search(k, prefix);
        memo_.emplace(std::move(key), out);
        return out;
    }

private:
    std::shared_ptr<const Shelling> search(const Complex& k, const std::vector<Cell>& prefix) {
        int r = k.max_rank();
        if (r < 0) return nullptr;
        if (r == 0) {
            if (k.size() != 1) return nullptr;
            auto s = std::make_shared<Shelling>();
            s->order = {k.cell(0)};
            s->steps = {nullptr};
            return s;
        }
        if (!is_non_singular(k)) return nullptr;
        std::vector<Cell> facets = top_cells(k);
        std::set<Cell> pre(prefix.begin(), prefix.end());
        bool closed = is_closed(k);
        std::set<std::vector<bool>> dead;
        std::vector<bool> used(facets.size(), false);
        std::vector<Cell> order;
        std::vector<std::shared_ptr<const Shelling>> steps;

        std::function<bool()> grow = [&]() -> bool {
            if (order.size() == facets.size()) return true;
            if (dead.count(used)) return false;
            bool in_prefix = order.size() < pre.size();
            for (std::size_t i = 0; i < facets.size(); ++i) {
                if (used[i]) continue;
                if (in_prefix && !pre.count(facets[i])) continue;
                auto cert = admissible(k, facets[i], order, order.size() + 1 == facets.size(), closed, r);
                if (!cert) continue;
                used[i] = true;
                order.push_back(facets[i]);
                steps.push_back(cert);
                if (grow()) return true;
                used[i] = false;
                order.pop_back();
                steps.pop_back();
            }
            dead.insert(used);
            return false;
        };
        if (!grow()) return nullptr;
        auto s = std::make_shared<Shelling>();
        s->order = order;
        s->steps = steps;
        return s;
    }

    // Certificate for adding z after `earlier`, or null when the step is illegal.
    std::shared_ptr<const Shelling> admissible(const Complex& k, const Cell& z, const std::vector<Cell>& earlier,
                                               bool last, bool closed, int r) {
        Complex bd = facet_boundary(k, z);
        if (r == 1) {
            // 1-dimensional base case: trees and cycles only
            auto ok = std::make_shared<Shelling>();
            if (earlier.empty()) return ok;
            Complex meet = step_intersection(k, z, earlier);
            std::size_t n = meet.size();
            if (n == 1) return ok;
            if (n == 2 && last && closed) return ok;
            return nullptr;
        }
        if (earlier.empty()) return find(bd, {});
        Complex meet = step_intersection(k, z, earlier);
        if (meet.empty() || meet.max_rank() != r - 1 || !is_non_singular(meet)) return nullptr;
        bool meet_closed = boundary(meet).empty();
        if (meet_closed && !(last && closed)) return nullptr;
        if (!meet_closed && last && closed) return nullptr;
        return find(bd, top_cells(meet));
    }

    std::map<std::pair<std::vector<Cell>, std::vector<Cell>>, std::shared_ptr<const Shelling>> memo_;
};

}  // namespace detail

inline std::optional<Shelling> find_shelling(const Complex& k) {
    if (!is_non_singular(k)) throw Error(ErrorCode::NotNonSingular, "shelling needs a non-singular complex");
    detail::ShellSearch s;
    auto out = s.find(k, {});
    if (!out) return std::nullopt;
    return *out;
}

// Independent re-check of a certificate, following the recursive definition.
inline bool verify_shelling(const Complex& k, const Shelling& s, const std::vector<Cell>& prefix = {}) {
    int r = k.max_rank();
    if (r == 0) return k.size() == 1 && s.order.size() == 1;
    if (!is_non_singular(k)) return false;
    auto tops = detail::top_cells(k);
    if (s.order.size() != tops.size() || s.steps.size() != tops.size()) return false;
    if (std::set<Cell>(s.order.begin(), s.order.end()) != std::set<Cell>(tops.begin(), tops.end())) return false;
    if (std::set<Cell>(s.order.begin(), s.order.begin() + static_cast<std::ptrdiff_t>(prefix.size())) !=
        std::set<Cell>(prefix.begin(), prefix.end()))
        return false;
    bool closed = is_closed(k);
    std::vector<Cell> earlier;
    for (std::size_t i = 0; i < s.order.size(); ++i) {
        const Cell& z = s.order[i];
        bool last = i + 1 == s.order.size();
        Complex bd = detail::facet_boundary(k, z);
        if (r == 1) {
            if (i > 0) {
                std::size_t n = detail::step_intersection(k, z, earlier).size();
                if (!(n == 1 || (n == 2 && last && closed))) return false;
            }
        } else if (i == 0) {
            if (!s.steps[i] || !verify_shelling(bd, *s.steps[i])) return false;
        } else {
            Complex meet = detail::step_intersection(k, z, earlier);
            if (meet.empty() || meet.max_rank() != r - 1 || !is_non_singular(meet)) return false;
            bool meet_closed = boundary(meet).empty();
            if (meet_closed != (last && closed)) return false;
            if (!s.steps[i] || !verify_shelling(bd, *s.steps[i], detail::top_cells(meet))) return false;
        }
        earlier.push_back(z);
    }
    return true;
}

struct EulerPoincare {
    bool consistent = false;
    long long chi = 0;
    long long expected = 0;
};

inline EulerPoincare check_euler_poincare(const Complex& k) {
    auto s = find_shelling(k);
    if (!s) throw Error(ErrorCode::NoShellingCertificate, "no shelling found");
    EulerPoincare e;
    e.chi = euler_characteristic(k);
    int r = k.max_rank();
    e.expected = boundary(k).empty() ? 1 + ((r % 2 == 0) ? 1 : -1) : 1;
    e.consistent = e.chi == e.expected;
    return e;
}

struct TwoShelling {
    std::vector<Vertex> order;
};

// Vertex order such that every 2-cell meets each prefix in a connected graph.
inline std::optional<TwoShelling> find_2_shelling(const Complex& k) {
    if (k.max_rank() < 2) throw Error(ErrorCode::PreconditionFailed, "2-shelling needs rank >= 2");
    const VertexSet& vs = k.vertices();
    std::unordered_map<Vertex, std::size_t> pos;
    for (std::size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = i;
    std::vector<std::vector<Id>> cells_at(vs.size());
    for (Id c : k.of_rank(2))
        for (Vertex v : k.cell(c)) cells_at[pos[v]].push_back(c);

    std::vector<bool> used(vs.size(), false);
    std::set<std::vector<bool>> dead;
    std::vector<Vertex> order;

    auto fits = [&](std::size_t i) {
        for (Id c : cells_at[i]) {
            Cell part;
            for (Vertex u : k.cell(c))
                if (used[pos[u]] || u == vs[i]) part.push_back(u);
            if (!graph_connected_on(k, part)) return false;
        }
        return true;
    };
    std::function<bool()> grow = [&]() -> bool {
        if (order.size() == vs.size()) return true;
        if (dead.count(used)) return false;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (used[i] || !fits(i)) continue;
            used[i] = true;
            order.push_back(vs[i]);
            if (grow()) return true;
            used[i] = false;
            order.pop_back();
        }
        dead.insert(used);
        return false;
    };
    if (!grow()) return std::nullopt;
    return TwoShelling{order};
}

inline bool verify_2_shelling(const Complex& k, const TwoShelling& s) {
    if (std::set<Vertex>(s.order.begin(), s.order.end()) != std::set<Vertex>(k.vertices().begin(), k.vertices().end()) ||
        s.order.size() != k.vertices().size())
        return false;
    for (std::size_t j = 0; j <= s.order.size(); ++j) {
        Cell prefix(s.order.begin(), s.order.begin() + static_cast<std::ptrdiff_t>(j));
        std::sort(prefix.begin(), prefix.end());
        for (Id c : k.of_rank(2))
            if (!graph_connected_on(k, intersect(k.cell(c), prefix))) return false;
    }
    return true;
}

// Section [x, y] (x may be empty) is connected when the open interval is
// connected under inclusion, or when the rank gap is at most 2.
inline bool section_connected(const Complex& k, const Cell& x, Id y) {
    int rx = x.empty() ? -1 : k.rank_of(x);
    if (k.rank(y) - rx <= 2) return true;
    std::vector<Id> mid;
    for (Id w : k.cells_within(k.cell(y)))
        if (w != y && strict_subset_of(x, k.cell(w))) mid.push_back(w);
    if (mid.empty()) return true;
    std::vector<std::pair<Id, Id>> edges;
    for (Id w : mid)
        for (Id f : k.faces(w))
            if (std::binary_search(mid.begin(), mid.end(), f)) edges.emplace_back(f, w);
    return nodes_connected(mid, edges);
}

struct PolytopeReport {
    bool polytope = false;
    std::optional<std::pair<Cell, Cell>> bad_section;
};

inline PolytopeReport is_polytope(const Complex& k) {
    if (!is_pure(k)) throw Error(ErrorCode::NotPure, "polytope check needs a pure complex");
    PolytopeReport rep;
    if (maximal_cells(k).size() != 1) return rep;
    for (Id y = 0; y < k.size(); ++y) {
        if (!section_connected(k, {}, y)) {
            rep.bad_section = std::make_pair(Cell{}, k.cell(y));
            return rep;
        }
        for (Id x : k.cells_within(k.cell(y)))
            if (x != y && !section_connected(k, k.cell(x), y)) {
                rep.bad_section = std::make_pair(k.cell(x), k.cell(y));
                return rep;
            }
    }
    rep.polytope = true;
    return rep;
}

}  // namespace cckit
