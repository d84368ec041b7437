#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cckit {

using Vertex = std::uint32_t;
using Cell = std::vector<Vertex>;
using Id = std::uint32_t;
using VertexSet = std::vector<Vertex>;

inline constexpr Id no_cell = static_cast<Id>(-1);

struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (Vertex v : c) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline bool subset_of(const Cell& a, const Cell& b) {
    return a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool strict_subset_of(const Cell& a, const Cell& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Cell intersect(const Cell& a, const Cell& b) {
    Cell out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Cell unite(const Cell& a, const Cell& b) {
    Cell out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Cell difference(const Cell& a, const Cell& b) {
    Cell out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool meets(const Cell& a, const Cell& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return true;
    }
    return false;
}

inline Cell normalized(Cell c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

inline bool canonical_less(const Cell& a, int ra, const Cell& b, int rb) {
    if (ra != rb) return ra < rb;
    return a < b;
}

enum class ErrorCode {
    MissingVertexRank0,
    DuplicateCell,
    RankNotMonotone,
    IntersectionNotCell,
    RankGap,
    DiamondViolation,
    EmptyCell,
    KOutOfRange,
    UnknownVertex,
    NotPure,
    CellNotFound,
    NotClosed,
    NotNonSingular,
    EmptySet,
    NotABdivGraph,
    EdgeNotMapped,
    NotGraphBased,
    NotFull,
    BadPath,
    IllegalMove,
    PreconditionFailed,
    FieldInconsistent,
    BadSeed,
    NonSingularCollection,
    PredicateFailed,
    NoShellingCertificate,
    ValidationFailed,
    NotInB,
    CompositionFailed,
    CompatibilityFailed,
    NotConnecting,
    OverlapMismatch,
    StatesMismatch,
    NotASliceSequence,
    NotASlice,
    NotReduction,
    NotCollapse,
    NotOrthogonal,
    NotReflective,
    BadParams,
    ParseError,
    TooLarge,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::MissingVertexRank0: return "MissingVertexRank0";
        case ErrorCode::DuplicateCell: return "DuplicateCell";
        case ErrorCode::RankNotMonotone: return "RankNotMonotone";
        case ErrorCode::IntersectionNotCell: return "IntersectionNotCell";
        case ErrorCode::RankGap: return "RankGap";
        case ErrorCode::DiamondViolation: return "DiamondViolation";
        case ErrorCode::EmptyCell: return "EmptyCell";
        case ErrorCode::KOutOfRange: return "KOutOfRange";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::NotPure: return "NotPure";
        case ErrorCode::CellNotFound: return "CellNotFound";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::NotNonSingular: return "NotNonSingular";
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::NotABdivGraph: return "NotABdivGraph";
        case ErrorCode::EdgeNotMapped: return "EdgeNotMapped";
        case ErrorCode::NotGraphBased: return "NotGraphBased";
        case ErrorCode::NotFull: return "NotFull";
        case ErrorCode::BadPath: return "BadPath";
        case ErrorCode::IllegalMove: return "IllegalMove";
        case ErrorCode::PreconditionFailed: return "PreconditionFailed";
        case ErrorCode::FieldInconsistent: return "FieldInconsistent";
        case ErrorCode::BadSeed: return "BadSeed";
        case ErrorCode::NonSingularCollection: return "NonSingularCollection";
        case ErrorCode::PredicateFailed: return "PredicateFailed";
        case ErrorCode::NoShellingCertificate: return "NoShellingCertificate";
        case ErrorCode::ValidationFailed: return "ValidationFailed";
        case ErrorCode::NotInB: return "NotInB";
        case ErrorCode::CompositionFailed: return "CompositionFailed";
        case ErrorCode::CompatibilityFailed: return "CompatibilityFailed";
        case ErrorCode::NotConnecting: return "NotConnecting";
        case ErrorCode::OverlapMismatch: return "OverlapMismatch";
        case ErrorCode::StatesMismatch: return "StatesMismatch";
        case ErrorCode::NotASliceSequence: return "NotASliceSequence";
        case ErrorCode::NotASlice: return "NotASlice";
        case ErrorCode::NotReduction: return "NotReduction";
        case ErrorCode::NotCollapse: return "NotCollapse";
        case ErrorCode::NotOrthogonal: return "NotOrthogonal";
        case ErrorCode::NotReflective: return "NotReflective";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::TooLarge: return "TooLarge";
    }
    return "Unknown";
}

// One violated condition with the cells that witness it.
struct Violation {
    ErrorCode code;
    std::string what;
    std::vector<Cell> cells;
    int count = -1;
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg, std::vector<Violation> details = {})
        : std::runtime_error(std::string(to_string(code)) + ": " + msg),
          code_(code), details_(std::move(details)) {}

    ErrorCode code() const { return code_; }
    const std::vector<Violation>& details() const { return details_; }

private:
    ErrorCode code_;
    std::vector<Violation> details_;
};

// Ranked family of vertex sets. Cells are kept in canonical order (rank, vertices),
// so an Id is stable for equal complexes.
class Complex {
public:
    Complex() = default;

    // Builds incidence without checking any axiom.
    static Complex assemble(std::vector<std::pair<Cell, int>> cells) {
        for (auto& [c, r] : cells) c = normalized(std::move(c));
        std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
            return canonical_less(a.first, a.second, b.first, b.second);
        });
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        Complex k;
        k.cells_.reserve(cells.size());
        k.rank_.reserve(cells.size());
        for (auto& [c, r] : cells) {
            if (k.index_.count(c)) continue;
            k.index_.emplace(c, static_cast<Id>(k.cells_.size()));
            k.cells_.push_back(std::move(c));
            k.rank_.push_back(r);
        }
        k.index();
        return k;
    }

    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    const Cell& cell(Id i) const { return cells_[i]; }
    int rank(Id i) const { return rank_[i]; }
    const std::vector<Cell>& cells() const { return cells_; }

    Id find(const Cell& c) const {
        auto it = index_.find(c);
        return it == index_.end() ? no_cell : it->second;
    }
    bool contains(const Cell& c) const { return index_.count(c) != 0; }
    int rank_of(const Cell& c) const {
        Id i = find(c);
        if (i == no_cell) throw Error(ErrorCode::CellNotFound, "cell not in complex");
        return rank_[i];
    }

    const std::vector<Id>& faces(Id i) const { return faces_[i]; }
    const std::vector<Id>& cofaces(Id i) const { return cofaces_[i]; }

    // Cells containing vertex v, in canonical order.
    const std::vector<Id>& star_of(Vertex v) const {
        static const std::vector<Id> none;
        auto it = by_vertex_.find(v);
        return it == by_vertex_.end() ? none : it->second;
    }

    int max_rank() const { return rank_.empty() ? -1 : *std::max_element(rank_.begin(), rank_.end()); }

    std::vector<Id> of_rank(int r) const {
        std::vector<Id> out;
        for (Id i = 0; i < cells_.size(); ++i)
            if (rank_[i] == r) out.push_back(i);
        return out;
    }

    std::size_t count_rank(int r) const {
        return static_cast<std::size_t>(std::count(rank_.begin(), rank_.end(), r));
    }

    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> f(static_cast<std::size_t>(max_rank() + 1), 0);
        for (int r : rank_) ++f[static_cast<std::size_t>(r)];
        return f;
    }

    const VertexSet& vertices() const { return vertices_; }

    Id vertex_cell(Vertex v) const { return find(Cell{v}); }

    // E_v: the edges containing v.
    std::vector<Id> edges_at(Vertex v) const {
        std::vector<Id> out;
        for (Id i : star_of(v))
            if (rank_[i] == 1) out.push_back(i);
        return out;
    }

    // Every cell that contains the vertex set a (a non-empty).
    std::vector<Id> cells_containing(const Cell& a) const {
        std::vector<Id> out;
        if (a.empty()) {
            out.resize(cells_.size());
            for (Id i = 0; i < out.size(); ++i) out[i] = i;
            return out;
        }
        for (Id i : star_of(a.front()))
            if (subset_of(a, cells_[i])) out.push_back(i);
        return out;
    }

    // Every cell contained in the vertex set a.
    std::vector<Id> cells_within(const Cell& a) const {
        std::vector<Id> out;
        for (Vertex v : a)
            for (Id i : star_of(v))
                if (cells_[i].front() == v && subset_of(cells_[i], a)) out.push_back(i);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::pair<Cell, int>> ranked_cells() const {
        std::vector<std::pair<Cell, int>> out;
        out.reserve(cells_.size());
        for (Id i = 0; i < cells_.size(); ++i) out.emplace_back(cells_[i], rank_[i]);
        return out;
    }

    bool operator==(const Complex& o) const { return cells_ == o.cells_ && rank_ == o.rank_; }

private:
    void index() {
        for (Id i = 0; i < cells_.size(); ++i)
            for (Vertex v : cells_[i]) by_vertex_[v].push_back(i);
        for (auto& [v, ids] : by_vertex_) {
            (void)ids;
            vertices_.push_back(v);
        }
        std::sort(vertices_.begin(), vertices_.end());
        faces_.assign(cells_.size(), {});
        cofaces_.assign(cells_.size(), {});
        for (Id i = 0; i < cells_.size(); ++i) {
            if (cells_[i].empty()) continue;
            for (Id j : by_vertex_[cells_[i].front()]) {
                if (rank_[j] == rank_[i] + 1 && strict_subset_of(cells_[i], cells_[j])) {
                    cofaces_[i].push_back(j);
                    faces_[j].push_back(i);
                }
            }
        }
        for (auto& f : faces_) std::sort(f.begin(), f.end());
    }

    std::vector<Cell> cells_;
    std::vector<int> rank_;
    std::unordered_map<Cell, Id, CellHash> index_;
    std::map<Vertex, std::vector<Id>> by_vertex_;
    VertexSet vertices_;
    std::vector<std::vector<Id>> faces_;
    std::vector<std::vector<Id>> cofaces_;
};

// Axioms i-iv. Returns every violation found (empty when valid).
inline std::vector<Violation> check_axioms(const Complex& k) {
    std::vector<Violation> out;
    for (Id i = 0; i < k.size(); ++i) {
        const Cell& c = k.cell(i);
        if (c.size() == 1 && k.rank(i) != 0)
            out.push_back({ErrorCode::MissingVertexRank0, "singleton with non-zero rank", {c}});
        for (Vertex v : c)
            if (!k.contains(Cell{v}))
                out.push_back({ErrorCode::MissingVertexRank0, "vertex without rank-0 cell", {Cell{v}, c}});
    }
    for (Vertex v : k.vertices()) {
        const auto& around = k.star_of(v);
        for (std::size_t a = 0; a < around.size(); ++a) {
            Id x = around[a];
            for (std::size_t b = a + 1; b < around.size(); ++b) {
                Id y = around[b];
                const Cell& cx = k.cell(x);
                const Cell& cy = k.cell(y);
                Cell both = intersect(cx, cy);
                // each pair is visited once, at the smallest shared vertex
                if (both.front() != v) continue;
                if (!k.contains(both))
                    out.push_back({ErrorCode::IntersectionNotCell, "intersection is not a cell", {cx, cy}});
                bool xy = both.size() == cx.size();
                bool yx = both.size() == cy.size();
                if (!xy && !yx) continue;
                Id lo = xy ? x : y;
                Id hi = xy ? y : x;
                if (k.rank(lo) >= k.rank(hi)) {
                    out.push_back({ErrorCode::RankNotMonotone, "rank not increasing", {k.cell(lo), k.cell(hi)}});
                    continue;
                }
                bool step = false;
                for (Id z : k.cofaces(lo))
                    if (subset_of(k.cell(z), k.cell(hi))) { step = true; break; }
                if (!step)
                    out.push_back({ErrorCode::RankGap, "no intermediate rank", {k.cell(lo), k.cell(hi)}});
                if (k.rank(hi) == k.rank(lo) + 2) {
                    int n = 0;
                    for (Id z : k.cofaces(lo))
                        if (subset_of(k.cell(z), k.cell(hi))) ++n;
                    if (n != 2) {
                        Violation d{ErrorCode::DiamondViolation, "diamond", {k.cell(lo), k.cell(hi)}};
                        d.count = n;
                        out.push_back(d);
                    }
                }
            }
        }
    }
    return out;
}

// Validated construction from raw (cell, rank) pairs.
inline Complex build_complex(std::vector<std::pair<Cell, int>> ranked) {
    std::vector<Violation> pre;
    std::unordered_map<Cell, int, CellHash> seen;
    for (auto& [c, r] : ranked) {
        Cell n = normalized(c);
        if (n.empty()) {
            pre.push_back({ErrorCode::EmptyCell, "empty cell", {}});
            continue;
        }
        if (n.size() != c.size())
            pre.push_back({ErrorCode::DuplicateCell, "repeated vertex inside cell", {n}});
        if (r < 0)
            pre.push_back({ErrorCode::RankNotMonotone, "negative rank", {n}});
        if (!seen.emplace(n, r).second)
            pre.push_back({ErrorCode::DuplicateCell, "cell listed twice", {n}});
        c = std::move(n);
    }
    if (!pre.empty()) throw Error(pre.front().code, pre.front().what, pre);
    Complex k = Complex::assemble(std::move(ranked));
    auto v = check_axioms(k);
    if (!v.empty()) throw Error(v.front().code, v.front().what, v);
    return k;
}

inline bool is_valid(const Complex& k) { return check_axioms(k).empty(); }

}  // namespace cckit
