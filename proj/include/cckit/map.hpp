#pragma once

#include <memory>

#include "core.hpp"

namespace cckit {

using ComplexPtr = std::shared_ptr<const Complex>;

inline ComplexPtr share(Complex k) { return std::make_shared<const Complex>(std::move(k)); }

// Cell-to-cell map, stored as target ids indexed by source ids.
struct CcMap {
    ComplexPtr source;
    ComplexPtr target;
    std::vector<Id> image;

    Id operator()(Id x) const { return image[x]; }
    const Cell& of(Id x) const { return target->cell(image[x]); }
    Id at(const Cell& c) const {
        Id i = source->find(c);
        if (i == no_cell) throw Error(ErrorCode::CellNotFound, "cell not in map source");
        return image[i];
    }
};

inline CcMap identity_map(const ComplexPtr& k) {
    CcMap m{k, k, {}};
    m.image.resize(k->size());
    for (Id i = 0; i < k->size(); ++i) m.image[i] = i;
    return m;
}

// Map induced by a vertex bijection (e.g. an isomorphism).
inline CcMap vertex_induced(const ComplexPtr& a, const ComplexPtr& b, const std::map<Vertex, Vertex>& f) {
    CcMap m{a, b, {}};
    m.image.resize(a->size());
    for (Id i = 0; i < a->size(); ++i) {
        Cell c;
        for (Vertex v : a->cell(i)) c.push_back(f.at(v));
        std::sort(c.begin(), c.end());
        Id j = b->find(c);
        if (j == no_cell) throw Error(ErrorCode::CellNotFound, "vertex map does not carry cells to cells");
        m.image[i] = j;
    }
    return m;
}

inline CcMap compose(const CcMap& second, const CcMap& first) {
    if (first.target != second.source && !(*first.target == *second.source))
        throw Error(ErrorCode::CompositionFailed, "maps do not chain");
    CcMap m{first.source, second.target, {}};
    m.image.resize(first.image.size());
    for (Id i = 0; i < first.image.size(); ++i) m.image[i] = second.image[first.image[i]];
    return m;
}

inline std::vector<std::vector<Id>> preimages(const CcMap& m) {
    std::vector<std::vector<Id>> out(m.target->size());
    for (Id i = 0; i < m.image.size(); ++i) out[m.image[i]].push_back(i);
    return out;
}

inline bool is_total(const CcMap& m) {
    if (m.image.size() != m.source->size()) return false;
    for (Id j : m.image)
        if (j >= m.target->size()) return false;
    return true;
}

inline bool is_surjective(const CcMap& m) {
    std::vector<char> hit(m.target->size(), 0);
    for (Id j : m.image) hit[j] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

// Order preservation checked on covering pairs, which generate inclusion.
inline std::optional<std::pair<Id, Id>> order_violation(const CcMap& m) {
    const Complex& s = *m.source;
    const Complex& t = *m.target;
    for (Id y = 0; y < s.size(); ++y)
        for (Id x : s.faces(y))
            if (!subset_of(t.cell(m.image[x]), t.cell(m.image[y]))) return std::make_pair(x, y);
    return std::nullopt;
}

}  // namespace cckit
