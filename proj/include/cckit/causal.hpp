#pragma once

#include <array>
#include <set>

#include "cobordism.hpp"
#include "map.hpp"

namespace cckit {

// Greatest lower bound of a non-empty family; nullopt stands for the empty set.
inline std::optional<Id> meet_all(const Complex& k, const std::vector<Id>& ids) {
    if (ids.empty()) return std::nullopt;
    Cell m = k.cell(ids.front());
    for (Id i : ids) m = intersect(m, k.cell(i));
    if (m.empty()) return std::nullopt;
    Id j = k.find(m);
    if (j != no_cell) return j;
    std::optional<Id> best;
    for (Id c : k.cells_within(m))
        if (!best || subset_of(k.cell(*best), k.cell(c))) best = c;
    for (Id c : k.cells_within(m))
        if (!subset_of(k.cell(c), k.cell(*best))) return std::nullopt;
    return best;
}

inline CcMap map_by_cells(const ComplexPtr& s, const ComplexPtr& t, const std::function<Cell(const Cell&)>& f) {
    CcMap m{s, t, std::vector<Id>(s->size())};
    for (Id i = 0; i < s->size(); ++i) {
        Id j = t->find(normalized(f(s->cell(i))));
        if (j == no_cell) throw Error(ErrorCode::CellNotFound, "image is not a cell of the target");
        m.image[i] = j;
    }
    return m;
}

// The same map seen through vertex relabelings of its source and target.
inline CcMap transport_map(const CcMap& m, const ComplexPtr& s2, const std::function<Vertex(Vertex)>& fs,
                           const ComplexPtr& t2, const std::function<Vertex(Vertex)>& ft) {
    CcMap out{s2, t2, std::vector<Id>(s2->size(), no_cell)};
    for (Id i = 0; i < m.source->size(); ++i) {
        Cell a, b;
        for (Vertex v : m.source->cell(i)) a.push_back(fs(v));
        for (Vertex v : m.of(i)) b.push_back(ft(v));
        Id x = s2->find(normalized(a));
        Id y = t2->find(normalized(b));
        if (x == no_cell || y == no_cell) throw Error(ErrorCode::CellNotFound, "relabeling does not carry cells to cells");
        out.image[x] = y;
    }
    return out;
}

inline bool same_map(const CcMap& a, const CcMap& b) {
    return *a.source == *b.source && *a.target == *b.target && a.image == b.image;
}

// Requires closed source and target; the dual cell of x goes to the dual cell of f(x).
inline CcMap dual_map(const CcMap& f) {
    Dual ds = dual_closed(*f.source);
    Dual dt = dual_closed(*f.target);
    CcMap out{share(ds.complex), share(dt.complex), std::vector<Id>(f.image.size())};
    for (Id d = 0; d < out.source->size(); ++d) out.image[d] = dt.to_dual[f.image[ds.to_primal[d]]];
    return out;
}

struct MapReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(const std::string& cond) const {
        return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.what == cond; });
    }
};

namespace detail {

inline bool homomorphism_ok(const CcMap& m, ErrorCode code, MapReport& rep) {
    auto add = [&](const std::string& w, std::vector<Cell> cells = {}) {
        rep.violations.push_back(Violation{code, w, std::move(cells), -1});
    };
    if (!is_total(m)) {
        add("total");
        return false;
    }
    if (!is_surjective(m)) add("surjective");
    if (auto v = order_violation(m)) add("order", {m.source->cell(v->first), m.source->cell(v->second)});
    return rep.ok();
}

inline std::vector<std::size_t> preimage_sizes(const CcMap& m) {
    std::vector<std::size_t> n(m.target->size(), 0);
    for (Id y : m.image) ++n[y];
    return n;
}

}  // namespace detail

inline MapReport check_reduction(const CcMap& rho) {
    MapReport rep;
    const ErrorCode code = ErrorCode::NotReduction;
    if (!detail::homomorphism_ok(rho, code, rep)) return rep;
    const Complex& j = *rho.source;
    const Complex& k = *rho.target;
    auto add = [&](const char* w, Id x) { rep.violations.push_back(Violation{code, w, {j.cell(x), rho.of(x)}, -1}); };
    auto pre = detail::preimage_sizes(rho);
    for (Id y = 0; y < k.size(); ++y)
        if (k.rank(y) == 0 && pre[y] != 1)
            rep.violations.push_back(Violation{code, "r1", {k.cell(y)}, static_cast<int>(pre[y])});
    for (Id x = 0; x < j.size(); ++x) {
        const auto& cof = j.cofaces(x);
        if (!cof.empty()) {
            auto lhs = meet_all(j, cof);
            std::vector<Id> img;
            for (Id c : cof) img.push_back(rho(c));
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            auto rhs = meet_all(k, img);
            if (lhs.has_value() != rhs.has_value() || (lhs && rho(*lhs) != *rhs)) add("r2", x);
        }
        std::set<std::pair<Id, int>> above;
        for (Id a : j.cells_containing(j.cell(x))) above.insert({rho(a), j.rank(a)});
        for (Id y : k.cells_containing(rho.of(x)))
            if (!above.count({y, k.rank(y)})) {
                add("r3", x);
                break;
            }
        int rj = j.rank(x), rk = k.rank(rho(x));
        if (rj == rk - 1) {
            int n = 0;
            for (Id c : cof) n += rho(c) == rho(x);
            if (n != 2) add("r4", x);
        } else if (rj == rk) {
            for (Id y : k.cofaces(rho(x))) {
                int n = 0;
                for (Id c : cof) n += rho(c) == y;
                if (n != 1) {
                    add("r5", x);
                    break;
                }
            }
        }
    }
    return rep;
}

inline MapReport check_collapse(const CcMap& pi) {
    MapReport rep;
    const ErrorCode code = ErrorCode::NotCollapse;
    if (!detail::homomorphism_ok(pi, code, rep)) return rep;
    const Complex& j = *pi.source;
    const Complex& k = *pi.target;
    auto add = [&](const char* w, Id x) { rep.violations.push_back(Violation{code, w, {j.cell(x), pi.of(x)}, -1}); };
    auto pre = detail::preimage_sizes(pi);
    for (Id z : maximal_cells(k))
        if (pre[z] != 1) rep.violations.push_back(Violation{code, "c1", {k.cell(z)}, static_cast<int>(pre[z])});
    for (Id x = 0; x < j.size(); ++x) {
        const auto& fac = j.faces(x);
        if (j.rank(x) >= 1) {
            std::vector<Id> img;
            for (Id f : fac) img.push_back(pi(f));
            auto up = join_all(k, img);
            if (!up || *up != pi(x)) add("c2", x);
        }
        std::set<std::pair<Id, int>> below;
        for (Id b : j.cells_within(j.cell(x))) below.insert({pi(b), j.rank(b)});
        for (Id y : k.cells_within(pi.of(x)))
            if (!below.count({y, k.rank(y)})) {
                add("c3", x);
                break;
            }
        int rj = j.rank(x), rk = k.rank(pi(x));
        if (rj == rk + 1) {
            int n = 0;
            for (Id f : fac) n += pi(f) == pi(x);
            if (n != 2) add("c4", x);
        } else if (rj == rk) {
            for (Id y : k.faces(pi(x))) {
                int n = 0;
                for (Id f : fac) n += pi(f) == y;
                if (n != 1) {
                    add("c5", x);
                    break;
                }
            }
        }
    }
    return rep;
}

class Reduction {
public:
    const CcMap& map() const { return map_; }
    const ComplexPtr& source() const { return map_.source; }
    const ComplexPtr& target() const { return map_.target; }

    friend Reduction certify_reduction(CcMap m);

private:
    explicit Reduction(CcMap m) : map_(std::move(m)) {}
    CcMap map_;
};

class Collapse {
public:
    const CcMap& map() const { return map_; }
    const ComplexPtr& source() const { return map_.source; }
    const ComplexPtr& target() const { return map_.target; }

    friend Collapse certify_collapse(CcMap m);

private:
    explicit Collapse(CcMap m) : map_(std::move(m)) {}
    CcMap map_;
};

inline Reduction certify_reduction(CcMap m) {
    auto rep = check_reduction(m);
    if (!rep.ok()) throw Error(ErrorCode::NotReduction, rep.violations.front().what, rep.violations);
    return Reduction(std::move(m));
}

inline Collapse certify_collapse(CcMap m) {
    auto rep = check_collapse(m);
    if (!rep.ok()) throw Error(ErrorCode::NotCollapse, rep.violations.front().what, rep.violations);
    return Collapse(std::move(m));
}

namespace detail {

inline void require_b(const CcMap& m) {
    if (!in_class_b(*m.source) || !in_class_b(*m.target) || m.source->empty())
        throw Error(ErrorCode::NotInB, "source and target must be closed, non-pinching and cell-connected");
}

}  // namespace detail

inline Collapse dual_of_reduction(const Reduction& rho) {
    detail::require_b(rho.map());
    return certify_collapse(dual_map(rho.map()));
}

inline Reduction dual_of_collapse(const Collapse& pi) {
    detail::require_b(pi.map());
    return certify_reduction(dual_map(pi.map()));
}

// first : J -> K, second : K -> L.
inline Reduction compose_reductions(const Reduction& first, const Reduction& second) {
    if (!is_pure(*first.source()) || !is_pure(*second.source()))
        throw Error(ErrorCode::PreconditionFailed, "composition needs pure sources");
    CcMap m = compose(second.map(), first.map());
    auto rep = check_reduction(m);
    if (!rep.ok()) throw Error(ErrorCode::CompositionFailed, rep.violations.front().what, rep.violations);
    return certify_reduction(std::move(m));
}

inline Collapse compose_collapses(const Collapse& first, const Collapse& second) {
    if (!is_pure(*first.source()) || !is_pure(*second.source()))
        throw Error(ErrorCode::PreconditionFailed, "composition needs pure sources");
    CcMap m = compose(second.map(), first.map());
    auto rep = check_collapse(m);
    if (!rep.ok()) throw Error(ErrorCode::CompositionFailed, rep.violations.front().what, rep.violations);
    return certify_collapse(std::move(m));
}

inline Reduction identity_reduction(const ComplexPtr& k) { return certify_reduction(identity_map(k)); }
inline Collapse identity_collapse(const ComplexPtr& k) { return certify_collapse(identity_map(k)); }

// ---------------------------------------------------------------- transition

// x_J: the J-ends of the collar edges inside x.
inline Cell reduced_cell(const Complex& k, const VertexSet& jv, const Cell& x) {
    Cell out;
    for (Id e : collar_edges(k, jv, x)) out.push_back(intersect(k.cell(e), jv).front());
    return normalized(out);
}

inline int rank_within(const Complex& j, const Cell& a) {
    int r = -1;
    for (Id c : j.cells_within(intersect(a, j.vertices()))) r = std::max(r, j.rank(c));
    return r;
}

struct Transition {
    Complex complex;  // assembled, not validated
    std::map<Id, Cell> reduced;
    std::map<Cell, std::vector<Id>> representatives;
    std::vector<Cell> ambiguous_rank;
    std::vector<Id> empty_reduced;
};

namespace detail {

inline std::vector<Id> minimal_among(const Complex& k, const std::vector<Id>& ids) {
    std::vector<Id> out;
    for (Id a : ids) {
        bool minimal = true;
        for (Id b : ids)
            if (b != a && strict_subset_of(k.cell(b), k.cell(a))) minimal = false;
        if (minimal) out.push_back(a);
    }
    return out;
}

// K_J^-(A): minimal collar cells containing A.
inline std::vector<Id> minimal_collar_over(const Complex& k, const std::vector<char>& in_collar, const Cell& a) {
    std::vector<Id> over;
    for (Id y : k.cells_containing(a))
        if (in_collar[y]) over.push_back(y);
    return minimal_among(k, over);
}

inline std::vector<char> collar_flags(const Complex& k, const VertexSet& jv) {
    std::vector<char> f(k.size(), 0);
    for (Id x : collar(k, jv)) f[x] = 1;
    return f;
}

}  // namespace detail

inline Transition transition(const Complex& k, const Complex& j) {
    Transition t;
    const VertexSet& jv = j.vertices();
    for (Id x : collar(k, jv)) {
        Cell r = reduced_cell(k, jv, k.cell(x));
        if (r.empty()) {
            t.empty_reduced.push_back(x);
            continue;
        }
        t.reduced[x] = r;
        t.representatives[r].push_back(x);
    }
    std::vector<std::pair<Cell, int>> ranked;
    for (const auto& [r, reps] : t.representatives) {
        std::set<int> ranks;
        for (Id x : reps) ranks.insert(rank_within(j, k.cell(x)));
        if (ranks.size() > 1) t.ambiguous_rank.push_back(r);
        int rank = rank_within(j, k.cell(detail::minimal_among(k, reps).front()));
        ranked.emplace_back(r, rank);
    }
    t.complex = Complex::assemble(std::move(ranked));
    return t;
}

struct UniformReport {
    std::vector<Violation> failures;
    Transition transition;
    bool ok() const { return failures.empty(); }
    bool has(const std::string& clause) const {
        return std::any_of(failures.begin(), failures.end(), [&](const Violation& v) { return v.what == clause; });
    }
};

// Clauses: non-degenerate, pure-intersection, pure-rank, uniformity, transition.
inline UniformReport check_uniform(const Complex& k, const Complex& j) {
    UniformReport rep;
    auto add = [&](ErrorCode c, const char* w, std::vector<Cell> cells) {
        rep.failures.push_back(Violation{c, w, std::move(cells), -1});
    };
    if (!is_subcomplex(k, j)) throw Error(ErrorCode::PreconditionFailed, "J must be a sub-complex of K");
    Cell w;
    if (!is_non_degenerate(k, j, &w)) add(ErrorCode::ValidationFailed, "non-degenerate", {w});
    const VertexSet& jv = j.vertices();
    auto in_collar = detail::collar_flags(k, jv);
    std::vector<Id> col = collar(k, jv);
    for (Id x : col) {
        Complex jx = restriction(j, intersect(k.cell(x), jv));
        if (!is_pure(jx)) {
            add(ErrorCode::NotPure, "pure-intersection", {k.cell(x)});
            break;
        }
    }
    for (Id x = 0; x < j.size(); ++x) {
        auto mins = detail::minimal_collar_over(k, in_collar, j.cell(x));
        std::set<int> ranks;
        for (Id y : mins) ranks.insert(k.rank(y));
        if (ranks.size() > 1) {
            std::vector<Cell> cells{j.cell(x)};
            for (Id y : mins) cells.push_back(k.cell(y));
            add(ErrorCode::NotPure, "pure-rank", cells);
            break;
        }
    }
    rep.transition = transition(k, j);
    const Transition& t = rep.transition;
    for (Id x : t.empty_reduced) add(ErrorCode::PredicateFailed, "uniformity", {k.cell(x)});
    bool u_ok = true;
    for (std::size_t a = 0; a < col.size() && u_ok; ++a) {
        auto ia = t.reduced.find(col[a]);
        if (ia == t.reduced.end()) continue;
        Cell ja = intersect(k.cell(col[a]), jv);
        for (std::size_t b = 0; b < col.size() && u_ok; ++b) {
            auto ib = t.reduced.find(col[b]);
            if (a == b || ib == t.reduced.end()) continue;
            bool lhs = subset_of(ja, intersect(k.cell(col[b]), jv));
            bool rhs = subset_of(ia->second, ib->second);
            if (lhs != rhs) {
                add(ErrorCode::PredicateFailed, "uniformity", {k.cell(col[a]), k.cell(col[b])});
                u_ok = false;
            }
        }
    }
    for (const Cell& c : t.ambiguous_rank) add(ErrorCode::PredicateFailed, "uniformity", {c});
    try {
        Complex tc = build_complex(t.complex.ranked_cells());
        if (!in_class_b(tc)) add(ErrorCode::NotInB, "transition", {});
    } catch (const Error& e) {
        rep.failures.push_back(Violation{ErrorCode::NotInB, "transition", {}, -1});
    }
    return rep;
}

// ------------------------------------------------------ compatibility family

struct PairReport {
    bool ok = true;
    std::string clause;
    std::pair<Cell, Cell> witness;
    explicit operator bool() const { return ok; }
};

namespace detail {

inline PairReport fail(const std::string& clause, const Cell& a, const Cell& b) {
    return PairReport{false, clause, {a, b}};
}

// Pairs of distinct cells lying in a common cell.
inline std::set<std::pair<Id, Id>> bounded_pairs(const Complex& k) {
    std::set<std::pair<Id, Id>> out;
    for (Id z : maximal_cells(k)) {
        auto in = k.cells_within(k.cell(z));
        for (std::size_t a = 0; a < in.size(); ++a)
            for (std::size_t b = a + 1; b < in.size(); ++b) out.insert({in[a], in[b]});
    }
    return out;
}

inline std::optional<Id> join_ids(const Complex& k, Id a, Id b) { return join(k, k.cell(a), k.cell(b)); }

}  // namespace detail

// j : J -> I compatible with l : L -> I.
inline PairReport check_compatible(const CcMap& j, const CcMap& l) {
    if (!(*j.target == *l.target)) throw Error(ErrorCode::PreconditionFailed, "compatible maps share their target");
    const Complex& i = *j.target;
    auto pj = detail::preimage_sizes(j);
    auto pl = detail::preimage_sizes(l);
    for (Id w = 0; w < i.size(); ++w)
        if (pj[w] != 1 && pl[w] != 1) return detail::fail("single preimage", i.cell(w), i.cell(w));
    const Complex& js = *j.source;
    for (auto [a, b] : detail::bounded_pairs(js)) {
        auto up = detail::join_ids(js, a, b);
        if (!up) continue;
        auto img = detail::join_ids(i, j(a), j(b));
        if (!img || *img != j(*up)) return detail::fail("join", js.cell(a), js.cell(b));
    }
    const Complex& ls = *l.source;
    for (Id a = 0; a < ls.size(); ++a)
        for (Id b = a + 1; b < ls.size(); ++b) {
            Cell m = intersect(ls.cell(a), ls.cell(b));
            if (m.empty()) continue;
            if (l.of(ls.find(m)) != intersect(l.of(a), l.of(b))) return detail::fail("meet", ls.cell(a), ls.cell(b));
        }
    return {};
}

// j : I -> J and l : I -> L.
inline PairReport check_reflective(const CcMap& j, const CcMap& l) {
    if (!(*j.source == *l.source)) throw Error(ErrorCode::PreconditionFailed, "reflective maps share their source");
    const Complex& s = *j.source;
    for (Id a = 0; a < s.size(); ++a)
        for (Id b = a + 1; b < s.size(); ++b) {
            auto uj = detail::join_ids(*j.target, j(a), j(b));
            if (!uj) continue;
            auto ul = detail::join_ids(*l.target, l(a), l(b));
            if (!ul) continue;
            auto up = detail::join_ids(s, a, b);
            if (!up || j(*up) != *uj || l(*up) != *ul) return detail::fail("join", s.cell(a), s.cell(b));
        }
    return {};
}

inline PairReport check_orthogonal(const CcMap& j, const CcMap& l) {
    if (!(*j.source == *l.source)) throw Error(ErrorCode::PreconditionFailed, "orthogonal maps share their source");
    const Complex& s = *j.source;
    for (Id a = 0; a < s.size(); ++a)
        for (Id b = a + 1; b < s.size(); ++b) {
            Cell mj = intersect(j.of(a), j.of(b));
            if (mj.empty()) continue;
            Cell ml = intersect(l.of(a), l.of(b));
            if (ml.empty()) continue;
            Cell m = intersect(s.cell(a), s.cell(b));
            if (m.empty()) return detail::fail("meet", s.cell(a), s.cell(b));
            Id c = s.find(m);
            if (j.of(c) != mj || l.of(c) != ml) return detail::fail("meet", s.cell(a), s.cell(b));
        }
    return {};
}

// ------------------------------------------------------------ canonical maps

struct CanonicalMaps {
    ComplexPtr transition;
    ComplexPtr midsection;
    std::map<Cell, Id> mid_origin;
    Reduction rho;  // J -> J(K)
    Collapse pi;    // M_J^K -> J(K)
};

inline CanonicalMaps canonical_maps(const Complex& k, const Complex& j) {
    if (!in_class_c(k)) throw Error(ErrorCode::PreconditionFailed, "K must be non-singular, non-pinching and local");
    if (j.empty() || !is_subcomplex(boundary(k), j) || j.max_rank() != k.max_rank() - 1)
        throw Error(ErrorCode::PreconditionFailed, "J must be a full-rank part of the boundary");
    if (!in_class_b(j)) throw Error(ErrorCode::PreconditionFailed, "J must be closed, non-pinching and cell-connected");
    auto u = check_uniform(k, j);
    if (!u.ok()) throw Error(ErrorCode::PreconditionFailed, "(K, J) is not uniform: " + u.failures.front().what, u.failures);
    std::string why;
    if (!is_local_relative(k, j, &why)) throw Error(ErrorCode::PreconditionFailed, "(K, J) is not local: " + why);

    ComplexPtr t = share(build_complex(u.transition.complex.ranked_cells()));
    ComplexPtr jp = share(j);
    auto in_collar = detail::collar_flags(k, j.vertices());
    CcMap rho{jp, t, std::vector<Id>(j.size())};
    for (Id x = 0; x < j.size(); ++x) {
        auto mins = detail::minimal_collar_over(k, in_collar, j.cell(x));
        if (mins.empty()) throw Error(ErrorCode::PreconditionFailed, "cell of J outside the collar closure");
        const Cell& r = u.transition.reduced.at(mins.front());
        for (Id y : mins)
            if (u.transition.reduced.at(y) != r)
                throw Error(ErrorCode::PreconditionFailed, "reduced cell of a J-cell is not unique");
        rho.image[x] = t->find(r);
    }
    Midsection m = midsection(k, j);
    ComplexPtr mp = share(m.complex);
    CcMap pi{mp, t, std::vector<Id>(mp->size())};
    for (Id c = 0; c < mp->size(); ++c) pi.image[c] = t->find(u.transition.reduced.at(m.origin.at(mp->cell(c))));
    auto comp = check_compatible(rho, pi);
    if (!comp) throw Error(ErrorCode::CompatibilityFailed, "rho_J^K is not compatible with pi_J^K (" + comp.clause + ")");
    return CanonicalMaps{t, mp, m.origin, certify_reduction(std::move(rho)), certify_collapse(std::move(pi))};
}

// ------------------------------------------------------------ augmented poset

struct Augmented {
    std::vector<std::pair<Cell, int>> cells;
    std::vector<Cell> of;  // source id -> augmented cell
};

inline Augmented augmented_poset(const CcMap& pj, const CcMap& pl) {
    if (!(*pj.source == *pl.source)) throw Error(ErrorCode::PreconditionFailed, "maps must share their source");
    if (!intersect(pj.target->vertices(), pl.target->vertices()).empty())
        throw Error(ErrorCode::PreconditionFailed, "targets must be disjoint");
    auto o = check_orthogonal(pj, pl);
    if (!o) throw Error(ErrorCode::NotOrthogonal, "maps are not orthogonal", {Violation{ErrorCode::NotOrthogonal, o.clause, {o.witness.first, o.witness.second}, -1}});
    Augmented a;
    const Complex& m = *pj.source;
    std::set<Cell> seen;
    for (Id x = 0; x < m.size(); ++x) {
        Cell c = unite(pj.of(x), pl.of(x));
        if (!seen.insert(c).second) throw Error(ErrorCode::NotOrthogonal, "augmented map is not injective");
        a.of.push_back(c);
        a.cells.emplace_back(c, m.rank(x) + 1);
    }
    return a;
}

// ------------------------------------------------------------------ pull-back

struct PullBack {
    Complex complex;
    std::map<Vertex, Vertex> origin;  // kept vertex of K^rho -> vertex of K
};

// K^rho for rho : J -> J', J' a boundary component of K. J keeps its labels.
inline PullBack pull_back_boundary(const Complex& k, const Reduction& rho) {
    const Complex& jp = *rho.target();
    const Complex& j = *rho.source();
    bool component = false;
    for (const Complex& c : boundary_components(k)) component = component || c == jp;
    if (!component) throw Error(ErrorCode::PreconditionFailed, "target of rho must be a boundary component of K");
    auto u = check_uniform(k, jp);
    if (!u.ok()) throw Error(ErrorCode::PreconditionFailed, "(K, J') is not uniform", u.failures);
    CanonicalMaps cm = canonical_maps(k, jp);
    CcMap through = compose(cm.rho.map(), rho.map());
    auto comp = check_compatible(through, cm.pi.map());
    if (!comp)
        throw Error(ErrorCode::CompatibilityFailed, "rho followed by rho_J'^K is not compatible with pi_J'^K (" + comp.clause + ")",
                    {Violation{ErrorCode::CompatibilityFailed, comp.clause, {comp.witness.first, comp.witness.second}, -1}});

    const VertexSet& jpv = jp.vertices();
    VertexSet rest = difference(k.vertices(), jpv);
    Vertex off = intersect(rest, j.vertices()).empty() ? 0 : std::max(vertex_bound(j), vertex_bound(k));
    PullBack pb;
    for (Vertex v : rest) pb.origin[v + off] = v;
    auto lift = [&](const Cell& c) {
        Cell out;
        for (Vertex v : difference(c, jpv)) out.push_back(v + off);
        return out;
    };
    std::vector<std::pair<Cell, int>> ranked = j.ranked_cells();
    for (Id y = 0; y < k.size(); ++y) {
        const Cell& c = k.cell(y);
        Cell hit = intersect(c, jpv);
        if (hit.empty()) {
            ranked.emplace_back(lift(c), k.rank(y));
        } else if (hit.size() != c.size()) {
            Cell phi = lift(c);
            for (Vertex v : j.vertices())
                if (subset_of(rho.map().of(j.vertex_cell(v)), c)) phi.push_back(v);
            ranked.emplace_back(normalized(phi), k.rank(y));
        }
    }
    try {
        pb.complex = build_complex(std::move(ranked));
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationFailed, std::string("pull-back is not a cc: ") + e.what(), e.details());
    }
    if (!in_class_c(pb.complex)) throw Error(ErrorCode::ValidationFailed, "pull-back is not in class C");
    bool found = false;
    for (const Complex& c : boundary_components(pb.complex)) found = found || c == j;
    if (!found) throw Error(ErrorCode::ValidationFailed, "J is not a boundary component of the pull-back");
    return pb;
}

// ---------------------------------------------------------------- sequences

// M |- T >- B : pi : M -> T a collapse, rho : B -> T a reduction, rho compatible with pi.
struct SemiSequence {
    Collapse pi;
    Reduction rho;
    const Complex& m() const { return *pi.source(); }
    const Complex& transition() const { return *pi.target(); }
    const Complex& base() const { return *rho.source(); }
};

inline SemiSequence make_semi(Collapse pi, Reduction rho) {
    if (!(*pi.target() == *rho.target())) throw Error(ErrorCode::PreconditionFailed, "semi-sequence maps must share their target");
    auto c = check_compatible(rho.map(), pi.map());
    if (!c) throw Error(ErrorCode::CompatibilityFailed, "reduction is not compatible with the collapse (" + c.clause + ")");
    return SemiSequence{std::move(pi), std::move(rho)};
}

inline bool same_semi(const SemiSequence& a, const SemiSequence& b) {
    return same_map(a.pi.map(), b.pi.map()) && same_map(a.rho.map(), b.rho.map());
}

// J < J' -| M |- L' > L, stored as the two semi-sequences at M.
struct SliceSequence {
    SemiSequence j;
    SemiSequence l;
};

// M |- J > I < L -| M', stored as the two semi-sequences at I.
struct ConnectingSequence {
    SemiSequence j;
    SemiSequence l;
};

namespace detail {

inline std::vector<Violation> labels_in_b(const std::vector<const Complex*>& labels, ErrorCode code) {
    std::vector<Violation> out;
    for (const Complex* c : labels)
        if (!in_class_b(*c) || !is_local(*c)) out.push_back(Violation{code, "label not a local member of B", {c->vertices()}, -1});
    return out;
}

}  // namespace detail

inline std::vector<Violation> check_slice_sequence(const SliceSequence& s) {
    const ErrorCode code = ErrorCode::NotASliceSequence;
    if (!(s.j.m() == s.l.m())) return {Violation{code, "midsections differ", {}, -1}};
    auto out = detail::labels_in_b({&s.j.base(), &s.j.transition(), &s.j.m(), &s.l.transition(), &s.l.base()}, code);
    for (const SemiSequence* h : {&s.j, &s.l}) {
        auto c = check_compatible(h->rho.map(), h->pi.map());
        if (!c) out.push_back(Violation{code, "compatible", {c.witness.first, c.witness.second}, -1});
    }
    auto o = check_orthogonal(s.j.pi.map(), s.l.pi.map());
    if (!o) out.push_back(Violation{code, "orthogonal", {o.witness.first, o.witness.second}, -1});
    return out;
}

inline SliceSequence make_slice_sequence(SemiSequence j, SemiSequence l) {
    SliceSequence s{std::move(j), std::move(l)};
    auto v = check_slice_sequence(s);
    if (!v.empty()) throw Error(ErrorCode::NotASliceSequence, v.front().what, v);
    return s;
}

inline std::vector<Violation> check_connecting_sequence(const ConnectingSequence& s) {
    const ErrorCode code = ErrorCode::NotConnecting;
    if (!(s.j.base() == s.l.base())) return {Violation{code, "shared labels differ", {}, -1}};
    auto out = detail::labels_in_b({&s.j.m(), &s.j.transition(), &s.j.base(), &s.l.transition(), &s.l.m()}, code);
    for (const SemiSequence* h : {&s.j, &s.l}) {
        auto c = check_compatible(h->rho.map(), h->pi.map());
        if (!c) out.push_back(Violation{code, "compatible", {c.witness.first, c.witness.second}, -1});
    }
    auto r = check_reflective(s.j.rho.map(), s.l.rho.map());
    if (!r) out.push_back(Violation{code, "reflective", {r.witness.first, r.witness.second}, -1});
    return out;
}

inline ConnectingSequence make_connecting_sequence(SemiSequence j, SemiSequence l) {
    ConnectingSequence s{std::move(j), std::move(l)};
    auto v = check_connecting_sequence(s);
    if (!v.empty()) throw Error(ErrorCode::NotConnecting, v.front().what, v);
    return s;
}

// ------------------------------------------------------------------- slices

struct Slice {
    Complex s;
    Complex j;
    Complex l;
};

inline std::vector<Violation> check_slice(const Complex& s, const Complex& j) {
    const ErrorCode code = ErrorCode::NotASlice;
    std::vector<Violation> out;
    auto add = [&](const std::string& w, std::vector<Cell> cells = {}) { out.push_back(Violation{code, w, std::move(cells), -1}); };
    if (s.empty() || !in_class_c(s)) {
        add("not in class C");
        return out;
    }
    Complex bd = boundary(s);
    if (bd.vertices() != s.vertices()) add("vertex off the boundary", {difference(s.vertices(), bd.vertices())});
    auto comps = component_complexes(bd);
    if (comps.size() != 2) {
        add("boundary does not have two components");
        return out;
    }
    if (!(comps[0] == j) && !(comps[1] == j)) {
        add("J is not a boundary component");
        return out;
    }
    for (const Complex& c : comps) {
        auto u = check_uniform(s, c);
        for (const auto& f : u.failures) add("not uniform: " + f.what, f.cells);
        auto rep = check_cobordism(s, c);
        for (const auto& f : rep.failures) add("cobordism: " + f.what, f.cells);
    }
    return out;
}

inline Complex other_component(const Complex& s, const Complex& j) {
    for (const Complex& c : boundary_components(s))
        if (!(c == j)) return c;
    throw Error(ErrorCode::NotASlice, "no second boundary component");
}

inline SliceSequence sequence_from_slice(const Complex& s, const Complex& j) {
    auto v = check_slice(s, j);
    if (!v.empty()) throw Error(ErrorCode::NotASlice, v.front().what, v);
    Complex l = other_component(s, j);
    CanonicalMaps a = canonical_maps(s, j);
    CanonicalMaps b = canonical_maps(s, l);
    if (!(*a.midsection == *b.midsection)) throw Error(ErrorCode::NotASlice, "midsections of the two ends differ");
    CcMap pl = b.pi.map();
    pl.source = a.midsection;
    return make_slice_sequence(make_semi(a.pi, a.rho), make_semi(certify_collapse(std::move(pl)), b.rho));
}

namespace detail {

inline std::function<Vertex(Vertex)> block_relabel(const Complex& c, Vertex start) {
    auto to = std::make_shared<std::map<Vertex, Vertex>>();
    for (Vertex v : c.vertices()) to->emplace(v, start + static_cast<Vertex>(to->size()));
    return [to](Vertex v) { return to->at(v); };
}

}  // namespace detail

// Labels are renumbered in blocks: J', L', then J, L.
inline Slice slice_from_sequence(const SliceSequence& seq) {
    auto v = check_slice_sequence(seq);
    if (!v.empty()) throw Error(ErrorCode::NotASliceSequence, v.front().what, v);
    const Complex& tj = seq.j.transition();
    const Complex& tl = seq.l.transition();
    const Complex& bj = seq.j.base();
    const Complex& bl = seq.l.base();
    Vertex a = static_cast<Vertex>(tj.vertices().size());
    Vertex b = a + static_cast<Vertex>(tl.vertices().size());
    Vertex c = b + static_cast<Vertex>(bj.vertices().size());
    auto ftj = detail::block_relabel(tj, 0);
    auto ftl = detail::block_relabel(tl, a);
    auto fbj = detail::block_relabel(bj, b);
    auto fbl = detail::block_relabel(bl, c);
    auto same = [](Vertex x) { return x; };
    ComplexPtr tj2 = share(relabel(tj, ftj)), tl2 = share(relabel(tl, ftl));
    ComplexPtr bj2 = share(relabel(bj, fbj)), bl2 = share(relabel(bl, fbl));
    ComplexPtr m = seq.j.pi.source();
    CcMap pj = transport_map(seq.j.pi.map(), m, same, tj2, ftj);
    CcMap pl = transport_map(seq.l.pi.map(), m, same, tl2, ftl);
    Augmented aug = augmented_poset(pj, pl);
    std::vector<std::pair<Cell, int>> ranked = aug.cells;
    for (auto& rc : tj2->ranked_cells()) ranked.push_back(rc);
    for (auto& rc : tl2->ranked_cells()) ranked.push_back(rc);
    Complex s0;
    try {
        s0 = build_complex(std::move(ranked));
    } catch (const Error& e) {
        throw Error(ErrorCode::NotASliceSequence, std::string("augmented poset is not a cc: ") + e.what(), e.details());
    }
    Reduction rj = certify_reduction(transport_map(seq.j.rho.map(), bj2, fbj, tj2, ftj));
    Reduction rl = certify_reduction(transport_map(seq.l.rho.map(), bl2, fbl, tl2, ftl));
    Complex s1 = pull_back_boundary(s0, rj).complex;
    Complex s = pull_back_boundary(s1, rl).complex;
    auto bad = check_slice(s, *bj2);
    if (!bad.empty()) throw Error(ErrorCode::NotASlice, bad.front().what, bad);
    return Slice{std::move(s), *bj2, *bl2};
}

// ------------------------------------------------------------------- union

// K^rho_j glued to H^rho_l along I, the common source of both reductions.
inline Complex union_along(const Complex& k, const Reduction& rho_j, const Complex& h, const Reduction& rho_l) {
    const Complex& i = *rho_j.source();
    if (!(i == *rho_l.source())) throw Error(ErrorCode::NotConnecting, "reductions must share their source");
    CanonicalMaps ck = canonical_maps(k, *rho_j.target());
    CanonicalMaps ch = canonical_maps(h, *rho_l.target());
    try {
        SemiSequence sj = make_semi(ck.pi, compose_reductions(rho_j, ck.rho));
        SemiSequence sl = make_semi(ch.pi, compose_reductions(rho_l, ch.rho));
        make_connecting_sequence(std::move(sj), std::move(sl));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotConnecting) throw;
        throw Error(ErrorCode::NotConnecting, e.what(), e.details());
    }
    Complex kp = pull_back_boundary(k, rho_j).complex;
    Complex hp = pull_back_boundary(h, rho_l).complex;
    VertexSet hrest = difference(hp.vertices(), i.vertices());
    if (!intersect(hrest, kp.vertices()).empty()) {
        Vertex off = std::max(vertex_bound(kp), vertex_bound(hp));
        const VertexSet& iv = i.vertices();
        hp = relabel(hp, [&](Vertex v) { return std::binary_search(iv.begin(), iv.end(), v) ? v : v + off; });
    }
    std::vector<std::pair<Cell, int>> common;
    for (Id x = 0; x < kp.size(); ++x)
        if (hp.contains(kp.cell(x))) common.emplace_back(kp.cell(x), kp.rank(x));
    if (!(Complex::assemble(common) == i)) throw Error(ErrorCode::OverlapMismatch, "the two pull-backs do not meet exactly in I");
    std::vector<std::pair<Cell, int>> ranked = kp.ranked_cells();
    for (Id x = 0; x < hp.size(); ++x)
        if (!i.contains(hp.cell(x))) ranked.emplace_back(hp.cell(x), hp.rank(x));
    Complex u;
    try {
        u = build_complex(std::move(ranked));
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationFailed, std::string("union is not a cc: ") + e.what(), e.details());
    }
    if (!in_class_c(u)) throw Error(ErrorCode::ValidationFailed, "union is not in class C");
    return u;
}

// Glue along boundary components J of K and L of H identified by an isomorphism.
inline Complex glue(const Complex& k, const Complex& j, const Complex& h, const Complex& l) {
    auto f = find_isomorphism(j, l);
    if (!f) throw Error(ErrorCode::NotConnecting, "boundary components are not isomorphic");
    ComplexPtr ip = share(j);
    Reduction rj = identity_reduction(ip);
    Reduction rl = certify_reduction(vertex_induced(ip, share(l), *f));
    return union_along(k, rj, h, rl);
}

// ------------------------------------------------------- causal decomposition

struct CausalDecomposition {
    std::vector<Complex> interfaces;  // L_0 = J, ..., L_n
    std::vector<Complex> slices;      // slice i sits between interfaces i and i + 1
};

// Vertex layers by graph distance from J; each pair of consecutive layers must span a slice.
inline CausalDecomposition decompose_causal(const Complex& k, const Complex& j) {
    if (!is_subcomplex(boundary(k), j) || j.empty()) throw Error(ErrorCode::PreconditionFailed, "J must be part of the boundary");
    std::map<Vertex, int> level;
    std::vector<Vertex> frontier(j.vertices().begin(), j.vertices().end());
    for (Vertex v : frontier) level[v] = 0;
    for (int d = 1; !frontier.empty(); ++d) {
        std::vector<Vertex> next;
        for (Vertex v : frontier)
            for (Id e : k.edges_at(v))
                for (Vertex w : k.cell(e))
                    if (!level.count(w)) {
                        level[w] = d;
                        next.push_back(w);
                    }
        frontier = std::move(next);
    }
    int top = 0;
    for (auto& [v, d] : level) top = std::max(top, d);
    std::vector<VertexSet> layers(static_cast<std::size_t>(top + 1));
    for (auto& [v, d] : level) layers[static_cast<std::size_t>(d)].push_back(v);
    for (Id e : k.of_rank(1))
        if (std::abs(level.at(k.cell(e)[0]) - level.at(k.cell(e)[1])) > 1)
            throw Error(ErrorCode::NotASlice, "edge skips a layer", {Violation{ErrorCode::NotASlice, "layer", {k.cell(e)}, -1}});
    CausalDecomposition out;
    for (const VertexSet& l : layers) out.interfaces.push_back(restriction(k, l));
    if (!(out.interfaces.front() == j)) throw Error(ErrorCode::NotASlice, "first layer is not J");
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
        Complex s = restriction(k, unite(layers[i], layers[i + 1]));
        auto bad = check_slice(s, out.interfaces[i]);
        if (!bad.empty()) throw Error(ErrorCode::NotASlice, "layer " + std::to_string(i) + ": " + bad.front().what, bad);
        out.slices.push_back(std::move(s));
    }
    return out;
}

// ------------------------------------------------------------------- braket

enum class StateKind { In, Out };  // ket, bra

// Bra <J, M, L|: left = (M |- >- J), right = (M |- >- L).
// Ket |M, L, M'>: left = (M |- >- L), right = (M' |- >- L).
struct State {
    StateKind kind;
    SemiSequence left;
    SemiSequence right;

    std::array<const Complex*, 3> labels() const {
        if (kind == StateKind::Out) return {&left.base(), &left.m(), &right.base()};
        return {&left.m(), &left.base(), &right.m()};
    }
};

inline State bra(const SliceSequence& s) { return State{StateKind::Out, s.j, s.l}; }
inline State ket(const ConnectingSequence& s) { return State{StateKind::In, s.j, s.l}; }

inline bool same_state(const State& a, const State& b) {
    return a.kind == b.kind && same_semi(a.left, b.left) && same_semi(a.right, b.right);
}

struct StateSequence {
    std::vector<State> states;
    const State& image() const { return states.front(); }
    const State& domain() const { return states.back(); }
};

inline std::vector<Violation> check_sequence(const StateSequence& q) {
    std::vector<Violation> out;
    auto add = [&](const std::string& w) { out.push_back(Violation{ErrorCode::StatesMismatch, w, {}, -1}); };
    if (q.states.empty()) add("empty sequence");
    int rank = -2;
    for (std::size_t i = 0; i < q.states.size(); ++i) {
        const State& s = q.states[i];
        std::vector<Violation> v;
        if (s.kind == StateKind::Out) v = check_slice_sequence(SliceSequence{s.left, s.right});
        else v = check_connecting_sequence(ConnectingSequence{s.left, s.right});
        if (!v.empty()) add("state " + std::to_string(i) + ": " + v.front().what);
        for (const Complex* c : s.labels()) {
            if (rank == -2) rank = c->max_rank();
            if (c->max_rank() != rank) add("state " + std::to_string(i) + ": label rank differs");
        }
        if (i + 1 < q.states.size()) {
            const State& n = q.states[i + 1];
            if (n.kind == s.kind) add("states " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not alternate");
            if (!same_semi(s.right, n.left)) add("states " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not share a semi-sequence");
        }
    }
    return out;
}

inline StateSequence make_sequence(std::vector<State> states) {
    StateSequence q{std::move(states)};
    auto v = check_sequence(q);
    if (!v.empty()) throw Error(ErrorCode::StatesMismatch, v.front().what, v);
    return q;
}

inline StateSequence identity_sequence(const State& s) { return StateSequence{{s}}; }

// sigma o gamma, defined when the domain of sigma is the image of gamma.
inline StateSequence compose_sequences(const StateSequence& sigma, const StateSequence& gamma) {
    if (!same_state(sigma.domain(), gamma.image())) throw Error(ErrorCode::StatesMismatch, "domain and image differ");
    StateSequence out = sigma;
    out.states.insert(out.states.end(), gamma.states.begin() + 1, gamma.states.end());
    return out;
}

// The semi-sequence M |- T >- B becomes dual(B) |- dual(T) >- dual(M).
inline SemiSequence dual_semi(const SemiSequence& s) {
    return make_semi(dual_of_reduction(s.rho), dual_of_collapse(s.pi));
}

inline StateSequence functor_T(const StateSequence& q) {
    StateSequence out;
    for (auto it = q.states.rbegin(); it != q.states.rend(); ++it) out.states.push_back(State{it->kind, it->right, it->left});
    return out;
}

inline StateSequence functor_P(const StateSequence& q) {
    StateSequence out;
    for (const State& s : q.states)
        out.states.push_back(State{s.kind == StateKind::In ? StateKind::Out : StateKind::In, dual_semi(s.left), dual_semi(s.right)});
    return out;
}

inline StateSequence functor_C(const StateSequence& q) { return functor_P(functor_T(q)); }

namespace detail {

inline std::vector<std::array<std::size_t, 3>> map_profile(const CcMap& m) {
    auto pre = preimage_sizes(m);
    std::vector<std::array<std::size_t, 3>> out;
    for (Id x = 0; x < m.image.size(); ++x)
        out.push_back({static_cast<std::size_t>(m.source->rank(x)), static_cast<std::size_t>(m.target->rank(m(x))), pre[m(x)]});
    std::sort(out.begin(), out.end());
    return out;
}

inline bool semi_equivalent(const SemiSequence& a, const SemiSequence& b) {
    return is_isomorphic(a.m(), b.m()) && is_isomorphic(a.transition(), b.transition()) && is_isomorphic(a.base(), b.base()) &&
           map_profile(a.pi.map()) == map_profile(b.pi.map()) && map_profile(a.rho.map()) == map_profile(b.rho.map());
}

}  // namespace detail

// Label-wise isomorphism with matching preimage profiles.
inline bool equivalent(const StateSequence& a, const StateSequence& b) {
    if (a.states.size() != b.states.size()) return false;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        const State& x = a.states[i];
        const State& y = b.states[i];
        if (x.kind != y.kind || !detail::semi_equivalent(x.left, y.left) || !detail::semi_equivalent(x.right, y.right))
            return false;
    }
    return true;
}

// Bras for the slices and kets at the inner interfaces.
inline StateSequence causal_sequence(const CausalDecomposition& d) {
    std::vector<SliceSequence> bras;
    for (std::size_t i = 0; i < d.slices.size(); ++i) bras.push_back(sequence_from_slice(d.slices[i], d.interfaces[i]));
    std::vector<State> states;
    for (std::size_t i = 0; i < bras.size(); ++i) {
        if (i > 0) states.push_back(ket(make_connecting_sequence(bras[i - 1].l, bras[i].j)));
        states.push_back(bra(bras[i]));
    }
    return make_sequence(std::move(states));
}

}  // namespace cckit
