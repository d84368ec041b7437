#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "cckit/causal.hpp"
#include "cckit/generators.hpp"
#include "cckit/io.hpp"
#include "cckit/reconstruct.hpp"
#include "cckit/shell.hpp"
#include "cckit/subdivision.hpp"

using namespace cckit;
using io::CcDocument;
using io::Json;

namespace {

struct Failure {
    Json report;
};

Json cell_json(const Cell& c) {
    Json a = Json::array();
    for (Vertex v : c) a.push_back(v);
    return a;
}

Json cells_json(const std::vector<Cell>& cs) {
    Json a = Json::array();
    for (const Cell& c : cs) a.push_back(cell_json(c));
    return a;
}

Json violations_json(const std::vector<Violation>& vs) {
    Json a = Json::array();
    for (const Violation& v : vs) {
        Json o;
        o["code"] = to_string(v.code);
        o["what"] = v.what;
        o["cells"] = cells_json(v.cells);
        if (v.count >= 0) o["count"] = v.count;
        a.push_back(std::move(o));
    }
    return a;
}

[[noreturn]] void fail(const std::string& code, const std::string& message, Json violations = Json::array()) {
    Json r;
    r["ok"] = false;
    r["error"] = code;
    r["message"] = message;
    r["violations"] = std::move(violations);
    throw Failure{std::move(r)};
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error(ErrorCode::BadParams, "not an integer list: " + s);
        }
    }
    return out;
}

// Removed part from --removed, else from the document, else empty.
Complex removed_of(const CcDocument& d, const std::string& flag) {
    if (!flag.empty()) return removed_components(d.complex, parse_ints(flag));
    if (d.removed_components) return removed_components(d.complex, *d.removed_components);
    return Complex{};
}

std::vector<int> component_indices(const Complex& k, const Complex& part) {
    std::vector<int> idx;
    auto comps = boundary_components(k);
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (!intersect(comps[i].vertices(), part.vertices()).empty()) idx.push_back(static_cast<int>(i));
    return idx;
}

// Fresh vertex numbers 0..n-1; describe(old vertex) fills the origins table.
CcDocument renumbered(std::string name, const Complex& k, const std::function<Json(Vertex)>& describe) {
    std::vector<Vertex> origin;
    CcDocument d = io::document(std::move(name), compact(k, &origin));
    d.origins = Json::array();
    for (Vertex v : origin) d.origins.push_back(describe(v));
    return d;
}

Json vertex_origin(Vertex v) { return Json(v); }

void emit(const Json& j) { std::cout << io::dump(j); }
void emit(const CcDocument& d) { std::cout << io::dump(d); }

const io::MapEntry* find_map(const CcDocument& d, const std::string& to) {
    for (const io::MapEntry& m : d.maps)
        if (m.to == to) return &m;
    return nullptr;
}

CcMap map_from_entry(const io::MapEntry& e, const ComplexPtr& s, const ComplexPtr& t) {
    CcMap m{s, t, std::vector<Id>(s->size(), no_cell)};
    for (const auto& [a, b] : e.pairs) {
        Id x = s->find(a);
        Id y = t->find(b);
        if (x == no_cell || y == no_cell) fail("ValidationFailed", "map pair names a cell outside its complex", Json::array({Json::array({cell_json(a), cell_json(b)})}));
        m.image[x] = y;
    }
    return m;
}

// The map from `from` to the document named `to`, or the identity when the two complexes agree.
CcMap map_between(const CcDocument& from, const CcDocument& to) {
    ComplexPtr s = share(from.complex);
    ComplexPtr t = share(to.complex);
    if (const io::MapEntry* e = find_map(from, to.name)) return map_from_entry(*e, s, t);
    if (from.complex == to.complex) return identity_map(s);
    fail("ValidationFailed", "document '" + from.name + "' has no map to '" + to.name + "'");
}

io::MapEntry entry_of(const CcMap& m, const std::string& from, const std::string& to) {
    io::MapEntry e{from, to, {}};
    for (Id x = 0; x < m.source->size(); ++x) e.pairs.emplace_back(m.source->cell(x), m.of(x));
    std::sort(e.pairs.begin(), e.pairs.end(), [](const auto& a, const auto& b) {
        return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a < b;
    });
    return e;
}

Json report_json(const MapReport& r) {
    Json o;
    o["ok"] = r.ok();
    o["violations"] = violations_json(r.violations);
    return o;
}

std::vector<Vertex> parse_walk(const std::string& s) {
    std::vector<Vertex> out;
    for (int v : parse_ints(s)) {
        if (v < 0) throw Error(ErrorCode::BadParams, "negative vertex");
        out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

// "v:a-b,c-d" names a seed vertex and the seed edges at it.
std::pair<Vertex, std::vector<Cell>> parse_seed(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::BadParams, "seed must look like v:a-b,c-d");
    std::vector<Cell> edges;
    std::stringstream ss(s.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos) throw Error(ErrorCode::BadParams, "seed edge must look like a-b");
        auto a = parse_walk(tok.substr(0, dash));
        auto b = parse_walk(tok.substr(dash + 1));
        if (a.size() != 1 || b.size() != 1) throw Error(ErrorCode::BadParams, "seed edge must look like a-b");
        edges.push_back(normalized({a[0], b[0]}));
    }
    auto v = parse_walk(s.substr(0, colon));
    if (v.size() != 1) throw Error(ErrorCode::BadParams, "seed vertex missing");
    return {v[0], edges};
}

// ------------------------------------------------------------------ commands

int cmd_validate(const std::string& path, const std::string& removed) {
    CcDocument d = io::load(path);
    Json r;
    r["ok"] = true;
    r["name"] = d.name;
    Json fv = Json::array();
    for (auto n : d.complex.f_vector()) fv.push_back(n);
    r["f_vector"] = fv;
    if (!removed.empty() || d.removed_components) {
        Complex j = removed_of(d, removed);
        auto rep = check_cobordism(d.complex, j);
        if (!rep.ok()) fail("ValidationFailed", rep.failures.front().what, violations_json(rep.failures));
        r["cobordism"] = true;
    }
    emit(r);
    return 0;
}

int cmd_classify(const std::string& path, int rank) {
    CcDocument d = io::load(path);
    PropertyReport rep = classify(d.complex);
    Json flags, wit;
    for (const Flag& f : rep.flags) {
        flags[f.name] = f.value;
        if (!f.value && !f.witness.empty()) wit[f.name] = cells_json(f.witness);
    }
    if (rank >= 0) {
        std::vector<Cell> w;
        bool ok = is_full(d.complex, rank, &w);
        flags["full_" + std::to_string(rank)] = ok;
        if (!ok) wit["full_" + std::to_string(rank)] = cells_json(w);
    }
    Json r;
    r["name"] = d.name;
    r["rank"] = d.complex.max_rank();
    r["flags"] = flags.is_null() ? Json::object() : flags;
    r["witnesses"] = wit.is_null() ? Json::object() : wit;
    emit(r);
    return 0;
}

int cmd_dual(const std::string& path, bool involution) {
    CcDocument d = io::load(path);
    Dual dd = dual_closed(d.complex);
    if (involution) {
        bool ok = is_isomorphic(dual(dd.complex), d.complex);
        Json r;
        r["ok"] = ok;
        r["involution"] = ok ? "ok" : "failed";
        if (!ok) fail("PredicateFailed", "dual of the dual is not isomorphic to the input");
        emit(r);
        return 0;
    }
    emit(renumbered("dual(" + d.name + ")", dd.complex,
                    [&](Vertex v) { return cell_json(d.complex.cell(dd.primal_top[v])); }));
    return 0;
}

int cmd_dual_cob(const std::string& path, const std::string& removed) {
    CcDocument d = io::load(path);
    Complex j = removed_of(d, removed);
    Cobordism c = validate_cobordism(d.complex, j);
    DualCobordism dc = dual_cobordism(c);
    CcDocument out = renumbered("dual(" + d.name + ")", dc.cob.k, [&](Vertex v) {
        const TaggedCell& t = dc.vertex_origin[v];
        Json o;
        o["boundary"] = t.boundary;
        o["cell"] = cell_json(d.complex.cell(t.id));
        return o;
    });
    std::vector<Vertex> origin;
    Complex renamed = compact(dc.cob.k, &origin);
    std::map<Vertex, Vertex> to;
    for (Vertex i = 0; i < origin.size(); ++i) to[origin[i]] = i;
    Complex rem = dc.cob.removed.empty() ? Complex{} : relabel(dc.cob.removed, [&](Vertex v) { return to.at(v); });
    out.removed_components = component_indices(renamed, rem);
    emit(out);
    return 0;
}

int cmd_bdiv(const std::string& path, bool oriented) {
    CcDocument d = io::load(path);
    io::check_size(d.complex.size() * (static_cast<std::size_t>(d.complex.max_rank()) + 1));
    Bdiv b = barycentric(d.complex);
    io::check_size(b.complex->size());
    CcDocument out = renumbered("bdiv(" + d.name + ")", *b.complex, [&](Vertex v) { return cell_json(d.complex.cell(v)); });
    if (oriented) {
        io::MapEntry e{"orientation", "orientation", {}};
        for (auto [u, w] : inclusion_orientation(b).arcs) e.pairs.push_back({Cell{u}, Cell{w}});
        out.maps.push_back(std::move(e));
    }
    emit(out);
    return 0;
}

int cmd_reconstruct_bdiv(const std::string& path, bool reverse) {
    CcDocument d = io::load(path);
    const io::MapEntry* e = nullptr;
    for (const io::MapEntry& m : d.maps)
        if (m.from == "orientation") e = &m;
    if (!e) fail("ValidationFailed", "document has no orientation map");
    OrientedGraph g;
    g.vertices = d.complex.vertices();
    for (const auto& [a, b] : e->pairs) {
        if (a.size() != 1 || b.size() != 1) fail("ValidationFailed", "orientation pairs are single vertices");
        g.arcs.emplace_back(a[0], b[0]);
    }
    std::sort(g.arcs.begin(), g.arcs.end());
    if (reverse) g = reversed(std::move(g));
    Complex k = reconstruct_from_oriented_bdiv(g);
    emit(renumbered("reconstructed(" + d.name + ")", k, vertex_origin));
    return 0;
}

int cmd_euler(const std::string& path) {
    CcDocument d = io::load(path);
    Json r;
    r["chi"] = euler_characteristic(d.complex);
    emit(r);
    return 0;
}

int cmd_shell(const std::string& path) {
    CcDocument d = io::load(path);
    auto s = find_shelling(d.complex);
    Json r;
    r["shellable"] = s.has_value();
    if (s) {
        r["order"] = cells_json(s->order);
        auto e = check_euler_poincare(d.complex);
        r["chi"] = e.chi;
        r["chi_expected"] = e.expected;
    }
    emit(r);
    return 0;
}

int cmd_shell2(const std::string& path) {
    CcDocument d = io::load(path);
    auto s = find_2_shelling(d.complex);
    Json r;
    r["two_shellable"] = s.has_value();
    if (s) {
        Json o = Json::array();
        for (Vertex v : s->order) o.push_back(v);
        r["order"] = o;
    }
    emit(r);
    return 0;
}

int cmd_ambient(const std::string& path, const std::string& seed, const std::string& cycle, std::size_t budget) {
    CcDocument d = io::load(path);
    if (!cycle.empty()) {
        Contraction c = is_contractible_bounded(d.complex, EdgePath::through(parse_walk(cycle)), budget);
        Json r;
        r["contractible"] = c.contractible ? Json(true) : Json("unknown");
        r["moves"] = c.moves.size();
        r["explored"] = c.explored;
        emit(r);
        return 0;
    }
    if (!seed.empty()) {
        auto [v, edges] = parse_seed(seed);
        InducedCell ic = induced_subcomplex(d.complex, v, edges);
        CcDocument out = renumbered("induced(" + d.name + ")", ic.complex, vertex_origin);
        emit(out);
        return 0;
    }
    Complex k = ambient_complex(detail::two_skeleton(d.complex));
    emit(renumbered("ambient(" + d.name + ")", k, vertex_origin));
    return 0;
}

int cmd_midsection(const std::string& path, const std::string& removed) {
    CcDocument d = io::load(path);
    Complex j = removed_of(d, removed);
    if (j.empty()) throw Error(ErrorCode::BadParams, "midsection needs a removed part (--removed)");
    Midsection m = midsection(d.complex, j);
    emit(renumbered("midsection(" + d.name + ")", m.complex, [&](Vertex e) { return cell_json(d.complex.cell(e)); }));
    return 0;
}

int cmd_transition(const std::string& path, const std::string& removed) {
    CcDocument d = io::load(path);
    Complex j = removed_of(d, removed);
    if (j.empty()) throw Error(ErrorCode::BadParams, "transition needs a removed part (--removed)");
    auto rep = check_uniform(d.complex, j);
    if (!rep.ok()) fail("PredicateFailed", "not uniform: " + rep.failures.front().what, violations_json(rep.failures));
    Complex t = build_complex(rep.transition.complex.ranked_cells());
    emit(renumbered("transition(" + d.name + ")", t, vertex_origin));
    return 0;
}

int cmd_check_map(const std::string& spath, const std::string& tpath, const std::string& kind) {
    CcDocument s = io::load(spath);
    CcDocument t = io::load(tpath);
    CcMap m = map_between(s, t);
    if (!is_total(m)) fail("ValidationFailed", "map is not defined on every cell");
    MapReport red = check_reduction(m);
    MapReport col = check_collapse(m);
    Json r;
    r["reduction"] = report_json(red);
    r["collapse"] = report_json(col);
    bool ok = kind == "reduction" ? red.ok() : kind == "collapse" ? col.ok() : (red.ok() || col.ok());
    r["ok"] = ok;
    if (!ok) {
        const MapReport& bad = kind == "collapse" ? col : red;
        fail(kind == "collapse" ? "NotCollapse" : "NotReduction", "map fails the " + kind + " conditions", violations_json(bad.violations));
    }
    emit(r);
    return 0;
}

int cmd_slice_build(const std::vector<std::string>& paths) {
    if (paths.size() != 5) throw Error(ErrorCode::BadParams, "slice-build takes J J' M L' L");
    std::vector<CcDocument> docs;
    for (const auto& p : paths) docs.push_back(io::load(p));
    const CcDocument &j = docs[0], &jp = docs[1], &m = docs[2], &lp = docs[3], &l = docs[4];
    ComplexPtr mp = share(m.complex);
    CcMap pj = map_between(m, jp);
    CcMap pl = map_between(m, lp);
    pj.source = mp;
    pl.source = mp;
    CcMap rj = map_between(j, jp);
    CcMap rl = map_between(l, lp);
    rj.target = pj.target;
    rl.target = pl.target;
    SliceSequence seq = make_slice_sequence(make_semi(certify_collapse(pj), certify_reduction(rj)),
                                            make_semi(certify_collapse(pl), certify_reduction(rl)));
    Slice s = slice_from_sequence(seq);
    std::map<Vertex, Json> from;
    for (std::size_t i = 0; i < j.complex.vertices().size(); ++i) {
        Json o;
        o["from"] = "J";
        o["vertex"] = j.complex.vertices()[i];
        from[s.j.vertices()[i]] = o;
    }
    for (std::size_t i = 0; i < l.complex.vertices().size(); ++i) {
        Json o;
        o["from"] = "L";
        o["vertex"] = l.complex.vertices()[i];
        from[s.l.vertices()[i]] = o;
    }
    std::vector<Vertex> origin;
    Complex c = compact(s.s, &origin);
    CcDocument out = renumbered("slice", s.s, [&](Vertex v) { return from.at(v); });
    std::map<Vertex, Vertex> to;
    for (Vertex i = 0; i < origin.size(); ++i) to[origin[i]] = i;
    out.removed_components = component_indices(c, relabel(s.j, [&](Vertex v) { return to.at(v); }));
    emit(out);
    return 0;
}

std::vector<CcDocument> sequence_documents(const SliceSequence& seq) {
    CcDocument j = io::document("J", seq.j.base());
    CcDocument jp = io::document("J'", seq.j.transition());
    CcDocument m = io::document("M", seq.j.m());
    CcDocument lp = io::document("L'", seq.l.transition());
    CcDocument l = io::document("L", seq.l.base());
    j.maps.push_back(entry_of(seq.j.rho.map(), "J", "J'"));
    l.maps.push_back(entry_of(seq.l.rho.map(), "L", "L'"));
    m.maps.push_back(entry_of(seq.j.pi.map(), "M", "J'"));
    m.maps.push_back(entry_of(seq.l.pi.map(), "M", "L'"));
    return {j, jp, m, lp, l};
}

int cmd_slice_decompose(const std::string& path, const std::string& removed, const std::string& out_dir) {
    CcDocument d = io::load(path);
    Complex j = removed_of(d, removed.empty() && !d.removed_components ? "0" : removed);
    CausalDecomposition dec = decompose_causal(d.complex, j);
    Json r;
    r["interfaces"] = dec.interfaces.size();
    Json slices = Json::array();
    for (std::size_t i = 0; i < dec.slices.size(); ++i) {
        SliceSequence seq = sequence_from_slice(dec.slices[i], dec.interfaces[i]);
        auto docs = sequence_documents(seq);
        Json entry;
        entry["slice"] = cells_json(dec.slices[i].cells());
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            Json files = Json::array();
            for (const CcDocument& doc : docs) {
                std::string name = doc.name == "J'" ? "Jp" : doc.name == "L'" ? "Lp" : doc.name;
                std::string file = (std::filesystem::path(out_dir) / ("slice" + std::to_string(i) + "_" + name + ".json")).string();
                io::save(doc, file);
                files.push_back(file);
            }
            entry["files"] = files;
        } else {
            Json seqj;
            for (const CcDocument& doc : docs) seqj[doc.name] = io::to_json(doc);
            entry["sequence"] = seqj;
        }
        slices.push_back(entry);
    }
    r["slices"] = slices;
    emit(r);
    return 0;
}

int cmd_glue(const std::string& apath, const std::string& bpath, const std::string& interface) {
    CcDocument a = io::load(apath);
    CcDocument b = io::load(bpath);
    auto idx = parse_ints(interface);
    if (idx.empty() || idx.size() > 2) throw Error(ErrorCode::BadParams, "--interface takes i or i,j");
    int ia = idx[0], ib = idx.size() > 1 ? idx[1] : 0;
    Vertex off = vertex_bound(a.complex);
    Complex h = shifted(b.complex, off);
    auto ca = boundary_components(a.complex);
    auto cb = boundary_components(h);
    if (ia < 0 || ia >= static_cast<int>(ca.size()) || ib < 0 || ib >= static_cast<int>(cb.size()))
        throw Error(ErrorCode::BadParams, "no such boundary component");
    Complex u = glue(a.complex, ca[static_cast<std::size_t>(ia)], h, cb[static_cast<std::size_t>(ib)]);
    emit(renumbered("glue(" + a.name + ", " + b.name + ")", u, [&](Vertex v) {
        Json o;
        bool in_a = a.complex.contains(Cell{v});
        o["from"] = in_a ? "A" : "B";
        o["vertex"] = in_a ? v : v - off;
        return o;
    }));
    return 0;
}

int cmd_iso(const std::string& apath, const std::string& bpath) {
    CcDocument a = io::load(apath);
    CcDocument b = io::load(bpath);
    auto f = find_isomorphism(a.complex, b.complex);
    Json r;
    r["isomorphic"] = f.has_value();
    if (f) {
        Json m = Json::array();
        for (auto [x, y] : *f) m.push_back(Json::array({x, y}));
        r["map"] = m;
    }
    emit(r);
    return 0;
}

int cmd_gen(const std::string& family, const std::vector<int>& params, const std::string& name) {
    for (int p : params)
        if (p <= 0) throw Error(ErrorCode::BadParams, "generator parameters must be positive");
    Complex k = gen::generate(family, params);
    io::check_size(k.size());
    std::string n = name;
    if (n.empty()) {
        n = family;
        for (int p : params) n += "_" + std::to_string(p);
    }
    emit(io::document(n, k));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cckit: combinatorial cell complexes, duality, cobordisms and slices"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json"}));

    std::string file, file2, removed, interface, seed, cycle, kind = "reduction", out_dir, name;
    std::vector<std::string> files;
    std::vector<int> params;
    std::string family;
    int rank = -1;
    std::size_t budget = 10000;
    bool involution = false, oriented = false, reverse = false;

    auto one = [&](const char* cmd, const char* help) {
        auto* s = app.add_subcommand(cmd, help);
        s->add_option("file", file, "input document")->required();
        return s;
    };
    auto two = [&](const char* cmd, const char* help) {
        auto* s = app.add_subcommand(cmd, help);
        s->add_option("first", file, "first document")->required();
        s->add_option("second", file2, "second document")->required();
        return s;
    };

    auto* validate = one("validate", "check the cell complex axioms (and the cobordism conditions with --removed)");
    validate->add_option("--removed", removed, "removed boundary components, e.g. 0,2");
    auto* cls = one("classify", "report the structural properties");
    cls->add_option("--rank", rank, "also test r-fullness");
    auto* dl = one("dual", "dual of a closed complex");
    dl->add_flag("--check-involution", involution, "check dual(dual(K)) ~ K instead");
    auto* dcob = one("dual-cob", "dual of a cobordism");
    dcob->add_option("--removed", removed, "removed boundary components");
    auto* bd = one("bdiv", "barycentric subdivision");
    bd->add_flag("--oriented", oriented, "attach the inclusion orientation as a map");
    auto* rb = one("reconstruct-bdiv", "rebuild a complex from an oriented barycentric subdivision");
    rb->add_flag("--reverse", reverse, "reverse the orientation (yields the dual)");
    auto* eu = one("euler", "Euler characteristic");
    auto* sh = one("shell", "search for a shelling");
    auto* sh2 = one("shell2", "search for a 2-shelling");
    auto* amb = one("ambient", "ambient complex of a 2-complex");
    amb->add_option("--seed", seed, "induced cell from v:a-b,c-d instead");
    amb->add_option("--cycle", cycle, "bounded contraction search for the closed walk v0,v1,...,v0 instead");
    amb->add_option("--budget", budget, "state budget of the contraction search");
    auto* mid = one("midsection", "midsection of (K, J)");
    mid->add_option("--removed", removed, "boundary components forming J");
    auto* tr = one("transition", "transition of a uniform (K, J)");
    tr->add_option("--removed", removed, "boundary components forming J");
    auto* cm = two("check-map", "check a map of the first document into the second");
    cm->add_option("--kind", kind, "reduction, collapse or any")->check(CLI::IsMember({"reduction", "collapse", "any"}));
    auto* sb = app.add_subcommand("slice-build", "slice from a slice sequence J J' M L' L");
    sb->add_option("files", files, "five documents")->required()->expected(5);
    auto* sd = one("slice-decompose", "decompose a causal cobordism into slice sequences");
    sd->add_option("--removed", removed, "the starting boundary component (default 0)");
    sd->add_option("--out-dir", out_dir, "write the sequence documents here");
    auto* gl = two("glue", "glue two complexes along boundary components");
    gl->add_option("--interface", interface, "component i of the first (and j of the second, default 0)")->required();
    auto* is = two("iso", "test for a cell complex isomorphism");
    auto* gn = app.add_subcommand("gen", "generate a complex of a named family");
    gn->add_option("family", family, "simplex_boundary, simplex, cycle, path, grid, cylinder, bitetra, torus_cell, torus_surface, triangulated_torus, prism:<family>, dual_bdiv:<family>")->required();
    gn->add_option("params", params, "integer parameters");
    gn->add_option("--name", name, "document name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return cmd_validate(file, removed);
        if (*cls) return cmd_classify(file, rank);
        if (*dl) return cmd_dual(file, involution);
        if (*dcob) return cmd_dual_cob(file, removed);
        if (*bd) return cmd_bdiv(file, oriented);
        if (*rb) return cmd_reconstruct_bdiv(file, reverse);
        if (*eu) return cmd_euler(file);
        if (*sh) return cmd_shell(file);
        if (*sh2) return cmd_shell2(file);
        if (*amb) return cmd_ambient(file, seed, cycle, budget);
        if (*mid) return cmd_midsection(file, removed);
        if (*tr) return cmd_transition(file, removed);
        if (*cm) return cmd_check_map(file, file2, kind);
        if (*sb) return cmd_slice_build(files);
        if (*sd) return cmd_slice_decompose(file, removed, out_dir);
        if (*gl) return cmd_glue(file, file2, interface);
        if (*is) return cmd_iso(file, file2);
        if (*gn) return cmd_gen(family, params, name);
    } catch (const Failure& f) {
        std::cout << io::dump(f.report);
        return 1;
    } catch (const Error& e) {
        Json r;
        r["ok"] = false;
        r["error"] = to_string(e.code());
        r["message"] = e.what();
        r["violations"] = violations_json(e.details());
        if (e.code() == ErrorCode::ParseError) {
            std::cerr << io::dump(r);
            return 2;
        }
        std::cout << io::dump(r);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "cckit: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
