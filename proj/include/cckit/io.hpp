#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "complex.hpp"

namespace cckit::io {

using Json = nlohmann::ordered_json;

struct MapEntry {
    std::string from;
    std::string to;
    std::vector<std::pair<Cell, Cell>> pairs;
};

struct CcDocument {
    std::string name;
    Complex complex;
    std::optional<std::vector<int>> removed_components;
    std::vector<MapEntry> maps;
    Json origins;  // null unless the document was produced by a transformation
};

inline std::size_t max_cells() {
    const char* env = std::getenv("CCKIT_MAX_CELLS");
    if (!env || !*env) return 100000;
    char* end = nullptr;
    unsigned long long n = std::strtoull(env, &end, 10);
    if (*end != '\0' || n == 0) throw Error(ErrorCode::BadParams, "CCKIT_MAX_CELLS must be a positive integer");
    return static_cast<std::size_t>(n);
}

inline void check_size(std::size_t n) {
    std::size_t cap = max_cells();
    if (n > cap)
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " cells exceed the cap of " + std::to_string(cap));
}

namespace detail {

[[noreturn]] inline void bad(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

inline Cell read_cell(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where + ": vertex list expected");
    Cell c;
    for (const Json& v : j) {
        if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 0xFFFFFFFFLL)
            bad(where + ": vertices are non-negative integers");
        c.push_back(v.get<Vertex>());
    }
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) bad(where + ": repeated vertex");
    return c;
}

inline Json write_cell(const Cell& c) {
    Json a = Json::array();
    for (Vertex v : c) a.push_back(v);
    return a;
}

}  // namespace detail

inline CcDocument from_json(const Json& j) {
    using detail::bad;
    if (!j.is_object()) bad("document must be an object");
    CcDocument d;
    if (j.contains("name")) {
        if (!j["name"].is_string()) bad("name must be a string");
        d.name = j["name"].get<std::string>();
    }
    if (!j.contains("cells") || !j["cells"].is_array()) bad("cells array missing");
    check_size(j["cells"].size());
    std::vector<std::pair<Cell, int>> ranked;
    for (std::size_t i = 0; i < j["cells"].size(); ++i) {
        const Json& c = j["cells"][i];
        std::string where = "cells[" + std::to_string(i) + "]";
        if (!c.is_object() || !c.contains("vertices") || !c.contains("rank")) bad(where + ": needs vertices and rank");
        if (!c["rank"].is_number_integer()) bad(where + ": rank must be an integer");
        ranked.emplace_back(detail::read_cell(c["vertices"], where), c["rank"].get<int>());
    }
    try {
        d.complex = build_complex(std::move(ranked));
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationFailed, e.what(), e.details());
    }
    if (j.contains("removed_components")) {
        const Json& r = j["removed_components"];
        if (!r.is_array()) bad("removed_components must be an array");
        std::vector<int> idx;
        for (const Json& v : r) {
            if (!v.is_number_integer()) bad("removed_components holds integers");
            idx.push_back(v.get<int>());
        }
        std::sort(idx.begin(), idx.end());
        d.removed_components = idx;
    }
    if (j.contains("maps")) {
        if (!j["maps"].is_array()) bad("maps must be an array");
        for (const Json& m : j["maps"]) {
            if (!m.is_object() || !m.contains("pairs") || !m["pairs"].is_array()) bad("map needs a pairs array");
            MapEntry e;
            for (const char* key : {"from", "to"}) {
                if (!m.contains(key)) continue;
                if (!m[key].is_string()) bad(std::string("map ") + key + " must be a string");
                (std::string(key) == "from" ? e.from : e.to) = m[key].get<std::string>();
            }
            for (const Json& p : m["pairs"]) {
                if (!p.is_array() || p.size() != 2) bad("map pair must be [cell, cell]");
                e.pairs.emplace_back(detail::read_cell(p[0], "map"), detail::read_cell(p[1], "map"));
            }
            std::sort(e.pairs.begin(), e.pairs.end(), [](const auto& a, const auto& b) {
                return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a < b;
            });
            d.maps.push_back(std::move(e));
        }
    }
    if (j.contains("origins")) d.origins = j["origins"];
    return d;
}

inline CcDocument parse(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return from_json(j);
}

inline CcDocument load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

inline Json cells_json(const Complex& k) {
    Json a = Json::array();
    for (Id i = 0; i < k.size(); ++i) {
        Json c;
        c["vertices"] = detail::write_cell(k.cell(i));
        c["rank"] = k.rank(i);
        a.push_back(std::move(c));
    }
    return a;
}

inline Json to_json(const CcDocument& d) {
    Json j;
    j["name"] = d.name;
    j["cells"] = cells_json(d.complex);
    if (d.removed_components) j["removed_components"] = *d.removed_components;
    if (!d.maps.empty()) {
        Json ms = Json::array();
        for (const MapEntry& m : d.maps) {
            Json e;
            e["from"] = m.from;
            e["to"] = m.to;
            Json ps = Json::array();
            for (const auto& [a, b] : m.pairs) ps.push_back(Json::array({detail::write_cell(a), detail::write_cell(b)}));
            e["pairs"] = std::move(ps);
            ms.push_back(std::move(e));
        }
        j["maps"] = std::move(ms);
    }
    if (!d.origins.is_null()) j["origins"] = d.origins;
    return j;
}

// Two-space indent with one array element per line; scalars and cells stay inline.
inline void write_pretty(std::ostream& out, const Json& j, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    std::string inner(static_cast<std::size_t>(indent + 2), ' ');
    if (j.is_object() && !j.empty()) {
        out << "{\n";
        std::size_t n = 0;
        for (auto it = j.begin(); it != j.end(); ++it) {
            out << inner << Json(it.key()).dump() << ": ";
            write_pretty(out, it.value(), indent + 2);
            out << (++n < j.size() ? ",\n" : "\n");
        }
        out << pad << "}";
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        out << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out << inner << j[i].dump();
            out << (i + 1 < j.size() ? ",\n" : "\n");
        }
        out << pad << "]";
    } else {
        out << j.dump();
    }
}

inline std::string dump(const Json& j) {
    std::ostringstream out;
    write_pretty(out, j);
    out << "\n";
    return out.str();
}

inline std::string dump(const CcDocument& d) { return dump(to_json(d)); }

inline void save(const CcDocument& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
    out << dump(d);
}

inline CcDocument document(std::string name, Complex k) {
    CcDocument d;
    d.name = std::move(name);
    d.complex = std::move(k);
    return d;
}

}  // namespace cckit::io
