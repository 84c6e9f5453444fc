#pragma once

// JSON round-trips for every entity the CLI reads or writes.  Groups encode
// as {"rank": n, "torsion": [d...]}, matrices as row-major arrays with the
// literal string "?" for Unknown entries, families and finite models as
// named-node/edge objects with explicit unordered-pair keys "12", "13",
// "23".  Default nlohmann serialization orders object keys, so identical
// values produce byte-identical documents.

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpk/abgroup.hpp"
#include "mpk/diagram.hpp"
#include "mpk/finmodel.hpp"
#include "mpk/sixterm.hpp"

namespace mpk {

using json = nlohmann::json;

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what) {}
};

namespace jsondetail {

inline json int_to_json(const Int& v) {
    static const Int lo((std::numeric_limits<std::int64_t>::min)());
    static const Int hi((std::numeric_limits<std::int64_t>::max)());
    if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
    return v.str();
}

inline Int int_from_json(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw SchemaError(path, "not an integer literal: '" + j.get<std::string>() + "'");
        }
    }
    throw SchemaError(path, "expected an integer (number or decimal string)");
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path, "missing field '" + key + "'");
    return *it;
}

}  // namespace jsondetail

// --- groups ---------------------------------------------------------------

inline json to_json(const AbelianGroup& g) {
    json t = json::array();
    for (const Int& d : g.torsion()) t.push_back(jsondetail::int_to_json(d));
    return json{{"rank", g.free_rank()}, {"torsion", t}};
}

inline AbelianGroup group_from_json(const json& j, const std::string& path) {
    const json& r = jsondetail::field(j, "rank", path);
    if (!r.is_number_integer() || r.get<std::int64_t>() < 0)
        throw SchemaError(path + ".rank", "expected a non-negative integer");
    std::vector<Int> torsion;
    const json& t = jsondetail::field(j, "torsion", path);
    if (!t.is_array()) throw SchemaError(path + ".torsion", "expected an array");
    for (std::size_t k = 0; k < t.size(); ++k)
        torsion.push_back(jsondetail::int_from_json(t[k], path + ".torsion[" + std::to_string(k) + "]"));
    try {
        return AbelianGroup(static_cast<int>(r.get<std::int64_t>()), std::move(torsion));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path, e.what());
    }
}

// --- matrices ---------------------------------------------------------------

inline json to_json(const PartialMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j) ? jsondetail::int_to_json(*m(i, j)) : json("?"));
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(jsondetail::int_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline PartialMatrix partial_matrix_from_json(const json& j, int rows, int cols,
                                              const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw SchemaError(path, "expected " + std::to_string(rows) + " matrix rows");
    PartialMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw SchemaError(path + "[" + std::to_string(i) + "]",
                              "expected " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            const json& e = row[static_cast<std::size_t>(c)];
            std::string epath = path + "[" + std::to_string(i) + "][" + std::to_string(c) + "]";
            if (e.is_string() && e.get<std::string>() == "?") continue;
            m(i, c) = jsondetail::int_from_json(e, epath);
        }
    }
    return m;
}

// --- six-term sequences ------------------------------------------------------

inline json to_json(const SixTermSequence& s) {
    json nodes = json::array(), maps = json::array(), tags = json::array();
    json nlabels = json::array(), mlabels = json::array();
    for (int i = 0; i < 6; ++i) {
        const auto& n = s.nodes[static_cast<std::size_t>(i)];
        nodes.push_back(n ? to_json(*n) : json("?"));
        tags.push_back(to_string(s.tags[static_cast<std::size_t>(i)]));
        const auto& m = s.maps[static_cast<std::size_t>(i)];
        maps.push_back(m ? to_json(m->entries) : json("?"));
        nlabels.push_back(s.node_labels[static_cast<std::size_t>(i)]);
        mlabels.push_back(s.map_labels[static_cast<std::size_t>(i)]);
    }
    return json{{"type", "sixterm"}, {"nodes", nodes},       {"maps", maps},
                {"tags", tags},      {"node_labels", nlabels}, {"map_labels", mlabels}};
}

inline SixTermSequence sequence_from_json(const json& j, const std::string& path) {
    SixTermSequence s;
    const json& nodes = jsondetail::field(j, "nodes", path);
    const json& maps = jsondetail::field(j, "maps", path);
    if (!nodes.is_array() || nodes.size() != 6) throw SchemaError(path + ".nodes", "expected 6 entries");
    if (!maps.is_array() || maps.size() != 6) throw SchemaError(path + ".maps", "expected 6 entries");
    for (int i = 0; i < 6; ++i) {
        const json& n = nodes[static_cast<std::size_t>(i)];
        std::string npath = path + ".nodes[" + std::to_string(i) + "]";
        if (n.is_string() && n.get<std::string>() == "?") continue;
        s.nodes[static_cast<std::size_t>(i)] = group_from_json(n, npath);
    }
    if (j.contains("node_labels")) {
        const json& nl = j["node_labels"];
        if (!nl.is_array() || nl.size() != 6)
            throw SchemaError(path + ".node_labels", "expected 6 strings");
        for (int i = 0; i < 6; ++i) s.node_labels[static_cast<std::size_t>(i)] = nl[static_cast<std::size_t>(i)].get<std::string>();
        s.relabel_maps();
    }
    if (j.contains("tags")) {
        const json& tg = j["tags"];
        if (!tg.is_array() || tg.size() != 6) throw SchemaError(path + ".tags", "expected 6 strings");
        for (int i = 0; i < 6; ++i) {
            std::string t = tg[static_cast<std::size_t>(i)].get<std::string>();
            if (t == "given") s.tags[static_cast<std::size_t>(i)] = NodeTag::Given;
            else if (t == "external-fact") s.tags[static_cast<std::size_t>(i)] = NodeTag::ExternalFact;
            else if (t == "solved") s.tags[static_cast<std::size_t>(i)] = NodeTag::Solved;
            else throw SchemaError(path + ".tags[" + std::to_string(i) + "]", "unknown tag '" + t + "'");
        }
    }
    for (int i = 0; i < 6; ++i) {
        const json& mj = maps[static_cast<std::size_t>(i)];
        std::string mpath = path + ".maps[" + std::to_string(i) + "]";
        if (mj.is_string() && mj.get<std::string>() == "?") continue;
        const auto& dom = s.nodes[static_cast<std::size_t>(i)];
        const auto& cod = s.nodes[static_cast<std::size_t>((i + 1) % 6)];
        if (!dom || !cod)
            throw SchemaError(mpath, "map given but an adjacent node is unknown");
        PartialMatrix m = partial_matrix_from_json(mj, cod->generators(), dom->generators(), mpath);
        try {
            s.maps[static_cast<std::size_t>(i)] = GroupHom(*dom, *cod, std::move(m));
        } catch (const std::invalid_argument& e) {
            throw SchemaError(mpath, e.what());
        }
    }
    return s;
}

// --- reports and traces -------------------------------------------------------

inline json to_json(const SolveReport& r) {
    json steps = json::array();
    for (const auto& st : r.steps)
        steps.push_back(json{{"rule", st.rule}, {"target", st.target}, {"value", st.value},
                             {"reason", st.reason}});
    json unresolved = json::array();
    for (const auto& u : r.unresolved) unresolved.push_back(u);
    json witness = json::array();
    for (const auto& w : r.witness) witness.push_back(w);
    return json{{"status", to_string(r.status)},
                {"steps", steps},
                {"unresolved", unresolved},
                {"witness", witness},
                {"final", to_json(r.seq)}};
}

inline json to_json(const KPair& k) {
    return json{{"k0", to_json(k.k0)}, {"k1", to_json(k.k1)}};
}

inline KPair kpair_from_json(const json& j, const std::string& path) {
    return KPair{group_from_json(jsondetail::field(j, "k0", path), path + ".k0"),
                 group_from_json(jsondetail::field(j, "k1", path), path + ".k1")};
}

inline json to_json(const DerivationTrace& t) {
    json stages = json::array();
    for (const auto& st : t.stages) {
        json facts = json::array();
        for (const auto& f : st.facts_used) facts.push_back(f);
        stages.push_back(json{{"label", st.label},
                              {"input", to_json(st.input)},
                              {"report", to_json(st.report)},
                              {"facts_used", facts},
                              {"resolved", st.resolved ? to_json(*st.resolved) : json(nullptr)},
                              {"how", to_string(st.how)}});
    }
    return json{{"order", json::array({t.order[0], t.order[1], t.order[2]})},
                {"stages", stages},
                {"status", to_string(t.status)},
                {"result", t.result ? to_json(*t.result) : json(nullptr)}};
}

// --- families --------------------------------------------------------------

namespace jsondetail {

inline json knode_to_json(const KNode& n) {
    json unit(nullptr);
    if (n.unit_k0) {
        unit = json::array();
        for (const Int& v : *n.unit_k0) unit.push_back(int_to_json(v));
    }
    return json{{"k0", to_json(n.k.k0)},
                {"k1", to_json(n.k.k1)},
                {"unit_k0", unit},
                {"provenance", to_string(n.prov)},
                {"note", n.note}};
}

inline KNode knode_from_json(const json& j, const std::string& path) {
    KNode n;
    n.k.k0 = group_from_json(field(j, "k0", path), path + ".k0");
    n.k.k1 = group_from_json(field(j, "k1", path), path + ".k1");
    if (j.contains("unit_k0") && !j["unit_k0"].is_null()) {
        std::vector<Int> u;
        const json& uj = j["unit_k0"];
        if (!uj.is_array()) throw SchemaError(path + ".unit_k0", "expected an array or null");
        for (std::size_t k = 0; k < uj.size(); ++k)
            u.push_back(int_from_json(uj[k], path + ".unit_k0[" + std::to_string(k) + "]"));
        if (static_cast<int>(u.size()) != n.k.k0.generators())
            throw SchemaError(path + ".unit_k0", "length must match the K0 generator count");
        n.unit_k0 = std::move(u);
    }
    if (j.contains("provenance")) {
        std::string p = j["provenance"].get<std::string>();
        if (p == "given") n.prov = Provenance::Given;
        else if (p == "external-fact") n.prov = Provenance::ExternalFact;
        else if (p == "derived") n.prov = Provenance::Derived;
        else throw SchemaError(path + ".provenance", "unknown provenance '" + p + "'");
    }
    if (j.contains("note")) n.note = j["note"].get<std::string>();
    return n;
}

inline json arrow_to_json(const ArrowData& a) {
    return json{{"k0", a.k0 ? to_json(a.k0->entries) : json(nullptr)},
                {"k1", a.k1 ? to_json(a.k1->entries) : json(nullptr)}};
}

inline std::optional<GroupHom> arrow_hom_from_json(const json& j, const AbelianGroup& dom,
                                                   const AbelianGroup& cod,
                                                   const std::string& path) {
    if (j.is_null()) return std::nullopt;
    PartialMatrix m = partial_matrix_from_json(j, cod.generators(), dom.generators(), path);
    try {
        return GroupHom(dom, cod, std::move(m));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path, e.what());
    }
}

}  // namespace jsondetail

inline json to_json(const PullbackFamily& f) {
    json nodes = json::object();
    for (const auto& [i, n] : f.component) nodes["B" + std::to_string(i)] = jsondetail::knode_to_json(n);
    for (const auto& [key, n] : f.overlap)
        nodes["B" + std::to_string(key.first) + std::to_string(key.second)] =
            jsondetail::knode_to_json(n);
    if (f.triple) nodes["B123"] = jsondetail::knode_to_json(*f.triple);
    json arrows = json::object();
    for (const auto& [key, a] : f.pi)
        arrows["pi^" + std::to_string(key.first) + "_" + std::to_string(key.second)] =
            jsondetail::arrow_to_json(a);
    for (const auto& [key, a] : f.eta)
        arrows["eta^" + std::to_string(key.first) + std::to_string(key.second)] =
            jsondetail::arrow_to_json(a);
    return json{{"type", "family"},
                {"J", f.J},
                {"nodes", nodes},
                {"arrows", arrows},
                {"cocycle", json{{"certified", f.cocycle_certified}, {"source", f.certificate_source}}}};
}

inline PullbackFamily family_from_json(const json& j, const std::string& path) {
    PullbackFamily f;
    const json& J = jsondetail::field(j, "J", path);
    if (!J.is_array() || (J.size() != 2 && J.size() != 3))
        throw SchemaError(path + ".J", "expected two or three indices");
    for (const auto& v : J) f.J.push_back(v.get<int>());
    if (!std::is_sorted(f.J.begin(), f.J.end()))
        throw SchemaError(path + ".J", "indices must be increasing");
    const json& nodes = jsondetail::field(j, "nodes", path);
    for (int i : f.J) {
        std::string key = "B" + std::to_string(i);
        f.component[i] =
            jsondetail::knode_from_json(jsondetail::field(nodes, key, path + ".nodes"),
                                        path + ".nodes." + key);
    }
    for (std::size_t a = 0; a < f.J.size(); ++a)
        for (std::size_t b = a + 1; b < f.J.size(); ++b) {
            std::string key = "B" + std::to_string(f.J[a]) + std::to_string(f.J[b]);
            f.overlap[{f.J[a], f.J[b]}] =
                jsondetail::knode_from_json(jsondetail::field(nodes, key, path + ".nodes"),
                                            path + ".nodes." + key);
        }
    if (f.J.size() == 3) {
        f.triple = jsondetail::knode_from_json(jsondetail::field(nodes, "B123", path + ".nodes"),
                                               path + ".nodes.B123");
    }
    const json& arrows = jsondetail::field(j, "arrows", path);
    for (std::size_t a = 0; a < f.J.size(); ++a)
        for (std::size_t b = a + 1; b < f.J.size(); ++b) {
            int i = f.J[a], jj = f.J[b];
            for (auto [s, t] : {std::pair{i, jj}, std::pair{jj, i}}) {
                std::string key = "pi^" + std::to_string(s) + "_" + std::to_string(t);
                const json& aj = jsondetail::field(arrows, key, path + ".arrows");
                ArrowData ad;
                ad.k0 = jsondetail::arrow_hom_from_json(
                    jsondetail::field(aj, "k0", path + ".arrows." + key),
                    f.component.at(s).k.k0, f.overlap.at({i, jj}).k.k0,
                    path + ".arrows." + key + ".k0");
                ad.k1 = jsondetail::arrow_hom_from_json(
                    jsondetail::field(aj, "k1", path + ".arrows." + key),
                    f.component.at(s).k.k1, f.overlap.at({i, jj}).k.k1,
                    path + ".arrows." + key + ".k1");
                f.pi[{s, t}] = ad;
            }
            if (f.J.size() == 3) {
                std::string key = "eta^" + std::to_string(i) + std::to_string(jj);
                const json& aj = jsondetail::field(arrows, key, path + ".arrows");
                ArrowData ad;
                ad.k0 = jsondetail::arrow_hom_from_json(
                    jsondetail::field(aj, "k0", path + ".arrows." + key),
                    f.overlap.at({i, jj}).k.k0, f.triple->k.k0, path + ".arrows." + key + ".k0");
                ad.k1 = jsondetail::arrow_hom_from_json(
                    jsondetail::field(aj, "k1", path + ".arrows." + key),
                    f.overlap.at({i, jj}).k.k1, f.triple->k.k1, path + ".arrows." + key + ".k1");
                f.eta[{i, jj}] = ad;
            }
        }
    const json& coc = jsondetail::field(j, "cocycle", path);
    f.cocycle_certified = jsondetail::field(coc, "certified", path + ".cocycle").get<bool>();
    f.certificate_source = jsondetail::field(coc, "source", path + ".cocycle").get<std::string>();
    return f;
}

inline json to_json(const ExternalFact& f) {
    json unit(nullptr);
    if (f.unit_k0) {
        unit = json::array();
        for (const Int& v : *f.unit_k0) unit.push_back(jsondetail::int_to_json(v));
    }
    return json{{"node", f.node},
                {"k0", to_json(f.k.k0)},
                {"k1", to_json(f.k.k1)},
                {"citation", f.citation},
                {"unit_k0", unit}};
}

inline ExternalFact fact_from_json(const json& j, const std::string& path) {
    ExternalFact f;
    f.node = jsondetail::field(j, "node", path).get<std::string>();
    f.k.k0 = group_from_json(jsondetail::field(j, "k0", path), path + ".k0");
    f.k.k1 = group_from_json(jsondetail::field(j, "k1", path), path + ".k1");
    f.citation = jsondetail::field(j, "citation", path).get<std::string>();
    if (f.citation.empty()) throw SchemaError(path + ".citation", "external facts must cite a source");
    if (j.contains("unit_k0") && !j["unit_k0"].is_null()) {
        std::vector<Int> u;
        for (std::size_t k = 0; k < j["unit_k0"].size(); ++k)
            u.push_back(jsondetail::int_from_json(j["unit_k0"][k],
                                                  path + ".unit_k0[" + std::to_string(k) + "]"));
        f.unit_k0 = std::move(u);
    }
    return f;
}

// --- finite models ------------------------------------------------------------

inline json to_json(const FiniteGluingModel& m) {
    json xs = json::object();
    for (const auto& [i, labels] : m.X) xs[std::to_string(i)] = labels;
    json overlaps = json::object();
    for (const auto& [key, o] : m.overlaps) {
        json oj = json::object();
        oj["set"] = o.set;
        for (int side : {key.first, key.second}) {
            json ij = json::object();
            auto it = o.into.find(side);
            if (it != o.into.end())
                for (const auto& [e, tgt] : it->second) ij[e] = tgt;
            oj["into_" + std::to_string(side)] = ij;
        }
        overlaps[std::to_string(key.first) + std::to_string(key.second)] = oj;
    }
    return json{{"type", "finmodel"}, {"J", m.J}, {"X", xs}, {"overlaps", overlaps}};
}

inline FiniteGluingModel model_from_json(const json& j, const std::string& path) {
    FiniteGluingModel m;
    const json& J = jsondetail::field(j, "J", path);
    for (const auto& v : J) m.J.push_back(v.get<int>());
    const json& xs = jsondetail::field(j, "X", path);
    for (int i : m.J) {
        const json& xj = jsondetail::field(xs, std::to_string(i), path + ".X");
        if (!xj.is_array()) throw SchemaError(path + ".X." + std::to_string(i), "expected an array");
        m.X[i] = xj.get<std::vector<std::string>>();
    }
    const json& os = jsondetail::field(j, "overlaps", path);
    for (std::size_t a = 0; a < m.J.size(); ++a)
        for (std::size_t b = a + 1; b < m.J.size(); ++b) {
            int i = m.J[a], jj = m.J[b];
            std::string key = std::to_string(i) + std::to_string(jj);
            const json& oj = jsondetail::field(os, key, path + ".overlaps");
            FiniteGluingModel::Overlap o;
            o.set = jsondetail::field(oj, "set", path + ".overlaps." + key)
                        .get<std::vector<std::string>>();
            for (int side : {i, jj}) {
                std::string fkey = "into_" + std::to_string(side);
                if (!oj.contains(fkey)) {
                    if (o.set.empty()) continue;
                    throw SchemaError(path + ".overlaps." + key, "missing field '" + fkey + "'");
                }
                for (auto it = oj[fkey].begin(); it != oj[fkey].end(); ++it)
                    o.into[side][it.key()] = it.value().get<std::string>();
            }
            m.overlaps[{i, jj}] = o;
        }
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path, e.what());
    }
    return m;
}

}  // namespace mpk
