#ifndef HLQ_IO_HPP
#define HLQ_IO_HPP

#include <array>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlq/cardinality.hpp"
#include "hlq/incidence.hpp"
#include "hlq/presheaf.hpp"
#include "hlq/span.hpp"

namespace hlq::io {

using json = nlohmann::json;

inline json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw io_error("parse error in " + path.string() + ": " + e.what());
    }
    return j;
}

// A groupoid reference is either an inline object or a path string,
// resolved relative to the referencing file.
inline json resolve_ref(const json& ref, const std::filesystem::path& base_dir) {
    if (ref.is_string()) return load_json(base_dir / ref.get<std::string>());
    return ref;
}

inline FiniteGroupoid groupoid_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw io_error("groupoid: expected an object with a \"kind\" field");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "skeletal") {
        // expand each component's Cayley table into a one-object groupoid and
        // concatenate; labels are kept verbatim.
        FiniteGroupoid g;
        for (const auto& comp : j.at("components")) {
            Group grp;
            const auto& table = comp.at("group");
            grp.n = static_cast<int>(table.size());
            for (const auto& row : table) {
                if (static_cast<int>(row.size()) != grp.n)
                    throw io_error("skeletal groupoid: ragged group table");
                for (const auto& e : row) grp.table.push_back(e.get<int>());
            }
            auto viol = grp.validate();
            if (!viol.empty()) throw validation_error(viol);
            FiniteGroupoid piece = thickened_group(comp.at("label").get<std::string>(), grp);
            const int oo = static_cast<int>(g.objects.size());
            const int mo = static_cast<int>(g.morphisms.size());
            for (const auto& o : piece.objects) g.add_object(o);
            for (const auto& m : piece.morphisms) g.add_morphism(m.id, m.src + oo, m.tgt + oo);
            for (int i : piece.identity) g.identity.push_back(i + mo);
            for (const auto& [k, v] : piece.compose_table) {
                int a = static_cast<int>(k >> 32), b = static_cast<int>(k & 0xffffffffu);
                g.set_compose(a + mo, b + mo, v + mo);
            }
            for (int i : piece.inverse) g.inverse.push_back(i + mo);
        }
        g.finalize();
        return g;
    }
    if (kind != "table") throw io_error("groupoid: unknown kind '" + kind + "'");
    FiniteGroupoid g;
    for (const auto& o : j.at("objects")) g.add_object(o.get<std::string>());
    g.finalize();  // build object_index for lookups below
    for (const auto& m : j.at("morphisms")) {
        auto src = g.object_index.find(m.at("src").get<std::string>());
        auto tgt = g.object_index.find(m.at("tgt").get<std::string>());
        if (src == g.object_index.end() || tgt == g.object_index.end())
            throw io_error("groupoid: morphism endpoint references unknown object");
        g.add_morphism(m.at("id").get<std::string>(), src->second, tgt->second);
    }
    g.finalize();
    g.identity.assign(g.objects.size(), -1);
    for (const auto& [obj, mid] : j.at("identities").items()) {
        auto o = g.object_index.find(obj);
        auto m = g.morphism_index.find(mid.get<std::string>());
        if (o == g.object_index.end() || m == g.morphism_index.end())
            throw io_error("groupoid: identity entry references unknown id");
        g.identity[o->second] = m->second;
    }
    for (std::size_t o = 0; o < g.objects.size(); ++o)
        if (g.identity[o] < 0) throw io_error("groupoid: no identity for object " + g.objects[o]);
    for (const auto& triple : j.at("compose")) {
        if (triple.size() != 3) throw io_error("groupoid: compose entries are [g, f, gf]");
        int a = -1, b = -1, c = -1;
        auto look = [&](const json& x) {
            auto it = g.morphism_index.find(x.get<std::string>());
            if (it == g.morphism_index.end())
                throw io_error("groupoid: compose references unknown morphism");
            return it->second;
        };
        a = look(triple[0]);
        b = look(triple[1]);
        c = look(triple[2]);
        g.set_compose(a, b, c);
    }
    auto viol = g.infer_inverses();
    if (!viol.empty()) throw validation_error(viol);
    return g;
}

inline GroupoidPtr load_groupoid(const json& ref, const std::filesystem::path& base_dir) {
    FiniteGroupoid g = groupoid_from_json(resolve_ref(ref, base_dir));
    auto viol = g.validate();
    if (!viol.empty()) throw validation_error(viol);
    return make_groupoid(std::move(g));
}

// Category files use the "table" schema without inverses.
inline FiniteCategory category_from_json(const json& j) {
    FiniteCategory c;
    for (const auto& o : j.at("objects")) c.add_object(o.get<std::string>());
    c.finalize();
    for (const auto& m : j.at("morphisms")) {
        auto src = c.object_index.find(m.at("src").get<std::string>());
        auto tgt = c.object_index.find(m.at("tgt").get<std::string>());
        if (src == c.object_index.end() || tgt == c.object_index.end())
            throw io_error("category: morphism endpoint references unknown object");
        c.add_morphism(m.at("id").get<std::string>(), src->second, tgt->second);
    }
    c.finalize();
    c.identity.assign(c.objects.size(), -1);
    for (const auto& [obj, mid] : j.at("identities").items())
        c.identity[c.object_index.at(obj)] = c.morphism_index.at(mid.get<std::string>());
    for (const auto& triple : j.at("compose"))
        c.set_compose(c.morphism_index.at(triple[0].get<std::string>()),
                      c.morphism_index.at(triple[1].get<std::string>()),
                      c.morphism_index.at(triple[2].get<std::string>()));
    auto viol = c.validate_category();
    if (!viol.empty()) throw validation_error(viol);
    return c;
}

inline GroupoidFunctor functor_from_json(const json& j, const std::filesystem::path& base_dir,
                                         GroupoidPtr force_source = nullptr) {
    GroupoidFunctor f;
    f.source = force_source ? force_source : load_groupoid(j.at("source"), base_dir);
    f.target = load_groupoid(j.at("target"), base_dir);
    f.object_map.assign(f.source->objects.size(), -1);
    f.morphism_map.assign(f.source->morphisms.size(), -1);
    for (const auto& [a, b] : j.at("objects").items()) {
        auto sa = f.source->object_index.find(a);
        auto tb = f.target->object_index.find(b.get<std::string>());
        if (sa == f.source->object_index.end() || tb == f.target->object_index.end())
            throw io_error("functor: object map references unknown object");
        f.object_map[sa->second] = tb->second;
    }
    for (const auto& [a, b] : j.at("morphisms").items()) {
        auto sa = f.source->morphism_index.find(a);
        auto tb = f.target->morphism_index.find(b.get<std::string>());
        if (sa == f.source->morphism_index.end() || tb == f.target->morphism_index.end())
            throw io_error("functor: morphism map references unknown morphism");
        f.morphism_map[sa->second] = tb->second;
    }
    for (int x : f.object_map)
        if (x < 0) throw io_error("functor: object map is not total");
    for (int u : f.morphism_map)
        if (u < 0) throw io_error("functor: morphism map is not total");
    require_functor(f);
    return f;
}

inline Span span_from_json(const json& j, const std::filesystem::path& base_dir) {
    GroupoidFunctor left = functor_from_json(j.at("left"), base_dir);
    GroupoidFunctor right = functor_from_json(j.at("right"), base_dir, left.source);
    return {std::move(left), std::move(right)};
}

inline FamilyOverS family_from_json(const json& j, const std::filesystem::path& base_dir) {
    const json& f = j.contains("map") ? j.at("map") : j;
    return {functor_from_json(f, base_dir)};
}

inline FinitePresheaf presheaf_from_json(const json& j, const std::filesystem::path& base_dir) {
    FinitePresheaf f;
    f.base = load_groupoid(j.at("base"), base_dir);
    f.base_components = components(*f.base);
    const json& values = j.at("values");
    for (const auto& comp : f.base_components) {
        if (!values.contains(comp.representative))
            throw io_error("presheaf: no value for component " + comp.representative);
        const json& v = values.at(comp.representative);
        PresheafComponentValue pcv;
        const json& value_ref = (v.is_object() && v.contains("value")) ? v.at("value") : v;
        pcv.value = load_groupoid(value_ref, base_dir);
        if (v.is_object() && v.contains("action") && !v.at("action").is_string()) {
            for (const auto& [aut_id, maps] : v.at("action").items()) {
                auto it = f.base->morphism_index.find(aut_id);
                if (it == f.base->morphism_index.end())
                    throw io_error("presheaf: action references unknown morphism " + aut_id);
                ValueAction a;
                a.object_map.assign(pcv.value->objects.size(), -1);
                a.morphism_map.assign(pcv.value->morphisms.size(), -1);
                for (const auto& [x, y] : maps.at("objects").items())
                    a.object_map[pcv.value->object_index.at(x)] =
                        pcv.value->object_index.at(y.get<std::string>());
                for (const auto& [x, y] : maps.at("morphisms").items())
                    a.morphism_map[pcv.value->morphism_index.at(x)] =
                        pcv.value->morphism_index.at(y.get<std::string>());
                pcv.action[it->second] = std::move(a);
            }
        }
        f.values.push_back(std::move(pcv));
    }
    auto viol = check_presheaf(f);
    if (!viol.empty()) throw validation_error(viol);
    return f;
}

inline FinitePoset poset_from_json(const json& j) {
    FinitePoset p;
    for (const auto& e : j.at("elements")) p.elements.push_back(e.get<std::string>());
    std::map<std::string, int> idx;
    for (int i = 0; i < static_cast<int>(p.elements.size()); ++i) idx[p.elements[i]] = i;
    for (const auto& cov : j.at("covers")) {
        if (cov.size() != 2) throw io_error("poset: covers are pairs");
        auto a = idx.find(cov[0].get<std::string>());
        auto b = idx.find(cov[1].get<std::string>());
        if (a == idx.end() || b == idx.end())
            throw io_error("poset: cover references unknown element");
        p.covers.emplace_back(a->second, b->second);
    }
    p.close();
    auto viol = p.validate();
    if (!viol.empty()) throw validation_error(viol);
    return p;
}

inline TruncatedSpace truncated_from_json(const json& j) {
    TruncatedSpace t;
    for (const auto& comp : j.at("components")) {
        std::vector<long long> orders;
        for (const auto& o : comp.at("pi_orders")) orders.push_back(o.get<long long>());
        t.components.emplace_back(comp.at("label").get<std::string>(), std::move(orders));
    }
    return t;
}

// --------------------------- serialization --------------------------------

inline json groupoid_to_json(const FiniteGroupoid& g) {
    json j;
    j["kind"] = "table";
    j["objects"] = g.objects;
    json ms = json::array();
    for (const auto& m : g.morphisms)
        ms.push_back({{"id", m.id}, {"src", g.objects[m.src]}, {"tgt", g.objects[m.tgt]}});
    j["morphisms"] = ms;
    json ids = json::object();
    for (std::size_t o = 0; o < g.objects.size(); ++o)
        ids[g.objects[o]] = g.morphisms[g.identity[o]].id;
    j["identities"] = ids;
    std::vector<std::array<std::string, 3>> comps;
    for (const auto& [k, v] : g.compose_table) {
        int a = static_cast<int>(k >> 32), b = static_cast<int>(k & 0xffffffffu);
        comps.push_back({g.morphisms[a].id, g.morphisms[b].id, g.morphisms[v].id});
    }
    std::sort(comps.begin(), comps.end());
    json cj = json::array();
    for (const auto& t : comps) cj.push_back({t[0], t[1], t[2]});
    j["compose"] = cj;
    return j;
}

inline json functor_to_json(const GroupoidFunctor& f) {
    json objects = json::object();
    for (std::size_t o = 0; o < f.source->objects.size(); ++o)
        objects[f.source->objects[o]] = f.target->objects[f.object_map[o]];
    json morphisms = json::object();
    for (std::size_t m = 0; m < f.source->morphisms.size(); ++m)
        morphisms[f.source->morphisms[m].id] = f.target->morphisms[f.morphism_map[m]].id;
    return json{{"source", groupoid_to_json(*f.source)},
                {"target", groupoid_to_json(*f.target)},
                {"objects", objects},
                {"morphisms", morphisms}};
}

inline json span_to_json(const Span& s) {
    return json{{"left", functor_to_json(s.left)}, {"right", functor_to_json(s.right)}};
}

inline json skeleton_to_json(const SkeletalGroupoid& s) {
    json comps = json::array();
    for (const auto& [label, grp] : s.components) {
        json table = json::array();
        for (int a = 0; a < grp.n; ++a) {
            json row = json::array();
            for (int b = 0; b < grp.n; ++b) row.push_back(grp.mul(a, b));
            table.push_back(row);
        }
        comps.push_back({{"label", label}, {"group", table}});
    }
    return json{{"kind", "skeletal"}, {"components", comps}};
}

inline json qvector_to_json(const QVector& v) {
    json j = json::object();
    for (const auto& [k, r] : v.entries) j[k] = to_string(r);
    return j;
}

inline json qfunction_to_json(const QFunction& f) {
    json j = json::object();
    for (const auto& [k, r] : f.entries) j[k] = to_string(r);
    return j;
}

// Matrices serialize as sorted sparse triples [row, col, value].
inline json qmatrix_to_json(const QMatrix& m) {
    json entries = json::array();
    for (const auto& [k, r] : m.entries) entries.push_back({k.first, k.second, to_string(r)});
    return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", entries}};
}

}  // namespace hlq::io

#endif
