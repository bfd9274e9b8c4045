#ifndef HLQ_GROUPOID_HPP
#define HLQ_GROUPOID_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hlq/errors.hpp"
#include "hlq/group.hpp"

namespace hlq {

struct MorphismRec {
    std::string id;
    int src = -1;
    int tgt = -1;
};

namespace detail {
inline std::uint64_t pair_key(int g, int f) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 32) |
           static_cast<std::uint32_t>(f);
}
}  // namespace detail

// Finite category given by an explicit composition table. Morphism and
// object identifiers are strings and must be unique.
struct FiniteCategory {
    std::vector<std::string> objects;
    std::vector<MorphismRec> morphisms;
    std::vector<int> identity;  // object index -> morphism index
    std::unordered_map<std::uint64_t, int> compose_table;

    // derived lookups, populated by finalize()
    std::unordered_map<std::string, int> object_index;
    std::unordered_map<std::string, int> morphism_index;
    std::vector<std::vector<int>> out_of;  // object index -> morphisms with that source

    int add_object(const std::string& id) {
        objects.push_back(id);
        return static_cast<int>(objects.size()) - 1;
    }
    int add_morphism(const std::string& id, int src, int tgt) {
        morphisms.push_back({id, src, tgt});
        return static_cast<int>(morphisms.size()) - 1;
    }
    void set_compose(int g, int f, int gf) { compose_table[detail::pair_key(g, f)] = gf; }

    int compose(int g, int f) const {
        auto it = compose_table.find(detail::pair_key(g, f));
        return it == compose_table.end() ? -1 : it->second;
    }

    int src(int m) const { return morphisms[m].src; }
    int tgt(int m) const { return morphisms[m].tgt; }

    void finalize() {
        object_index.clear();
        morphism_index.clear();
        for (int i = 0; i < static_cast<int>(objects.size()); ++i) object_index[objects[i]] = i;
        for (int i = 0; i < static_cast<int>(morphisms.size()); ++i)
            morphism_index[morphisms[i].id] = i;
        out_of.assign(objects.size(), {});
        for (int i = 0; i < static_cast<int>(morphisms.size()); ++i)
            out_of[morphisms[i].src].push_back(i);
    }

    std::vector<int> hom(int x, int y) const {
        std::vector<int> result;
        for (int m : out_of[x])
            if (morphisms[m].tgt == y) result.push_back(m);
        return result;
    }

    // Violations of the category axioms: well-formed identities, totality of
    // composition on composable pairs, source/target bookkeeping,
    // associativity.
    std::vector<std::string> validate_category() const {
        std::vector<std::string> v;
        if (identity.size() != objects.size()) {
            v.push_back("identity: missing assignments");
            return v;
        }
        {
            std::unordered_map<std::string, int> seen;
            for (const auto& o : objects)
                if (++seen[o] == 2) v.push_back("objects: duplicate identifier '" + o + "'");
            seen.clear();
            for (const auto& m : morphisms)
                if (++seen[m.id] == 2) v.push_back("morphisms: duplicate identifier '" + m.id + "'");
        }
        for (std::size_t x = 0; x < objects.size(); ++x) {
            int e = identity[x];
            if (e < 0 || e >= static_cast<int>(morphisms.size()) ||
                morphisms[e].src != static_cast<int>(x) || morphisms[e].tgt != static_cast<int>(x)) {
                v.push_back("identity: bad identity for object '" + objects[x] + "'");
            }
        }
        const int nm = static_cast<int>(morphisms.size());
        for (int g = 0; g < nm; ++g)
            for (int f = 0; f < nm; ++f) {
                int gf = compose(g, f);
                if (morphisms[f].tgt == morphisms[g].src) {
                    if (gf < 0)
                        v.push_back("missing composite: " + morphisms[g].id + " ∘ " +
                                    morphisms[f].id);
                    else if (morphisms[gf].src != morphisms[f].src ||
                             morphisms[gf].tgt != morphisms[g].tgt)
                        v.push_back("composite endpoints wrong: " + morphisms[g].id + " ∘ " +
                                    morphisms[f].id);
                } else if (gf >= 0) {
                    v.push_back("composite of non-composable pair: " + morphisms[g].id + " ∘ " +
                                morphisms[f].id);
                }
            }
        if (!v.empty()) return v;  // later checks assume totality
        for (int f = 0; f < nm; ++f) {
            if (compose(identity[morphisms[f].tgt], f) != f ||
                compose(f, identity[morphisms[f].src]) != f)
                v.push_back("identity law fails at " + morphisms[f].id);
        }
        for (int h = 0; h < nm; ++h)
            for (int g = 0; g < nm; ++g) {
                if (morphisms[g].tgt != morphisms[h].src) continue;
                int hg = compose(h, g);
                for (int f = 0; f < nm; ++f) {
                    if (morphisms[f].tgt != morphisms[g].src) continue;
                    if (compose(hg, f) != compose(h, compose(g, f))) {
                        v.push_back("associativity fails at (" + morphisms[h].id + "," +
                                    morphisms[g].id + "," + morphisms[f].id + ")");
                        return v;
                    }
                }
            }
        return v;
    }
};

struct Component {
    std::string representative;          // least object identifier in the class
    std::vector<std::string> object_class;
    int aut_order = 1;
    int representative_index = -1;
};

struct SkeletalGroupoid {
    // (component label, automorphism group of the representative)
    std::vector<std::pair<std::string, Group>> components;
};

struct FiniteGroupoid : FiniteCategory {
    std::vector<int> inverse;  // morphism index -> inverse morphism index

    int inv(int m) const { return inverse[m]; }

    // Fill `inverse` by searching the composition table; reports morphisms
    // without a two-sided inverse.
    std::vector<std::string> infer_inverses() {
        std::vector<std::string> v;
        inverse.assign(morphisms.size(), -1);
        for (int f = 0; f < static_cast<int>(morphisms.size()); ++f) {
            for (int g : out_of[morphisms[f].tgt]) {
                if (morphisms[g].tgt != morphisms[f].src) continue;
                if (compose(g, f) == identity[morphisms[f].src] &&
                    compose(f, g) == identity[morphisms[f].tgt]) {
                    inverse[f] = g;
                    break;
                }
            }
            if (inverse[f] < 0) v.push_back("no inverse for morphism " + morphisms[f].id);
        }
        return v;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> v = validate_category();
        if (!v.empty()) return v;
        if (inverse.size() != morphisms.size()) {
            v.push_back("inverse: missing assignments");
            return v;
        }
        for (int f = 0; f < static_cast<int>(morphisms.size()); ++f) {
            int g = inverse[f];
            if (g < 0 || g >= static_cast<int>(morphisms.size()) ||
                morphisms[g].src != morphisms[f].tgt || morphisms[g].tgt != morphisms[f].src) {
                v.push_back("inverse endpoints wrong at " + morphisms[f].id);
                continue;
            }
            if (compose(g, f) != identity[morphisms[f].src] ||
                compose(f, g) != identity[morphisms[f].tgt])
                v.push_back("inverse law fails at " + morphisms[f].id);
        }
        return v;
    }

    void require_valid() const {
        auto v = validate();
        if (!v.empty()) throw validation_error(v);
    }
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidPtr make_groupoid(FiniteGroupoid g) {
    g.finalize();
    return std::make_shared<const FiniteGroupoid>(std::move(g));
}

// Isomorphism classes of objects, ordered by least object identifier.
inline std::vector<Component> components(const FiniteGroupoid& g) {
    const int no = static_cast<int>(g.objects.size());
    std::vector<int> parent(no);
    for (int i = 0; i < no; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& m : g.morphisms) {
        int a = find(m.src), b = find(m.tgt);
        if (a != b) parent[a] = b;
    }
    std::map<int, std::vector<int>> classes;
    for (int i = 0; i < no; ++i) classes[find(i)].push_back(i);
    std::vector<Component> result;
    for (auto& [root, members] : classes) {
        Component c;
        std::vector<std::string> names;
        for (int i : members) names.push_back(g.objects[i]);
        std::sort(names.begin(), names.end());
        c.object_class = names;
        c.representative = names.front();
        c.representative_index = g.object_index.at(c.representative);
        c.aut_order = static_cast<int>(g.hom(c.representative_index, c.representative_index).size());
        result.push_back(std::move(c));
    }
    std::sort(result.begin(), result.end(),
              [](const Component& a, const Component& b) { return a.representative < b.representative; });
    return result;
}

// Automorphism group of one object, as a Cayley table with identity first.
inline Group automorphism_group(const FiniteGroupoid& g, int obj,
                                std::vector<int>* element_morphisms = nullptr) {
    std::vector<int> auts = g.hom(obj, obj);
    // put the identity at index 0, keep the rest in morphism order
    auto it = std::find(auts.begin(), auts.end(), g.identity[obj]);
    std::iter_swap(auts.begin(), it);
    std::unordered_map<int, int> pos;
    for (int i = 0; i < static_cast<int>(auts.size()); ++i) pos[auts[i]] = i;
    Group grp;
    grp.n = static_cast<int>(auts.size());
    grp.table.resize(static_cast<std::size_t>(grp.n) * grp.n);
    for (int a = 0; a < grp.n; ++a)
        for (int b = 0; b < grp.n; ++b) grp.table[a * grp.n + b] = pos.at(g.compose(auts[a], auts[b]));
    if (element_morphisms) *element_morphisms = auts;
    return grp;
}

inline SkeletalGroupoid skeletalize(const FiniteGroupoid& g) {
    SkeletalGroupoid s;
    for (const auto& c : components(g))
        s.components.emplace_back(c.representative, automorphism_group(g, c.representative_index));
    return s;
}

// Equivalence of groupoids: a bijection of components with isomorphic
// automorphism groups. Greedy matching is sound because isomorphism is an
// equivalence relation.
inline bool equivalent(const FiniteGroupoid& a, const FiniteGroupoid& b,
                       const SizeCaps& caps = {}) {
    auto sa = skeletalize(a), sb = skeletalize(b);
    if (sa.components.size() != sb.components.size()) return false;
    std::vector<bool> used(sb.components.size(), false);
    for (const auto& [la, ga] : sa.components) {
        bool matched = false;
        for (std::size_t j = 0; j < sb.components.size(); ++j) {
            if (used[j]) continue;
            if (groups_isomorphic(ga, sb.components[j].second, caps.group_iso_cap)) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

// Disjoint union; identifiers are tagged to stay unique.
inline FiniteGroupoid sum(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    FiniteGroupoid s;
    for (const auto& o : a.objects) s.add_object("L:" + o);
    for (const auto& o : b.objects) s.add_object("R:" + o);
    const int oo = static_cast<int>(a.objects.size());
    const int mo = static_cast<int>(a.morphisms.size());
    for (const auto& m : a.morphisms) s.add_morphism("L:" + m.id, m.src, m.tgt);
    for (const auto& m : b.morphisms) s.add_morphism("R:" + m.id, m.src + oo, m.tgt + oo);
    for (int i : a.identity) s.identity.push_back(i);
    for (int i : b.identity) s.identity.push_back(i + mo);
    for (const auto& [k, v] : a.compose_table) s.compose_table[k] = v;
    for (const auto& [k, v] : b.compose_table) {
        int g = static_cast<int>(k >> 32), f = static_cast<int>(k & 0xffffffffu);
        s.set_compose(g + mo, f + mo, v + mo);
    }
    for (int i : a.inverse) s.inverse.push_back(i);
    for (int i : b.inverse) s.inverse.push_back(i + mo);
    s.finalize();
    return s;
}

inline std::string pair_id(const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
}

// Cartesian product groupoid; structure is componentwise.
inline FiniteGroupoid product(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    FiniteGroupoid p;
    const int bo = static_cast<int>(b.objects.size());
    const int bm = static_cast<int>(b.morphisms.size());
    for (const auto& x : a.objects)
        for (const auto& y : b.objects) p.add_object(pair_id(x, y));
    auto obj = [&](int x, int y) { return x * bo + y; };
    auto mor = [&](int u, int v) { return u * bm + v; };
    for (const auto& u : a.morphisms)
        for (const auto& v : b.morphisms)
            p.add_morphism(pair_id(u.id, v.id), obj(u.src, v.src), obj(u.tgt, v.tgt));
    p.identity.resize(p.objects.size());
    for (int x = 0; x < static_cast<int>(a.objects.size()); ++x)
        for (int y = 0; y < bo; ++y) p.identity[obj(x, y)] = mor(a.identity[x], b.identity[y]);
    for (int g1 = 0; g1 < static_cast<int>(a.morphisms.size()); ++g1)
        for (int f1 = 0; f1 < static_cast<int>(a.morphisms.size()); ++f1) {
            int c1 = a.compose(g1, f1);
            if (c1 < 0) continue;
            for (int g2 = 0; g2 < bm; ++g2)
                for (int f2 = 0; f2 < bm; ++f2) {
                    int c2 = b.compose(g2, f2);
                    if (c2 < 0) continue;
                    p.set_compose(mor(g1, g2), mor(f1, f2), mor(c1, c2));
                }
        }
    p.inverse.resize(p.morphisms.size());
    for (int u = 0; u < static_cast<int>(a.morphisms.size()); ++u)
        for (int v = 0; v < bm; ++v) p.inverse[mor(u, v)] = mor(a.inverse[u], b.inverse[v]);
    p.finalize();
    return p;
}

// Full subgroupoid on a subset of objects.
inline FiniteGroupoid full_subgroupoid(const FiniteGroupoid& g, const std::vector<int>& objs) {
    FiniteGroupoid s;
    std::unordered_map<int, int> omap;
    for (int o : objs) {
        omap[o] = s.add_object(g.objects[o]);
    }
    std::unordered_map<int, int> mmap;
    for (int m = 0; m < static_cast<int>(g.morphisms.size()); ++m) {
        auto is = omap.find(g.morphisms[m].src);
        auto it = omap.find(g.morphisms[m].tgt);
        if (is == omap.end() || it == omap.end()) continue;
        mmap[m] = s.add_morphism(g.morphisms[m].id, is->second, it->second);
    }
    s.identity.resize(s.objects.size());
    for (int o : objs) s.identity[omap[o]] = mmap.at(g.identity[o]);
    for (const auto& [k, v] : g.compose_table) {
        int gi = static_cast<int>(k >> 32), fi = static_cast<int>(k & 0xffffffffu);
        auto ig = mmap.find(gi);
        auto jf = mmap.find(fi);
        if (ig == mmap.end() || jf == mmap.end()) continue;
        s.set_compose(ig->second, jf->second, mmap.at(v));
    }
    s.inverse.resize(s.morphisms.size());
    for (const auto& [m, i] : mmap) s.inverse[i] = mmap.at(g.inverse[m]);
    s.finalize();
    return s;
}

// Connected groupoid with `size` mutually isomorphic objects whose hom-sets
// are copies of `grp` (hom(i,j) = G with g∘f = gf). Used by tests,
// generators, and the skeletal input format.
inline FiniteGroupoid thickened_group(const std::string& prefix, const Group& grp, int size = 1) {
    FiniteGroupoid g;
    for (int i = 0; i < size; ++i) g.add_object(prefix + (size == 1 ? "" : "#" + std::to_string(i)));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            for (int e = 0; e < grp.n; ++e)
                g.add_morphism(prefix + ".g" + std::to_string(e) + ":" + std::to_string(i) + ">" +
                               std::to_string(j), i, j);
    // morphism index layout: ((i*size)+j)*n + e
    auto midx = [&](int e, int i, int j) { return (i * size + j) * grp.n + e; };
    g.identity.resize(size);
    for (int i = 0; i < size; ++i) g.identity[i] = midx(0, i, i);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            for (int k = 0; k < size; ++k)
                for (int e1 = 0; e1 < grp.n; ++e1)
                    for (int e2 = 0; e2 < grp.n; ++e2)
                        g.set_compose(midx(e2, j, k), midx(e1, i, j), midx(grp.mul(e2, e1), i, k));
    g.inverse.resize(g.morphisms.size());
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            for (int e = 0; e < grp.n; ++e) g.inverse[midx(e, i, j)] = midx(grp.inv(e), j, i);
    g.finalize();
    return g;
}

inline FiniteGroupoid discrete_groupoid(int n, const std::string& prefix = "x") {
    FiniteGroupoid g;
    for (int i = 0; i < n; ++i) g.add_object(prefix + std::to_string(i));
    g.identity.resize(n);
    for (int i = 0; i < n; ++i) {
        g.identity[i] = g.add_morphism("id_" + prefix + std::to_string(i), i, i);
        g.set_compose(g.identity[i], g.identity[i], g.identity[i]);
    }
    g.inverse.resize(n);
    for (int i = 0; i < n; ++i) g.inverse[i] = i;
    g.finalize();
    return g;
}

inline FiniteGroupoid terminal_groupoid() { return discrete_groupoid(1, "pt"); }
inline FiniteGroupoid empty_groupoid() { return discrete_groupoid(0); }

}  // namespace hlq

#endif
