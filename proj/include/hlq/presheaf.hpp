#ifndef HLQ_PRESHEAF_HPP
#define HLQ_PRESHEAF_HPP

#include <map>
#include <string>
#include <vector>

#include "hlq/span.hpp"

namespace hlq {

// One endofunctor of a value groupoid (the action of one automorphism of
// the base component representative).
struct ValueAction {
    std::vector<int> object_map;
    std::vector<int> morphism_map;
};

struct PresheafComponentValue {
    GroupoidPtr value;
    // base automorphism morphism index -> action; empty map means the
    // trivial action.
    std::map<int, ValueAction> action;
};

// Finite-groupoid-valued presheaf on a groupoid base, one value per
// component, with the automorphism group of each representative acting.
struct FinitePresheaf {
    GroupoidPtr base;
    std::vector<Component> base_components;
    std::vector<PresheafComponentValue> values;  // aligned with base_components

    const ValueAction& act(std::size_t comp, int aut) const {
        static thread_local ValueAction identity_action;
        const auto& pcv = values[comp];
        auto it = pcv.action.find(aut);
        if (it != pcv.action.end()) return it->second;
        identity_action.object_map.resize(pcv.value->objects.size());
        identity_action.morphism_map.resize(pcv.value->morphisms.size());
        for (int i = 0; i < static_cast<int>(pcv.value->objects.size()); ++i)
            identity_action.object_map[i] = i;
        for (int i = 0; i < static_cast<int>(pcv.value->morphisms.size()); ++i)
            identity_action.morphism_map[i] = i;
        return identity_action;
    }
};

inline std::vector<std::string> check_presheaf(const FinitePresheaf& f) {
    std::vector<std::string> v;
    if (f.values.size() != f.base_components.size()) {
        v.push_back("presheaf: one value per base component required");
        return v;
    }
    for (std::size_t c = 0; c < f.values.size(); ++c) {
        const auto& pcv = f.values[c];
        const auto& V = *pcv.value;
        int rep = f.base_components[c].representative_index;
        auto auts = f.base->hom(rep, rep);
        for (const auto& [g, a] : pcv.action) {
            if (std::find(auts.begin(), auts.end(), g) == auts.end())
                v.push_back("presheaf: action indexed by a non-automorphism at component " +
                            f.base_components[c].representative);
            if (a.object_map.size() != V.objects.size() ||
                a.morphism_map.size() != V.morphisms.size())
                v.push_back("presheaf: action map sizes wrong at component " +
                            f.base_components[c].representative);
        }
        if (!v.empty()) return v;
        auto compose_actions = [&](const ValueAction& a2, const ValueAction& a1) {
            ValueAction r;
            for (int x : a1.object_map) r.object_map.push_back(a2.object_map[x]);
            for (int u : a1.morphism_map) r.morphism_map.push_back(a2.morphism_map[u]);
            return r;
        };
        // functoriality of each action and of the assignment g -> action
        for (int g : auts) {
            const auto& a = f.act(c, g);
            GroupoidFunctor endo{pcv.value, pcv.value, a.object_map, a.morphism_map};
            for (const auto& err : check_functor(endo))
                v.push_back("presheaf action at " + f.base->morphisms[g].id + ": " + err);
        }
        if (!f.act(c, f.base->identity[rep]).object_map.empty() ||
            pcv.action.count(f.base->identity[rep])) {
            const auto& aid = f.act(c, f.base->identity[rep]);
            for (int i = 0; i < static_cast<int>(V.objects.size()); ++i)
                if (aid.object_map[i] != i) {
                    v.push_back("presheaf: identity does not act trivially at component " +
                                f.base_components[c].representative);
                    break;
                }
        }
        for (int g1 : auts)
            for (int g2 : auts) {
                auto lhs = compose_actions(f.act(c, g2), f.act(c, g1));
                const auto& rhs = f.act(c, f.base->compose(g2, g1));
                if (lhs.object_map != rhs.object_map || lhs.morphism_map != rhs.morphism_map) {
                    v.push_back("presheaf: action not multiplicative at component " +
                                f.base_components[c].representative);
                    break;
                }
            }
    }
    return v;
}

// Presheaf with the same value groupoid on every component and the trivial
// action.
inline FinitePresheaf constant_presheaf(const GroupoidPtr& base, const GroupoidPtr& value) {
    FinitePresheaf f;
    f.base = base;
    f.base_components = components(*base);
    for (std::size_t c = 0; c < f.base_components.size(); ++c)
        f.values.push_back({value, {}});
    return f;
}

inline FinitePresheaf terminal_presheaf(const GroupoidPtr& base) {
    return constant_presheaf(base, make_groupoid(terminal_groupoid()));
}

// Representable presheaf h^t = Map(t, -): discrete hom-sets with the
// postcomposition action.
inline FinitePresheaf representable_presheaf(const GroupoidPtr& base, int t) {
    FinitePresheaf f;
    f.base = base;
    f.base_components = components(*base);
    for (const auto& comp : f.base_components) {
        int rep = comp.representative_index;
        auto homs = base->hom(t, rep);
        FiniteGroupoid V;
        std::map<int, int> pos;
        for (int h : homs) pos[h] = V.add_object(base->morphisms[h].id);
        V.identity.resize(V.objects.size());
        V.inverse.clear();
        for (int i = 0; i < static_cast<int>(V.objects.size()); ++i) {
            int m = V.add_morphism("id_" + V.objects[i], i, i);
            V.identity[i] = m;
            V.set_compose(m, m, m);
            V.inverse.push_back(m);
        }
        V.finalize();
        PresheafComponentValue pcv;
        pcv.value = make_groupoid(std::move(V));
        for (int g : base->hom(rep, rep)) {
            ValueAction a;
            for (int h : homs) {
                int gh = base->compose(g, h);
                a.object_map.push_back(pos.at(gh));
            }
            for (int i = 0; i < static_cast<int>(homs.size()); ++i)
                a.morphism_map.push_back(pcv.value->identity[a.object_map[i]]);
            pcv.action[g] = std::move(a);
        }
        f.values.push_back(std::move(pcv));
    }
    return f;
}

// Grothendieck construction: the total space of a presheaf as a family over
// the base (landing in the skeletal subgroupoid on representatives).
inline FamilyOverS grothendieck(const FinitePresheaf& f) {
    FiniteGroupoid G;
    std::vector<int> obj_to_base, mor_to_base;
    std::map<std::pair<std::size_t, int>, int> obj;
    for (std::size_t c = 0; c < f.base_components.size(); ++c) {
        const auto& rep = f.base_components[c].representative;
        for (int v = 0; v < static_cast<int>(f.values[c].value->objects.size()); ++v) {
            obj[{c, v}] = G.add_object("(" + rep + ";" + f.values[c].value->objects[v] + ")");
            obj_to_base.push_back(f.base_components[c].representative_index);
        }
    }
    // morphism (g, m): (c, v) -> (c, v') where m: ρ(g)(v) -> v'
    std::map<std::tuple<std::size_t, int, int, int>, int> mor;  // (comp, g, m, v)
    for (std::size_t c = 0; c < f.base_components.size(); ++c) {
        int rep = f.base_components[c].representative_index;
        const auto& V = *f.values[c].value;
        for (int g : f.base->hom(rep, rep)) {
            const auto a = f.act(c, g);  // copy: act() reuses a scratch buffer
            for (int v = 0; v < static_cast<int>(V.objects.size()); ++v) {
                int gv = a.object_map[v];
                for (int m : V.out_of[gv]) {
                    int idx = G.add_morphism("(" + f.base->morphisms[g].id + ";" +
                                             V.morphisms[m].id + ";" + V.objects[v] + ")",
                                             obj.at({c, v}), obj.at({c, V.tgt(m)}));
                    mor[{c, g, m, v}] = idx;
                    mor_to_base.push_back(g);
                }
            }
        }
    }
    G.identity.resize(G.objects.size());
    for (std::size_t c = 0; c < f.base_components.size(); ++c) {
        int rep = f.base_components[c].representative_index;
        const auto& V = *f.values[c].value;
        for (int v = 0; v < static_cast<int>(V.objects.size()); ++v)
            G.identity[obj.at({c, v})] = mor.at({c, f.base->identity[rep], V.identity[v], v});
    }
    for (const auto& [k1, m1] : mor) {
        auto [c, g1, mm1, v1] = k1;
        const auto& V = *f.values[c].value;
        int rep = f.base_components[c].representative_index;
        int v2 = V.tgt(mm1);  // target object of the first morphism
        for (int g2 : f.base->hom(rep, rep)) {
            const auto a2 = f.act(c, g2);
            for (int mm2 : V.out_of[a2.object_map[v2]]) {
                // composite: (g2∘g1, m2 ∘ ρ(g2)(m1))
                int g = f.base->compose(g2, g1);
                int m = V.compose(mm2, a2.morphism_map[mm1]);
                G.set_compose(mor.at({c, g2, mm2, v2}), m1, mor.at({c, g, m, v1}));
            }
        }
    }
    G.inverse.resize(G.morphisms.size());
    for (const auto& [k, idx] : mor) {
        auto [c, g, m, v] = k;
        const auto& V = *f.values[c].value;
        int ginv = f.base->inv(g);
        const auto ai = f.act(c, ginv);
        G.inverse[idx] = mor.at({c, ginv, ai.morphism_map[V.inv(m)], V.tgt(m)});
    }
    G.finalize();
    GroupoidPtr Gp = make_groupoid(std::move(G));
    GroupoidFunctor F{Gp, f.base, obj_to_base, mor_to_base};
    return {F};
}

}  // namespace hlq

#endif
