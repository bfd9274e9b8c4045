#ifndef HLQ_FUNCTOR_HPP
#define HLQ_FUNCTOR_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hlq/errors.hpp"
#include "hlq/groupoid.hpp"

namespace hlq {

struct GroupoidFunctor {
    GroupoidPtr source;
    GroupoidPtr target;
    std::vector<int> object_map;    // source object index -> target object index
    std::vector<int> morphism_map;  // source morphism index -> target morphism index

    int on_object(int x) const { return object_map[x]; }
    int on_morphism(int u) const { return morphism_map[u]; }
};

inline GroupoidFunctor identity_functor(const GroupoidPtr& g) {
    GroupoidFunctor f;
    f.source = f.target = g;
    f.object_map.resize(g->objects.size());
    f.morphism_map.resize(g->morphisms.size());
    for (int i = 0; i < static_cast<int>(g->objects.size()); ++i) f.object_map[i] = i;
    for (int i = 0; i < static_cast<int>(g->morphisms.size()); ++i) f.morphism_map[i] = i;
    return f;
}

// Unique functor to the terminal groupoid.
inline GroupoidFunctor terminal_functor(const GroupoidPtr& g, const GroupoidPtr& pt) {
    GroupoidFunctor f;
    f.source = g;
    f.target = pt;
    f.object_map.assign(g->objects.size(), 0);
    f.morphism_map.assign(g->morphisms.size(), pt->identity[0]);
    return f;
}

// Constant functor sending everything to one object of the target.
inline GroupoidFunctor constant_functor(const GroupoidPtr& g, const GroupoidPtr& t, int obj) {
    GroupoidFunctor f;
    f.source = g;
    f.target = t;
    f.object_map.assign(g->objects.size(), obj);
    f.morphism_map.assign(g->morphisms.size(), t->identity[obj]);
    return f;
}

inline std::vector<std::string> check_functor(const GroupoidFunctor& F) {
    std::vector<std::string> v;
    const auto& X = *F.source;
    const auto& Y = *F.target;
    if (F.object_map.size() != X.objects.size() || F.morphism_map.size() != X.morphisms.size()) {
        v.push_back("functor: map sizes do not match the source");
        return v;
    }
    for (int u = 0; u < static_cast<int>(X.morphisms.size()); ++u) {
        int fu = F.morphism_map[u];
        if (fu < 0 || fu >= static_cast<int>(Y.morphisms.size())) {
            v.push_back("functor: image out of range at " + X.morphisms[u].id);
            continue;
        }
        if (Y.src(fu) != F.object_map[X.src(u)] || Y.tgt(fu) != F.object_map[X.tgt(u)])
            v.push_back("functor: endpoints not preserved at " + X.morphisms[u].id);
    }
    if (!v.empty()) return v;
    for (int x = 0; x < static_cast<int>(X.objects.size()); ++x)
        if (F.morphism_map[X.identity[x]] != Y.identity[F.object_map[x]])
            v.push_back("functor: identity not preserved at " + X.objects[x]);
    for (const auto& [key, gf] : X.compose_table) {
        int g = static_cast<int>(key >> 32), f = static_cast<int>(key & 0xffffffffu);
        if (Y.compose(F.morphism_map[g], F.morphism_map[f]) != F.morphism_map[gf])
            v.push_back("functor: composition not preserved at " + X.morphisms[g].id + " ∘ " +
                        X.morphisms[f].id);
    }
    return v;
}

inline void require_functor(const GroupoidFunctor& F) {
    auto v = check_functor(F);
    if (!v.empty()) throw validation_error(v);
}

inline GroupoidFunctor compose_functors(const GroupoidFunctor& G, const GroupoidFunctor& F) {
    if (F.target.get() != G.source.get())
        throw validation_error({"compose_functors: middle groupoids differ"});
    GroupoidFunctor h;
    h.source = F.source;
    h.target = G.target;
    h.object_map.resize(F.object_map.size());
    h.morphism_map.resize(F.morphism_map.size());
    for (std::size_t i = 0; i < F.object_map.size(); ++i)
        h.object_map[i] = G.object_map[F.object_map[i]];
    for (std::size_t i = 0; i < F.morphism_map.size(); ++i)
        h.morphism_map[i] = G.morphism_map[F.morphism_map[i]];
    return h;
}

// Product groupoid together with its projections.
struct ProductGroupoid {
    GroupoidPtr groupoid;
    GroupoidFunctor proj_left;
    GroupoidFunctor proj_right;
};

inline ProductGroupoid product_with_projections(const GroupoidPtr& a, const GroupoidPtr& b) {
    ProductGroupoid P;
    P.groupoid = make_groupoid(product(*a, *b));
    const int bo = static_cast<int>(b->objects.size());
    const int bm = static_cast<int>(b->morphisms.size());
    P.proj_left.source = P.proj_right.source = P.groupoid;
    P.proj_left.target = a;
    P.proj_right.target = b;
    for (int i = 0; i < static_cast<int>(P.groupoid->objects.size()); ++i) {
        P.proj_left.object_map.push_back(i / bo);
        P.proj_right.object_map.push_back(i % bo);
    }
    for (int i = 0; i < static_cast<int>(P.groupoid->morphisms.size()); ++i) {
        P.proj_left.morphism_map.push_back(i / bm);
        P.proj_right.morphism_map.push_back(i % bm);
    }
    return P;
}

// Retraction onto a skeleton: the full subgroupoid on component
// representatives, with each object carried along a chosen iso to its
// representative. An equivalence, so composing a span leg with it leaves
// the span's matrix and fibre cardinalities unchanged.
inline GroupoidFunctor skeleton_retraction(const GroupoidPtr& g) {
    const FiniteGroupoid& G = *g;
    auto comps = components(G);
    std::vector<int> reps;
    for (const auto& c : comps) reps.push_back(c.representative_index);
    GroupoidPtr sk = make_groupoid(full_subgroupoid(G, reps));
    // iso_to_rep[o]: some morphism o -> representative of its component
    std::vector<int> iso_to_rep(G.objects.size(), -1);
    for (int rep : reps) {
        iso_to_rep[rep] = G.identity[rep];
        std::vector<int> queue = {rep};
        while (!queue.empty()) {
            int a = queue.back();
            queue.pop_back();
            for (int m : G.out_of[a]) {
                int b = G.tgt(m);
                if (iso_to_rep[b] >= 0) continue;
                iso_to_rep[b] = G.compose(iso_to_rep[a], G.inverse[m]);
                queue.push_back(b);
            }
        }
    }
    GroupoidFunctor r;
    r.source = g;
    r.target = sk;
    for (int o = 0; o < static_cast<int>(G.objects.size()); ++o)
        r.object_map.push_back(sk->object_index.at(G.objects[G.tgt(iso_to_rep[o])]));
    for (int m = 0; m < static_cast<int>(G.morphisms.size()); ++m) {
        int moved = G.compose(iso_to_rep[G.tgt(m)], G.compose(m, G.inverse[iso_to_rep[G.src(m)]]));
        r.morphism_map.push_back(sk->morphism_index.at(G.morphisms[moved].id));
    }
    return r;
}

// Pairing functor (F,G): X -> A×B of two functors out of the same source.
inline GroupoidFunctor pair_functor(const GroupoidFunctor& F, const GroupoidFunctor& G,
                                    const ProductGroupoid& P) {
    if (F.source.get() != G.source.get())
        throw validation_error({"pair_functor: sources differ"});
    const int bo = static_cast<int>(G.target->objects.size());
    const int bm = static_cast<int>(G.target->morphisms.size());
    GroupoidFunctor h;
    h.source = F.source;
    h.target = P.groupoid;
    for (std::size_t x = 0; x < F.object_map.size(); ++x)
        h.object_map.push_back(F.object_map[x] * bo + G.object_map[x]);
    for (std::size_t u = 0; u < F.morphism_map.size(); ++u)
        h.morphism_map.push_back(F.morphism_map[u] * bm + G.morphism_map[u]);
    return h;
}

// Product functor F1×F2: X1×X2 -> Y1×Y2 (componentwise) between given products.
inline GroupoidFunctor product_functor(const GroupoidFunctor& F1, const GroupoidFunctor& F2,
                                       const ProductGroupoid& src, const ProductGroupoid& tgt) {
    GroupoidFunctor h;
    h.source = src.groupoid;
    h.target = tgt.groupoid;
    const int so2 = static_cast<int>(F2.source->objects.size());
    const int sm2 = static_cast<int>(F2.source->morphisms.size());
    const int to2 = static_cast<int>(F2.target->objects.size());
    const int tm2 = static_cast<int>(F2.target->morphisms.size());
    for (int i = 0; i < static_cast<int>(src.groupoid->objects.size()); ++i)
        h.object_map.push_back(F1.object_map[i / so2] * to2 + F2.object_map[i % so2]);
    for (int i = 0; i < static_cast<int>(src.groupoid->morphisms.size()); ++i)
        h.morphism_map.push_back(F1.morphism_map[i / sm2] * tm2 + F2.morphism_map[i % sm2]);
    return h;
}

// Homotopy fibre (iso-comma fibre) of F: X -> B at an object b. Objects are
// pairs (x, β: F(x) -> b); a morphism (x,β) -> (x',β') is u: x -> x' with
// β' ∘ F(u) = β.
inline FiniteGroupoid homotopy_fibre(const GroupoidFunctor& F, int b) {
    const auto& X = *F.source;
    const auto& B = *F.target;
    if (b < 0 || b >= static_cast<int>(B.objects.size()))
        throw validation_error({"homotopy_fibre: no such object in the base"});
    FiniteGroupoid fib;
    std::map<std::pair<int, int>, int> obj;  // (x, beta) -> fibre object
    for (int x = 0; x < static_cast<int>(X.objects.size()); ++x)
        for (int beta : B.hom(F.object_map[x], b))
            obj[{x, beta}] = fib.add_object("(" + X.objects[x] + ";" + B.morphisms[beta].id + ")");
    std::map<std::pair<int, int>, int> mor;  // (u, beta at source) -> fibre morphism
    for (const auto& [key, o] : obj) {
        auto [x, beta] = key;
        for (int u : X.out_of[x]) {
            // target witness: β ∘ F(u)^{-1}
            int beta2 = B.compose(beta, B.inv(F.morphism_map[u]));
            mor[{u, beta}] =
                fib.add_morphism("(" + X.morphisms[u].id + ";" + B.morphisms[beta].id + ")", o,
                                 obj.at({X.tgt(u), beta2}));
        }
    }
    fib.identity.resize(fib.objects.size());
    for (const auto& [key, o] : obj) fib.identity[o] = mor.at({X.identity[key.first], key.second});
    for (const auto& [key, m] : mor) {
        auto [u, beta] = key;
        int beta2 = B.compose(beta, B.inv(F.morphism_map[u]));
        for (int u2 : X.out_of[X.tgt(u)])
            fib.set_compose(mor.at({u2, beta2}), m, mor.at({X.compose(u2, u), beta}));
    }
    fib.inverse.resize(fib.morphisms.size());
    for (const auto& [key, m] : mor) {
        auto [u, beta] = key;
        int beta2 = B.compose(beta, B.inv(F.morphism_map[u]));
        fib.inverse[m] = mor.at({X.inv(u), beta2});
    }
    fib.finalize();
    return fib;
}

struct Pullback {
    GroupoidPtr groupoid;       // objects (x, y, β: F(x) -> G(y))
    GroupoidFunctor proj_left;  // to the source of F
    GroupoidFunctor proj_right; // to the source of G
};

// Homotopy pullback (iso-comma) of a cospan F: X -> B <- Y : G. Objects are
// triples (x, y, β: F(x) -> G(y)); a morphism to (x',y',β') is a pair (u,v)
// with G(v) ∘ β = β' ∘ F(u).
inline Pullback homotopy_pullback(const GroupoidFunctor& F, const GroupoidFunctor& G) {
    if (F.target.get() != G.target.get())
        throw validation_error({"homotopy_pullback: targets differ"});
    const auto& X = *F.source;
    const auto& Y = *G.source;
    const auto& B = *F.target;
    FiniteGroupoid P;
    std::map<std::tuple<int, int, int>, int> obj;  // (x, y, beta)
    for (int x = 0; x < static_cast<int>(X.objects.size()); ++x)
        for (int y = 0; y < static_cast<int>(Y.objects.size()); ++y)
            for (int beta : B.hom(F.object_map[x], G.object_map[y]))
                obj[{x, y, beta}] = P.add_object("(" + X.objects[x] + "," + Y.objects[y] + ";" +
                                                 B.morphisms[beta].id + ")");
    std::vector<int> pl_obj, pr_obj, pl_mor, pr_mor;
    pl_obj.resize(obj.size());
    pr_obj.resize(obj.size());
    for (const auto& [key, o] : obj) {
        pl_obj[o] = std::get<0>(key);
        pr_obj[o] = std::get<1>(key);
    }
    std::map<std::tuple<int, int, int>, int> mor;  // (u, v, beta at source)
    for (const auto& [key, o] : obj) {
        auto [x, y, beta] = key;
        for (int u : X.out_of[x])
            for (int v : Y.out_of[y]) {
                // β' = G(v) ∘ β ∘ F(u)^{-1}
                int beta2 = B.compose(G.morphism_map[v],
                                      B.compose(beta, B.inv(F.morphism_map[u])));
                int m = P.add_morphism("(" + X.morphisms[u].id + "," + Y.morphisms[v].id + ";" +
                                       B.morphisms[beta].id + ")",
                                       o, obj.at({X.tgt(u), Y.tgt(v), beta2}));
                mor[{u, v, beta}] = m;
                pl_mor.push_back(u);
                pr_mor.push_back(v);
            }
    }
    P.identity.resize(P.objects.size());
    for (const auto& [key, o] : obj) {
        auto [x, y, beta] = key;
        P.identity[o] = mor.at({X.identity[x], Y.identity[y], beta});
    }
    for (const auto& [key, m] : mor) {
        auto [u, v, beta] = key;
        int beta2 = B.compose(G.morphism_map[v], B.compose(beta, B.inv(F.morphism_map[u])));
        for (int u2 : X.out_of[X.tgt(u)])
            for (int v2 : Y.out_of[Y.tgt(v)])
                P.set_compose(mor.at({u2, v2, beta2}), m,
                              mor.at({X.compose(u2, u), Y.compose(v2, v), beta}));
    }
    P.inverse.resize(P.morphisms.size());
    for (const auto& [key, m] : mor) {
        auto [u, v, beta] = key;
        int beta2 = B.compose(G.morphism_map[v], B.compose(beta, B.inv(F.morphism_map[u])));
        P.inverse[m] = mor.at({X.inv(u), Y.inv(v), beta2});
    }
    P.finalize();
    Pullback result;
    result.groupoid = make_groupoid(std::move(P));
    result.proj_left = {result.groupoid, F.source, pl_obj, pl_mor};
    result.proj_right = {result.groupoid, G.source, pr_obj, pr_mor};
    return result;
}

// All functors X -> Y and all natural isomorphisms between them, as a
// groupoid. Enumeration is capped; exceeding the cap raises size_cap_error.
inline FiniteGroupoid functor_groupoid(const GroupoidPtr& Xp, const GroupoidPtr& Yp,
                                       const SizeCaps& caps = {}) {
    const auto& X = *Xp;
    const auto& Y = *Yp;
    // candidate object maps
    double budget = 1;
    for (std::size_t i = 0; i < X.objects.size(); ++i) {
        budget *= static_cast<double>(Y.objects.size());
        if (budget > static_cast<double>(caps.enum_cap))
            throw size_cap_error("functor_groupoid: too large (object map count exceeds cap)");
    }
    std::vector<GroupoidFunctor> functors;
    const int nm = static_cast<int>(X.morphisms.size());
    std::vector<int> omap(X.objects.size(), 0);
    std::vector<int> mmap(nm, -1);
    // backtracking over morphism images given an object map
    std::function<void(int)> assign_morphisms = [&](int u) {
        if (u == nm) {
            for (const auto& [key, gf] : X.compose_table) {
                int g = static_cast<int>(key >> 32), f = static_cast<int>(key & 0xffffffffu);
                if (Y.compose(mmap[g], mmap[f]) != mmap[gf]) return;
            }
            GroupoidFunctor F{Xp, Yp, omap, mmap};
            functors.push_back(std::move(F));
            return;
        }
        if (mmap[u] >= 0) { assign_morphisms(u + 1); return; }
        for (int cand : Y.hom(omap[X.src(u)], omap[X.tgt(u)])) {
            mmap[u] = cand;
            bool ok = true;
            // incremental composition checks against already-assigned images
            for (int w = 0; w <= u && ok; ++w) {
                if (mmap[w] < 0) continue;
                int c = X.compose(u, w);
                if (c >= 0 && c <= u && mmap[c] >= 0 && Y.compose(mmap[u], mmap[w]) != mmap[c]) ok = false;
                c = X.compose(w, u);
                if (c >= 0 && c <= u && mmap[c] >= 0 && Y.compose(mmap[w], mmap[u]) != mmap[c]) ok = false;
            }
            if (ok) assign_morphisms(u + 1);
            mmap[u] = -1;
        }
    };
    std::function<void(std::size_t)> assign_objects = [&](std::size_t x) {
        if (x == X.objects.size()) {
            std::fill(mmap.begin(), mmap.end(), -1);
            for (std::size_t i = 0; i < X.objects.size(); ++i)
                mmap[X.identity[i]] = Y.identity[omap[i]];
            assign_morphisms(0);
            return;
        }
        for (int y = 0; y < static_cast<int>(Y.objects.size()); ++y) {
            omap[x] = y;
            assign_objects(x + 1);
        }
    };
    if (X.objects.empty()) {
        GroupoidFunctor F{Xp, Yp, {}, {}};
        functors.push_back(F);
    } else {
        assign_objects(0);
    }
    if (functors.size() > caps.enum_cap)
        throw size_cap_error("functor_groupoid: too many functors");

    FiniteGroupoid M;
    for (std::size_t i = 0; i < functors.size(); ++i) M.add_object("F" + std::to_string(i));
    // natural isomorphisms F -> G: α_x ∈ hom(Fx, Gx) with naturality
    std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> mor;
    auto naturality_ok = [&](const GroupoidFunctor& F, const GroupoidFunctor& G,
                             const std::vector<int>& alpha) {
        for (int u = 0; u < nm; ++u)
            if (Y.compose(alpha[X.tgt(u)], F.morphism_map[u]) !=
                Y.compose(G.morphism_map[u], alpha[X.src(u)]))
                return false;
        return true;
    };
    for (int i = 0; i < static_cast<int>(functors.size()); ++i)
        for (int j = 0; j < static_cast<int>(functors.size()); ++j) {
            const auto& F = functors[i];
            const auto& G = functors[j];
            std::vector<int> alpha(X.objects.size(), -1);
            std::function<void(std::size_t)> rec = [&](std::size_t x) {
                if (x == X.objects.size()) {
                    if (naturality_ok(F, G, alpha)) {
                        std::string id = "a" + std::to_string(i) + ">" + std::to_string(j);
                        for (int a : alpha) id += ":" + std::to_string(a);
                        mor[{{i, j}, alpha}] = M.add_morphism(id, i, j);
                    }
                    return;
                }
                for (int c : Y.hom(F.object_map[x], G.object_map[x])) {
                    alpha[x] = c;
                    rec(x + 1);
                }
            };
            rec(0);
            if (M.morphisms.size() > caps.enum_cap)
                throw size_cap_error("functor_groupoid: too many natural isomorphisms");
        }
    M.identity.resize(M.objects.size());
    for (int i = 0; i < static_cast<int>(functors.size()); ++i) {
        std::vector<int> alpha(X.objects.size());
        for (std::size_t x = 0; x < X.objects.size(); ++x)
            alpha[x] = Y.identity[functors[i].object_map[x]];
        M.identity[i] = mor.at({{i, i}, alpha});
    }
    for (const auto& [k1, m1] : mor)
        for (const auto& [k2, m2] : mor) {
            if (k1.first.second != k2.first.first) continue;  // m2 ∘ m1
            std::vector<int> comp(X.objects.size());
            for (std::size_t x = 0; x < X.objects.size(); ++x)
                comp[x] = Y.compose(k2.second[x], k1.second[x]);
            M.set_compose(m2, m1, mor.at({{k1.first.first, k2.first.second}, comp}));
        }
    M.inverse.resize(M.morphisms.size());
    for (const auto& [k, m] : mor) {
        std::vector<int> inv_alpha(X.objects.size());
        for (std::size_t x = 0; x < X.objects.size(); ++x) inv_alpha[x] = Y.inv(k.second[x]);
        M.inverse[m] = mor.at({{k.first.second, k.first.first}, inv_alpha});
    }
    M.finalize();
    return M;
}

}  // namespace hlq

#endif
