#ifndef HLQ_INCIDENCE_HPP
#define HLQ_INCIDENCE_HPP

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hlq/cardinality.hpp"
#include "hlq/functor.hpp"
#include "hlq/span.hpp"

namespace hlq {

// ---------------------------------------------------------------------------
// Posets
// ---------------------------------------------------------------------------

struct FinitePoset {
    std::vector<std::string> elements;
    std::vector<std::pair<int, int>> covers;
    std::vector<std::vector<bool>> leq;  // computed closure

    void close() {
        const int n = static_cast<int>(elements.size());
        leq.assign(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i) leq[i][i] = true;
        for (auto [a, b] : covers) leq[a][b] = true;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                if (leq[i][k])
                    for (int j = 0; j < n; ++j)
                        if (leq[k][j]) leq[i][j] = true;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> v;
        const int n = static_cast<int>(elements.size());
        for (auto [a, b] : covers)
            if (a < 0 || a >= n || b < 0 || b >= n)
                v.push_back("poset: cover out of range");
        if (!v.empty()) return v;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && leq[i][j] && leq[j][i])
                    v.push_back("poset: antisymmetry fails between " + elements[i] + " and " +
                                elements[j]);
        return v;
    }
};

inline std::string relation_id(const std::string& a, const std::string& b) {
    return "[" + a + "<=" + b + "]";
}

// The poset as a category: one morphism per related pair.
inline FiniteCategory poset_category(const FinitePoset& p) {
    FiniteCategory c;
    const int n = static_cast<int>(p.elements.size());
    for (const auto& e : p.elements) c.add_object(e);
    std::map<std::pair<int, int>, int> rel;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (p.leq[i][j]) rel[{i, j}] = c.add_morphism(relation_id(p.elements[i], p.elements[j]), i, j);
    c.identity.resize(n);
    for (int i = 0; i < n; ++i) c.identity[i] = rel.at({i, i});
    for (const auto& [ij, m1] : rel)
        for (int k = 0; k < n; ++k)
            if (p.leq[ij.second][k]) c.set_compose(rel.at({ij.second, k}), m1, rel.at({ij.first, k}));
    c.finalize();
    return c;
}

// ---------------------------------------------------------------------------
// Fat nerve, levels 0..2
// ---------------------------------------------------------------------------

struct NerveLevels {
    GroupoidPtr X0, X1, X2;
    GroupoidFunctor d1, d2, d0;      // X2 -> X1: inner face, outer faces
    GroupoidFunctor s0;              // X0 -> X1: identity degeneracy
    GroupoidFunctor src_f, tgt_f;    // X1 -> X0
};

namespace detail {

// Invertible morphisms of a category, with their inverses.
inline std::map<int, int> invertibles(const FiniteCategory& c) {
    std::map<int, int> inv;
    for (int f = 0; f < static_cast<int>(c.morphisms.size()); ++f)
        for (int g : c.out_of[c.tgt(f)]) {
            if (c.tgt(g) != c.src(f)) continue;
            if (c.compose(g, f) == c.identity[c.src(f)] &&
                c.compose(f, g) == c.identity[c.tgt(f)]) {
                inv[f] = g;
                break;
            }
        }
    return inv;
}

}  // namespace detail

// Fat nerve of a finite category, levels 0..2. X1 objects are the morphisms
// of C with commuting iso-squares between them; X2 objects are composable
// pairs with iso-ladders.
inline NerveLevels fat_nerve(const FiniteCategory& C, const SizeCaps& caps = {}) {
    {
        auto v = C.validate_category();
        if (!v.empty()) throw validation_error(v);
    }
    auto inv = detail::invertibles(C);
    // isos out of each object
    std::vector<std::vector<int>> iso_out(C.objects.size());
    for (const auto& [f, g] : inv) iso_out[C.src(f)].push_back(f);

    // ---- X0: the interior groupoid
    FiniteGroupoid X0;
    for (const auto& o : C.objects) X0.add_object(o);
    std::map<int, int> x0mor;  // category morphism -> X0 morphism
    for (const auto& [f, g] : inv) x0mor[f] = X0.add_morphism(C.morphisms[f].id, C.src(f), C.tgt(f));
    X0.identity.resize(X0.objects.size());
    for (std::size_t o = 0; o < C.objects.size(); ++o) X0.identity[o] = x0mor.at(C.identity[o]);
    for (const auto& [f, mf] : x0mor)
        for (int g : iso_out[C.tgt(f)]) X0.set_compose(x0mor.at(g), mf, x0mor.at(C.compose(g, f)));
    X0.inverse.resize(X0.morphisms.size());
    for (const auto& [f, mf] : x0mor) X0.inverse[mf] = x0mor.at(inv.at(f));
    X0.finalize();

    // size guard before building the big levels
    std::uint64_t x1m = 0, x2m = 0;
    for (int f = 0; f < static_cast<int>(C.morphisms.size()); ++f)
        x1m += static_cast<std::uint64_t>(iso_out[C.src(f)].size()) * iso_out[C.tgt(f)].size();
    for (int f = 0; f < static_cast<int>(C.morphisms.size()); ++f)
        for (int g : C.out_of[C.tgt(f)])
            x2m += static_cast<std::uint64_t>(iso_out[C.src(f)].size()) *
                   iso_out[C.tgt(f)].size() * iso_out[C.tgt(g)].size();
    if (x1m > caps.enum_cap || x2m > caps.enum_cap)
        throw size_cap_error("fat_nerve: too large (would build " + std::to_string(x2m) +
                             " level-2 morphisms; cap " + std::to_string(caps.enum_cap) + ")");

    // ---- X1: morphisms with iso-squares
    FiniteGroupoid X1;
    for (int f = 0; f < static_cast<int>(C.morphisms.size()); ++f)
        X1.add_object(C.morphisms[f].id);
    std::map<std::tuple<int, int, int>, int> sq;  // (a, b, f) with b∘f = f'∘a
    std::vector<int> sq_a, sq_b;                  // X1 morphism -> iso components
    for (int f = 0; f < static_cast<int>(C.morphisms.size()); ++f)
        for (int a : iso_out[C.src(f)])
            for (int b : iso_out[C.tgt(f)]) {
                int f2 = C.compose(C.compose(b, f), inv.at(a));
                int m = X1.add_morphism("(" + C.morphisms[a].id + "," + C.morphisms[b].id + ";" +
                                        C.morphisms[f].id + ")", f, f2);
                sq[{a, b, f}] = m;
                sq_a.push_back(a);
                sq_b.push_back(b);
            }
    X1.identity.resize(X1.objects.size());
    for (int f = 0; f < static_cast<int>(C.morphisms.size()); ++f)
        X1.identity[f] = sq.at({C.identity[C.src(f)], C.identity[C.tgt(f)], f});
    for (const auto& [key, m] : sq) {
        auto [a, b, f] = key;
        int f2 = X1.tgt(m);
        for (int a2 : iso_out[C.src(f2)])
            for (int b2 : iso_out[C.tgt(f2)])
                X1.set_compose(sq.at({a2, b2, f2}), m,
                               sq.at({C.compose(a2, a), C.compose(b2, b), f}));
    }
    X1.inverse.resize(X1.morphisms.size());
    for (const auto& [key, m] : sq) {
        auto [a, b, f] = key;
        X1.inverse[m] = sq.at({inv.at(a), inv.at(b), X1.tgt(m)});
    }
    X1.finalize();

    // ---- X2: composable pairs with iso-ladders
    FiniteGroupoid X2;
    std::map<std::pair<int, int>, int> pairs;  // (f, g), g∘f defined
    for (int f = 0; f < static_cast<int>(C.morphisms.size()); ++f)
        for (int g : C.out_of[C.tgt(f)])
            pairs[{f, g}] = X2.add_object("[" + C.morphisms[f].id + "," + C.morphisms[g].id + "]");
    std::map<std::tuple<int, int, int, int, int>, int> lad;  // (a, b, c, f, g)
    std::vector<int> lad_ab, lad_bc, lad_ac;                 // images in X1 under d2, d0, d1
    for (const auto& [fg, o] : pairs) {
        auto [f, g] = fg;
        for (int a : iso_out[C.src(f)])
            for (int b : iso_out[C.tgt(f)])
                for (int cc : iso_out[C.tgt(g)]) {
                    int f2 = C.compose(C.compose(b, f), inv.at(a));
                    int g2 = C.compose(C.compose(cc, g), inv.at(b));
                    int m = X2.add_morphism("(" + C.morphisms[a].id + "," + C.morphisms[b].id +
                                            "," + C.morphisms[cc].id + ";" + C.morphisms[f].id +
                                            "," + C.morphisms[g].id + ")",
                                            o, pairs.at({f2, g2}));
                    lad[{a, b, cc, f, g}] = m;
                    lad_ab.push_back(sq.at({a, b, f}));
                    lad_bc.push_back(sq.at({b, cc, g}));
                    lad_ac.push_back(sq.at({a, cc, C.compose(g, f)}));
                }
    }
    X2.identity.resize(X2.objects.size());
    for (const auto& [fg, o] : pairs) {
        auto [f, g] = fg;
        X2.identity[o] =
            lad.at({C.identity[C.src(f)], C.identity[C.tgt(f)], C.identity[C.tgt(g)], f, g});
    }
    for (const auto& [key, m] : lad) {
        auto [a, b, cc, f, g] = key;
        int f2 = C.compose(C.compose(b, f), inv.at(a));
        int g2 = C.compose(C.compose(cc, g), inv.at(b));
        for (int a2 : iso_out[C.src(f2)])
            for (int b2 : iso_out[C.tgt(f2)])
                for (int c2 : iso_out[C.tgt(g2)])
                    X2.set_compose(lad.at({a2, b2, c2, f2, g2}), m,
                                   lad.at({C.compose(a2, a), C.compose(b2, b),
                                           C.compose(c2, cc), f, g}));
    }
    X2.inverse.resize(X2.morphisms.size());
    for (const auto& [key, m] : lad) {
        auto [a, b, cc, f, g] = key;
        int f2 = C.compose(C.compose(b, f), inv.at(a));
        int g2 = C.compose(C.compose(cc, g), inv.at(b));
        X2.inverse[m] = lad.at({inv.at(a), inv.at(b), inv.at(cc), f2, g2});
    }
    X2.finalize();

    NerveLevels n;
    n.X0 = make_groupoid(std::move(X0));
    n.X1 = make_groupoid(std::move(X1));
    n.X2 = make_groupoid(std::move(X2));

    // face and degeneracy functors
    std::vector<int> d1o, d2o, d0o;
    d1o.resize(pairs.size());
    d2o.resize(pairs.size());
    d0o.resize(pairs.size());
    for (const auto& [fg, o] : pairs) {
        d2o[o] = fg.first;
        d0o[o] = fg.second;
        d1o[o] = C.compose(fg.second, fg.first);
    }
    n.d1 = {n.X2, n.X1, d1o, lad_ac};
    n.d2 = {n.X2, n.X1, d2o, lad_ab};
    n.d0 = {n.X2, n.X1, d0o, lad_bc};

    std::vector<int> s0o(C.objects.size()), s0m;
    for (std::size_t o = 0; o < C.objects.size(); ++o) s0o[o] = C.identity[o];
    s0m.resize(n.X0->morphisms.size());
    for (const auto& [f, mf] : x0mor) s0m[mf] = sq.at({f, f, C.identity[C.src(f)]});
    n.s0 = {n.X0, n.X1, s0o, s0m};

    std::vector<int> srco(C.morphisms.size()), tgto(C.morphisms.size());
    for (int f = 0; f < static_cast<int>(C.morphisms.size()); ++f) {
        srco[f] = C.src(f);
        tgto[f] = C.tgt(f);
    }
    std::vector<int> srcm(sq_a.size()), tgtm(sq_b.size());
    for (std::size_t i = 0; i < sq_a.size(); ++i) {
        srcm[i] = x0mor.at(sq_a[i]);
        tgtm[i] = x0mor.at(sq_b[i]);
    }
    n.src_f = {n.X1, n.X0, srco, srcm};
    n.tgt_f = {n.X1, n.X0, tgto, tgtm};
    return n;
}

// Object-level simplicial compatibilities plus functoriality of the stored
// maps; used on loaded nerve data.
inline std::vector<std::string> check_nerve(const NerveLevels& n) {
    std::vector<std::string> v;
    for (const auto* f : {&n.d0, &n.d1, &n.d2, &n.s0, &n.src_f, &n.tgt_f})
        for (const auto& e : check_functor(*f)) v.push_back(e);
    if (!v.empty()) return v;
    for (std::size_t m = 0; m < n.X2->objects.size(); ++m) {
        int i = static_cast<int>(m);
        if (n.src_f.object_map[n.d1.object_map[i]] != n.src_f.object_map[n.d2.object_map[i]])
            v.push_back("nerve: src∘d1 ≠ src∘d2 at " + n.X2->objects[m]);
        if (n.tgt_f.object_map[n.d1.object_map[i]] != n.tgt_f.object_map[n.d0.object_map[i]])
            v.push_back("nerve: tgt∘d1 ≠ tgt∘d0 at " + n.X2->objects[m]);
        if (n.tgt_f.object_map[n.d2.object_map[i]] != n.src_f.object_map[n.d0.object_map[i]])
            v.push_back("nerve: tgt∘d2 ≠ src∘d0 at " + n.X2->objects[m]);
    }
    for (std::size_t x = 0; x < n.X0->objects.size(); ++x) {
        int i = static_cast<int>(x);
        if (n.src_f.object_map[n.s0.object_map[i]] != i || n.tgt_f.object_map[n.s0.object_map[i]] != i)
            v.push_back("nerve: s0 endpoints wrong at " + n.X0->objects[x]);
    }
    return v;
}

// The comultiplication span X1 <- X2 -> X1×X1 together with the product it
// lands in.
struct ComultSpan {
    Span span;
    ProductGroupoid x1x1;
};

inline ComultSpan comultiplication_span(const NerveLevels& n) {
    ComultSpan c;
    c.x1x1 = product_with_projections(n.X1, n.X1);
    c.span = {n.d1, pair_functor(n.d2, n.d0, c.x1x1)};
    return c;
}

inline Span counit_span(const NerveLevels& n) {
    GroupoidPtr pt = make_groupoid(terminal_groupoid());
    return {n.s0, terminal_functor(n.X0, pt)};
}

inline Span zeta_span(const NerveLevels& n) {
    GroupoidPtr pt = make_groupoid(terminal_groupoid());
    return {identity_functor(n.X1), terminal_functor(n.X1, pt)};
}

// Incidence-coalgebra workbench: the comultiplication matrix with decoded
// row pairs, and everything derived from it.
struct IncidenceData {
    NerveLevels nerve;
    std::vector<Component> x1_components;
    QMatrix comult;  // rows: components of X1×X1, cols: components of X1
    // row label of the product component (i, j)
    std::map<std::pair<int, int>, std::string> row_label;
};

inline IncidenceData incidence_data(const NerveLevels& n) {
    IncidenceData d;
    d.nerve = n;
    d.x1_components = components(*n.X1);
    const std::size_t k = d.x1_components.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            std::string best;
            for (const auto& x : d.x1_components[i].object_class)
                for (const auto& y : d.x1_components[j].object_class) {
                    std::string cand = pair_id(x, y);
                    if (best.empty() || cand < best) best = cand;
                }
            d.row_label[{static_cast<int>(i), static_cast<int>(j)}] = best;
        }
    // The matrix is taken with the feet retracted onto a skeleton of X1:
    // it only sees components, and the full X1×X1 can be enormous. Rows are
    // then renamed from skeletal pair ids to the labels the genuine product
    // would carry (the least pair name of each component).
    GroupoidFunctor r = skeleton_retraction(n.X1);
    GroupoidPtr sk = r.target;
    ProductGroupoid skxsk = product_with_projections(sk, sk);
    Span delta{compose_functors(r, n.d1),
               pair_functor(compose_functors(r, n.d2), compose_functors(r, n.d0), skxsk)};
    QMatrix m = span_matrix(prune_apex(delta));
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            rename[pair_id(sk->objects[i], sk->objects[j])] =
                d.row_label.at({static_cast<int>(i), static_cast<int>(j)});
    d.comult.cols = m.cols;
    for (const auto& row : m.rows) d.comult.rows.push_back(rename.at(row));
    std::sort(d.comult.rows.begin(), d.comult.rows.end());
    for (const auto& [key, v] : m.entries) d.comult.entries[{rename.at(key.first), key.second}] = v;
    return d;
}

// Coassociativity and counit laws at matrix level, via span composition.
// The two coassociativity composites land in (X1×X1)×X1 and X1×(X1×X1);
// rows are relabelled to flat triples of X1 component labels using the
// product index layout before comparing.
struct CoassocReport {
    bool coassociative = false;
    bool left_counit_law = false;
    bool right_counit_law = false;
    bool all() const { return coassociative && left_counit_law && right_counit_law; }
};

namespace detail {

// component label of the X1 object with the given index
inline std::vector<std::string> object_component_labels(const FiniteGroupoid& g) {
    std::vector<std::string> lab(g.objects.size());
    for (const auto& c : components(g))
        for (const auto& o : c.object_class) lab[g.object_index.at(o)] = c.representative;
    return lab;
}

// Relabel matrix rows by decoding each row's representative object through
// the supplied index decoder (product groupoids lay objects out as
// x·|right| + y).
inline std::map<std::pair<std::string, std::string>, Rational> relabel_rows(
    const QMatrix& m, const FiniteGroupoid& row_groupoid,
    const std::function<std::string(int)>& decode) {
    std::map<std::pair<std::string, std::string>, Rational> out;
    for (const auto& [k, v] : m.entries) {
        int o = row_groupoid.object_index.at(k.first);
        out[{decode(o), k.second}] += v;
    }
    return out;
}

}  // namespace detail

inline CoassocReport coassoc_check(const NerveLevels& n) {
    // The feet are retracted onto a skeleton of X1 before any product is
    // taken. Matrices only see components, so nothing changes, but the
    // products of a full X1 grow cubically in its compose table and become
    // unbuildable already for the smallest linear-algebra example.
    GroupoidFunctor r = skeleton_retraction(n.X1);
    GroupoidPtr sk = r.target;
    const int n1 = static_cast<int>(sk->objects.size());
    ProductGroupoid skxsk = product_with_projections(sk, sk);
    Span delta{compose_functors(r, n.d1),
               pair_functor(compose_functors(r, n.d2), compose_functors(r, n.d0), skxsk)};
    delta = prune_apex(delta);
    Span id_sk = identity_span(sk);

    Span lhs = compose_spans(delta, prune_apex(tensor_span(delta, id_sk)));
    Span rhs = compose_spans(delta, prune_apex(tensor_span(id_sk, delta)));
    // skeleton objects are their own component representatives
    auto flat = [&](int a, int b, int c) {
        return sk->objects[a] + "|" + sk->objects[b] + "|" + sk->objects[c];
    };
    auto left_assoc = detail::relabel_rows(span_matrix(lhs), *lhs.right_foot(), [&](int o) {
        int u = o / n1, c = o % n1;
        return flat(u / n1, u % n1, c);
    });
    auto right_assoc = detail::relabel_rows(span_matrix(rhs), *rhs.right_foot(), [&](int o) {
        int a = o / (n1 * n1), v = o % (n1 * n1);
        return flat(a, v / n1, v % n1);
    });
    CoassocReport report;
    report.coassociative = left_assoc == right_assoc;

    GroupoidPtr pt = make_groupoid(terminal_groupoid());
    Span eps{compose_functors(r, n.s0), terminal_functor(n.X0, pt)};
    QMatrix idm = identity_matrix(component_labels(*sk));
    std::map<std::pair<std::string, std::string>, Rational> id_entries(idm.entries.begin(),
                                                                       idm.entries.end());
    Span l_counit = compose_spans(delta, prune_apex(tensor_span(eps, id_sk)));
    Span r_counit = compose_spans(delta, prune_apex(tensor_span(id_sk, eps)));
    auto left_law = detail::relabel_rows(span_matrix(l_counit), *l_counit.right_foot(),
                                         [&](int o) { return sk->objects[o % n1]; });
    auto right_law = detail::relabel_rows(span_matrix(r_counit), *r_counit.right_foot(),
                                          [&](int o) { return sk->objects[o]; });
    report.left_counit_law = left_law == id_entries;
    report.right_counit_law = right_law == id_entries;
    return report;
}

inline QFunction zeta_function(const NerveLevels& n) { return span_function(zeta_span(n)); }

// The convolution unit: fibre cardinalities of s0 (1 on degenerate
// components, 0 elsewhere for posets).
inline QFunction convolution_unit(const NerveLevels& n) { return span_function(counit_span(n)); }

// (f*g)(a) = Σ_{(t1,t2)} f(t1) g(t2) Δ_{(t1,t2),a}.
inline QFunction convolution(const QFunction& f, const QFunction& g, const IncidenceData& d) {
    std::vector<std::string> x1_labels;
    for (const auto& c : d.x1_components) x1_labels.push_back(c.representative);
    if (f.index != x1_labels || g.index != x1_labels)
        throw validation_error({"convolution: function index does not match π₀X1"});
    QFunction w;
    w.index = d.comult.rows;
    for (const auto& r : d.comult.rows) w.entries[r] = 0;
    const std::size_t k = d.x1_components.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            w.entries[d.row_label.at({static_cast<int>(i), static_cast<int>(j)})] =
                f.at(x1_labels[i]) * g.at(x1_labels[j]);
    return apply_matrix_pro(w, d.comult);
}

// Convolution inverse of zeta, by exact Gaussian elimination of the
// left-convolution-by-zeta operator.
inline QFunction mobius_numeric(const IncidenceData& d) {
    const auto& n = d.nerve;
    QFunction zeta = zeta_function(n);
    QFunction unit = convolution_unit(n);
    const std::size_t k = d.x1_components.size();
    std::vector<std::string> labels;
    for (const auto& c : d.x1_components) labels.push_back(c.representative);
    // B[a][t2] = Σ_{t1} ζ(t1) Δ_{(t1,t2),a}
    std::vector<std::vector<Rational>> B(k, std::vector<Rational>(k + 1, Rational(0)));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t t2 = 0; t2 < k; ++t2)
            for (std::size_t t1 = 0; t1 < k; ++t1)
                B[a][t2] += zeta.at(labels[t1]) *
                            d.comult.at(d.row_label.at({static_cast<int>(t1), static_cast<int>(t2)}),
                                        labels[a]);
        B[a][k] = unit.at(labels[a]);
    }
    // solve B μ = unit
    std::vector<int> where(k, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < k; ++col) {
        std::size_t piv = row;
        while (piv < k && B[piv][col] == 0) ++piv;
        if (piv == k) continue;
        std::swap(B[piv], B[row]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == row || B[r][col] == 0) continue;
            Rational factor = B[r][col] / B[row][col];
            for (std::size_t c2 = col; c2 <= k; ++c2) B[r][c2] -= factor * B[row][c2];
        }
        where[col] = static_cast<int>(row);
        ++row;
    }
    QFunction mu;
    mu.index = labels;
    for (std::size_t col = 0; col < k; ++col) {
        if (where[col] < 0)
            throw validation_error({"mobius_numeric: zeta is not convolution-invertible"});
        mu.entries[labels[col]] = B[where[col]][k] / B[where[col]][col];
    }
    // reject inconsistent (overdetermined) systems
    QFunction check = convolution(zeta, mu, d);
    for (const auto& l : labels)
        if (check.at(l) != unit.at(l))
            throw validation_error({"mobius_numeric: zeta is not convolution-invertible"});
    return mu;
}

// ---------------------------------------------------------------------------
// F₂ linear injections and the q-binomial check
// ---------------------------------------------------------------------------

namespace f2 {

// A matrix over F₂ as column bitmasks (rows = target dimension bits).
struct Mat {
    int rows = 0;
    std::vector<unsigned> cols;
};

inline bool independent(const std::vector<unsigned>& cols) {
    unsigned pivot[32] = {};
    for (unsigned c : cols) {
        while (c != 0) {
            int h = 31 - __builtin_clz(c);
            if (pivot[h] == 0) { pivot[h] = c; break; }
            c ^= pivot[h];
        }
        if (c == 0) return false;
    }
    return true;
}

inline unsigned apply(const Mat& m, unsigned v) {
    unsigned r = 0;
    for (std::size_t j = 0; j < m.cols.size(); ++j)
        if (v >> j & 1u) r ^= m.cols[j];
    return r;
}

inline Mat mul(const Mat& a, const Mat& b) {
    Mat c;
    c.rows = a.rows;
    for (unsigned col : b.cols) c.cols.push_back(apply(a, col));
    return c;
}

inline std::string mat_id(int a, int b, const Mat& m) {
    std::string s = "m" + std::to_string(a) + ">" + std::to_string(b);
    for (unsigned c : m.cols) s += "." + std::to_string(c);
    return s;
}

}  // namespace f2

// The category of F₂-vector spaces of dimension ≤ max_dim and linear
// injections, with explicit matrices as morphisms.
inline FiniteCategory f2_injections_category(int max_dim) {
    FiniteCategory C;
    for (int d = 0; d <= max_dim; ++d) C.add_object("V" + std::to_string(d));
    std::map<std::pair<std::pair<int, int>, std::vector<unsigned>>, int> idx;
    std::vector<std::pair<std::pair<int, int>, f2::Mat>> mats;
    for (int a = 0; a <= max_dim; ++a)
        for (int b = a; b <= max_dim; ++b) {
            // enumerate injective b×a matrices
            std::vector<unsigned> cols(a, 0);
            std::function<void(int)> rec = [&](int j) {
                if (j == a) {
                    if (f2::independent(cols)) {
                        f2::Mat m{b, cols};
                        int i = C.add_morphism(f2::mat_id(a, b, m), a, b);
                        idx[{{a, b}, cols}] = i;
                        mats.push_back({{a, b}, m});
                    }
                    return;
                }
                for (unsigned v = 1; v < (1u << b); ++v) {
                    cols[j] = v;
                    rec(j + 1);
                }
            };
            if (a == 0) {
                f2::Mat m{b, {}};
                int i = C.add_morphism(f2::mat_id(a, b, m), a, b);
                idx[{{a, b}, {}}] = i;
                mats.push_back({{a, b}, m});
            } else {
                rec(0);
            }
        }
    C.identity.resize(C.objects.size());
    for (int d = 0; d <= max_dim; ++d) {
        std::vector<unsigned> cols;
        for (int j = 0; j < d; ++j) cols.push_back(1u << j);
        C.identity[d] = idx.at({{d, d}, cols});
    }
    for (int m1 = 0; m1 < static_cast<int>(mats.size()); ++m1)
        for (int m2 = 0; m2 < static_cast<int>(mats.size()); ++m2) {
            if (mats[m1].first.second != mats[m2].first.first) continue;  // m2 ∘ m1
            f2::Mat c = f2::mul(mats[m2].second, mats[m1].second);
            int tgt = mats[m2].first.second;
            C.set_compose(m2, m1, idx.at({{mats[m1].first.first, tgt}, c.cols}));
        }
    C.finalize();
    return C;
}

struct QBinomialEntry {
    int n = 0;        // cokernel dimension of the split object (0 ↪ F₂ⁿ)
    int k = 0;        // first factor's cokernel dimension
    Rational computed;
    Integer expected;  // Gaussian binomial C(n,k)₂
    bool pass = false;
};

struct QBinomialReport {
    int max_dim = 0;
    std::vector<QBinomialEntry> entries;
    bool all_pass = true;
};

inline Integer gaussian_binomial(int n, int k, int q) {
    if (k < 0 || k > n) return 0;
    Rational r = 1;
    auto qpow = [&](int e) {
        Integer x = 1;
        for (int i = 0; i < e; ++i) x *= q;
        return x;
    };
    for (int i = 1; i <= k; ++i) r *= Rational(qpow(n - k + i) - 1, qpow(i) - 1);
    return numerator(r);
}

// Reduced comultiplication structure constants of the F₂ injection category
// against Gaussian binomials. The Dür reduction happens at matrix level:
// rows are summed over all component pairs with the given cokernel
// dimensions.
inline QBinomialReport qbinomial_check(int max_dim, const SizeCaps& caps = {}) {
    if (max_dim < 0 || max_dim > 3)
        throw validation_error({"qbinomial_check: max_dim must be between 0 and 3"});
    FiniteCategory C = f2_injections_category(max_dim);
    NerveLevels n = fat_nerve(C, caps);
    IncidenceData d = incidence_data(n);
    // cokernel dimension per X1 component, decoded from the representative's
    // matrix identifier "m{a}>{b}..."
    auto cokdim = [&](const Component& c) {
        const std::string& id = c.representative;  // "m{a}>{b}..."
        auto gt = id.find('>');
        int a = std::stoi(id.substr(1, gt - 1));
        auto dot = id.find('.', gt);
        int b = std::stoi(id.substr(gt + 1, dot == std::string::npos ? dot : dot - gt - 1));
        return b - a;
    };
    QBinomialReport report;
    report.max_dim = max_dim;
    const std::size_t k = d.x1_components.size();
    for (int dim = 0; dim <= max_dim; ++dim) {
        // column of the component of 0 ↪ F₂^dim
        f2::Mat zero{dim, {}};
        std::string col_obj = f2::mat_id(0, dim, zero);
        std::string col;
        for (const auto& c : d.x1_components)
            for (const auto& o : c.object_class)
                if (o == col_obj) col = c.representative;
        for (int split = 0; split <= dim; ++split) {
            Rational total = 0;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    if (cokdim(d.x1_components[i]) != split ||
                        cokdim(d.x1_components[j]) != dim - split)
                        continue;
                    total += d.comult.at(
                        d.row_label.at({static_cast<int>(i), static_cast<int>(j)}), col);
                }
            QBinomialEntry e;
            e.n = dim;
            e.k = split;
            e.computed = total;
            e.expected = gaussian_binomial(dim, split, 2);
            e.pass = (total == Rational(e.expected));
            report.all_pass = report.all_pass && e.pass;
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

}  // namespace hlq

#endif
