#ifndef HLQ_CARDINALITY_HPP
#define HLQ_CARDINALITY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hlq/presheaf.hpp"
#include "hlq/rational.hpp"
#include "hlq/span.hpp"

namespace hlq {

// Per-component list of finite homotopy-group orders (π₁, π₂, …);
// absent/trailing entries are trivial.
struct TruncatedSpace {
    std::vector<std::pair<std::string, std::vector<long long>>> components;
};

// Finite-support vector indexed by component labels of a base groupoid.
struct QVector {
    std::vector<std::string> index;
    std::map<std::string, Rational> entries;  // absent = zero

    Rational at(const std::string& label) const {
        auto it = entries.find(label);
        return it == entries.end() ? Rational(0) : it->second;
    }
    void set(const std::string& label, Rational v) {
        if (v == 0) entries.erase(label);
        else entries[label] = std::move(v);
    }
};

// Total function on the component labels of a base groupoid.
struct QFunction {
    std::vector<std::string> index;
    std::map<std::string, Rational> entries;  // total on the index

    Rational at(const std::string& label) const { return entries.at(label); }
};

// Sparse matrix with component-label indices; column-finite by finiteness of
// everything in sight, asserted on construction anyway.
struct QMatrix {
    std::vector<std::string> rows;
    std::vector<std::string> cols;
    std::map<std::pair<std::string, std::string>, Rational> entries;

    Rational at(const std::string& r, const std::string& c) const {
        auto it = entries.find({r, c});
        return it == entries.end() ? Rational(0) : it->second;
    }
    void set(const std::string& r, const std::string& c, Rational v) {
        if (v == 0) entries.erase({r, c});
        else entries[{r, c}] = std::move(v);
    }
    bool operator==(const QMatrix& other) const {
        return rows == other.rows && cols == other.cols && entries == other.entries;
    }
};

inline std::vector<std::string> component_labels(const FiniteGroupoid& g) {
    std::vector<std::string> labels;
    for (const auto& c : components(g)) labels.push_back(c.representative);
    return labels;
}

// ‖X‖ = Σ over components 1/|Aut|.
inline Rational groupoid_cardinality(const FiniteGroupoid& g) {
    g.require_valid();
    Rational total = 0;
    for (const auto& c : components(g)) total += Rational(1, c.aut_order);
    return total;
}

// ‖X‖ = Σ_{x∈π₀} Π_i ‖π_i‖^((-1)^i).
inline Rational truncated_cardinality(const TruncatedSpace& t) {
    Rational total = 0;
    for (const auto& [label, orders] : t.components) {
        Rational term = 1;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (orders[i] < 1) throw validation_error({"truncated space: order < 1 at " + label});
            if (i % 2 == 0) term /= orders[i];  // odd homotopy degree
            else term *= orders[i];
        }
        total += term;
    }
    return total;
}

namespace detail {

// Σ over objects of 1/outdeg equals Σ over components of 1/|Aut|; used to
// sum fibre cardinalities without materializing fibre groupoids.
inline std::vector<Rational> out_degrees(const FiniteGroupoid& g) {
    std::vector<Rational> deg(g.objects.size());
    for (std::size_t o = 0; o < g.objects.size(); ++o)
        deg[o] = Rational(static_cast<long long>(g.out_of[o].size()));
    return deg;
}

}  // namespace detail

enum class NormalizationConvention { target, source };

// Meta cardinality of a span S <- M -> T. Default (target) convention:
// A_{t,s} = ‖T_[t]‖ · ‖M_{s,t}‖ with M_{s,t} the homotopy fibre of
// M -> S×T over (s,t). The source convention uses ‖S_[s]‖ instead.
inline QMatrix span_matrix(const Span& L,
                           NormalizationConvention conv = NormalizationConvention::target) {
    const auto& S = *L.left_foot();
    const auto& T = *L.right_foot();
    const auto& M = *L.apex();
    auto comps_s = components(S);
    auto comps_t = components(T);
    QMatrix A;
    for (const auto& c : comps_t) A.rows.push_back(c.representative);
    for (const auto& c : comps_s) A.cols.push_back(c.representative);
    auto deg = detail::out_degrees(M);
    for (const auto& ct : comps_t) {
        Rational norm = conv == NormalizationConvention::target
                            ? Rational(1, ct.aut_order)
                            : Rational(1);
        for (const auto& cs : comps_s) {
            Rational norm2 = conv == NormalizationConvention::source
                                 ? Rational(1, cs.aut_order)
                                 : Rational(1);
            Rational entry = 0;
            for (int m = 0; m < static_cast<int>(M.objects.size()); ++m) {
                // objects of the double fibre over m: witnesses (β1, β2)
                long long w1 = static_cast<long long>(
                    S.hom(L.left.object_map[m], cs.representative_index).size());
                if (w1 == 0) continue;
                long long w2 = static_cast<long long>(
                    T.hom(L.right.object_map[m], ct.representative_index).size());
                if (w2 == 0) continue;
                entry += Rational(w1 * w2) / deg[m];
            }
            A.set(ct.representative, cs.representative, entry * norm * norm2);
        }
    }
    return A;
}

// ‖x‖ = Σ_t ‖X_t‖ ‖T_[t]‖ δ_t for a family x: X -> T.
inline QVector family_cardinality(const FamilyOverS& x) {
    const auto& T = *x.base();
    const auto& X = *x.total();
    QVector v;
    auto comps = components(T);
    for (const auto& c : comps) v.index.push_back(c.representative);
    auto deg = detail::out_degrees(X);
    for (const auto& c : comps) {
        Rational fib = 0;
        for (int o = 0; o < static_cast<int>(X.objects.size()); ++o) {
            long long w = static_cast<long long>(
                T.hom(x.map.object_map[o], c.representative_index).size());
            if (w) fib += Rational(w) / deg[o];
        }
        v.set(c.representative, fib * Rational(1, c.aut_order));
    }
    return v;
}

// ‖f‖ computed pointwise: s ↦ ‖f(s)‖.
inline QFunction presheaf_cardinality(const FinitePresheaf& f) {
    QFunction w;
    for (std::size_t c = 0; c < f.base_components.size(); ++c) {
        const auto& label = f.base_components[c].representative;
        w.index.push_back(label);
        w.entries[label] = groupoid_cardinality(*f.values[c].value);
    }
    return w;
}

// The function represented by a span S <- F -> 1: s ↦ ‖F_s‖ (the fibre over
// s of the left leg). This is the pro-side reading of the span's matrix.
inline QFunction span_function(const Span& L) {
    const auto& S = *L.left_foot();
    const auto& F = *L.apex();
    QFunction w;
    auto deg = detail::out_degrees(F);
    for (const auto& c : components(S)) {
        Rational fib = 0;
        for (int o = 0; o < static_cast<int>(F.objects.size()); ++o) {
            long long k = static_cast<long long>(
                S.hom(L.left.object_map[o], c.representative_index).size());
            if (k) fib += Rational(k) / deg[o];
        }
        w.index.push_back(c.representative);
        w.entries[c.representative] = fib;
    }
    return w;
}

inline QMatrix matrix_multiply(const QMatrix& A, const QMatrix& B) {
    if (A.cols != B.rows) throw validation_error({"matrix_multiply: index mismatch"});
    QMatrix C;
    C.rows = A.rows;
    C.cols = B.cols;
    for (const auto& [ka, va] : A.entries)
        for (const auto& [kb, vb] : B.entries) {
            if (ka.second != kb.first) continue;
            auto key = std::make_pair(ka.first, kb.second);
            auto it = C.entries.find(key);
            Rational sum = (it == C.entries.end() ? Rational(0) : it->second) + va * vb;
            if (sum == 0) C.entries.erase(key);
            else C.entries[key] = sum;
        }
    return C;
}

inline QVector apply_matrix(const QMatrix& A, const QVector& v) {
    if (A.cols != v.index) throw validation_error({"apply_matrix: index mismatch"});
    QVector w;
    w.index = A.rows;
    for (const auto& [k, a] : A.entries) {
        Rational c = v.at(k.second);
        if (c == 0) continue;
        w.set(k.first, w.at(k.first) + a * c);
    }
    return w;
}

// w·A for a function on the rows: (w·A)(s) = Σ_t w(t) A_{t,s}.
inline QFunction apply_matrix_pro(const QFunction& w, const QMatrix& A) {
    if (A.rows != w.index) throw validation_error({"apply_matrix_pro: index mismatch"});
    QFunction r;
    r.index = A.cols;
    for (const auto& c : A.cols) r.entries[c] = 0;
    for (const auto& [k, a] : A.entries) r.entries[k.second] += w.at(k.first) * a;
    return r;
}

inline QMatrix identity_matrix(const std::vector<std::string>& labels) {
    QMatrix A;
    A.rows = A.cols = labels;
    for (const auto& l : labels) A.entries[{l, l}] = 1;
    return A;
}

// Evaluation pairing: the cardinality of the homotopy pullback of the family
// against the Grothendieck construction of the presheaf. No normalization.
inline Rational pairing(const FamilyOverS& x, const FinitePresheaf& f) {
    FamilyOverS xx = x;
    if (x.base().get() != f.base.get()) {
        if (!same_groupoid(*x.base(), *f.base))
            throw validation_error({"pairing: base mismatch"});
        xx.map.target = f.base;
    }
    FamilyOverS gf = grothendieck(f);
    Pullback pb = homotopy_pullback(xx.map, gf.map);
    return groupoid_cardinality(*pb.groupoid);
}

// Finiteness certificate of a span leg: the cardinality of every homotopy
// fibre, per component of the foot. Always finite on these inputs; the
// certificate is the point.
struct FinitenessCertificate {
    bool finite = true;
    std::map<std::string, Rational> fibre_cardinalities;
};

inline FinitenessCertificate leg_certificate(const GroupoidFunctor& leg) {
    FinitenessCertificate cert;
    for (const auto& c : components(*leg.target)) {
        FiniteGroupoid fib = homotopy_fibre(leg, c.representative_index);
        cert.fibre_cardinalities[c.representative] = groupoid_cardinality(fib);
    }
    return cert;
}

inline FinitenessCertificate is_finite_type(const Span& L) { return leg_certificate(L.left); }
inline FinitenessCertificate is_profinite_type(const Span& L) { return leg_certificate(L.right); }

}  // namespace hlq

#endif
