#ifndef HLQ_SPAN_HPP
#define HLQ_SPAN_HPP

#include <string>
#include <vector>

#include "hlq/functor.hpp"
#include "hlq/groupoid.hpp"

namespace hlq {

// A map of groupoids regarded as an object of the slice over its target.
struct FamilyOverS {
    GroupoidFunctor map;  // total space -> base
    const GroupoidPtr& base() const { return map.target; }
    const GroupoidPtr& total() const { return map.source; }
};

// S <- M -> T with a shared apex.
struct Span {
    GroupoidFunctor left;   // apex -> S
    GroupoidFunctor right;  // apex -> T

    const GroupoidPtr& apex() const { return left.source; }
    const GroupoidPtr& left_foot() const { return left.target; }
    const GroupoidPtr& right_foot() const { return right.target; }
};

inline bool same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    if (&a == &b) return true;
    if (a.objects != b.objects || a.morphisms.size() != b.morphisms.size()) return false;
    for (std::size_t i = 0; i < a.morphisms.size(); ++i)
        if (a.morphisms[i].id != b.morphisms[i].id || a.morphisms[i].src != b.morphisms[i].src ||
            a.morphisms[i].tgt != b.morphisms[i].tgt)
            return false;
    return a.identity == b.identity && a.compose_table == b.compose_table;
}

inline Span identity_span(const GroupoidPtr& s) {
    return {identity_functor(s), identity_functor(s)};
}

// The same span read backwards.
inline Span transpose(const Span& L) { return {L.right, L.left}; }

inline Span compose_spans(const Span& L, const Span& Lp) {
    GroupoidFunctor left_leg = Lp.left;
    if (L.right_foot().get() != Lp.left_foot().get()) {
        if (!same_groupoid(*L.right_foot(), *Lp.left_foot()))
            throw validation_error({"compose_spans: middle feet differ"});
        left_leg.target = L.right_foot();  // structurally equal; rebind
    }
    Pullback pb = homotopy_pullback(L.right, left_leg);
    return {compose_functors(L.left, pb.proj_left), compose_functors(Lp.right, pb.proj_right)};
}

// Componentwise product of feet and apexes.
inline Span tensor_span(const Span& L1, const Span& L2) {
    ProductGroupoid apex = product_with_projections(L1.apex(), L2.apex());
    ProductGroupoid foot_l = product_with_projections(L1.left_foot(), L2.left_foot());
    ProductGroupoid foot_r = product_with_projections(L1.right_foot(), L2.right_foot());
    return {product_functor(L1.left, L2.left, apex, foot_l),
            product_functor(L1.right, L2.right, apex, foot_r)};
}

// Replace the apex by an equivalent skeletal one (full subgroupoid on
// component representatives), restricting the legs. The span's matrix and
// all fibre cardinalities are unchanged.
inline Span prune_apex(const Span& L) {
    auto comps = components(*L.apex());
    std::vector<int> reps;
    for (const auto& c : comps) reps.push_back(c.representative_index);
    FiniteGroupoid sub = full_subgroupoid(*L.apex(), reps);
    GroupoidPtr subp = make_groupoid(std::move(sub));
    GroupoidFunctor incl;
    incl.source = subp;
    incl.target = L.apex();
    for (const auto& o : subp->objects) incl.object_map.push_back(L.apex()->object_index.at(o));
    for (const auto& m : subp->morphisms)
        incl.morphism_map.push_back(L.apex()->morphism_index.at(m.id));
    return {compose_functors(L.left, incl), compose_functors(L.right, incl)};
}

// Post-composition f_! : families over the source of f to families over its
// target.
inline FamilyOverS lowershriek(const GroupoidFunctor& f, const FamilyOverS& x) {
    if (x.base().get() != f.source.get())
        throw validation_error({"lowershriek: family base is not the source of f"});
    return {compose_functors(f, x.map)};
}

// Pullback f^* : families over the target of f to families over its source.
inline FamilyOverS upperstar(const GroupoidFunctor& f, const FamilyOverS& x) {
    if (x.base().get() != f.target.get())
        throw validation_error({"upperstar: family base is not the target of f"});
    Pullback pb = homotopy_pullback(x.map, f);
    return {pb.proj_right};
}

// The linear functor of a span: q_! p^*.
inline FamilyOverS apply_span(const Span& L, const FamilyOverS& x) {
    GroupoidFunctor left = L.left;
    FamilyOverS xx = x;
    if (x.base().get() != L.left_foot().get()) {
        if (!same_groupoid(*x.base(), *L.left_foot()))
            throw validation_error({"apply_span: family base is not the left foot"});
        xx.map.target = L.left_foot();
    }
    return lowershriek(L.right, upperstar(left, xx));
}

// The name of an object: 1 -> S.
inline FamilyOverS name_family(const GroupoidPtr& S, int s) {
    if (s < 0 || s >= static_cast<int>(S->objects.size()))
        throw validation_error({"name: no such object"});
    GroupoidPtr pt = make_groupoid(terminal_groupoid());
    return {constant_functor(pt, S, s)};
}

// Homotopy sum over B of a family E -> B×I: push forward along the
// projection to I.
inline FamilyOverS homotopy_sum(const FamilyOverS& g, const GroupoidFunctor& proj_to_index) {
    return lowershriek(proj_to_index, g);
}

// Tensoring a family with a groupoid: S ⊗ (X -> T) = (S×X -> T).
inline FamilyOverS scalar_multiply(const GroupoidPtr& S, const FamilyOverS& x) {
    ProductGroupoid p = product_with_projections(S, x.total());
    return {compose_functors(x.map, p.proj_right)};
}

}  // namespace hlq

#endif
