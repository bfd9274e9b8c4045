// Random instance generators for property and acceptance tests. All
// randomness flows through a caller-provided seeded engine, so every run is
// reproducible.
#ifndef HLQ_TESTS_SUPPORT_HPP
#define HLQ_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "hlq/cardinality.hpp"
#include "hlq/functor.hpp"
#include "hlq/span.hpp"

namespace hlq::testing {

using Rng = std::mt19937_64;

inline const std::vector<Group>& group_catalog() {
    static const std::vector<Group> catalog = [] {
        std::vector<Group> c;
        for (int n = 1; n <= 6; ++n) c.push_back(cyclic_group(n));
        c.push_back(cyclic_group(8));
        c.push_back(product_group(cyclic_group(2), cyclic_group(2)));
        c.push_back(symmetric_group_3());
        c.push_back(dihedral_group(4));
        return c;
    }();
    return catalog;
}

inline int pick(Rng& rng, int n) {
    return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
}

// Disjoint sum of 1..max_components one-object group pieces. Labels carry
// the prefix so independently drawn groupoids never collide.
inline GroupoidPtr random_groupoid(Rng& rng, const std::string& prefix, int max_components = 3) {
    const auto& cat = group_catalog();
    int k = 1 + pick(rng, max_components);
    FiniteGroupoid g;
    for (int i = 0; i < k; ++i) {
        FiniteGroupoid piece =
            thickened_group(prefix + std::to_string(i), cat[pick(rng, static_cast<int>(cat.size()))]);
        g = i == 0 ? std::move(piece) : sum(g, piece);
    }
    // sum() tags object ids; rebuild labels by reloading components is not
    // needed, the tags stay unique and deterministic
    return make_groupoid(std::move(g));
}

// Random functor into an arbitrary target: every source component maps to a
// random target component through a random group homomorphism.
inline GroupoidFunctor random_functor(Rng& rng, const GroupoidPtr& source,
                                      const GroupoidPtr& target) {
    auto scomps = components(*source);
    auto tcomps = components(*target);
    GroupoidFunctor f;
    f.source = source;
    f.target = target;
    f.object_map.assign(source->objects.size(), -1);
    f.morphism_map.assign(source->morphisms.size(), -1);
    for (const auto& sc : scomps) {
        const auto& tc = tcomps[pick(rng, static_cast<int>(tcomps.size()))];
        // source components are one-object pieces by construction
        int so = sc.representative_index;
        int to = tc.representative_index;
        std::vector<int> selems, telems;
        Group H = automorphism_group(*source, so, &selems);
        Group K = automorphism_group(*target, to, &telems);
        auto homs = all_homs(H, K);
        const auto& phi = homs[pick(rng, static_cast<int>(homs.size()))];
        f.object_map[so] = to;
        for (std::size_t e = 0; e < selems.size(); ++e)
            f.morphism_map[selems[e]] = telems[phi[e]];
    }
    require_functor(f);
    return f;
}

// Random span between two given feet.
inline Span random_span(Rng& rng, const std::string& prefix, const GroupoidPtr& s,
                        const GroupoidPtr& t, int max_apex_components = 3) {
    GroupoidPtr apex = random_groupoid(rng, prefix, max_apex_components);
    GroupoidFunctor left = random_functor(rng, apex, s);
    GroupoidFunctor right = random_functor(rng, apex, t);
    return {std::move(left), std::move(right)};
}

inline FamilyOverS random_family(Rng& rng, const std::string& prefix, const GroupoidPtr& base) {
    GroupoidPtr total = random_groupoid(rng, prefix);
    return {random_functor(rng, total, base)};
}

}  // namespace hlq::testing

#endif
