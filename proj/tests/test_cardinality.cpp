#include <catch2/catch_amalgamated.hpp>

#include "hlq/cardinality.hpp"

using namespace hlq;

namespace {

GroupoidPtr BG(const std::string& label, const Group& g) {
    return make_groupoid(thickened_group(label, g));
}

// Brute-force oracle: the groupoid of the sets {}, {0}, {0,1} and all
// bijections between them, built from actual permutation data.
FiniteGroupoid small_bijections() {
    std::vector<std::vector<int>> sets = {{}, {0}, {0, 1}};
    FiniteGroupoid g;
    for (std::size_t i = 0; i < sets.size(); ++i) g.add_object("set" + std::to_string(i));
    // enumerate bijections between equal-size sets as permutations
    struct Arrow { int src, tgt; std::vector<int> perm; };
    std::vector<Arrow> arrows;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (sets[i].size() != sets[j].size()) continue;
            std::vector<int> p(sets[i].size());
            for (std::size_t k = 0; k < p.size(); ++k) p[k] = static_cast<int>(k);
            do {
                arrows.push_back({i, j, p});
            } while (std::next_permutation(p.begin(), p.end()));
        }
    for (std::size_t a = 0; a < arrows.size(); ++a)
        g.add_morphism("f" + std::to_string(a), arrows[a].src, arrows[a].tgt);
    g.identity.resize(3, -1);
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        bool is_id = arrows[a].src == arrows[a].tgt;
        for (std::size_t k = 0; is_id && k < arrows[a].perm.size(); ++k)
            is_id = arrows[a].perm[k] == static_cast<int>(k);
        if (is_id) g.identity[arrows[a].src] = static_cast<int>(a);
    }
    for (std::size_t a = 0; a < arrows.size(); ++a)
        for (std::size_t b = 0; b < arrows.size(); ++b) {
            if (arrows[a].tgt != arrows[b].src) continue;
            std::vector<int> comp(arrows[a].perm.size());
            for (std::size_t k = 0; k < comp.size(); ++k) comp[k] = arrows[b].perm[arrows[a].perm[k]];
            for (std::size_t c = 0; c < arrows.size(); ++c)
                if (arrows[c].src == arrows[a].src && arrows[c].tgt == arrows[b].tgt &&
                    arrows[c].perm == comp)
                    g.set_compose(static_cast<int>(b), static_cast<int>(a), static_cast<int>(c));
        }
    g.finalize();
    g.infer_inverses();
    return g;
}

}  // namespace

TEST_CASE("cardinality of a one-object groupoid is 1/|G|") {
    CHECK(groupoid_cardinality(*BG("s3", symmetric_group_3())) == Rational(1, 6));
    CHECK(groupoid_cardinality(*BG("a4", alternating_group_4())) == Rational(1, 12));
}

TEST_CASE("cardinality of a discrete groupoid is the point count") {
    CHECK(groupoid_cardinality(discrete_groupoid(7)) == Rational(7));
}

TEST_CASE("cardinality of the small bijection groupoid") {
    FiniteGroupoid g = small_bijections();
    REQUIRE(g.validate().empty());
    // 1 + 1 + 1/2
    CHECK(groupoid_cardinality(g) == Rational(5, 2));
}

TEST_CASE("cardinality is additive and multiplicative") {
    FiniteGroupoid a = thickened_group("a", cyclic_group(2), 2);
    FiniteGroupoid b = thickened_group("b", symmetric_group_3());
    CHECK(groupoid_cardinality(sum(a, b)) ==
          groupoid_cardinality(a) + groupoid_cardinality(b));
    CHECK(groupoid_cardinality(product(a, b)) ==
          groupoid_cardinality(a) * groupoid_cardinality(b));
}

TEST_CASE("cardinality equals the out-degree sum") {
    FiniteGroupoid g = sum(thickened_group("a", dihedral_group(4), 2),
                           thickened_group("b", cyclic_group(3)));
    Rational by_outdeg = 0;
    for (std::size_t o = 0; o < g.objects.size(); ++o)
        by_outdeg += Rational(1, static_cast<long long>(g.out_of[o].size()));
    CHECK(groupoid_cardinality(g) == by_outdeg);
}

TEST_CASE("equivalent groupoids share a cardinality") {
    FiniteGroupoid a = thickened_group("a", symmetric_group_3(), 3);
    FiniteGroupoid b = thickened_group("b", symmetric_group_3());
    REQUIRE(equivalent(a, b));
    CHECK(groupoid_cardinality(a) == groupoid_cardinality(b));
}

TEST_CASE("truncated cardinality alternates") {
    // one component with π₁ = Z/2, π₂ = Z/3, π₃ = Z/2: 1/2 · 3 · 1/2 = 3/4
    TruncatedSpace t;
    t.components.push_back({"c0", {2, 3, 2}});
    CHECK(truncated_cardinality(t) == Rational(3, 4));
    t.components.push_back({"c1", {}});  // a point contributes 1
    CHECK(truncated_cardinality(t) == Rational(7, 4));
}

TEST_CASE("truncated cardinality rejects non-positive orders") {
    TruncatedSpace t;
    t.components.push_back({"c0", {0}});
    CHECK_THROWS_AS(truncated_cardinality(t), validation_error);
}

TEST_CASE("family over BG from its universal cover") {
    // E G -> BG modelled by the contractible action groupoid with |G| objects
    // mapping down: here 1 -> BG; fibre G, times ‖BG‖ = 1/|G|, gives 1
    auto bg = BG("s3", symmetric_group_3());
    auto pt = make_groupoid(terminal_groupoid());
    FamilyOverS x{constant_functor(pt, bg, 0)};
    QVector v = family_cardinality(x);
    CHECK(v.at(v.index[0]) == Rational(1));
}

TEST_CASE("span function counts fibres on the pro side") {
    auto s = BG("s", cyclic_group(2));
    auto pt = make_groupoid(terminal_groupoid());
    Span L{constant_functor(pt, s, 0), identity_functor(pt)};
    QFunction w = span_function(L);
    // fibre of 1 -> BZ2 is the 2-point set
    CHECK(w.at(w.index[0]) == Rational(2));
}

TEST_CASE("matrix multiply agrees with hand computation") {
    QMatrix A, B;
    A.rows = {"x"};
    A.cols = {"a", "b"};
    A.set("x", "a", Rational(1, 2));
    A.set("x", "b", Rational(3));
    B.rows = {"a", "b"};
    B.cols = {"u"};
    B.set("a", "u", Rational(4));
    B.set("b", "u", Rational(1, 3));
    auto C = matrix_multiply(A, B);
    CHECK(C.at("x", "u") == Rational(3));
}

TEST_CASE("matrix multiply rejects mismatched indices") {
    QMatrix A, B;
    A.rows = {"x"};
    A.cols = {"a"};
    B.rows = {"b"};
    B.cols = {"u"};
    CHECK_THROWS_AS(matrix_multiply(A, B), validation_error);
}

TEST_CASE("apply_matrix and apply_matrix_pro are dual") {
    QMatrix A;
    A.rows = {"t"};
    A.cols = {"s1", "s2"};
    A.set("t", "s1", Rational(2));
    A.set("t", "s2", Rational(1, 5));
    QVector v;
    v.index = {"s1", "s2"};
    v.set("s1", Rational(1));
    v.set("s2", Rational(10));
    QFunction w;
    w.index = {"t"};
    w.entries["t"] = Rational(7);
    auto Av = apply_matrix(A, v);
    auto wA = apply_matrix_pro(w, A);
    // ⟨w, Av⟩ = ⟨wA, v⟩
    Rational lhs = w.at("t") * Av.at("t");
    Rational rhs = wA.at("s1") * v.at("s1") + wA.at("s2") * v.at("s2");
    CHECK(lhs == rhs);
}

TEST_CASE("pullback cardinality formula over a one-component base") {
    // ‖X ×_B Y‖ = ‖X_b‖ ‖Y_b‖ ‖B_[b]‖ for connected B; take B = BZ2,
    // X = Y = 1. Fibres have cardinality 2, ‖B‖ = 1/2, so the result is 2.
    auto b = BG("b", cyclic_group(2));
    auto pt1 = make_groupoid(terminal_groupoid());
    auto pt2 = make_groupoid(terminal_groupoid());
    auto pb = homotopy_pullback(constant_functor(pt1, b, 0), constant_functor(pt2, b, 0));
    CHECK(groupoid_cardinality(*pb.groupoid) == Rational(2));
}
