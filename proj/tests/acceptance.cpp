// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Randomized criteria run at least 100 independently seeded
// instances each.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <tuple>
#include <string>
#include <vector>

#include "hlq/cardinality.hpp"
#include "hlq/incidence.hpp"
#include "support.hpp"

using namespace hlq;
using hlq::testing::Rng;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, double seconds, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name << "  [" << std::fixed
              << std::setprecision(2) << seconds << "s]";
    if (!pass && !detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool run_instances(int count, const std::function<bool(Rng&, std::string&)>& body,
                   std::string& detail) {
    for (int i = 0; i < count; ++i) {
        Rng rng(0x9e3779b97f4a7c15ull + static_cast<unsigned long long>(i));
        std::string why;
        if (!body(rng, why)) {
            detail = "instance " + std::to_string(i) + (why.empty() ? "" : ": " + why);
            return false;
        }
    }
    return true;
}

// 1. cardinality is additive for sums and multiplicative for products
bool criterion_sum_product(Rng& rng, std::string&) {
    auto a = testing::random_groupoid(rng, "a");
    auto b = testing::random_groupoid(rng, "b");
    Rational ca = groupoid_cardinality(*a), cb = groupoid_cardinality(*b);
    return groupoid_cardinality(sum(*a, *b)) == ca + cb &&
           groupoid_cardinality(product(*a, *b)) == ca * cb;
}

// 2. the identity span has the identity matrix, in both conventions
bool criterion_identity_span(Rng& rng, std::string&) {
    auto s = testing::random_groupoid(rng, "s");
    QMatrix id = identity_matrix(component_labels(*s));
    return span_matrix(identity_span(s)) == id &&
           span_matrix(identity_span(s), NormalizationConvention::source) == id;
}

// 3. pullback cardinality: ‖X ×_B Y‖ = Σ_b ‖X_b‖ ‖Y_b‖ ‖B_[b]‖
bool criterion_pullback_formula(Rng& rng, std::string& why) {
    auto base = testing::random_groupoid(rng, "b", 2);
    auto x = testing::random_groupoid(rng, "x", 2);
    auto y = testing::random_groupoid(rng, "y", 2);
    GroupoidFunctor f = testing::random_functor(rng, x, base);
    GroupoidFunctor g = testing::random_functor(rng, y, base);
    Pullback pb = homotopy_pullback(f, g);
    Rational lhs = groupoid_cardinality(*pb.groupoid);
    Rational rhs = 0;
    for (const auto& c : components(*base)) {
        Rational xf = groupoid_cardinality(homotopy_fibre(f, c.representative_index));
        Rational yf = groupoid_cardinality(homotopy_fibre(g, c.representative_index));
        rhs += xf * yf * Rational(1, c.aut_order);
    }
    if (lhs != rhs) why = to_string(lhs) + " != " + to_string(rhs);
    return lhs == rhs;
}

// 4. functoriality: the matrix of a composite span is the matrix product
bool criterion_functoriality(Rng& rng, std::string&) {
    auto s = testing::random_groupoid(rng, "s", 2);
    auto t = testing::random_groupoid(rng, "t", 2);
    auto u = testing::random_groupoid(rng, "u", 2);
    Span L = testing::random_span(rng, "m", s, t, 2);
    Span Lp = testing::random_span(rng, "n", t, u, 2);
    QMatrix direct = span_matrix(prune_apex(compose_spans(L, Lp)));
    QMatrix product = matrix_multiply(span_matrix(Lp), span_matrix(L));
    return direct == product;
}

// 5. naturality: family cardinality commutes with applying a span
bool criterion_naturality(Rng& rng, std::string&) {
    auto s = testing::random_groupoid(rng, "s", 2);
    auto t = testing::random_groupoid(rng, "t", 2);
    Span L = testing::random_span(rng, "m", s, t, 2);
    FamilyOverS x = testing::random_family(rng, "x", s);
    QVector direct = family_cardinality(apply_span(L, x));
    QVector via_matrix = apply_matrix(span_matrix(L), family_cardinality(x));
    return direct.entries == via_matrix.entries && direct.index == via_matrix.index;
}

// 6. perfect pairing: ⟨name s, h^t⟩ = ‖Ω(S,s)‖ when t ≃ s, 0 otherwise;
// dividing by the loop cardinality gives the Kronecker delta
bool criterion_pairing(Rng& rng, std::string& why) {
    auto s = testing::random_groupoid(rng, "s");
    auto comps = components(*s);
    int si = testing::pick(rng, static_cast<int>(comps.size()));
    int ti = testing::pick(rng, static_cast<int>(comps.size()));
    FamilyOverS x = name_family(s, comps[si].representative_index);
    FinitePresheaf h = representable_presheaf(s, comps[ti].representative_index);
    Rational got = pairing(x, h);
    Rational omega(comps[si].aut_order);  // ‖Ω(S,s)‖ = |Aut(s)|
    Rational want = si == ti ? omega : Rational(0);
    if (got != want) {
        why = to_string(got) + " != " + to_string(want);
        return false;
    }
    // normalized form
    Rational kron = got / Rational(comps[ti].aut_order);
    return kron == (si == ti ? Rational(1) : Rational(0));
}

// classical Möbius oracle by the defining recursion
std::map<std::pair<int, int>, long long> classical_mobius(const FinitePoset& p) {
    const int n = static_cast<int>(p.elements.size());
    std::map<std::pair<int, int>, long long> mu;
    auto interval_size = [&](int x, int z) {
        int c = 0;
        for (int y = 0; y < n; ++y)
            if (p.leq[x][y] && p.leq[y][z]) ++c;
        return c;
    };
    std::vector<std::tuple<int, int, int>> intervals;
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z)
            if (p.leq[x][z]) intervals.push_back({interval_size(x, z), x, z});
    std::sort(intervals.begin(), intervals.end());
    for (auto [sz, x, z] : intervals) {
        if (x == z) { mu[{x, z}] = 1; continue; }
        long long acc = 0;
        for (int y = 0; y < n; ++y)
            if (p.leq[x][y] && p.leq[y][z] && y != z) acc += mu.at({x, y});
        mu[{x, z}] = -acc;
    }
    return mu;
}

FinitePoset chain_poset(int n) {
    FinitePoset p;
    for (int i = 0; i < n; ++i) p.elements.push_back(std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) p.covers.push_back({i, i + 1});
    p.close();
    return p;
}

FinitePoset boolean_poset(int n) {
    FinitePoset p;
    for (int s = 0; s < (1 << n); ++s) p.elements.push_back("S" + std::to_string(s));
    for (int s = 0; s < (1 << n); ++s)
        for (int b = 0; b < n; ++b)
            if (!(s & (1 << b))) p.covers.push_back({s, s | (1 << b)});
    p.close();
    return p;
}

FinitePoset divisor_poset_12() {
    FinitePoset p;
    std::vector<int> ds = {1, 2, 3, 4, 6, 12};
    std::map<int, int> ix;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        p.elements.push_back("d" + std::to_string(ds[i]));
        ix[ds[i]] = static_cast<int>(i);
    }
    for (int a : ds)
        for (int b : ds)
            if (b % a == 0 && a != b) p.covers.push_back({ix[a], ix[b]});
    p.close();
    return p;
}

// 7. Möbius inversion matches the classical recursion; ζ*μ = μ*ζ = unit
bool criterion_mobius(std::string& why) {
    std::vector<std::pair<std::string, FinitePoset>> cases = {
        {"chain3", chain_poset(3)},
        {"B2", boolean_poset(2)},
        {"B3", boolean_poset(3)},
        {"div12", divisor_poset_12()},
    };
    for (auto& [name, p] : cases) {
        NerveLevels n = fat_nerve(poset_category(p));
        IncidenceData d = incidence_data(n);
        QFunction mu = mobius_numeric(d);
        auto oracle = classical_mobius(p);
        const int ne = static_cast<int>(p.elements.size());
        for (int x = 0; x < ne; ++x)
            for (int z = 0; z < ne; ++z) {
                if (!p.leq[x][z]) continue;
                std::string label = relation_id(p.elements[x], p.elements[z]);
                if (mu.at(label) != Rational(oracle.at({x, z}))) {
                    why = name + " at " + label;
                    return false;
                }
            }
        QFunction zeta = zeta_function(n);
        QFunction unit = convolution_unit(n);
        QFunction zm = convolution(zeta, mu, d);
        QFunction mz = convolution(mu, zeta, d);
        for (const auto& l : zeta.index)
            if (zm.at(l) != unit.at(l) || mz.at(l) != unit.at(l)) {
                why = name + ": convolution with zeta is not the unit at " + l;
                return false;
            }
    }
    return true;
}

// 8. q-binomial structure constants match the subspace-count oracle
bool criterion_qbinomial(std::string& why) {
    // subspace-count oracle by closure growth over F₂ⁿ
    auto count_subspaces = [](int n, int k) {
        std::set<std::set<unsigned>> all = {{0u}}, layer = all;
        while (!layer.empty()) {
            std::set<std::set<unsigned>> next;
            for (const auto& sp : layer)
                for (unsigned v = 1; v < (1u << n); ++v) {
                    if (sp.count(v)) continue;
                    std::set<unsigned> grown = sp;
                    for (unsigned w : sp) grown.insert(w ^ v);
                    if (all.insert(grown).second) next.insert(grown);
                }
            layer = std::move(next);
        }
        long long c = 0;
        for (const auto& sp : all)
            if (sp.size() == (1u << k)) ++c;
        return c;
    };
    QBinomialReport r = qbinomial_check(2);
    if (!r.all_pass) {
        why = "library check failed";
        return false;
    }
    for (const auto& e : r.entries) {
        if (e.computed != Rational(count_subspaces(e.n, e.k))) {
            why = "n=" + std::to_string(e.n) + " k=" + std::to_string(e.k);
            return false;
        }
    }
    return true;
}

// 9. coassociativity and counit laws at matrix level
bool criterion_coassoc(std::string& why) {
    std::vector<std::pair<std::string, FiniteCategory>> cases;
    cases.emplace_back("chain3", poset_category(chain_poset(3)));
    cases.emplace_back("B2", poset_category(boolean_poset(2)));
    cases.emplace_back("BZ2", thickened_group("z2", cyclic_group(2)));
    cases.emplace_back("F2dim2", f2_injections_category(2));
    for (auto& [name, c] : cases) {
        CoassocReport r = coassoc_check(fat_nerve(c));
        if (!r.all()) {
            why = name;
            return false;
        }
    }
    return true;
}

// 10. Beck–Chevalley: g^* f_! and q_! p^* have the same matrix
bool criterion_beck_chevalley(Rng& rng, std::string&) {
    auto base = testing::random_groupoid(rng, "b", 2);
    auto x = testing::random_groupoid(rng, "x", 2);
    auto y = testing::random_groupoid(rng, "y", 2);
    GroupoidFunctor f = testing::random_functor(rng, x, base);
    GroupoidFunctor g = testing::random_functor(rng, y, base);
    Pullback pb = homotopy_pullback(f, g);
    Span direct{pb.proj_left, pb.proj_right};  // X <- P -> Y, i.e. q_! p^*
    Span f_shriek{identity_functor(x), f};     // X -> B
    Span g_star{g, identity_functor(y)};       // B -> Y
    QMatrix lhs = span_matrix(prune_apex(direct));
    QMatrix rhs = matrix_multiply(span_matrix(g_star), span_matrix(f_shriek));
    return lhs == rhs;
}

}  // namespace

int main() {
    struct Randomized {
        std::string name;
        int instances;
        std::function<bool(Rng&, std::string&)> body;
    };
    std::vector<Randomized> randomized = {
        {"cardinality of sums and products", 150, criterion_sum_product},
        {"identity span yields the identity matrix", 150, criterion_identity_span},
        {"pullback cardinality formula", 100, criterion_pullback_formula},
        {"span composition is matrix multiplication", 100, criterion_functoriality},
        {"family cardinality is natural in spans", 100, criterion_naturality},
        {"evaluation pairing is perfect", 150, criterion_pairing},
        {"Beck-Chevalley at matrix level", 100, criterion_beck_chevalley},
    };
    // deterministic criteria run once
    struct Deterministic {
        std::string name;
        std::function<bool(std::string&)> body;
    };
    std::vector<Deterministic> deterministic = {
        {"Moebius inversion matches the classical recursion", criterion_mobius},
        {"q-binomial constants match subspace counts", criterion_qbinomial},
        {"coassociativity and counit laws", criterion_coassoc},
    };
    for (auto& d : deterministic) {
        std::string why;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = d.body(why);
        report(d.name, ok, seconds_since(t0), why);
    }
    for (auto& r : randomized) {
        std::string detail;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = run_instances(r.instances, r.body, detail);
        report(r.name + " (" + std::to_string(r.instances) + " instances)", ok, seconds_since(t0),
               detail);
    }
    return failures == 0 ? 0 : 1;
}
