#ifndef HLQ_GROUP_HPP
#define HLQ_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hlq/errors.hpp"

namespace hlq {

// Finite group as a Cayley table over indices 0..n-1, with 0 the identity.
struct Group {
    int n = 0;
    std::vector<int> table;  // row-major: table[a*n+b] = a*b

    int mul(int a, int b) const { return table[a * n + b]; }

    int inv(int a) const {
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == 0 && mul(b, a) == 0) return b;
        return -1;
    }

    int order_of(int a) const {
        int x = a, k = 1;
        while (x != 0) { x = mul(x, a); ++k; }
        return k;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> out;
        if (n <= 0 || static_cast<int>(table.size()) != n * n) {
            out.push_back("group: malformed table");
            return out;
        }
        for (int e : table)
            if (e < 0 || e >= n) { out.push_back("group: entry out of range"); return out; }
        for (int a = 0; a < n; ++a) {
            if (mul(0, a) != a || mul(a, 0) != a)
                out.push_back("group: element 0 is not an identity at " + std::to_string(a));
            if (inv(a) < 0)
                out.push_back("group: no inverse for " + std::to_string(a));
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                        out.push_back("group: associativity fails at (" + std::to_string(a) + "," +
                                      std::to_string(b) + "," + std::to_string(c) + ")");
                        return out;
                    }
        return out;
    }
};

inline Group cyclic_group(int n) {
    Group g;
    g.n = n;
    g.table.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
    return g;
}

inline Group product_group(const Group& a, const Group& b) {
    Group g;
    g.n = a.n * b.n;
    g.table.resize(static_cast<std::size_t>(g.n) * g.n);
    auto enc = [&](int x, int y) { return x * b.n + y; };
    for (int x1 = 0; x1 < a.n; ++x1)
        for (int y1 = 0; y1 < b.n; ++y1)
            for (int x2 = 0; x2 < a.n; ++x2)
                for (int y2 = 0; y2 < b.n; ++y2)
                    g.table[enc(x1, y1) * g.n + enc(x2, y2)] =
                        enc(a.mul(x1, x2), b.mul(y1, y2));
    return g;
}

// Group generated by permutations of {0..m-1}, elements ordered by BFS from
// the identity; identity ends up at index 0.
inline Group group_from_perms(int m, const std::vector<std::vector<int>>& gens) {
    std::vector<int> id(m);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems{id};
    std::set<std::vector<int>> seen{id};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& p : gens) {
            std::vector<int> q(m);
            for (int j = 0; j < m; ++j) q[j] = p[elems[i][j]];
            if (seen.insert(q).second) elems.push_back(q);
        }
    }
    Group g;
    g.n = static_cast<int>(elems.size());
    g.table.resize(static_cast<std::size_t>(g.n) * g.n);
    std::vector<std::pair<std::vector<int>, int>> index;
    for (int i = 0; i < g.n; ++i) index.emplace_back(elems[i], i);
    std::sort(index.begin(), index.end());
    auto lookup = [&](const std::vector<int>& p) {
        auto it = std::lower_bound(index.begin(), index.end(),
                                   std::make_pair(p, 0));
        return it->second;
    };
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            std::vector<int> c(m);
            for (int j = 0; j < m; ++j) c[j] = elems[a][elems[b][j]];
            g.table[a * g.n + b] = lookup(c);
        }
    return g;
}

inline Group symmetric_group_3() {
    return group_from_perms(3, {{1, 0, 2}, {1, 2, 0}});
}

inline Group dihedral_group(int n) {  // order 2n
    std::vector<int> rot(n), refl(n);
    for (int i = 0; i < n; ++i) rot[i] = (i + 1) % n;
    for (int i = 0; i < n; ++i) refl[i] = (n - i) % n;
    return group_from_perms(n, {rot, refl});
}

inline Group alternating_group_4() {
    return group_from_perms(4, {{1, 0, 3, 2}, {0, 2, 3, 1}});
}

// Greedy generating set, small for the group orders in play.
inline std::vector<int> generating_set(const Group& g) {
    std::vector<int> gens;
    std::vector<char> in(g.n, 0);
    in[0] = 1;
    int covered = 1;
    while (covered < g.n) {
        int pick = -1;
        for (int a = 1; a < g.n; ++a)
            if (!in[a]) { pick = a; break; }
        gens.push_back(pick);
        // close up
        std::vector<int> frontier;
        for (int a = 0; a < g.n; ++a)
            if (in[a]) frontier.push_back(a);
        for (std::size_t i = 0; i < frontier.size(); ++i)
            for (int s : gens) {
                int x = g.mul(frontier[i], s);
                if (!in[x]) { in[x] = 1; ++covered; frontier.push_back(x); }
                x = g.mul(s, frontier[i]);
                if (!in[x]) { in[x] = 1; ++covered; frontier.push_back(x); }
            }
    }
    return gens;
}

namespace detail {

// Try to extend images of a generating set to a full homomorphism table.
// Returns the total map h -> k, or nullopt if inconsistent.
inline std::optional<std::vector<int>> extend_hom(const Group& h, const Group& k,
                                                  const std::vector<int>& gens,
                                                  const std::vector<int>& images) {
    std::vector<int> phi(h.n, -1);
    phi[0] = 0;
    std::vector<int> frontier{0};
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        int a = frontier[i];
        for (std::size_t j = 0; j < gens.size(); ++j) {
            int b = h.mul(a, gens[j]);
            int im = k.mul(phi[a], images[j]);
            if (phi[b] < 0) { phi[b] = im; frontier.push_back(b); }
            else if (phi[b] != im) return std::nullopt;
        }
    }
    for (int a = 0; a < h.n; ++a)
        for (int b = 0; b < h.n; ++b)
            if (phi[h.mul(a, b)] != k.mul(phi[a], phi[b])) return std::nullopt;
    return phi;
}

}  // namespace detail

// All homomorphisms h -> k, each as a total image table.
inline std::vector<std::vector<int>> all_homs(const Group& h, const Group& k) {
    auto gens = generating_set(h);
    std::vector<std::vector<int>> result;
    std::vector<int> images(gens.size(), 0);
    // odometer over k^|gens|
    while (true) {
        if (auto phi = detail::extend_hom(h, k, gens, images)) result.push_back(*phi);
        std::size_t i = 0;
        for (; i < images.size(); ++i) {
            if (++images[i] < k.n) break;
            images[i] = 0;
        }
        if (i == images.size()) break;
    }
    if (gens.empty()) result.push_back(std::vector<int>{0});
    return result;
}

// Brute-force isomorphism test, guarded by the configured order cap.
inline bool groups_isomorphic(const Group& a, const Group& b, std::uint64_t cap = 64) {
    if (a.n != b.n) return false;
    if (static_cast<std::uint64_t>(a.n) > cap)
        throw size_cap_error("undecided: group of order " + std::to_string(a.n) +
                             " exceeds isomorphism search cap " + std::to_string(cap));
    // cheap invariant first
    std::vector<int> oa(a.n), ob(b.n);
    for (int i = 0; i < a.n; ++i) { oa[i] = a.order_of(i); ob[i] = b.order_of(i); }
    {
        auto sa = oa, sb = ob;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    auto gens = generating_set(a);
    // backtracking over generator images with matching element orders
    std::vector<int> img(gens.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == gens.size()) {
            auto phi = detail::extend_hom(a, b, gens, img);
            if (!phi) return false;
            std::vector<char> hit(b.n, 0);
            for (int x : *phi) {
                if (hit[x]) return false;
                hit[x] = 1;
            }
            return true;
        }
        for (int c = 0; c < b.n; ++c) {
            if (ob[c] != oa[gens[i]]) continue;
            img[i] = c;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

}  // namespace hlq

#endif
