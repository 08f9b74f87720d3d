#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include "ghecke/charpair.hpp"

namespace ghecke::test {

// induced class function by the direct double-coset-free formula
// Ind f(g) = (1/|H|) sum_{x in G, x^{-1} g x in H} f(x^{-1} g x)
inline Rat induced_value_bruteforce(const WeylContext& ctx, const ClassDomain& sub,
                                    const ClassFn& f, int32_t g) {
    const WeylGroupTable& wt = ctx.table;
    Rat acc = 0;
    for (int32_t x = 0; x < wt.order; ++x) {
        int32_t y = wt.mult(wt.mult(wt.inv[x], g), x);
        int c = sub.class_of[y];
        if (c >= 0) acc += f.v[c];
    }
    return acc / Rat(sub.group_order());
}

// twisted variant: Ind f(g theta) = (1/|W_J|) sum_{x : x^{-1} g theta(x) in W_J} f(...)
inline Rat induced_value_bruteforce_twisted(const WeylContext& ctx, const ClassDomain& sub,
                                            const ClassFn& f, int32_t g) {
    const WeylGroupTable& wt = ctx.table;
    Rat acc = 0;
    for (int32_t x = 0; x < wt.order; ++x) {
        int32_t y = wt.mult(wt.mult(wt.inv[x], g), theta_element(wt, ctx.theta, x));
        int c = sub.class_of[y];
        if (c >= 0) acc += f.v[c];
    }
    return acc / Rat(sub.group_order());
}

// all partitions of n, decreasing parts
inline void enumerate_partitions(int n, int max_part, std::vector<int>& cur,
                                 std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        enumerate_partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<int>> partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    enumerate_partitions(n, n, cur, out);
    return out;
}

inline long count_distinct_parts_bruteforce(int n) {
    long c = 0;
    for (const auto& p : partitions(n)) {
        bool distinct = true;
        for (size_t i = 0; i + 1 < p.size(); ++i)
            if (p[i] == p[i + 1]) distinct = false;
        if (distinct) ++c;
    }
    return c;
}

inline long count_odd_parts_number_bruteforce(int n) {
    long c = 0;
    for (const auto& p : partitions(n))
        if (p.size() % 2 == 1) ++c;
    return c;
}

// Pascal triangle, the independent binomial for the Koszul dimension counts
inline long pascal(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::vector<std::vector<long>> t(n + 1);
    for (int i = 0; i <= n; ++i) {
        t[i].assign(i + 1, 1);
        for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t[n][k];
}

// partition of W into twisted classes straight from the definition
inline std::vector<int> twisted_classes_bruteforce(const WeylContext& ctx) {
    const WeylGroupTable& wt = ctx.table;
    std::vector<int> cls(wt.order, -1);
    int next = 0;
    for (int32_t seed = 0; seed < wt.order; ++seed) {
        if (cls[seed] >= 0) continue;
        for (int32_t x = 0; x < wt.order; ++x) {
            int32_t y = wt.mult(wt.mult(x, seed), wt.inv[theta_element(wt, ctx.theta, x)]);
            if (cls[y] < 0) cls[y] = next;
        }
        ++next;
    }
    return cls;
}

}  // namespace ghecke::test
