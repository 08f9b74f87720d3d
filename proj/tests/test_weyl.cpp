#include <doctest.h>

#include "oracles.hpp"
#include "test_util.hpp"

#include <set>

using namespace ghecke;

TEST_CASE("group orders") {
    CHECK(test::ctx('A', 1).table.order == 2);
    CHECK(test::ctx('A', 2).table.order == 6);
    CHECK(test::ctx('A', 3).table.order == 24);
    CHECK(test::ctx('B', 2).table.order == 8);
    CHECK(test::ctx('G', 2).table.order == 12);
    CHECK(test::ctx('D', 3).table.order == 24);
    // E6 order against the product of the invariant degrees 2,5,6,8,9,12
    long degrees = 2L * 5 * 6 * 8 * 9 * 12;
    CHECK(test::ctx('E', 6).table.order == degrees);
}

TEST_CASE("enumeration cap") {
    RootDatum rd = build_root_datum('A', 4);
    CHECK_THROWS_AS(enumerate_group(rd, 100), cap_error);
}

TEST_CASE("lengths equal inversion counts") {
    WeylContext& c = test::ctx('A', 3);
    const WeylGroupTable& wt = c.table;
    for (int32_t w = 0; w < wt.order; ++w) {
        int inversions = 0;
        for (int r = 0; r < c.rd().npos; ++r)
            if (wt.root_image(w, r) >= c.rd().npos) ++inversions;
        CHECK(wt.length(w) == inversions);
        CHECK(wt.length(w) == static_cast<int>(wt.word(w).size()));
        CHECK(wt.from_word(wt.word(w)) == w);
    }
    CHECK(wt.length(wt.w0) == c.rd().npos);
}

TEST_CASE("multiplication tables form a group") {
    WeylContext& c = test::ctx('A', 3);
    const WeylGroupTable& wt = c.table;
    test::Lcg rng(3);
    for (int t = 0; t < 40; ++t) {
        int32_t a = rng.pick(static_cast<int>(wt.order));
        int32_t b = rng.pick(static_cast<int>(wt.order));
        int32_t cc = rng.pick(static_cast<int>(wt.order));
        CHECK(wt.mult(wt.mult(a, b), cc) == wt.mult(a, wt.mult(b, cc)));
        CHECK(wt.mult(a, wt.inv[a]) == 0);
        CHECK(wt.mult(wt.inv[a], a) == 0);
        // matrices multiply the same way
        CHECK(wt.matrix_of(wt.mult(a, b)) == wt.matrix_of(a) * wt.matrix_of(b));
    }
    // unique identity
    for (int32_t w = 1; w < wt.order; ++w) CHECK(wt.length(w) > 0);
}

TEST_CASE("two reduced words of w0 agree") {
    WeylContext& c = test::ctx('A', 2);
    CHECK(c.table.from_word({0, 1, 0}) == c.table.from_word({1, 0, 1}));
    CHECK(c.table.from_word({0, 1, 0}) == c.table.w0);
}

TEST_CASE("longest elements") {
    WeylContext& a2 = test::ctx('A', 2);
    int32_t w0 = longest_element(a2.table, {0, 1});
    CHECK(w0 == a2.table.w0);
    CHECK(a2.table.length(w0) == 3);
    // w0(a1) = -a2
    CHECK(a2.table.key_of(w0, 0) == a2.rd().neg_root(a2.rd().root_index({0, 1})));
    CHECK(longest_element(a2.table, {}) == 0);
    WeylContext& b2 = test::ctx('B', 2);
    Mat m = b2.table.matrix_of(longest_element(b2.table, {0, 1}));
    CHECK(m == -Mat::identity(2));
    // longest element of a proper parabolic
    WeylContext& a3 = test::ctx('A', 3);
    int32_t wj = longest_element(a3.table, {0, 1});
    CHECK(a3.table.length(wj) == 3);
}

TEST_CASE("minimal coset representatives") {
    WeylContext& a2 = test::ctx('A', 2);
    auto reps = min_coset_reps(a2.table, {0});
    REQUIRE(reps.size() == 3);
    CHECK(a2.table.length(reps[0]) == 0);
    CHECK(a2.table.length(reps[1]) == 1);
    CHECK(a2.table.length(reps[2]) == 2);
    CHECK(min_coset_reps(a2.table, {0, 1}).size() == 1);
    CHECK(min_coset_reps(a2.table, {}).size() == 6);

    WeylContext& a3 = test::ctx('A', 3);
    for (const auto& J : std::vector<std::vector<int>>{{}, {0}, {1}, {0, 1}, {0, 2}, {0, 1, 2}}) {
        auto r3 = min_coset_reps(a3.table, J);
        CHECK(static_cast<int64_t>(r3.size()) * static_cast<int64_t>(parabolic_elements(a3.table, J).size()) ==
              a3.table.order);
    }
}

TEST_CASE("parabolic decomposition is the unique length-additive factorization") {
    WeylContext& a2 = test::ctx('A', 2);
    const WeylGroupTable& wt = a2.table;
    std::vector<int> J{0};
    auto reps = min_coset_reps(wt, J);
    auto wj = parabolic_elements(wt, J);
    for (int32_t w = 0; w < wt.order; ++w) {
        auto [x, y] = parabolic_decompose(wt, w, J);
        CHECK(wt.mult(x, y) == w);
        CHECK(wt.length(w) == wt.length(x) + wt.length(y));
        CHECK(wt.keeps_positive(x, J));
        // exhaustive uniqueness oracle
        int count = 0;
        for (int32_t xx : reps)
            for (int32_t yy : wj)
                if (wt.mult(xx, yy) == w) ++count;
        CHECK(count == 1);
    }
    // trivial cases
    for (int32_t y : wj) CHECK(parabolic_decompose(wt, y, J).first == 0);
    for (int32_t x : reps) CHECK(parabolic_decompose(wt, x, J).second == 0);

    // length additivity across all w and J on A3
    WeylContext& a3 = test::ctx('A', 3);
    for (const auto& J3 : std::vector<std::vector<int>>{{0}, {0, 1}, {0, 2}}) {
        for (int32_t w = 0; w < a3.table.order; ++w) {
            auto [x, y] = parabolic_decompose(a3.table, w, J3);
            CHECK(a3.table.mult(x, y) == w);
            CHECK(a3.table.length(w) == a3.table.length(x) + a3.table.length(y));
        }
    }
}

TEST_CASE("ellipticity determinants") {
    WeylContext& a2 = test::ctx('A', 2);
    CHECK(det_ellipticity(a2.table, 0, false) == Rat(0));
    // class determinant multisets, ordered by rep length: e, s1, s1s2
    std::multiset<std::string> ord, tw;
    for (int c = 0; c < a2.classes.count(); ++c) ord.insert(rat_str(a2.class_det[c]));
    for (int c = 0; c < a2.tclasses.count(); ++c) tw.insert(rat_str(a2.tclass_det[c]));
    CHECK(ord == std::multiset<std::string>{"0", "0", "3"});
    CHECK(tw == std::multiset<std::string>{"0", "1", "4"});
    // det(1 - w theta) = det(1 + w w0)
    for (int32_t w = 0; w < a2.table.order; ++w) {
        Mat u = a2.table.matrix_of(a2.table.mult(w, a2.table.w0));
        CHECK(det_ellipticity(a2.table, w, true, &a2.theta) == det(Mat::identity(2) + u));
    }
}

TEST_CASE("conjugacy classes") {
    WeylContext& a2 = test::ctx('A', 2);
    REQUIRE(a2.classes.count() == 3);
    std::multiset<int64_t> sizes(a2.classes.size.begin(), a2.classes.size.end());
    CHECK(sizes == std::multiset<int64_t>{1, 3, 2});
    CHECK(test::ctx('A', 1).classes.count() == 2);

    // class_of is constant on classes and reps are members
    for (int c = 0; c < a2.classes.count(); ++c)
        CHECK(a2.classes.class_of[a2.classes.rep[c]] == c);
}

TEST_CASE("twisted classes against the brute-force definition") {
    for (auto [f, n] : std::initializer_list<std::pair<char, int>>{{'A', 2}, {'A', 3}, {'B', 2}}) {
        WeylContext& c = test::ctx(f, n);
        auto brute = test::twisted_classes_bruteforce(c);
        // same partition: equal classes iff equal brute labels
        for (int32_t v = 0; v < c.table.order; ++v)
            for (int32_t w = 0; w < c.table.order; ++w)
                CHECK((c.tclasses.class_of[v] == c.tclasses.class_of[w]) ==
                      (brute[v] == brute[w]));
    }
}

TEST_CASE("twisted classes biject with ordinary classes under w -> w w0") {
    for (auto [f, n] : std::initializer_list<std::pair<char, int>>{{'A', 2}, {'A', 3}, {'D', 3}}) {
        WeylContext& c = test::ctx(f, n);
        CHECK(c.tclasses.count() == c.classes.count());
        for (int32_t v = 0; v < c.table.order; ++v)
            for (int32_t w = 0; w < c.table.order; ++w) {
                bool same_tw = c.tclasses.class_of[v] == c.tclasses.class_of[w];
                bool same_ord = c.classes.class_of[c.table.mult(v, c.table.w0)] ==
                                c.classes.class_of[c.table.mult(w, c.table.w0)];
                CHECK(same_tw == same_ord);
            }
        // matching sizes
        std::multiset<int64_t> a(c.classes.size.begin(), c.classes.size.end());
        std::multiset<int64_t> b(c.tclasses.size.begin(), c.tclasses.size.end());
        CHECK(a == b);
    }
}

TEST_CASE("elliptic class counts") {
    WeylContext& a2 = test::ctx('A', 2);
    CHECK(elliptic_class_count(a2.table, a2.classes, nullptr) == 1);
    CHECK(elliptic_class_count(a2.table, a2.tclasses, &a2.theta) == 2);
    WeylContext& e6 = test::ctx('E', 6);
    CHECK(elliptic_class_count(e6.table, e6.tclasses, &e6.theta) == 9);
}

TEST_CASE("subset stabilizers") {
    WeylContext& a2 = test::ctx('A', 2);
    CHECK(subset_stabilizer_count(a2.table, {}) == a2.table.order);
    CHECK(subset_stabilizer_count(a2.table, {0, 1}) == 1);
    CHECK(subset_stabilizer_count(a2.table, {0}) == 1);
    // conjugation invariance: symmetric subsets have equal counts
    WeylContext& a3 = test::ctx('A', 3);
    CHECK(subset_stabilizer_count(a3.table, {0}) == subset_stabilizer_count(a3.table, {2}));
    CHECK(subset_stabilizer_count(a3.table, {0, 1}) == subset_stabilizer_count(a3.table, {1, 2}));
    CHECK(subset_stabilizer_count(a3.table, {0}) == 2);  // s3 fixes a1
}

TEST_CASE("rigid subsets per type") {
    WeylContext& a2 = test::ctx('A', 2);
    auto r2 = rigid_subsets(a2.table);
    CHECK(r2 == std::vector<std::vector<int>>{{0, 1}, {0}, {1}});
    WeylContext& b2 = test::ctx('B', 2);
    CHECK(rigid_subsets(b2.table) == std::vector<std::vector<int>>{{0, 1}});
    WeylContext& g2 = test::ctx('G', 2);
    CHECK(rigid_subsets(g2.table) == std::vector<std::vector<int>>{{0, 1}});
    // E6: proper rigid subsets have types D5 and A4 x A1
    WeylContext& e6 = test::ctx('E', 6);
    std::multiset<std::string> types;
    for (const auto& J : rigid_subsets(e6.table))
        if (J.size() < 6) types.insert(subset_type(e6.rd(), J));
    CHECK(types == std::multiset<std::string>{"D5", "D5", "A4xA1", "A4xA1"});
}

TEST_CASE("rigid subsets of D5 are the two A4 chains") {
    WeylContext& d5 = test::ctx('D', 5);
    std::multiset<std::string> types;
    int proper = 0;
    for (const auto& J : rigid_subsets(d5.table))
        if (J.size() < 5) {
            ++proper;
            types.insert(subset_type(d5.rd(), J));
        }
    CHECK(proper == 2);
    CHECK(types == std::multiset<std::string>{"A4", "A4"});
}

TEST_CASE("every non-elliptic twisted class meets a theta-stable parabolic") {
    for (auto [f, n] : std::initializer_list<std::pair<char, int>>{{'A', 2}, {'A', 3}, {'D', 3}}) {
        WeylContext& c = test::ctx(f, n);
        auto stable = theta_stable_proper_subsets(c.table, c.theta);
        for (int cc = 0; cc < c.tclasses.count(); ++cc) {
            if (sgn(c.tclass_det[cc]) != 0) continue;
            bool met = false;
            for (const auto& J : stable)
                for (int32_t y : parabolic_elements(c.table, J))
                    if (c.tclasses.class_of[y] == cc) met = true;
            CHECK(met);
        }
    }
}

TEST_CASE("theta-stable proper subsets") {
    WeylContext& a2 = test::ctx('A', 2);
    CHECK(theta_stable_proper_subsets(a2.table, a2.theta) ==
          std::vector<std::vector<int>>{{}});
    WeylContext& a3 = test::ctx('A', 3);
    CHECK(theta_stable_proper_subsets(a3.table, a3.theta) ==
          std::vector<std::vector<int>>{{}, {1}, {0, 2}});
}

TEST_CASE("parabolic elements are non-theta-elliptic for theta-stable J") {
    for (auto [f, n] : std::initializer_list<std::pair<char, int>>{{'A', 2}, {'A', 3}, {'D', 3}}) {
        WeylContext& c = test::ctx(f, n);
        for (const auto& J : theta_stable_proper_subsets(c.table, c.theta))
            for (int32_t w : parabolic_elements(c.table, J))
                CHECK(sgn(det_ellipticity(c.table, w, true, &c.theta)) == 0);
    }
}

TEST_CASE("extended group") {
    WeylContext& a2 = test::ctx('A', 2);
    ExtendedGroupTable eg = build_extended_group(a2.table, a2.theta);
    CHECK(eg.order() == 12);
    CHECK(eg.coset_classes.count() == a2.tclasses.count());
    // theta_of agrees with conjugation by w0
    for (int32_t w = 0; w < a2.table.order; ++w)
        CHECK(eg.theta_of[w] == a2.table.mult(a2.table.mult(a2.table.w0, w), a2.table.w0));
    // (w,1)^2 lies in the eps = 0 part
    for (int32_t w = 0; w < a2.table.order; ++w) {
        int64_t g = eg.encode(w, 1);
        int64_t sq = eg.mult(g, g);
        CHECK(eg.eps_part(sq) == 0);
        CHECK(eg.w_part(sq) == a2.table.mult(w, eg.theta_of[w]));
        CHECK(eg.mult(g, eg.inverse(g)) == eg.encode(0, 0));
    }
    // coset conjugation stays inside the twisted class
    test::Lcg rng(5);
    for (int t = 0; t < 30; ++t) {
        int32_t w = rng.pick(6), u = rng.pick(6);
        int64_t g = eg.encode(w, 1);
        int64_t conj = eg.mult(eg.mult(eg.encode(u, 0), g), eg.inverse(eg.encode(u, 0)));
        CHECK(eg.eps_part(conj) == 1);
        CHECK(a2.tclasses.class_of[eg.w_part(conj)] == a2.tclasses.class_of[w]);
    }
}

TEST_CASE("exterior-character determinant identities") {
    // det(1 - w) = sum (-1)^i e_i(w), det(1 + w) = sum e_i(w)
    WeylContext& a3 = test::ctx('A', 3);
    ClassDomain dom = full_domain(a3, false);
    std::vector<ClassFn> ext;
    for (int i = 0; i <= 3; ++i) ext.push_back(exterior_character(dom, i));
    for (int c = 0; c < dom.count(); ++c) {
        Mat m = a3.table.matrix_of(dom.rep[c]);
        Rat alt = 0, plain = 0;
        for (int i = 0; i <= 3; ++i) {
            alt += (i % 2 ? -ext[i].v[c] : ext[i].v[c]);
            plain += ext[i].v[c];
        }
        CHECK(alt == det(Mat::identity(3) - m));
        CHECK(plain == det(Mat::identity(3) + m));
    }
}
