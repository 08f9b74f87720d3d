#include "ghecke/suites.hpp"

#include "ghecke/module_io.hpp"

#include <chrono>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ghecke {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string vec_str(const std::vector<long>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string rvec_str(const std::vector<Rat>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rat_str(v[i]);
    return s + ")";
}

struct Runner {
    SuiteReport rep;
    Exec ex;
    std::map<std::string, WeylContext> ctxs;

    explicit Runner(std::string suite, Exec e) : ex(e) { rep.suite = std::move(suite); }

    WeylContext& ctx(char f, int r) {
        std::string key = std::string(1, f) + std::to_string(r);
        auto it = ctxs.find(key);
        if (it == ctxs.end()) it = ctxs.emplace(key, make_context(f, r)).first;
        return it->second;
    }

    void check(const std::string& id, const std::string& expected, const std::string& actual) {
        rep.checks.push_back({id, expected, actual, expected == actual});
    }
    void check_true(const std::string& id, bool ok, const std::string& detail = "") {
        rep.checks.push_back({id, "true", ok ? "true" : ("false" + (detail.empty() ? "" : " " + detail)), ok});
    }
    template <typename T>
    void check_eq(const std::string& id, const T& expected, const T& actual) {
        std::ostringstream a, b;
        a << expected;
        b << actual;
        check(id, a.str(), b.str());
    }
    void note(const std::string& s) { rep.notes.push_back(s); }
    void time_criterion(const std::string& name, double secs, double budget) {
        rep.timing.emplace_back(name, secs);
        if (budget > 0) {
            std::ostringstream os;
            os << (secs < budget ? "ran in " : "overran: ") << secs << "s of " << budget << "s";
            rep.checks.push_back({name + ".runtime", "under budget", secs < budget ? "under budget" : os.str(), secs < budget});
        }
    }
};

// deterministic generator for the randomized-pair criterion
struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 33;
    }
    int pick(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
    Rat rat(int lo, int hi) { return Rat(lo + pick(hi - lo + 1)); }
};

struct PoolModule {
    std::string key;
    HModule mod;
    std::optional<Mat> theta;
    // induction data when applicable, for the weight-multiset checks
    bool induced = false;
    std::vector<int> J;
    HModule u;
    std::vector<Rat> nu;
};

struct Registry {
    std::vector<std::pair<const WeylContext*, PoolModule>> mods;
    std::vector<std::pair<std::string, ExtResult>> exts;  // with theta data where present

    PoolModule& add(const WeylContext& c, PoolModule m) {
        mods.emplace_back(&c, std::move(m));
        return mods.back().second;
    }
};

PoolModule make_pool_entry(const WeylContext& ctx, const std::string& key, HModule mod,
                           bool want_theta) {
    PoolModule p;
    p.key = key;
    p.mod = std::move(mod);
    if (want_theta) {
        ThetaSearch ts = find_theta_structure(ctx, p.mod);
        if (ts.found()) p.theta = ts.theta;
    }
    return p;
}

PoolModule make_induced_entry(const WeylContext& ctx, const std::string& key,
                              const std::vector<int>& J, const HModule& u,
                              const std::vector<Rat>& nu) {
    PoolModule p = make_pool_entry(ctx, key, induced_module(ctx, J, u, nu, key), true);
    p.induced = true;
    p.J = J;
    p.u = u;
    p.nu = nu;
    return p;
}

// ---------------------------------------------------------------- criterion 1
void criterion_steinberg(Runner& r, Registry& reg) {
    auto t0 = Clock::now();
    const std::vector<std::pair<char, int>> types = {{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'G', 2}};
    ExtOptions opts;
    opts.ex = r.ex;
    opts.verify_tilde = true;
    for (auto [f, n] : types) {
        WeylContext& ctx = r.ctx(f, n);
        std::string key = std::string(1, f) + std::to_string(n);
        PoolModule& st = reg.add(ctx, make_pool_entry(ctx, key + ".St", steinberg_module(ctx.rd()), true));
        ExtResult er = st.theta ? theta_star_on_ext(ctx, st.mod, st.mod, *st.theta, *st.theta, opts)
                                : ext_dims(ctx, st.mod, st.mod, opts);
        std::vector<long> want(n + 1, 0);
        want[0] = 1;
        r.check_eq("c1." + key + ".dims", vec_str(want), vec_str(er.dims));
        r.check_eq("c1." + key + ".ep", 1L, er.ep);
        reg.exts.emplace_back(key + ".St-self", er);
    }
    r.time_criterion("c1", elapsed(t0), 10.0);
}

// ---------------------------------------------------------------- criterion 2
void criterion_principal_series(Runner& r, Registry& reg) {
    auto t0 = Clock::now();
    WeylContext& ctx = r.ctx('A', 2);
    PoolModule& ps = reg.add(
        ctx, make_pool_entry(ctx, "A2.ps0", principal_series(ctx, {Rat(0), Rat(0)}), true));
    ExtOptions opts;
    opts.ex = r.ex;
    opts.verify_tilde = true;
    r.check_true("c2.theta-structure", ps.theta.has_value());
    if (ps.theta) {
        ExtResult er = theta_star_on_ext(ctx, ps.mod, ps.mod, *ps.theta, *ps.theta, opts);
        r.check_eq("c2.dims", std::string("(1,2,1)"), vec_str(er.dims));
        r.check_eq("c2.traces", std::string("(1,0,-1)"), rvec_str(*er.theta_traces));
        reg.exts.emplace_back("A2.ps0-self", er);
    }
    r.time_criterion("c2", elapsed(t0), 30.0);
}

// ---------------------------------------------------------------- criterion 3
void criterion_rigid(Runner& r, Registry& reg) {
    auto t0 = Clock::now();
    ExtOptions opts;
    opts.ex = r.ex;
    opts.verify_tilde = true;
    for (int n = 2; n <= 4; ++n) {
        WeylContext& ctx = r.ctx('A', n);
        std::string key = "A" + std::to_string(n);
        auto rig = rigid_subsets(ctx.table);
        int proper = 0;
        for (const auto& J : rig) {
            if (static_cast<int>(J.size()) == n) continue;  // Delta
            ++proper;
            bool full = n <= 3;
            RigidReport rr = rigid_verification(ctx, J, full, opts);
            std::string id = "c3." + key + "." + subset_str(J);
            r.check_true(id, rr.ok(), rr.failures.empty() ? "" : rr.failures.front());
            PoolModule p;
            p.key = key + ".X" + subset_str(J);
            p.mod = rr.x;
            p.theta = rr.theta;
            p.induced = true;
            p.J = rr.J;
            p.u = one_dim_parabolic(ctx.rd(), rr.J, std::vector<int>(rr.J.size(), -1),
                                    std::vector<Rat>(n, Rat(0)));
            p.nu.assign(n, Rat(0));
            std::string pkey = p.key;
            reg.add(ctx, std::move(p));
            if (full) reg.exts.emplace_back(pkey + "-self", rr.ext);
        }
        int expect = n == 2 ? 2 : n == 3 ? 2 : 4;
        r.check_eq("c3." + key + ".proper-rigid-count", static_cast<long>(expect),
                   static_cast<long>(proper));
    }
    r.time_criterion("c3", elapsed(t0), 300.0);
}

// ---------------------------------------------------------------- criterion 4
void criterion_randomized_pairs(Runner& r, Registry& reg) {
    auto t0 = Clock::now();
    ExtOptions opts;
    opts.ex = r.ex;

    auto build_pool = [&](char f, int n) {
        WeylContext& ctx = r.ctx(f, n);
        std::string key = std::string(1, f) + std::to_string(n);
        std::vector<size_t> pool_idx;
        auto add = [&](PoolModule p) {
            reg.add(ctx, std::move(p));
            pool_idx.push_back(reg.mods.size() - 1);
        };
        add(make_pool_entry(ctx, key + ".st", steinberg_module(ctx.rd()), true));
        add(make_pool_entry(ctx, key + ".triv", trivial_module(ctx.rd()), true));
        auto st_on = [&](std::vector<int> J, std::vector<Rat> nu, const std::string& tag) {
            HModule u = one_dim_parabolic(ctx.rd(), J, std::vector<int>(J.size(), -1),
                                          std::vector<Rat>(n, Rat(0)));
            add(make_induced_entry(ctx, key + tag, J, u, nu));
        };
        if (n == 2) {
            st_on({0}, std::vector<Rat>(n, Rat(0)), ".X1St");
            st_on({1}, std::vector<Rat>(n, Rat(0)), ".X2St");
            st_on({0}, {Rat(0), Rat(2)}, ".X1St.nu2");
            HModule u = one_dim_parabolic(ctx.rd(), {0}, {1}, std::vector<Rat>(n, Rat(0)));
            add(make_induced_entry(ctx, key + ".X1triv", {0}, u, std::vector<Rat>(n, Rat(0))));
            add(make_pool_entry(ctx, key + ".ps0", principal_series(ctx, std::vector<Rat>(n, Rat(0))), true));
            add(make_pool_entry(ctx, key + ".psreg", principal_series(ctx, {Rat(1), Rat(3)}), true));
        } else {
            st_on({0, 1}, std::vector<Rat>(n, Rat(0)), ".X12St");
            st_on({1, 2}, std::vector<Rat>(n, Rat(0)), ".X23St");
            st_on({0, 2}, std::vector<Rat>(n, Rat(0)), ".X13St");
            st_on({1}, std::vector<Rat>(n, Rat(0)), ".X2St");
            add(make_pool_entry(ctx, key + ".ps0", principal_series(ctx, std::vector<Rat>(n, Rat(0))), true));
        }
        return pool_idx;
    };

    Lcg rng(20250808);
    int pair_count = 0;
    for (int fn : {2, 3}) {
        auto pool = build_pool('A', fn);
        WeylContext& ctx = r.ctx('A', fn);
        ClassDomain dord = full_domain(ctx, false);
        ClassDomain dtw = full_domain(ctx, true);
        for (int p = 0; p < 10; ++p, ++pair_count) {
            const auto& a = reg.mods[pool[rng.pick(static_cast<int>(pool.size()))]].second;
            const auto& b = reg.mods[pool[rng.pick(static_cast<int>(pool.size()))]].second;
            std::string id = "c4." + std::to_string(pair_count) + "." + a.key + "|" + b.key;
            long ep_matrix = ep_pair(ctx, a.mod, b.mod, opts);
            ClassFn fa = trace_class_function(dord, a.mod);
            ClassFn fb = trace_class_function(dord, b.mod);
            Rat ep_char = elliptic_pairing(fa, fb);
            r.check_eq(id + ".ep", rat_str(ep_char), std::to_string(ep_matrix));
            if (a.theta && b.theta) {
                Rat ept_matrix = ep_theta_pair(ctx, a.mod, b.mod, *a.theta, *b.theta, opts);
                ClassFn ta = twisted_trace_class_function(dtw, a.mod, *a.theta);
                ClassFn tb = twisted_trace_class_function(dtw, b.mod, *b.theta);
                Rat ept_char = twisted_elliptic_pairing(ta, tb);
                r.check_eq(id + ".ep_theta", rat_str(ept_char), rat_str(ept_matrix));
            }
        }
    }
    r.time_criterion("c4", elapsed(t0), 300.0);
}

// ---------------------------------------------------------------- criterion 5
void criterion_class_counts(Runner& r) {
    auto t0 = Clock::now();
    struct Row {
        char f;
        int n;
        long expect;
    };
    // A_n counts match distinct-part partitions of n+1 (recorded below), the
    // D_n count matches odd-number-of-parts partitions of n, E_6 is 9.
    std::vector<Row> rows = {{'A', 2, partition_count_distinct(3)},
                             {'A', 3, partition_count_distinct(4)},
                             {'A', 4, partition_count_distinct(5)},
                             {'A', 5, partition_count_distinct(6)},
                             {'D', 3, partition_count_odd_number_of_parts(3)},
                             {'D', 5, partition_count_odd_number_of_parts(5)},
                             {'E', 6, 9}};
    for (auto row : rows) {
        WeylContext& ctx = r.ctx(row.f, row.n);
        long count = ell_space_dimension(ctx, true);
        std::string key = std::string(1, row.f) + std::to_string(row.n);
        r.check_eq("c5." + key + ".twisted-elliptic", row.expect, count);
        if (row.f == 'A') {
            std::ostringstream os;
            os << "c5 " << key << ": enumerated " << count << "; distinct-part partitions of n="
               << row.n << ": " << partition_count_distinct(row.n) << ", of n+1=" << row.n + 1
               << ": " << partition_count_distinct(row.n + 1) << " -> matches n+1";
            r.note(os.str());
        }
        if (row.f == 'D') {
            std::ostringstream os;
            os << "c5 " << key << ": enumerated " << count
               << "; odd-number-of-parts partitions of n=" << row.n << ": "
               << partition_count_odd_number_of_parts(row.n) << " -> matches n";
            r.note(os.str());
        }
    }
    r.time_criterion("c5", elapsed(t0), 120.0);
}

// ---------------------------------------------------------------- criterion 6
void criterion_radical(Runner& r) {
    auto t0 = Clock::now();
    const std::vector<std::pair<char, int>> types = {{'A', 2}, {'A', 3}, {'E', 6}};
    for (auto [f, n] : types) {
        WeylContext& ctx = r.ctx(f, n);
        std::string key = std::string(1, f) + std::to_string(n);
        ClassDomain dtw = full_domain(ctx, true);
        auto stable = theta_stable_proper_subsets(ctx.table, ctx.theta);
        bool all_vanish = true;
        RowSpace span(dtw.count());
        for (const auto& J : stable) {
            ClassDomain pj = parabolic_domain(ctx, J, true);
            for (int c = 0; c < pj.count(); ++c) {
                ClassFn delta;
                delta.dom = &pj;
                delta.v.assign(pj.count(), Rat(0));
                delta.v[c] = 1;
                ClassFn ind = induce_class_function(dtw, delta);
                if (!radical_membership(ind)) all_vanish = false;
                span.insert(ind.v);
            }
        }
        int elliptic = ell_space_dimension(ctx, true);
        r.check_true("c6." + key + ".induced-vanish-on-elliptic", all_vanish);
        r.check_eq("c6." + key + ".quotient-dimension", static_cast<long>(elliptic),
                   static_cast<long>(dtw.count() - span.rank()));
    }
    r.time_criterion("c6", elapsed(t0), 120.0);
}

// ---------------------------------------------------------------- criterion 7
void criterion_extended_formula(Runner& r, Registry& reg) {
    auto t0 = Clock::now();
    int observed = 0;
    bool all_ok = true;
    for (const auto& [key, er] : reg.exts) {
        if (!er.theta_traces) continue;
        ++observed;
        try {
            auto dims = extended_dims_from(er);
            (void)dims;
        } catch (const std::exception&) {
            all_ok = false;
            r.note("c7: non-integral extended dims in " + key);
        }
    }
    r.check_true("c7.integrality-over-" + std::to_string(observed) + "-computations", all_ok);
    r.time_criterion("c7", elapsed(t0), 0.0);
}

// ---------------------------------------------------------------- criterion 8
void criterion_structural(Runner& r, Registry& reg) {
    auto t0 = Clock::now();
    bool relations_ok = true, tilde_ok = true, weights_ok = true;
    int mod_count = 0, induced_count = 0;
    for (auto& [ctxp, p] : reg.mods) {
        const WeylContext& ctx = *ctxp;
        ++mod_count;
        if (!check_relations(p.mod).ok()) {
            relations_ok = false;
            r.note("c8: relations fail on " + p.key);
        }
        if (p.mod.full_support()) {
            // t_w vtilde = (w v)~ t_w on the generators and on two fixed words
            std::vector<int32_t> ws;
            for (int j = 0; j < ctx.rd().rank; ++j) ws.push_back(ctx.table.lmult(j, 0));
            ws.push_back(ctx.table.w0);
            ws.push_back(ctx.table.rmult(ctx.table.w0, 0));
            for (int32_t w : ws)
                for (int m = 0; m < ctx.rd().rank && tilde_ok; ++m) {
                    std::vector<Rat> e(ctx.rd().rank, Rat(0));
                    e[m] = 1;
                    Mat tw = group_action_matrix(p.mod, ctx.table, w);
                    Mat lhs = tw * tilde_matrix(p.mod, ctx.table, e);
                    std::vector<Rat> wv(ctx.rd().rank);
                    {
                        const auto& img = ctx.rd().roots[ctx.table.key_of(w, m)];
                        for (int i = 0; i < ctx.rd().rank; ++i) wv[i] = img[i];
                    }
                    Mat rhs = tilde_matrix(p.mod, ctx.table, wv) * tw;
                    if (!(lhs == rhs)) {
                        tilde_ok = false;
                        r.note("c8: tilde identity fails on " + p.key);
                    }
                }
        }
        if (p.induced) {
            ++induced_count;
            // weight multiset equals {w(gamma_U + nu) : w in W^J}
            WeightMultiset got = weights(p.mod);
            WeightMultiset expect;
            WeightMultiset wu = weights(p.u);
            auto reps = min_coset_reps(ctx.table, p.J);
            std::map<std::vector<Rat>, int> acc;
            for (const auto& [gu, mu] : wu.entries) {
                std::vector<Rat> total(gu.size());
                for (size_t i = 0; i < gu.size(); ++i) total[i] = gu[i] + p.nu[i];
                for (int32_t x : reps) acc[ctx.table.dual_apply(x, total)] += mu;
            }
            for (auto& [g, m] : acc) expect.entries.emplace_back(g, m);
            if (!got.same_as(expect)) {
                weights_ok = false;
                r.note("c8: weight multiset mismatch on " + p.key);
            }
        }
    }
    r.check_true("c8.relations-over-" + std::to_string(mod_count) + "-modules", relations_ok);
    r.check_true("c8.tilde-commutation", tilde_ok);
    r.check_true("c8.induced-weights-over-" + std::to_string(induced_count) + "-modules", weights_ok);
    // d^2 = 0, dtilde = d and theta* commutation are hard assertions inside
    // the pipeline; drive them once more explicitly here
    bool koszul_ok = true;
    try {
        WeylContext& ctx = r.ctx('A', 2);
        HModule ps = principal_series(ctx, {Rat(0), Rat(0)});
        ThetaSearch ts = find_theta_structure(ctx, ps);
        if (!ts.found()) throw std::logic_error("theta structure missing");
        ExtOptions o;
        o.ex = r.ex;
        o.verify_tilde = true;
        theta_star_on_ext(ctx, ps, ps, ts.theta, ts.theta, o);
        HModule st = steinberg_module(ctx.rd());
        ExtOptions o2 = o;
        ext_dims(ctx, st, ps, o2);
    } catch (const std::exception& e) {
        koszul_ok = false;
        r.note(std::string("c8: ") + e.what());
    }
    r.check_true("c8.koszul-identities-via-pipeline", koszul_ok);
    r.time_criterion("c8", elapsed(t0), 0.0);
}

// ---------------------------------------------------------------- criterion 9
void criterion_homological_dimension(Runner& r, Registry& reg) {
    auto t0 = Clock::now();
    ExtOptions opts;
    opts.ex = r.ex;
    for (int n = 1; n <= 2; ++n) {
        WeylContext& ctx = r.ctx('A', n);
        std::vector<Rat> gamma(n);
        for (int i = 0; i < n; ++i) gamma[i] = 2 * i + 1;  // regular: trivial stabilizer
        HModule ps = principal_series(ctx, gamma);
        ExtResult er = ext_dims(ctx, ps, ps, opts);
        std::vector<long> want(n + 1);
        for (int i = 0; i <= n; ++i) want[i] = binomial(n, i);
        r.check_eq("c9.A" + std::to_string(n) + ".regular-ps-dims", vec_str(want), vec_str(er.dims));
        // the resolution stops at wedge^n V, so degrees above n carry nothing
        r.check_eq("c9.A" + std::to_string(n) + ".complex-length", static_cast<long>(n + 1),
                   static_cast<long>(er.dims.size()));
        reg.add(ctx, make_pool_entry(ctx, "A" + std::to_string(n) + ".psreg9", std::move(ps), false));
    }
    r.time_criterion("c9", elapsed(t0), 60.0);
}

// --------------------------------------------------------------- criterion 10
void criterion_semipositivity(Runner& r, Registry& reg) {
    auto t0 = Clock::now();
    bool nonneg = true, radical_implication = true;
    int observed = 0;
    for (auto& [ctxp, p] : reg.mods) {
        if (!p.theta) continue;
        const WeylContext& ctx = *ctxp;
        ++observed;
        ClassDomain dtw = full_domain(ctx, true);
        ClassDomain dord = full_domain(ctx, false);
        ClassFn tw = twisted_trace_class_function(dtw, p.mod, *p.theta);
        Rat ept = twisted_elliptic_pairing(tw, tw);
        if (sgn(ept) < 0) {
            nonneg = false;
            r.note("c10: negative ep_theta self-pairing on " + p.key);
        }
        if (sgn(ept) == 0) {
            ClassFn ch = trace_class_function(dord, p.mod);
            if (sgn(elliptic_pairing(ch, ch)) != 0) {
                radical_implication = false;
                r.note("c10: ep_theta = 0 but ep != 0 on " + p.key);
            }
        }
    }
    r.check_true("c10.semi-positive-over-" + std::to_string(observed) + "-modules", nonneg);
    r.check_true("c10.ep_theta-zero-implies-ep-zero", radical_implication);
    r.time_criterion("c10", elapsed(t0), 0.0);
}

}  // namespace

bool SuiteReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

SuiteReport run_suite_paper(Exec ex) {
    Runner r("paper", ex);
    Registry reg;
    criterion_steinberg(r, reg);
    criterion_principal_series(r, reg);
    criterion_rigid(r, reg);
    criterion_randomized_pairs(r, reg);
    criterion_class_counts(r);
    criterion_radical(r);
    criterion_extended_formula(r, reg);
    criterion_structural(r, reg);
    criterion_homological_dimension(r, reg);
    criterion_semipositivity(r, reg);
    return r.rep;
}

SuiteReport run_suite_core(Exec ex) {
    Runner r("core", ex);
    ExtOptions opts;
    opts.ex = ex;
    opts.verify_tilde = true;

    {
        WeylContext& ctx = r.ctx('A', 2);
        r.check_eq("core.A2.roots", 6L, static_cast<long>(ctx.rd().roots.size()));
        r.check_true("core.A2.theta-squared", (ctx.theta.matrix * ctx.theta.matrix).is_identity());
        HModule st = steinberg_module(ctx.rd());
        HModule ps = principal_series(ctx, {Rat(0), Rat(0)});
        r.check_true("core.A2.st-relations", check_relations(st).ok());
        r.check_true("core.A2.ps-relations", check_relations(ps).ok());
        ThetaSearch ts = find_theta_structure(ctx, ps);
        r.check_true("core.A2.ps-theta", ts.found());
        if (ts.found()) {
            // d*d* = 0, dtilde = d, theta* commutation all hard-checked inside
            ExtResult er = theta_star_on_ext(ctx, ps, ps, ts.theta, ts.theta, opts);
            r.check_eq("core.A2.ps-ext", std::string("(1,2,1)"), vec_str(er.dims));
            auto extd = extended_dims_from(er);
            r.check_eq("core.A2.ps-extended", std::string("(1,1,0)"), vec_str(extd));
            Rat ept = *er.ep_theta;
            r.check_true("core.A2.ps-semipositive", sgn(ept) >= 0);
        }
        // twisted classes against the w -> w w0 bijection
        const auto& tc = ctx.tclasses;
        std::vector<int64_t> tsizes(tc.size.begin(), tc.size.end());
        std::vector<int64_t> csizes(ctx.classes.size.begin(), ctx.classes.size.end());
        std::sort(tsizes.begin(), tsizes.end());
        std::sort(csizes.begin(), csizes.end());
        r.check_true("core.A2.twisted-class-bijection", tsizes == csizes);
    }
    {
        WeylContext& ctx = r.ctx('A', 3);
        bool non_elliptic = true;
        for (const auto& J : theta_stable_proper_subsets(ctx.table, ctx.theta))
            for (int32_t w : parabolic_elements(ctx.table, J))
                if (sgn(det_ellipticity(ctx.table, w, true, &ctx.theta)) != 0) non_elliptic = false;
        r.check_true("core.A3.parabolic-non-elliptic", non_elliptic);
    }
    {
        WeylContext& ctx = r.ctx('B', 2);
        r.check_true("core.B2.theta-identity", ctx.theta.matrix.is_identity());
        HModule st = steinberg_module(ctx.rd());
        ExtResult er = ext_dims(ctx, st, st, opts);
        r.check_eq("core.B2.st-ext", std::string("(1,0,0)"), vec_str(er.dims));
    }
    {
        // module file round-trip on canonical form
        WeylContext& ctx = r.ctx('A', 2);
        HModule x = induced_module(
            ctx, {0}, one_dim_parabolic(ctx.rd(), {0}, {-1}, {Rat(0), Rat(0)}), {Rat(0), Rat(0)});
        std::string text = module_to_json(x);
        HModule y = module_of_json(text, ctx.rd());
        r.check_true("core.json-round-trip",
                     x.dim == y.dim && x.support == y.support && x.t == y.t && x.v == y.v);
    }
    return r.rep;
}

SuiteReport run_suite_conjecture(Exec ex) {
    Runner r("conjecture", ex);
    r.rep.informational = true;
    for (int n = 2; n <= 4; ++n) {
        WeylContext& ctx = r.ctx('A', n);
        std::string key = "A" + std::to_string(n);
        ClassDomain dtw = full_domain(ctx, true);
        int elliptic = ell_space_dimension(ctx, true);
        int radical_dim = dtw.count() - elliptic;

        // twisted characters of parabolically induced modules with a theta
        // structure: all should land in the radical, and we report how much
        // of the radical they span
        RowSpace span(dtw.count());
        int landed = 0, total = 0;
        for (const auto& J : theta_stable_proper_subsets(ctx.table, ctx.theta)) {
            std::vector<std::vector<int>> sign_choices;
            sign_choices.push_back(std::vector<int>(J.size(), -1));
            if (!J.empty()) sign_choices.push_back(std::vector<int>(J.size(), 1));
            for (const auto& signs : sign_choices) {
                HModule u = one_dim_parabolic(ctx.rd(), J, signs, std::vector<Rat>(n, Rat(0)));
                HModule x = induced_module(ctx, J, u, std::vector<Rat>(n, Rat(0)));
                Mat theta;
                if (J.empty()) {
                    theta = principal_series_theta_structure(ctx, x, std::vector<Rat>(n, Rat(0))).theta_mat;
                } else {
                    ThetaSearch ts = find_theta_structure(ctx, x);
                    if (!ts.found()) continue;
                    theta = ts.theta;
                }
                ++total;
                ClassFn tw = twisted_trace_class_function(dtw, x, theta);
                if (radical_membership(tw)) ++landed;
                span.insert(tw.v);
            }
        }
        std::ostringstream os;
        os << key << ": induced twisted characters in radical: " << landed << "/" << total
           << "; span dimension " << span.rank() << " of radical dimension " << radical_dim
           << (span.rank() == radical_dim
                   ? " (equality observed)"
                   : " (containment observed; the builtin factor modules do not exhaust the"
                     " induced representation ring)");
        r.note(os.str());
    }
    return r.rep;
}

SuiteReport run_suite(const std::string& name, Exec ex) {
    if (name == "core") return run_suite_core(ex);
    if (name == "paper") return run_suite_paper(ex);
    if (name == "conjecture") return run_suite_conjecture(ex);
    throw input_error("unknown suite '" + name + "' (core|paper|conjecture)");
}

void print_report(const SuiteReport& r, std::ostream& os, bool json_format) {
    if (json_format) {
        nlohmann::json j;
        j["suite"] = r.suite;
        j["pass"] = r.pass();
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"id", c.id}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
        j["checks"] = std::move(checks);
        j["notes"] = r.notes;
        os << j.dump(2) << "\n";
        return;
    }
    os << "suite " << r.suite << "\n";
    for (const auto& c : r.checks)
        os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.id << ": expected " << c.expected
           << ", got " << c.actual << "\n";
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
    os << (r.pass() ? "PASS" : "FAIL") << " (" << r.checks.size() << " checks)\n";
}

void print_criterion_summary(const SuiteReport& r, std::ostream& os, bool include_times) {
    std::map<std::string, std::pair<int, int>> agg;  // prefix -> (pass, total)
    std::vector<std::string> order;
    for (const auto& c : r.checks) {
        std::string prefix = c.id.substr(0, c.id.find('.'));
        if (!agg.count(prefix)) order.push_back(prefix);
        auto& [p, t] = agg[prefix];
        p += c.pass ? 1 : 0;
        ++t;
    }
    std::map<std::string, double> times(r.timing.begin(), r.timing.end());
    for (const auto& prefix : order) {
        auto [p, t] = agg[prefix];
        os << (p == t ? "[PASS] " : "[FAIL] ") << prefix << " (" << p << "/" << t << " checks";
        if (include_times && times.count(prefix)) {
            std::ostringstream ts;
            ts.precision(2);
            ts << std::fixed << times[prefix];
            os << ", " << ts.str() << "s";
        }
        os << ")\n";
    }
}

}  // namespace ghecke
