#include "ghecke/weyl.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace ghecke {

namespace {

struct KeyHash {
    size_t operator()(const std::vector<int32_t>& v) const {
        size_t h = v.size();
        for (int32_t x : v) h = hash_combine(h, std::hash<int32_t>()(x));
        return h;
    }
};

}  // namespace

std::vector<int> WeylGroupTable::word(int32_t w) const {
    std::vector<int> out;
    while (w != 0) {
        out.push_back(pgen[w]);
        w = parent[w];
    }
    return out;  // w = s_{out[0]} s_{out[1]} ... by the left-mult discovery
}

std::string WeylGroupTable::word_str(int32_t w) const {
    if (w == 0) return "e";
    std::string s;
    for (int j : word(w)) {
        if (!s.empty()) s += " ";
        s += "s" + std::to_string(j + 1);
    }
    return s;
}

int32_t WeylGroupTable::from_word(const std::vector<int>& wrd) const {
    int32_t w = 0;
    for (int j : wrd) w = rmult(w, j);
    return w;
}

int32_t WeylGroupTable::mult(int32_t a, int32_t b) const {
    for (int j : word(b)) a = rmult(a, j);
    return a;
}

int32_t WeylGroupTable::root_image(int32_t w, int32_t signed_root) const {
    // w = s_{j1} ... s_{jl}; apply generators right-to-left
    std::vector<int> wrd = word(w);
    int32_t r = signed_root;
    for (auto it = wrd.rbegin(); it != wrd.rend(); ++it) r = sperm[static_cast<size_t>(*it) * nsigned + r];
    return r;
}

Mat WeylGroupTable::matrix_of(int32_t w) const {
    // columns are the images of the simple roots
    Mat m(rank, rank);
    for (int i = 0; i < rank; ++i) {
        int32_t r = key_of(w, i);
        for (int a = 0; a < rank; ++a) m(a, i) = datum->roots[r][a];
    }
    return m;
}

std::vector<Rat> WeylGroupTable::dual_apply(int32_t w, const std::vector<Rat>& gamma) const {
    // (w gamma)_j = <w^{-1} alpha_j, gamma>
    int32_t wi = inv[w];
    std::vector<Rat> out(rank);
    for (int j = 0; j < rank; ++j) {
        const auto& r = datum->roots[key_of(wi, j)];
        Rat acc = 0;
        for (int m = 0; m < rank; ++m)
            if (r[m] != 0) acc += Rat(r[m]) * gamma[m];
        out[j] = acc;
    }
    return out;
}

bool WeylGroupTable::keeps_positive(int32_t w, const std::vector<int>& J) const {
    for (int j : J)
        if (key_of(w, j) >= datum->npos) return false;
    return true;
}

WeylGroupTable enumerate_group(const RootDatum& rd, int64_t cap) {
    int64_t expected = rd.weyl_order();
    if (expected > cap)
        throw cap_error("group order " + std::to_string(expected) + " exceeds cap " +
                        std::to_string(cap));

    WeylGroupTable wt;
    wt.datum = &rd;
    wt.rank = rd.rank;
    wt.nsigned = static_cast<int>(rd.roots.size());

    // signed-root action of each generator
    wt.sperm.resize(static_cast<size_t>(wt.rank) * wt.nsigned);
    for (int j = 0; j < wt.rank; ++j)
        for (int r = 0; r < wt.nsigned; ++r) {
            long pair = 0;
            for (int m = 0; m < wt.rank; ++m) pair += rd.roots[r][m] * rat_to_long(rd.cartan(j, m));
            std::vector<int> img = rd.roots[r];
            img[j] -= static_cast<int>(pair);
            int idx = rd.root_index(img);
            if (idx < 0) throw std::logic_error("generator action left the root set");
            wt.sperm[static_cast<size_t>(j) * wt.nsigned + r] = idx;
        }

    std::unordered_map<std::vector<int32_t>, int32_t, KeyHash> index;
    std::vector<int32_t> key(wt.rank);
    for (int i = 0; i < wt.rank; ++i) {
        std::vector<int> e(wt.rank, 0);
        e[i] = 1;
        key[i] = rd.root_index(e);
    }
    index[key] = 0;
    wt.keys = key;
    wt.len.push_back(0);
    wt.parent.push_back(0);
    wt.pgen.push_back(0);

    // BFS by left multiplication; level = length
    std::vector<int32_t> frontier{0};
    wt.lmult_tab.assign(wt.rank, -1);
    while (!frontier.empty()) {
        std::vector<int32_t> next;
        for (int32_t w : frontier) {
            for (int j = 0; j < wt.rank; ++j) {
                std::vector<int32_t> k2(wt.rank);
                for (int i = 0; i < wt.rank; ++i)
                    k2[i] = wt.sperm[static_cast<size_t>(j) * wt.nsigned + wt.key_of(w, i)];
                auto it = index.find(k2);
                int32_t target;
                if (it == index.end()) {
                    target = static_cast<int32_t>(index.size());
                    if (target >= cap) throw cap_error("enumeration exceeded cap");
                    index.emplace(k2, target);
                    wt.keys.insert(wt.keys.end(), k2.begin(), k2.end());
                    wt.len.push_back(static_cast<int16_t>(wt.len[w] + 1));
                    wt.parent.push_back(w);
                    wt.pgen.push_back(static_cast<int8_t>(j));
                    wt.lmult_tab.resize(wt.keys.size(), -1);
                    next.push_back(target);
                } else {
                    target = it->second;
                }
                wt.lmult_tab[static_cast<size_t>(w) * wt.rank + j] = target;
            }
        }
        frontier = std::move(next);
    }
    wt.order = static_cast<int64_t>(index.size());
    if (wt.order != expected)
        throw std::logic_error("enumerated " + std::to_string(wt.order) + " elements, expected " +
                               std::to_string(expected));

    // inverses by walking the reduced word through the left table
    wt.inv.assign(wt.order, 0);
    for (int32_t w = 0; w < wt.order; ++w) {
        int32_t v = 0;
        int32_t cur = w;
        while (cur != 0) {
            v = wt.lmult(wt.pgen[cur], v);
            cur = wt.parent[cur];
        }
        // walking pgen from w up to the identity applies the word in product
        // order, which builds w^{-1}
        wt.inv[w] = v;
    }

    wt.rmult_tab.assign(static_cast<size_t>(wt.order) * wt.rank, 0);
    for (int32_t w = 0; w < wt.order; ++w)
        for (int j = 0; j < wt.rank; ++j)
            wt.rmult_tab[static_cast<size_t>(w) * wt.rank + j] = wt.inv[wt.lmult(j, wt.inv[w])];

    // longest element: unique length maximum
    int32_t w0 = 0;
    for (int32_t w = 0; w < wt.order; ++w)
        if (wt.len[w] > wt.len[w0]) w0 = w;
    wt.w0 = w0;

    // reflection element per positive root: build its key directly
    wt.refl.assign(rd.npos, -1);
    for (int r = 0; r < rd.npos; ++r) {
        std::vector<int32_t> k2(wt.rank);
        for (int i = 0; i < wt.rank; ++i) {
            // s_alpha(alpha_i) = alpha_i - <alpha_i, alpha^vee> alpha
            std::vector<int> img(wt.rank);
            for (int m = 0; m < wt.rank; ++m)
                img[m] = (m == i ? 1 : 0) - rd.coroots[r][i] * rd.roots[r][m];
            int idx = rd.root_index(img);
            if (idx < 0) throw std::logic_error("reflection image not a root");
            k2[i] = idx;
        }
        auto it = index.find(k2);
        if (it == index.end()) throw std::logic_error("reflection not found in group");
        wt.refl[r] = it->second;
    }
    return wt;
}

DiagramInvolution theta_involution(const WeylGroupTable& wt) {
    const RootDatum& rd = *wt.datum;
    DiagramInvolution th;
    th.perm.resize(wt.rank);
    for (int i = 0; i < wt.rank; ++i) {
        int32_t img = wt.key_of(wt.w0, i);  // w0(alpha_i), a negative root
        int32_t pos = rd.neg_root(img);
        // -w0(alpha_i) must again be simple
        int simple = -1;
        for (int m = 0; m < wt.rank; ++m) {
            std::vector<int> e(wt.rank, 0);
            e[m] = 1;
            if (rd.roots[pos] == e) simple = m;
        }
        if (simple < 0) throw std::logic_error("theta does not preserve the simple system");
        th.perm[i] = simple;
    }
    th.matrix = -wt.matrix_of(wt.w0);
    return th;
}

DiagramInvolution theta_involution(const RootDatum& rd) {
    WeylGroupTable wt = enumerate_group(rd);
    return theta_involution(wt);
}

int32_t longest_element(const WeylGroupTable& wt, const std::vector<int>& J) {
    int32_t w = 0;
    while (true) {
        int j = -1;
        for (int cand : J)
            if (wt.key_of(w, cand) < wt.datum->npos) {
                j = cand;
                break;
            }
        if (j < 0) return w;
        w = wt.rmult(w, j);
    }
}

std::vector<int32_t> min_coset_reps(const WeylGroupTable& wt, const std::vector<int>& J) {
    std::vector<int32_t> reps;
    for (int32_t w = 0; w < wt.order; ++w)
        if (wt.keeps_positive(w, J)) reps.push_back(w);
    std::sort(reps.begin(), reps.end(), [&](int32_t a, int32_t b) {
        if (wt.len[a] != wt.len[b]) return wt.len[a] < wt.len[b];
        return a < b;
    });
    return reps;
}

std::pair<int32_t, int32_t> parabolic_decompose(const WeylGroupTable& wt, int32_t w,
                                                const std::vector<int>& J) {
    int32_t x = w;
    std::vector<int> peeled;
    while (true) {
        int j = -1;
        for (int cand : J)
            if (wt.key_of(x, cand) >= wt.datum->npos) {
                j = cand;
                break;
            }
        if (j < 0) break;
        x = wt.rmult(x, j);
        peeled.push_back(j);
    }
    // w = x s_{j_m} ... s_{j_1} with j_i the i-th peeled letter
    int32_t y = 0;
    for (int j : peeled) y = wt.lmult(j, y);
    return {x, y};
}

std::vector<int32_t> parabolic_elements(const WeylGroupTable& wt, const std::vector<int>& J) {
    std::vector<int32_t> out{0};
    std::vector<char> seen(wt.order, 0);
    seen[0] = 1;
    for (size_t q = 0; q < out.size(); ++q) {
        for (int j : J) {
            int32_t v = wt.lmult(j, out[q]);
            if (!seen[v]) {
                seen[v] = 1;
                out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int32_t theta_element(const WeylGroupTable& wt, const DiagramInvolution& theta, int32_t w) {
    // theta(w) key: theta(w)(alpha_i) = theta(w(theta(alpha_i)))
    (void)theta;
    return wt.mult(wt.mult(wt.w0, w), wt.w0);
}

Rat det_ellipticity(const WeylGroupTable& wt, int32_t w, bool twisted,
                    const DiagramInvolution* theta) {
    Mat m = wt.matrix_of(w);
    if (twisted) {
        if (!theta) throw std::logic_error("twisted ellipticity needs theta");
        m = m * theta->matrix;
    }
    return det(Mat::identity(wt.rank) - m);
}

namespace {

ConjClassSet orbit_classes(const WeylGroupTable& wt,
                           const std::function<int32_t(int, int32_t)>& conj_by_gen, bool twisted) {
    ConjClassSet cs;
    cs.twisted = twisted;
    cs.class_of.assign(wt.order, -1);
    for (int32_t seed = 0; seed < wt.order; ++seed) {
        if (cs.class_of[seed] >= 0) continue;
        int cid = cs.count();
        std::vector<int32_t> orbit{seed};
        cs.class_of[seed] = cid;
        for (size_t q = 0; q < orbit.size(); ++q)
            for (int j = 0; j < wt.rank; ++j) {
                int32_t v = conj_by_gen(j, orbit[q]);
                if (cs.class_of[v] < 0) {
                    cs.class_of[v] = cid;
                    orbit.push_back(v);
                }
            }
        // canonical representative: minimal (length, word)
        int32_t best = orbit[0];
        auto wordless = [&](int32_t a, int32_t b) {
            if (wt.len[a] != wt.len[b]) return wt.len[a] < wt.len[b];
            return wt.word(a) < wt.word(b);
        };
        for (int32_t v : orbit)
            if (wordless(v, best)) best = v;
        cs.rep.push_back(best);
        cs.size.push_back(static_cast<int64_t>(orbit.size()));
    }
    return cs;
}

}  // namespace

ConjClassSet conjugacy_classes(const WeylGroupTable& wt) {
    return orbit_classes(
        wt, [&](int j, int32_t w) { return wt.rmult(wt.lmult(j, w), j); }, false);
}

ConjClassSet twisted_classes(const WeylGroupTable& wt, const DiagramInvolution& theta) {
    // orbit of w under w -> s_j w theta(s_j)
    return orbit_classes(
        wt, [&](int j, int32_t w) { return wt.rmult(wt.lmult(j, w), theta.perm[j]); }, true);
}

int elliptic_class_count(const WeylGroupTable& wt, const ConjClassSet& cs,
                         const DiagramInvolution* theta) {
    int count = 0;
    for (int c = 0; c < cs.count(); ++c)
        if (sgn(det_ellipticity(wt, cs.rep[c], cs.twisted, theta)) != 0) ++count;
    return count;
}

int64_t subset_stabilizer_count(const WeylGroupTable& wt, const std::vector<int>& J) {
    // w(J) = J as a set of roots
    std::vector<int32_t> target;
    for (int j : J) target.push_back(wt.key_of(0, j));
    std::sort(target.begin(), target.end());
    int64_t count = 0;
    std::vector<int32_t> img(J.size());
    for (int32_t w = 0; w < wt.order; ++w) {
        for (size_t i = 0; i < J.size(); ++i) img[i] = wt.key_of(w, J[i]);
        std::sort(img.begin(), img.end());
        if (img == target) ++count;
    }
    return count;
}

std::vector<std::vector<int>> rigid_subsets(const WeylGroupTable& wt) {
    std::vector<std::vector<int>> out;
    int n = wt.rank;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> J;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) J.push_back(i);
        if (subset_stabilizer_count(wt, J) == 1) out.push_back(J);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return out;
}

std::vector<std::vector<int>> theta_stable_proper_subsets(const WeylGroupTable& wt,
                                                          const DiagramInvolution& theta) {
    std::vector<std::vector<int>> out;
    int n = wt.rank;
    for (int mask = 0; mask < (1 << n) - 1; ++mask) {
        std::vector<int> J;
        bool stable = true;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) {
                J.push_back(i);
                if (!(mask & (1 << theta.perm[i]))) stable = false;
            }
        if (stable) out.push_back(J);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

int64_t ExtendedGroupTable::mult(int64_t a, int64_t b) const {
    int32_t wa = w_part(a), wb = w_part(b);
    int ea = eps_part(a), eb = eps_part(b);
    int32_t wb2 = ea ? theta_of[wb] : wb;
    return encode(base->mult(wa, wb2), ea ^ eb);
}

int64_t ExtendedGroupTable::inverse(int64_t g) const {
    int32_t w = w_part(g);
    if (eps_part(g) == 0) return encode(base->inv[w], 0);
    return encode(theta_of[base->inv[w]], 1);
}

ExtendedGroupTable build_extended_group(const WeylGroupTable& wt, const DiagramInvolution& theta) {
    ExtendedGroupTable eg;
    eg.base = &wt;
    eg.theta = theta;

    // theta as a permutation of the signed roots
    const RootDatum& rd = *wt.datum;
    std::vector<int32_t> throot(wt.nsigned);
    for (int r = 0; r < wt.nsigned; ++r) {
        std::vector<int> img(wt.rank, 0);
        for (int m = 0; m < wt.rank; ++m) img[theta.perm[m]] += rd.roots[r][m];
        int idx = rd.root_index(img);
        if (idx < 0) throw std::logic_error("theta image not a root");
        throot[r] = idx;
    }
    eg.theta_of.assign(wt.order, 0);
    std::unordered_map<std::vector<int32_t>, int32_t, KeyHash> index;
    for (int32_t w = 0; w < wt.order; ++w) {
        std::vector<int32_t> k(wt.rank);
        for (int i = 0; i < wt.rank; ++i) k[i] = wt.key_of(w, i);
        index.emplace(std::move(k), w);
    }
    for (int32_t w = 0; w < wt.order; ++w) {
        std::vector<int32_t> k(wt.rank);
        for (int i = 0; i < wt.rank; ++i) k[i] = throot[wt.key_of(w, theta.perm[i])];
        auto it = index.find(k);
        if (it == index.end()) throw std::logic_error("theta(w) not found");
        eg.theta_of[w] = it->second;
    }
    eg.coset_classes = twisted_classes(wt, theta);
    return eg;
}

WeylContext make_context(char family, int rank, const std::vector<Rat>& k_per_orbit, int64_t cap) {
    WeylContext ctx;
    ctx.datum = std::make_unique<RootDatum>(build_root_datum(family, rank, k_per_orbit));
    ctx.table = enumerate_group(*ctx.datum, cap);
    ctx.theta = theta_involution(ctx.table);
    ctx.classes = conjugacy_classes(ctx.table);
    ctx.tclasses = twisted_classes(ctx.table, ctx.theta);
    for (int c = 0; c < ctx.classes.count(); ++c)
        ctx.class_det.push_back(det_ellipticity(ctx.table, ctx.classes.rep[c], false));
    for (int c = 0; c < ctx.tclasses.count(); ++c)
        ctx.tclass_det.push_back(det_ellipticity(ctx.table, ctx.tclasses.rep[c], true, &ctx.theta));
    return ctx;
}

WeylContext make_context(char family, int rank, const Rat& k_const, int64_t cap) {
    return make_context(family, rank, std::vector<Rat>(orbit_count(family, rank), k_const), cap);
}

}  // namespace ghecke
