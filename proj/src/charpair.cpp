#include "ghecke/charpair.hpp"

#include <algorithm>
#include <functional>

namespace ghecke {

namespace {

// orbit partition of the element list under the given conjugation move
void build_classes(const WeylGroupTable& wt, const std::vector<int32_t>& elements,
                   const std::vector<int>& J,
                   const std::function<int32_t(int, int32_t)>& conj_by_gen, ClassDomain& dom) {
    dom.class_of.assign(wt.order, -1);
    std::vector<char> member(wt.order, 0);
    for (int32_t w : elements) member[w] = 1;
    std::vector<char> done(wt.order, 0);
    for (int32_t seed : elements) {
        if (done[seed]) continue;
        int cid = dom.count();
        std::vector<int32_t> orbit{seed};
        done[seed] = 1;
        for (size_t q = 0; q < orbit.size(); ++q)
            for (int j : J) {
                int32_t v = conj_by_gen(j, orbit[q]);
                if (!member[v]) throw std::logic_error("conjugation left the subgroup");
                if (!done[v]) {
                    done[v] = 1;
                    orbit.push_back(v);
                }
            }
        int32_t best = orbit[0];
        for (int32_t v : orbit) {
            if (wt.len[v] != wt.len[best] ? wt.len[v] < wt.len[best] : wt.word(v) < wt.word(best))
                best = v;
        }
        for (int32_t v : orbit) dom.class_of[v] = cid;
        dom.rep.push_back(best);
        dom.size.push_back(static_cast<int64_t>(orbit.size()));
    }
}

}  // namespace

ClassDomain full_domain(const WeylContext& ctx, bool twisted) {
    ClassDomain dom;
    dom.ctx = &ctx;
    dom.twisted = twisted;
    dom.J.resize(ctx.rd().rank);
    for (int i = 0; i < ctx.rd().rank; ++i) dom.J[i] = i;
    dom.elements.resize(ctx.table.order);
    for (int32_t w = 0; w < ctx.table.order; ++w) dom.elements[w] = w;
    const ConjClassSet& cs = twisted ? ctx.tclasses : ctx.classes;
    dom.rep = cs.rep;
    dom.size = cs.size;
    dom.class_of = cs.class_of;
    dom.cdet = twisted ? ctx.tclass_det : ctx.class_det;
    return dom;
}

ClassDomain parabolic_domain(const WeylContext& ctx, const std::vector<int>& J_in, bool twisted) {
    std::vector<int> J = J_in;
    std::sort(J.begin(), J.end());
    if (twisted) {
        for (int j : J)
            if (!std::binary_search(J.begin(), J.end(), ctx.theta.perm[j]))
                throw input_error("twisted parabolic domain needs a theta-stable J");
    }
    ClassDomain dom;
    dom.ctx = &ctx;
    dom.twisted = twisted;
    dom.J = J;
    dom.elements = parabolic_elements(ctx.table, J);
    const WeylGroupTable& wt = ctx.table;
    if (!twisted) {
        build_classes(wt, dom.elements, J,
                      [&](int j, int32_t w) { return wt.rmult(wt.lmult(j, w), j); }, dom);
    } else {
        build_classes(wt, dom.elements, J,
                      [&](int j, int32_t w) { return wt.rmult(wt.lmult(j, w), ctx.theta.perm[j]); },
                      dom);
    }
    for (int c = 0; c < dom.count(); ++c)
        dom.cdet.push_back(det_ellipticity(wt, dom.rep[c], twisted, &ctx.theta));
    return dom;
}

ClassFn trace_class_function(const ClassDomain& dom, const HModule& x) {
    if (dom.twisted) throw std::logic_error("trace_class_function is for ordinary domains");
    for (int j : dom.J)
        if (!x.has_t(j)) throw input_error("module lacks t-generator s" + std::to_string(j + 1));
    RelationReport rr = check_relations(x);
    if (!rr.ok()) throw input_error("module fails relations: " + rr.str());
    ClassFn f;
    f.dom = &dom;
    for (int c = 0; c < dom.count(); ++c)
        f.v.push_back(group_action_matrix(x, dom.ctx->table, dom.rep[c]).trace());
    return f;
}

ClassFn twisted_trace_class_function(const ClassDomain& dom, const HModule& x, const Mat& theta_mat) {
    if (!dom.twisted) throw std::logic_error("twisted_trace_class_function needs a twisted domain");
    for (int j : dom.J)
        if (!x.has_t(j)) throw input_error("module lacks t-generator s" + std::to_string(j + 1));
    ClassFn f;
    f.dom = &dom;
    for (int c = 0; c < dom.count(); ++c)
        f.v.push_back((group_action_matrix(x, dom.ctx->table, dom.rep[c]) * theta_mat).trace());
    return f;
}

ClassFn exterior_character(const ClassDomain& dom, int i) {
    if (dom.twisted) throw std::logic_error("exterior_character is for ordinary domains");
    const WeylGroupTable& wt = dom.ctx->table;
    int n = wt.rank;
    if (i < 0 || i > n) throw input_error("exterior degree out of range");
    ClassFn f;
    f.dom = &dom;
    for (int c = 0; c < dom.count(); ++c) {
        std::vector<Rat> poly = char_poly(wt.matrix_of(dom.rep[c]));
        // det(xI - M) = sum_i (-1)^i e_i x^{n-i}
        Rat e = poly[n - i];
        if (i % 2) e = -e;
        f.v.push_back(e);
    }
    return f;
}

namespace {

void require_same(const ClassFn& f, const ClassFn& g) {
    if (f.dom != g.dom) throw input_error("class functions on different domains");
}

}  // namespace

Rat class_sum(const ClassFn& f, const ClassFn& g) {
    require_same(f, g);
    Rat acc = 0;
    for (int c = 0; c < f.dom->count(); ++c) acc += Rat(f.dom->size[c]) * f.v[c] * g.v[c];
    return acc;
}

Rat elliptic_pairing(const ClassFn& f, const ClassFn& g) {
    require_same(f, g);
    if (f.dom->twisted || !f.dom->is_full()) throw input_error("elliptic pairing needs the full untwisted domain");
    Rat acc = 0;
    for (int c = 0; c < f.dom->count(); ++c)
        acc += Rat(f.dom->size[c]) * f.v[c] * g.v[c] * f.dom->cdet[c];
    return acc / Rat(f.dom->group_order());
}

Rat twisted_elliptic_pairing(const ClassFn& f, const ClassFn& g) {
    require_same(f, g);
    if (!f.dom->twisted || !f.dom->is_full()) throw input_error("twisted elliptic pairing needs the full twisted domain");
    Rat acc = 0;
    for (int c = 0; c < f.dom->count(); ++c)
        acc += Rat(f.dom->size[c]) * f.v[c] * g.v[c] * f.dom->cdet[c];
    return acc / Rat(f.dom->group_order());
}

ClassFn induce_class_function(const ClassDomain& target, const ClassFn& f) {
    const ClassDomain& src = *f.dom;
    if (target.ctx != src.ctx || target.twisted != src.twisted)
        throw input_error("induction domain mismatch");
    // Ind f(C) = |W|/(|W_J| |C|) sum_{c subset C} |c| f(c)
    ClassFn out;
    out.dom = &target;
    out.v.assign(target.count(), Rat(0));
    for (int c = 0; c < src.count(); ++c) {
        int C = target.class_of[src.rep[c]];
        if (C < 0) throw std::logic_error("fusion failed");
        out.v[C] += Rat(src.size[c]) * f.v[c];
    }
    Rat scale = Rat(target.group_order()) / Rat(src.group_order());
    for (int C = 0; C < target.count(); ++C) out.v[C] *= scale / Rat(target.size[C]);
    return out;
}

ClassFn restrict_class_function(const ClassDomain& target, const ClassFn& f) {
    const ClassDomain& src = *f.dom;
    if (target.ctx != src.ctx || target.twisted != src.twisted || !src.is_full())
        throw input_error("restriction domain mismatch");
    ClassFn out;
    out.dom = &target;
    for (int c = 0; c < target.count(); ++c) {
        int C = src.class_of[target.rep[c]];
        out.v.push_back(f.v[C]);
    }
    return out;
}

bool radical_membership(const ClassFn& f) {
    if (!f.dom->twisted || !f.dom->is_full())
        throw input_error("radical membership is for full twisted class functions");
    for (int c = 0; c < f.dom->count(); ++c)
        if (sgn(f.dom->cdet[c]) != 0 && sgn(f.v[c]) != 0) return false;
    return true;
}

int ell_space_dimension(const WeylContext& ctx, bool twisted) {
    // rank of the Gram form in the delta basis: the form is diagonal there,
    // with weight (size/|W|) det, so the rank is the elliptic class count
    const ConjClassSet& cs = twisted ? ctx.tclasses : ctx.classes;
    const std::vector<Rat>& dets = twisted ? ctx.tclass_det : ctx.class_det;
    int count = 0;
    for (int c = 0; c < cs.count(); ++c)
        if (sgn(dets[c]) != 0) ++count;
    return count;
}

long partition_count_distinct(int n) {
    // dp[s] = number of subsets of {1..n} summing to s
    std::vector<long> dp(n + 1, 0);
    dp[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int s = n; s >= part; --s) dp[s] += dp[s - part];
    return dp[n];
}

long partition_count_odd_number_of_parts(int n) {
    // dp[s][parity of the number of parts], parts weakly decreasing
    std::vector<std::vector<long>> dp(n + 1, std::vector<long>(2, 0));
    dp[0][0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int s = part; s <= n; ++s)
            for (int par = 0; par < 2; ++par) dp[s][par ^ 1] += dp[s - part][par];
    return dp[n][1];
}

long partition_oracle(char family, int n) {
    if (family == 'A') return partition_count_distinct(n);
    if (family == 'D') {
        if (n % 2 == 0) throw input_error("D-type oracle needs odd n");
        return partition_count_odd_number_of_parts(n);
    }
    throw input_error("partition oracle supports families A and D only");
}

FrobeniusChain frobenius_trick_check(const WeylContext& ctx, const std::vector<int>& J,
                                     const ClassFn& f_even, const ClassFn& f_odd,
                                     const ClassFn& g_even, const ClassFn& g_odd) {
    const ClassDomain& w_even = *f_even.dom;
    const ClassDomain& w_odd = *f_odd.dom;
    const ClassDomain& j_even = *g_even.dom;
    const ClassDomain& j_odd = *g_odd.dom;
    if (!w_even.is_full() || !w_odd.is_full() || w_even.twisted || !w_odd.twisted)
        throw input_error("F must live on the full group (even, odd) domains");
    if (j_even.J != j_odd.J || j_even.twisted || !j_odd.twisted)
        throw input_error("G must live on the parabolic (even, odd) domains");

    Rat ord_w(ctx.table.order), ord_j(j_even.group_order());

    ClassFn ind_even = induce_class_function(w_even, g_even);
    ClassFn ind_odd = induce_class_function(w_odd, g_odd);
    ClassFn res_even = restrict_class_function(j_even, f_even);
    ClassFn res_odd = restrict_class_function(j_odd, f_odd);

    FrobeniusChain out;
    out.q_direct = class_sum(f_odd, ind_odd);
    // 2|W| <F, Ind G>_G - |W| <F_0, Ind G_0>_W
    Rat inner_g = (class_sum(f_even, ind_even) + class_sum(f_odd, ind_odd)) / (2 * ord_w);
    Rat inner_w = class_sum(f_even, ind_even) / ord_w;
    out.q_induction = 2 * ord_w * inner_g - ord_w * inner_w;
    // 2|W| <Res F, G>_{G_J} - |W| <Res F_0, G_0>_{W_J}
    Rat inner_gj = (class_sum(res_even, g_even) + class_sum(res_odd, g_odd)) / (2 * ord_j);
    Rat inner_wj = class_sum(res_even, g_even) / ord_j;
    out.q_reciprocity = 2 * ord_w * inner_gj - ord_w * inner_wj;
    // (|W|/|W_J|) sum_{w in W_J} F_1(w theta) G_1(w theta)
    out.q_parabolic = (ord_w / ord_j) * class_sum(res_odd, g_odd);
    (void)J;
    return out;
}

}  // namespace ghecke
