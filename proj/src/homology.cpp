#include "ghecke/homology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ghecke {

namespace {

int subset_index(const std::vector<std::vector<int>>& subs, const std::vector<int>& s) {
    auto it = std::lower_bound(subs.begin(), subs.end(), s);
    if (it == subs.end() || *it != s) throw std::logic_error("subset not found");
    return static_cast<int>(it - subs.begin());
}

void check_scope(const ClassDomain& scope, const HModule& x, const HModule& y) {
    if (scope.twisted) throw std::logic_error("hom scope must be an ordinary domain");
    if (x.datum != &scope.ctx->rd() || y.datum != &scope.ctx->rd())
        throw input_error("modules built over a different datum");
    for (int j : scope.J)
        if (!x.has_t(j) || !y.has_t(j)) throw input_error("module support does not cover the scope");
}

}  // namespace

long hom_w_dim_oracle(const ClassDomain& scope, const HModule& x, const HModule& y, int i) {
    ClassFn cx = trace_class_function(scope, x);
    ClassFn cy = trace_class_function(scope, y);
    ClassFn ce = exterior_character(scope, i);
    Rat acc = 0;
    for (int c = 0; c < scope.count(); ++c) acc += Rat(scope.size[c]) * cx.v[c] * ce.v[c] * cy.v[c];
    acc /= Rat(scope.group_order());
    if (!rat_is_int(acc) || sgn(acc) < 0) throw std::logic_error("non-integral hom dimension");
    return rat_to_long(acc);
}

namespace {

struct ScopeMatrices {
    std::vector<Mat> mx, my;      // module matrices per scope element
    std::vector<Mat> wedge;       // wedge^i of the V-matrix per scope element
    std::vector<int> inv_pos;     // position of w^{-1} within the scope list
};

ScopeMatrices scope_matrices(const ClassDomain& scope, const HModule& x, const HModule& y, int i) {
    const WeylGroupTable& wt = scope.ctx->table;
    ScopeMatrices sm;
    sm.mx = group_matrices_for(x, wt, scope.elements);
    sm.my = group_matrices_for(y, wt, scope.elements);
    sm.wedge.reserve(scope.elements.size());
    std::map<int32_t, int> pos;
    for (size_t p = 0; p < scope.elements.size(); ++p) pos[scope.elements[p]] = static_cast<int>(p);
    for (int32_t w : scope.elements) sm.wedge.push_back(compound(wt.matrix_of(w), i));
    for (int32_t w : scope.elements) sm.inv_pos.push_back(pos.at(wt.inv[w]));
    return sm;
}

HomBasis finish_basis(int degree, const HModule& x, const HModule& y, int blocks,
                      std::vector<Mat> elems) {
    HomBasis hb;
    hb.degree = degree;
    hb.dim_x = x.dim;
    hb.dim_y = y.dim;
    hb.blocks = blocks;
    hb.elems = std::move(elems);
    long rows = static_cast<long>(y.dim) * x.dim * blocks;
    hb.flat = Mat(static_cast<int>(rows), static_cast<int>(hb.elems.size()));
    for (size_t e = 0; e < hb.elems.size(); ++e) {
        auto v = hb.elems[e].vec();
        for (long r = 0; r < rows; ++r) hb.flat(static_cast<int>(r), static_cast<int>(e)) = v[r];
    }
    hb.solver = SpanSolver(hb.flat);
    return hb;
}

}  // namespace

HomBasis hom_w_basis(const ClassDomain& scope, const HModule& x, const HModule& y, int i,
                     Exec ex) {
    check_scope(scope, x, y);
    int n = scope.ctx->rd().rank;
    int blocks = static_cast<int>(binomial(n, i));
    long target = hom_w_dim_oracle(scope, x, y, i);
    std::vector<Mat> elems;
    if (target == 0) return finish_basis(i, x, y, blocks, std::move(elems));

    ScopeMatrices sm = scope_matrices(scope, x, y, i);
    size_t nw = scope.elements.size();
    long cols = static_cast<long>(x.dim) * blocks;
    long flat_len = static_cast<long>(y.dim) * cols;
    RowSpace space(flat_len);

    // project elementary maps E_{(a,s) -> b} through the scope average until
    // the character dimension is reached
    long ncand = cols * y.dim;
    auto project = [&](long cand) {
        long b = cand % y.dim;
        long as = cand / y.dim;
        int a = static_cast<int>(as / blocks), s = static_cast<int>(as % blocks);
        Mat acc(y.dim, static_cast<int>(cols));
        for (size_t p = 0; p < nw; ++p) {
            const Mat& my = sm.my[p];
            const Mat& mxi = sm.mx[sm.inv_pos[p]];
            const Mat& wdi = sm.wedge[sm.inv_pos[p]];
            for (int iy = 0; iy < y.dim; ++iy) {
                const Rat& left = my(iy, static_cast<int>(b));
                if (sgn(left) == 0) continue;
                for (int cx = 0; cx < x.dim; ++cx) {
                    if (sgn(mxi(a, cx)) == 0) continue;
                    Rat lm = left * mxi(a, cx);
                    for (int u = 0; u < blocks; ++u)
                        if (sgn(wdi(s, u)) != 0) acc(iy, cx * blocks + u) += lm * wdi(s, u);
                }
            }
        }
        return acc;
    };

    const long batch = ex == Exec::parallel ? 16 : 1;
    for (long start = 0; start < ncand && static_cast<long>(elems.size()) < target; start += batch) {
        long stop = std::min(ncand, start + batch);
        std::vector<Mat> cand(static_cast<size_t>(stop - start));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (ex == Exec::parallel && stop - start > 1)
#endif
        for (long cidx = start; cidx < stop; ++cidx) cand[cidx - start] = project(cidx);
        for (auto& m : cand) {
            if (static_cast<long>(elems.size()) >= target) break;
            if (space.insert(m.vec())) elems.push_back(std::move(m));
        }
    }
    if (static_cast<long>(elems.size()) != target)
        throw std::logic_error("hom basis projection fell short of the character dimension");
    return finish_basis(i, x, y, blocks, std::move(elems));
}

HomBasis hom_w_basis_nullspace(const ClassDomain& scope, const HModule& x, const HModule& y,
                               int i, Exec ex) {
    check_scope(scope, x, y);
    const WeylGroupTable& wt = scope.ctx->table;
    int n = scope.ctx->rd().rank;
    int blocks = static_cast<int>(binomial(n, i));
    long cols = static_cast<long>(x.dim) * blocks;
    long flat = static_cast<long>(y.dim) * cols;

    // stacked equivariance systems psi rho_{X otimes wedge}(s_j) - rho_Y(s_j) psi = 0
    Mat sys(static_cast<int>(scope.J.size() * flat), static_cast<int>(flat));
    int row0 = 0;
    for (int j : scope.J) {
        Mat tx = x.t_of(j);
        Mat ty = y.t_of(j);
        Mat wj = compound(wt.matrix_of(wt.lmult(j, 0)), i);
        Mat rx = tx.kron(wj);  // action on X otimes wedge^i V columns
        for (int iy = 0; iy < y.dim; ++iy)
            for (long c = 0; c < cols; ++c) {
                int row = row0 + static_cast<int>(iy * cols + c);
                // (psi rx)(iy, c) = sum_m psi(iy, m) rx(m, c)
                for (long m = 0; m < cols; ++m)
                    if (sgn(rx(static_cast<int>(m), static_cast<int>(c))) != 0)
                        sys(row, static_cast<int>(iy * cols + m)) += rx(static_cast<int>(m), static_cast<int>(c));
                // -(ty psi)(iy, c) = -sum_m ty(iy, m) psi(m, c)
                for (int m = 0; m < y.dim; ++m)
                    if (sgn(ty(iy, m)) != 0) sys(row, static_cast<int>(m * cols + c)) -= ty(iy, m);
            }
        row0 += static_cast<int>(flat);
    }
    Mat ns = nullspace(sys, ex);
    std::vector<Mat> elems;
    for (int e = 0; e < ns.cols(); ++e) {
        Mat m(y.dim, static_cast<int>(cols));
        for (int iy = 0; iy < y.dim; ++iy)
            for (long c = 0; c < cols; ++c) m(iy, static_cast<int>(c)) = ns(static_cast<int>(iy * cols + c), e);
        elems.push_back(std::move(m));
    }
    return finish_basis(i, x, y, blocks, std::move(elems));
}

namespace {

// d* psi for one basis element, with the given v-action matrices.
Mat apply_d_star(const std::vector<Mat>& vx, const std::vector<Mat>& vy, const Mat& psi,
                 int dim_x, int n, int i) {
    auto subs_lo = lex_subsets(n, i);
    auto subs_hi = lex_subsets(n, i + 1);
    int blo = static_cast<int>(subs_lo.size()), bhi = static_cast<int>(subs_hi.size());
    Mat out(psi.rows(), dim_x * bhi);
    for (int ti = 0; ti < bhi; ++ti) {
        const auto& T = subs_hi[ti];
        for (size_t p = 0; p < T.size(); ++p) {
            int vj = T[p];
            std::vector<int> rest;
            for (size_t q = 0; q < T.size(); ++q)
                if (q != p) rest.push_back(T[q]);
            int si = subset_index(subs_lo, rest);
            int sign = p % 2 == 0 ? 1 : -1;
            for (int a = 0; a < dim_x; ++a) {
                int col_out = a * bhi + ti;
                // + sign * v_y . psi(x otimes rest)
                for (int iy = 0; iy < psi.rows(); ++iy) {
                    Rat acc = 0;
                    for (int m = 0; m < psi.rows(); ++m)
                        if (sgn(vy[vj](iy, m)) != 0) acc += vy[vj](iy, m) * psi(m, a * blo + si);
                    if (sgn(acc) != 0) out(iy, col_out) += (sign > 0 ? acc : -acc);
                }
                // - sign * psi(v_x x otimes rest)
                for (int b = 0; b < dim_x; ++b) {
                    const Rat& coef = vx[vj](b, a);
                    if (sgn(coef) == 0) continue;
                    for (int iy = 0; iy < psi.rows(); ++iy) {
                        const Rat& val = psi(iy, b * blo + si);
                        if (sgn(val) == 0) continue;
                        Rat term = coef * val;
                        out(iy, col_out) -= sign > 0 ? term : -term;
                    }
                }
            }
        }
    }
    return out;
}

Mat d_star_in_bases(const std::vector<Mat>& vx, const std::vector<Mat>& vy, const HomBasis& from,
                    const HomBasis& to, int n) {
    Mat d(to.dim(), from.dim());
    for (int e = 0; e < from.dim(); ++e) {
        Mat img = apply_d_star(vx, vy, from.elems[e], from.dim_x, n, from.degree);
        auto coords = to.solver.coords(img.vec());
        if (!coords) throw std::logic_error("differential image left the equivariant span");
        for (int r = 0; r < to.dim(); ++r) d(r, e) = (*coords)[r];
    }
    return d;
}

}  // namespace

Mat koszul_d_star(const HModule& x, const HModule& y, const HomBasis& from, const HomBasis& to) {
    return d_star_in_bases(x.v, y.v, from, to, x.datum->rank);
}

Mat koszul_d_star_tilde(const WeylContext& ctx, const HModule& x, const HModule& y,
                        const HomBasis& from, const HomBasis& to) {
    int n = ctx.rd().rank;
    std::vector<Mat> vx, vy;
    for (int m = 0; m < n; ++m) {
        std::vector<Rat> e(n, Rat(0));
        e[m] = 1;
        vx.push_back(tilde_matrix(x, ctx.table, e));
        vy.push_back(tilde_matrix(y, ctx.table, e));
    }
    return d_star_in_bases(vx, vy, from, to, n);
}

Mat theta_star_matrix(const WeylContext& ctx, const HModule& x, const HModule& y,
                      const HomBasis& basis, const Mat& theta_x, const Mat& theta_y) {
    (void)x;
    (void)y;
    Mat q = theta_x.kron(compound(ctx.theta.matrix, basis.degree));
    Mat t(basis.dim(), basis.dim());
    for (int e = 0; e < basis.dim(); ++e) {
        Mat img = theta_y * basis.elems[e] * q;
        auto coords = basis.solver.coords(img.vec());
        if (!coords) throw std::logic_error("theta* image left the equivariant span");
        for (int r = 0; r < basis.dim(); ++r) t(r, e) = (*coords)[r];
    }
    return t;
}

namespace {

Rat trace_on_subspace(const Mat& op, const Mat& basis) {
    if (basis.cols() == 0) return 0;
    SpanSolver ss(basis);
    Rat tr = 0;
    Mat im = op * basis;
    for (int c = 0; c < basis.cols(); ++c) {
        auto coords = ss.coords(im.col(c));
        if (!coords) throw std::logic_error("subspace not invariant under the operator");
        tr += (*coords)[c];
    }
    return tr;
}

struct Pipeline {
    std::vector<HomBasis> hom;
    std::vector<Mat> d;      // d[i]: hom[i] -> hom[i+1]; d[n] empty
    std::vector<Mat> tstar;  // optional
    ExtResult result;
};

Pipeline run_pipeline(const WeylContext& ctx, const HModule& x, const HModule& y,
                      const Mat* theta_x, const Mat* theta_y, const ExtOptions& opts) {
    if (x.support != y.support) throw input_error("ext: modules over different parabolic scopes");
    ClassDomain scope = parabolic_domain(ctx, x.support, false);
    int n = ctx.rd().rank;

    Pipeline pl;
    for (int i = 0; i <= n; ++i) {
        long unknowns = static_cast<long>(x.dim) * binomial(n, i) * y.dim;
        if (unknowns > opts.unknown_cap)
            throw cap_error("hom space at degree " + std::to_string(i) + " has " +
                            std::to_string(unknowns) + " unknowns, cap " +
                            std::to_string(opts.unknown_cap));
        pl.hom.push_back(hom_w_basis(scope, x, y, i, opts.ex));
    }
    for (int i = 0; i < n; ++i) {
        pl.d.push_back(koszul_d_star(x, y, pl.hom[i], pl.hom[i + 1]));
        if (opts.verify_tilde && x.full_support()) {
            Mat dt = koszul_d_star_tilde(ctx, x, y, pl.hom[i], pl.hom[i + 1]);
            if (!(dt == pl.d.back())) throw std::logic_error("tilde differential disagrees");
        }
    }
    pl.d.push_back(Mat(0, pl.hom[n].dim()));
    for (int i = 0; i + 1 < n; ++i)
        if (!(pl.d[i + 1] * pl.d[i]).is_zero()) throw std::logic_error("d* d* != 0");

    std::vector<Mat> kernels, images;
    for (int i = 0; i <= n; ++i) kernels.push_back(nullspace(pl.d[i], opts.ex));
    images.push_back(Mat(pl.hom[0].dim(), 0));
    for (int i = 1; i <= n; ++i) {
        Echelon e = echelon_ff(pl.d[i - 1], opts.ex);
        std::vector<int> pivots = e.pivot_col;
        Mat img(pl.hom[i].dim(), static_cast<int>(pivots.size()));
        for (size_t c = 0; c < pivots.size(); ++c)
            img.set_col(static_cast<int>(c), pl.d[i - 1].col(pivots[c]));
        images.push_back(std::move(img));
    }

    ExtResult& r = pl.result;
    r.dims.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        r.dims[i] = kernels[i].cols() - images[i].cols();
        if (r.dims[i] < 0) throw std::logic_error("negative ext dimension");
    }
    r.ep = 0;
    for (int i = 0; i <= n; ++i) r.ep += (i % 2 ? -1 : 1) * r.dims[i];

    if (theta_x && theta_y) {
        std::vector<Rat> traces(n + 1);
        for (int i = 0; i <= n; ++i)
            pl.tstar.push_back(theta_star_matrix(ctx, x, y, pl.hom[i], *theta_x, *theta_y));
        for (int i = 0; i < n; ++i)
            if (!(pl.tstar[i + 1] * pl.d[i] == pl.d[i] * pl.tstar[i]))
                throw std::logic_error("theta* does not commute with d*");
        for (int i = 0; i <= n; ++i) {
            traces[i] = trace_on_subspace(pl.tstar[i], kernels[i]) -
                        trace_on_subspace(pl.tstar[i], images[i]);
            Rat bound = traces[i];
            if (sgn(bound) < 0) bound = -bound;
            if (bound > Rat(r.dims[i])) throw std::logic_error("theta* trace exceeds dimension");
        }
        Rat ept = 0;
        for (int i = 0; i <= n; ++i) ept += (i % 2 ? Rat(-1) : Rat(1)) * traces[i];
        r.theta_traces = std::move(traces);
        r.ep_theta = ept;
        r.ext_extended_dims = extended_dims_from(r);
    }
    return pl;
}

}  // namespace

std::string ExtResult::str() const {
    std::ostringstream os;
    os << "dims (";
    for (size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << ") ep " << ep;
    if (theta_traces) {
        os << " traces (";
        for (size_t i = 0; i < theta_traces->size(); ++i)
            os << (i ? "," : "") << rat_str((*theta_traces)[i]);
        os << ") ep_theta " << rat_str(*ep_theta);
    }
    return os.str();
}

ExtResult ext_dims(const WeylContext& ctx, const HModule& x, const HModule& y,
                   const ExtOptions& opts) {
    return run_pipeline(ctx, x, y, nullptr, nullptr, opts).result;
}

ExtResult theta_star_on_ext(const WeylContext& ctx, const HModule& x, const HModule& y,
                            const Mat& theta_x, const Mat& theta_y, const ExtOptions& opts) {
    return run_pipeline(ctx, x, y, &theta_x, &theta_y, opts).result;
}

long ep_pair(const WeylContext& ctx, const HModule& x, const HModule& y, const ExtOptions& opts) {
    return ext_dims(ctx, x, y, opts).ep;
}

Rat ep_theta_pair(const WeylContext& ctx, const HModule& x, const HModule& y, const Mat& theta_x,
                  const Mat& theta_y, const ExtOptions& opts) {
    return *theta_star_on_ext(ctx, x, y, theta_x, theta_y, opts).ep_theta;
}

std::vector<long> extended_dims_from(const ExtResult& r) {
    if (!r.theta_traces) throw input_error("extended dims need theta traces");
    std::vector<long> out(r.dims.size());
    for (size_t i = 0; i < r.dims.size(); ++i) {
        Rat half = (Rat(r.dims[i]) + (*r.theta_traces)[i]) / 2;
        if (!rat_is_int(half) || sgn(half) < 0)
            throw std::logic_error("extended ext dimension not a non-negative integer");
        out[i] = rat_to_long(half);
    }
    return out;
}

RigidReport rigid_verification(const WeylContext& ctx, const std::vector<int>& J_in,
                               bool full_pipeline, const ExtOptions& opts) {
    RigidReport rep;
    rep.J = J_in;
    std::sort(rep.J.begin(), rep.J.end());
    rep.full_pipeline = full_pipeline;
    const RootDatum& rd = ctx.rd();
    int n = rd.rank;
    rep.r = n - static_cast<int>(rep.J.size());

    if (subset_stabilizer_count(ctx.table, rep.J) != 1)
        throw input_error("J is not rigid: " + subset_str(rep.J));

    HModule st_j = one_dim_parabolic(rd, rep.J, std::vector<int>(rep.J.size(), -1),
                                     std::vector<Rat>(n, Rat(0)));
    st_j.label = "St_" + subset_str(rep.J);
    rep.x = induced_module(ctx, rep.J, st_j, std::vector<Rat>(n, Rat(0)));

    auto fail = [&](const std::string& s) { rep.failures.push_back(s); };

    if (!check_relations(rep.x).ok()) fail("relations");
    if (!is_tempered(rep.x)) fail("tempered");

    ThetaSearch ts = find_theta_structure(ctx, rep.x);
    if (!ts.found()) {
        fail("theta structure (X not ~ X^theta)");
        return rep;
    }
    rep.theta = ts.theta;
    if (!(rep.theta * rep.theta).is_identity()) fail("theta^2 = Id");

    ClassDomain dord = full_domain(ctx, false), dtw = full_domain(ctx, true);
    ClassFn chi = trace_class_function(dord, rep.x);
    ClassFn chi_t = twisted_trace_class_function(dtw, rep.x, rep.theta);
    rep.ep_char = elliptic_pairing(chi, chi);
    rep.ep_theta_char = twisted_elliptic_pairing(chi_t, chi_t);

    Rat two_r = 1;
    for (int i = 0; i < rep.r; ++i) two_r *= 2;
    if (rep.ep_theta_char != two_r) fail("ep_theta(char route) = 2^r");
    if (rep.ep_char != Rat(rep.r == 0 ? 1 : 0)) fail("ep(char route) = [r=0]");

    if (full_pipeline) {
        rep.ext = theta_star_on_ext(ctx, rep.x, rep.x, rep.theta, rep.theta, opts);
        for (int i = 0; i <= n; ++i) {
            if (rep.ext.dims[i] != binomial(rep.r, i)) fail("dims[" + std::to_string(i) + "] = C(r,i)");
            Rat expect = Rat(binomial(rep.r, i)) * (i % 2 ? -1 : 1);
            if ((*rep.ext.theta_traces)[i] != expect)
                fail("trace[" + std::to_string(i) + "] = (-1)^i C(r,i)");
            long ext_dim = (*rep.ext.ext_extended_dims)[i];
            long expect_ext = i % 2 == 0 ? binomial(rep.r, i) : 0;
            if (ext_dim != expect_ext) fail("extended dims[" + std::to_string(i) + "]");
        }
        if (rep.ext.dims[0] != 1) fail("irreducibility: dim Ext^0 = 1");
        if (*rep.ext.ep_theta != two_r) fail("ep_theta = 2^r");
        if (rep.ext.ep != (rep.r == 0 ? 1 : 0)) fail("ep = [r=0]");
        if (rep.ext.ep != rep.ep_char) fail("ep matches character route");
        if (*rep.ext.ep_theta != rep.ep_theta_char) fail("ep_theta matches character route");
    }

    SplitReport split = parabolic_restriction_split(ctx, rep.x, rep.J, st_j);
    if (!split.ok()) fail("restriction split");
    if (split.u_dim != st_j.dim) fail("split U dimension");
    return rep;
}

DeformReport deformation_check(const WeylContext& ctx, const std::vector<int>& J, const HModule& u,
                               const std::vector<Rat>& nu, const ExtOptions& opts) {
    DeformReport rep;
    HModule x0 = induced_module(ctx, J, u, std::vector<Rat>(ctx.rd().rank, Rat(0)), "X0");
    HModule xn = induced_module(ctx, J, u, nu, "Xnu");

    CentralCharacter c0 = central_character(x0, ctx.table);
    CentralCharacter cn = central_character(xn, ctx.table);
    rep.distinct_central_characters = !same_central_character(c0, cn);

    if (rep.distinct_central_characters) {
        ExtResult er = ext_dims(ctx, x0, xn, opts);
        rep.ext_all_zero = true;
        for (long d : er.dims)
            if (d != 0) rep.ext_all_zero = false;
    }

    // W-character comparison of Res X_nu and Res X_nu^theta
    ClassDomain dord = full_domain(ctx, false);
    ClassFn a = trace_class_function(dord, xn);
    ClassFn b = trace_class_function(dord, theta_twist(ctx, xn));
    rep.res_w_theta_fixed = a.v == b.v;
    return rep;
}

}  // namespace ghecke
