#include "ghecke/hecke.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ghecke {

namespace {

// relative squared-length classes of the simple roots of R_J: two J-simples
// are W_J-conjugate iff they lie in the same diagram component with equal
// length
std::vector<int> sub_orbit_classes(const RootDatum& rd, const std::vector<int>& J) {
    int m = static_cast<int>(J.size());
    std::vector<int> comp(m, -1);
    std::vector<Rat> rel(m, Rat(1));
    int ncomp = 0;
    for (int s = 0; s < m; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        rel[s] = 1;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y = 0; y < m; ++y) {
                if (comp[y] >= 0 || sgn(rd.cartan(J[x], J[y])) == 0 || x == y) continue;
                comp[y] = ncomp;
                // |alpha_y|^2 / |alpha_x|^2 = <alpha_y, alpha_x^vee> / <alpha_x, alpha_y^vee>
                rel[y] = rel[x] * rd.cartan(J[x], J[y]) / rd.cartan(J[y], J[x]);
                stack.push_back(y);
            }
        }
        ++ncomp;
    }
    std::map<std::pair<int, std::string>, int> ids;
    std::vector<int> out(m);
    for (int s = 0; s < m; ++s) {
        auto key = std::make_pair(comp[s], rat_str(rel[s]));
        auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
        out[s] = it->second;
        (void)fresh;
    }
    return out;
}

Mat mat_from_cols(const std::vector<std::vector<Rat>>& cols, int nrows) {
    Mat m(nrows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) m.set_col(static_cast<int>(j), cols[j]);
    return m;
}

}  // namespace

const Mat& HModule::t_of(int simple_index) const {
    auto it = std::lower_bound(support.begin(), support.end(), simple_index);
    if (it == support.end() || *it != simple_index)
        throw std::logic_error("t-generator " + std::to_string(simple_index + 1) + " outside support");
    return t[it - support.begin()];
}

bool HModule::has_t(int simple_index) const {
    return std::binary_search(support.begin(), support.end(), simple_index);
}

Mat HModule::v_of(const std::vector<Rat>& vec) const {
    Mat acc = Mat::zeros(dim, dim);
    for (int i = 0; i < datum->rank; ++i)
        if (sgn(vec[i]) != 0) acc = acc + v[i].scaled(vec[i]);
    return acc;
}

std::string RelationReport::str() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& it : items) {
        os << it.relation;
        if (it.i >= 0) os << "(" << it.i + 1 << (it.j >= 0 ? "," + std::to_string(it.j + 1) : "") << ")";
        os << " ";
    }
    return os.str();
}

RelationReport check_relations(const HModule& x) {
    RelationReport rep;
    const RootDatum& rd = *x.datum;
    int n = rd.rank;
    if (static_cast<int>(x.v.size()) != n || x.t.size() != x.support.size()) {
        rep.items.push_back({"shape", -1, -1});
        return rep;
    }
    for (const Mat& m : x.t)
        if (m.rows() != x.dim || m.cols() != x.dim) {
            rep.items.push_back({"shape", -1, -1});
            return rep;
        }
    for (const Mat& m : x.v)
        if (m.rows() != x.dim || m.cols() != x.dim) {
            rep.items.push_back({"shape", -1, -1});
            return rep;
        }

    Mat id = Mat::identity(x.dim);
    for (size_t a = 0; a < x.support.size(); ++a) {
        if (!((x.t[a] * x.t[a]) == id)) rep.items.push_back({"t2", x.support[a], -1});
    }
    for (size_t a = 0; a < x.support.size(); ++a)
        for (size_t b = a + 1; b < x.support.size(); ++b) {
            int i = x.support[a], j = x.support[b];
            long prod = rat_to_long(rd.cartan(i, j) * rd.cartan(j, i));
            int order = prod == 0 ? 2 : prod == 1 ? 3 : prod == 2 ? 4 : 6;
            Mat lhs = id, rhs = id;
            for (int s = 0; s < order; ++s) {
                lhs = lhs * (s % 2 == 0 ? x.t[a] : x.t[b]);
                rhs = rhs * (s % 2 == 0 ? x.t[b] : x.t[a]);
            }
            if (!(lhs == rhs)) rep.items.push_back({"braid", i, j});
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(x.v[i] * x.v[j] == x.v[j] * x.v[i])) rep.items.push_back({"vcomm", i, j});
    // t_s v - s(v) t_s = k <v, alpha^vee>, with v over the simple basis
    for (size_t a = 0; a < x.support.size(); ++a) {
        int i = x.support[a];
        for (int m = 0; m < n; ++m) {
            Mat sv = x.v[m] - x.v[i].scaled(rd.cartan(i, m));
            Mat lhs = x.t[a] * x.v[m] - sv * x.t[a];
            Mat rhs = Mat::scalar(x.dim, rd.k_of_simple(i) * rd.cartan(i, m));
            if (!(lhs == rhs)) rep.items.push_back({"cross", i, m});
        }
    }
    return rep;
}

Mat group_action_matrix(const HModule& x, const WeylGroupTable& wt, int32_t w) {
    Mat acc = Mat::identity(x.dim);
    for (int j : wt.word(w)) acc = acc * x.t_of(j);
    return acc;
}

std::vector<Mat> group_matrices_for(const HModule& x, const WeylGroupTable& wt,
                                    const std::vector<int32_t>& elements) {
    // elements must be BFS-closed under parents (true for W and any W_J)
    std::unordered_map<int32_t, int> pos;
    pos.reserve(elements.size());
    for (size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = static_cast<int>(i);
    std::vector<Mat> out(elements.size());
    for (size_t i = 0; i < elements.size(); ++i) {
        int32_t w = elements[i];
        if (w == 0) {
            out[i] = Mat::identity(x.dim);
            continue;
        }
        auto it = pos.find(wt.parent[w]);
        if (it == pos.end() || static_cast<size_t>(it->second) >= i)
            out[i] = group_action_matrix(x, wt, w);
        else
            out[i] = x.t_of(wt.pgen[w]) * out[it->second];
    }
    return out;
}

Mat tilde_matrix(const HModule& x, const WeylGroupTable& wt, const std::vector<Rat>& vec) {
    if (!x.full_support()) throw std::logic_error("tilde_matrix needs a full H-module");
    const RootDatum& rd = *x.datum;
    Mat acc = x.v_of(vec);
    for (int r = 0; r < rd.npos; ++r) {
        Rat coeff = rd.k_of_root(r) * rd.pair_with_coroot(vec, r) / 2;
        if (sgn(coeff) == 0) continue;
        acc = acc - group_action_matrix(x, wt, wt.refl[r]).scaled(coeff);
    }
    return acc;
}

int WeightMultiset::total() const {
    int t = 0;
    for (const auto& [g, m] : entries) t += m;
    return t;
}

std::string WeightMultiset::str() const {
    std::ostringstream os;
    for (const auto& [g, m] : entries) os << rat_vec_str(g) << "^" << m << " ";
    return os.str();
}

bool WeightMultiset::same_as(const WeightMultiset& o) const {
    auto a = entries, b = o.entries;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

namespace {

Mat restrict_operator(const Mat& basis, const Mat& op) {
    SpanSolver ss(basis);
    Mat r(basis.cols(), basis.cols());
    Mat im = op * basis;
    for (int c = 0; c < basis.cols(); ++c) {
        auto coords = ss.coords(im.col(c));
        if (!coords) throw std::logic_error("operator does not preserve the subspace");
        for (int i = 0; i < basis.cols(); ++i) r(i, c) = (*coords)[i];
    }
    return r;
}

void split_weight_spaces(const HModule& x, const Mat& basis, int op_index,
                         std::vector<Rat>& gamma, WeightSpaces& out) {
    int n = x.datum->rank;
    if (basis.cols() == 0) return;
    if (op_index == n) {
        out.multiset.entries.emplace_back(gamma, basis.cols());
        out.bases.push_back(basis);
        return;
    }
    Mat r = restrict_operator(basis, x.v[op_index]);
    int d = r.rows();

    // integer rescale, then scan Gershgorin-bounded integer eigenvalues
    mpz_class q = 1;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), r(i, j).get_den().get_mpz_t());
    Mat ri = r.scaled(Rat(q));
    mpz_class bound = 0;
    for (int i = 0; i < d; ++i) {
        mpz_class row = 0;
        for (int j = 0; j < d; ++j) {
            mpz_class a = ri(i, j).get_num();
            if (a < 0) a = -a;
            row += a;
        }
        if (row > bound) bound = row;
    }
    if (bound > 2000000)
        throw weight_error("eigenvalue scan bound too large on " + x.label);
    std::vector<Rat> poly = char_poly(ri);
    long bnd = bound.get_si();
    int found = 0;
    for (long mu = -bnd; mu <= bnd; ++mu) {
        // Horner
        Rat val = 0;
        for (int i = d; i >= 0; --i) val = val * mu + poly[i];
        if (sgn(val) != 0) continue;
        Rat lambda = Rat(mu) / Rat(q);
        Mat shifted = r - Mat::scalar(d, lambda);
        Mat ker = nullspace(shifted.power(d));
        if (ker.cols() == 0) continue;
        gamma.push_back(lambda);
        split_weight_spaces(x, basis * ker, op_index + 1, gamma, out);
        gamma.pop_back();
        found += ker.cols();
    }
    if (found != d)
        throw weight_error("irrational eigenvalue of a v-generator on " +
                           (x.label.empty() ? std::string("module") : x.label));
}

}  // namespace

WeightSpaces weight_spaces(const HModule& x) {
    WeightSpaces out;
    std::vector<Rat> gamma;
    split_weight_spaces(x, Mat::identity(x.dim), 0, gamma, out);
    // deterministic order by weight
    std::vector<size_t> idx(out.bases.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return out.multiset.entries[a].first < out.multiset.entries[b].first;
    });
    WeightSpaces sorted;
    for (size_t i : idx) {
        sorted.multiset.entries.push_back(out.multiset.entries[i]);
        sorted.bases.push_back(out.bases[i]);
    }
    if (sorted.multiset.total() != x.dim) throw std::logic_error("weight multiplicities do not sum to dim");
    return sorted;
}

WeightMultiset weights(const HModule& x) {
    return weight_spaces(x).multiset;
}

namespace {

std::vector<Rat> dual_reflect(const RootDatum& rd, int j, const std::vector<Rat>& gamma) {
    // (s_j gamma)_m = gamma_m - <alpha_m, alpha_j^vee> gamma_j
    std::vector<Rat> out(gamma.size());
    for (size_t m = 0; m < gamma.size(); ++m) out[m] = gamma[m] - rd.cartan(j, static_cast<int>(m)) * gamma[j];
    return out;
}

std::vector<Rat> orbit_min_rep(const RootDatum& rd, const std::vector<int>& gens,
                               const std::vector<Rat>& gamma) {
    std::map<std::vector<Rat>, bool> seen;
    std::vector<std::vector<Rat>> stack{gamma};
    seen[gamma] = true;
    while (!stack.empty()) {
        auto g = stack.back();
        stack.pop_back();
        for (int j : gens) {
            auto g2 = dual_reflect(rd, j, g);
            if (!seen.count(g2)) {
                seen[g2] = true;
                stack.push_back(g2);
            }
        }
    }
    return seen.begin()->first;  // lexicographically minimal
}

}  // namespace

CentralCharacter central_character(const HModule& x, const WeylGroupTable& wt) {
    (void)wt;
    const RootDatum& rd = *x.datum;
    std::vector<int> gens(rd.rank);
    for (int i = 0; i < rd.rank; ++i) gens[i] = i;
    WeightMultiset ws = weights(x);
    std::vector<std::vector<Rat>> reps;
    for (const auto& [g, m] : ws.entries) reps.push_back(orbit_min_rep(rd, gens, g));
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    CentralCharacter cc;
    cc.single = reps.size() == 1;
    cc.orbit_reps = std::move(reps);
    return cc;
}

bool same_central_character(const CentralCharacter& a, const CentralCharacter& b) {
    return a.orbit_reps == b.orbit_reps;
}

bool is_tempered(const HModule& x) {
    auto fw = fundamental_weights(*x.datum);
    for (const auto& [g, m] : weights(x).entries)
        for (const auto& w : fw) {
            Rat p = 0;
            for (size_t i = 0; i < w.size(); ++i) p += w[i] * g[i];
            if (sgn(p) > 0) return false;
        }
    return true;
}

bool is_discrete_series(const HModule& x) {
    auto fw = fundamental_weights(*x.datum);
    for (const auto& [g, m] : weights(x).entries)
        for (const auto& w : fw) {
            Rat p = 0;
            for (size_t i = 0; i < w.size(); ++i) p += w[i] * g[i];
            if (sgn(p) >= 0) return false;
        }
    return true;
}

HModule one_dim_parabolic(const RootDatum& rd, const std::vector<int>& J,
                          const std::vector<int>& signs, const std::vector<Rat>& nu) {
    if (signs.size() != J.size()) throw input_error("one_dim_parabolic: signs/J size mismatch");
    if (static_cast<int>(nu.size()) != rd.rank) throw input_error("one_dim_parabolic: nu size mismatch");
    if (!nu_orthogonal_to_vj(rd, J, nu)) throw input_error("nu not orthogonal to V_J");
    for (int s : signs)
        if (s != 1 && s != -1) throw input_error("signs must be +-1");
    auto cls = sub_orbit_classes(rd, J);
    for (size_t a = 0; a < J.size(); ++a)
        for (size_t b = a + 1; b < J.size(); ++b)
            if (cls[a] == cls[b] && signs[a] != signs[b])
                throw input_error("sign choice not constant on W-orbits: no such module");

    HModule x;
    x.datum = &rd;
    x.support = J;
    x.dim = 1;
    for (size_t a = 0; a < J.size(); ++a) {
        Mat m(1, 1);
        m(0, 0) = signs[a];
        x.t.push_back(m);
    }
    // gamma(alpha_m) = gamma_J(proj_J alpha_m) + nu(alpha_m), gamma_J(alpha_j) = sign_j k_j
    for (int m = 0; m < rd.rank; ++m) {
        std::vector<Rat> am(rd.rank, Rat(0));
        am[m] = 1;
        auto proj = project_to_vj(rd, J, am);
        Rat val = nu[m];
        for (size_t a = 0; a < J.size(); ++a) val += proj[J[a]] * Rat(signs[a]) * rd.k_of_simple(J[a]);
        Mat vm(1, 1);
        vm(0, 0) = val;
        x.v.push_back(vm);
    }
    return x;
}

HModule one_dim_module(const RootDatum& rd, const std::vector<int>& signs) {
    std::vector<int> J(rd.rank);
    for (int i = 0; i < rd.rank; ++i) J[i] = i;
    HModule x = one_dim_parabolic(rd, J, signs, std::vector<Rat>(rd.rank, Rat(0)));
    x.label = "onedim";
    return x;
}

HModule steinberg_module(const RootDatum& rd) {
    HModule x = one_dim_module(rd, std::vector<int>(rd.rank, -1));
    x.label = "steinberg";
    return x;
}

HModule trivial_module(const RootDatum& rd) {
    HModule x = one_dim_module(rd, std::vector<int>(rd.rank, 1));
    x.label = "trivial";
    return x;
}

HModule induced_module(const WeylContext& ctx, const std::vector<int>& J_in, const HModule& u,
                       const std::vector<Rat>& nu, const std::string& label) {
    const WeylGroupTable& wt = ctx.table;
    const RootDatum& rd = ctx.rd();
    std::vector<int> J = J_in;
    std::sort(J.begin(), J.end());
    if (u.datum != &rd) throw input_error("induced_module: U built over a different datum");
    if (u.support != J) throw input_error("induced_module: U support differs from J");
    if (static_cast<int>(nu.size()) != rd.rank) throw input_error("induced_module: nu size mismatch");
    if (!nu_orthogonal_to_vj(rd, J, nu)) throw input_error("nu not orthogonal to V_J");
    {
        RelationReport rr = check_relations(u);
        if (!rr.ok()) throw input_error("induced_module: U fails relations: " + rr.str());
    }

    std::vector<int32_t> reps = min_coset_reps(wt, J);
    std::unordered_map<int32_t, int> pos;
    for (size_t p = 0; p < reps.size(); ++p) pos[reps[p]] = static_cast<int>(p);
    int du = u.dim;
    int dim = static_cast<int>(reps.size()) * du;

    HModule x;
    x.datum = &rd;
    x.support.resize(rd.rank);
    for (int i = 0; i < rd.rank; ++i) x.support[i] = i;
    x.dim = dim;
    x.label = label.empty() ? ("X(" + subset_str(J) + "," + (u.label.empty() ? "U" : u.label) + ")")
                            : label;

    auto u_v_action = [&](const std::vector<Rat>& vec) {
        Mat m = u.v_of(vec);
        Rat scal = 0;
        for (int i = 0; i < rd.rank; ++i) scal += nu[i] * vec[i];
        if (sgn(scal) != 0) m = m + Mat::scalar(du, scal);
        return m;
    };

    // t-generators: t_i (t_x ox u) = t_{x'} ox t_y u with s_i x = x' y
    for (int i = 0; i < rd.rank; ++i) {
        Mat m(dim, dim);
        for (size_t p = 0; p < reps.size(); ++p) {
            int32_t z = wt.lmult(i, reps[p]);
            auto [x2, y] = parabolic_decompose(wt, z, J);
            Mat py = group_action_matrix(u, wt, y);
            int p2 = pos.at(x2);
            for (int a = 0; a < du; ++a)
                for (int b = 0; b < du; ++b)
                    if (sgn(py(a, b)) != 0) m(p2 * du + a, static_cast<int>(p) * du + b) = py(a, b);
        }
        x.t.push_back(std::move(m));
    }

    // v-generators by pushing v through the reduced word of each t_x
    for (int q = 0; q < rd.rank; ++q) {
        Mat m(dim, dim);
        for (size_t p = 0; p < reps.size(); ++p) {
            int32_t xw = reps[p];
            std::vector<int> wrd = wt.word(xw);
            // main term: t_x ox pi(x^{-1} alpha_q)
            {
                const auto& r = rd.roots[wt.key_of(wt.inv[xw], q)];
                std::vector<Rat> vec(rd.rank);
                for (int i = 0; i < rd.rank; ++i) vec[i] = r[i];
                Mat main = u_v_action(vec);
                for (int a = 0; a < du; ++a)
                    for (int b = 0; b < du; ++b)
                        if (sgn(main(a, b)) != 0)
                            m(static_cast<int>(p) * du + a, static_cast<int>(p) * du + b) += main(a, b);
            }
            // corrections: k_{j_i} <u_{i-1}, alpha_{j_i}^vee> t_{x with letter i dropped}
            std::vector<Rat> cur(rd.rank, Rat(0));
            cur[q] = 1;
            for (size_t i = 0; i < wrd.size(); ++i) {
                int ji = wrd[i];
                Rat coeff = 0;
                for (int mm = 0; mm < rd.rank; ++mm) coeff += rd.cartan(ji, mm) * cur[mm];
                coeff *= rd.k_of_simple(ji);
                if (sgn(coeff) != 0) {
                    int32_t xi = 0;
                    for (size_t s = 0; s < wrd.size(); ++s)
                        if (s != i) xi = wt.rmult(xi, wrd[s]);
                    auto [x2, y] = parabolic_decompose(wt, xi, J);
                    Mat py = group_action_matrix(u, wt, y).scaled(coeff);
                    int p2 = pos.at(x2);
                    for (int a = 0; a < du; ++a)
                        for (int b = 0; b < du; ++b)
                            if (sgn(py(a, b)) != 0)
                                m(p2 * du + a, static_cast<int>(p) * du + b) += py(a, b);
                }
                // u_i = s_{j_i}(u_{i-1})
                Rat pr = 0;
                for (int mm = 0; mm < rd.rank; ++mm) pr += rd.cartan(ji, mm) * cur[mm];
                cur[ji] -= pr;
            }
        }
        x.v.push_back(std::move(m));
    }
    return x;
}

HModule principal_series(const WeylContext& ctx, const std::vector<Rat>& gamma) {
    HModule u = one_dim_parabolic(ctx.rd(), {}, {}, std::vector<Rat>(ctx.rd().rank, Rat(0)));
    u.label = "C";
    HModule x = induced_module(ctx, {}, u, gamma);
    x.label = "ps" + rat_vec_str(gamma);
    return x;
}

HModule direct_sum(const HModule& a, const HModule& b) {
    if (a.datum != b.datum || a.support != b.support) throw input_error("direct_sum mismatch");
    HModule x;
    x.datum = a.datum;
    x.support = a.support;
    x.dim = a.dim + b.dim;
    x.label = a.label + "+" + b.label;
    auto block = [&](const Mat& p, const Mat& q) {
        Mat m(x.dim, x.dim);
        for (int i = 0; i < p.rows(); ++i)
            for (int j = 0; j < p.cols(); ++j) m(i, j) = p(i, j);
        for (int i = 0; i < q.rows(); ++i)
            for (int j = 0; j < q.cols(); ++j) m(a.dim + i, a.dim + j) = q(i, j);
        return m;
    };
    for (size_t i = 0; i < a.t.size(); ++i) x.t.push_back(block(a.t[i], b.t[i]));
    for (size_t i = 0; i < a.v.size(); ++i) x.v.push_back(block(a.v[i], b.v[i]));
    return x;
}

HModule theta_twist(const WeylContext& ctx, const HModule& x) {
    const auto& perm = ctx.theta.perm;
    HModule y;
    y.datum = x.datum;
    y.dim = x.dim;
    y.label = x.label + "^theta";
    for (int s : x.support) y.support.push_back(perm[s]);
    std::sort(y.support.begin(), y.support.end());
    for (int s : y.support) y.t.push_back(x.t_of(perm[s]));  // theta(t_{s_m}) = t_{s_{theta(m)}}
    for (int i = 0; i < x.datum->rank; ++i) y.v.push_back(x.v[perm[i]]);  // theta(alpha_i) = alpha_{theta(i)}
    return y;
}

namespace {

// Solutions of Theta pi(g) = pi_{X^theta}(g) Theta over the group part, as
// flattened d*d rows.
std::vector<std::vector<Rat>> group_intertwiners_averaging(const WeylContext& ctx,
                                                           const HModule& x) {
    const WeylGroupTable& wt = ctx.table;
    int d = x.dim;
    std::vector<int32_t> elements(wt.order);
    for (int32_t w = 0; w < wt.order; ++w) elements[w] = w;
    std::vector<Mat> gm = group_matrices_for(x, wt, elements);
    std::vector<int32_t> th(wt.order);
    for (int32_t w = 0; w < wt.order; ++w) th[w] = theta_element(wt, ctx.theta, w);

    long full = static_cast<long>(d) * d;
    RowSpace space(full);
    std::vector<std::vector<Rat>> rows;
    for (int a = 0; a < d && static_cast<long>(rows.size()) < full; ++a) {
        for (int b = 0; b < d; ++b) {
            // P(E_ba) = sum_w pi(t_{theta(w)}) E_ba pi(t_w)^{-1}
            Mat acc(d, d);
            for (int32_t w = 0; w < wt.order; ++w) {
                const Mat& mb = gm[th[w]];
                const Mat& ma = gm[wt.inv[w]];
                for (int i = 0; i < d; ++i) {
                    const Rat& left = mb(i, b);
                    if (sgn(left) == 0) continue;
                    for (int j = 0; j < d; ++j)
                        if (sgn(ma(a, j)) != 0) acc(i, j) += left * ma(a, j);
                }
            }
            auto vec = acc.vec();
            if (space.insert(vec)) rows.push_back(acc.vec());
        }
    }
    return rows;
}

// Same space as the null space of the generator equivariance system; the
// cost is independent of |W|, which matters from E6 onwards.
std::vector<std::vector<Rat>> group_intertwiners_nullspace(const WeylContext& ctx,
                                                           const HModule& x) {
    int d = x.dim;
    int n = ctx.rd().rank;
    Mat sys(n * d * d, d * d);
    int row0 = 0;
    for (int j = 0; j < n; ++j) {
        const Mat& a = x.t_of(j);
        const Mat& b = x.t_of(ctx.theta.perm[j]);  // pi_{X^theta}(t_j)
        // (Theta a - b Theta)_{ic} rows
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < d; ++c) {
                int row = row0 + i * d + c;
                for (int m = 0; m < d; ++m) {
                    if (sgn(a(m, c)) != 0) sys(row, i * d + m) += a(m, c);
                    if (sgn(b(i, m)) != 0) sys(row, m * d + c) -= b(i, m);
                }
            }
        row0 += d * d;
    }
    Mat ns = nullspace(sys);
    std::vector<std::vector<Rat>> rows;
    for (int c = 0; c < ns.cols(); ++c) rows.push_back(ns.col(c));
    return rows;
}

}  // namespace

ThetaSearch find_theta_structure(const WeylContext& ctx, const HModule& x) {
    if (!x.full_support()) throw std::logic_error("find_theta_structure needs a full H-module");
    const WeylGroupTable& wt = ctx.table;
    int d = x.dim;
    if (d > 100)
        throw cap_error("intertwiner solve on a " + std::to_string(d) +
                        "-dimensional module exceeds the dense solver sizes");

    // group-level intertwiners first, then the v-constraints cut the space
    // down to Hom_H(X, X^theta)
    std::vector<std::vector<Rat>> basis_rows =
        wt.order <= 5000 ? group_intertwiners_averaging(ctx, x)
                         : group_intertwiners_nullspace(ctx, x);

    // v-constraints: Theta pi(alpha_m) - pi(theta(alpha_m)) Theta = 0
    int dW = static_cast<int>(basis_rows.size());
    Mat cons(ctx.rd().rank * d * d, dW);
    for (int c = 0; c < dW; ++c) {
        Mat theta(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) theta(i, j) = basis_rows[c][static_cast<size_t>(i) * d + j];
        for (int m = 0; m < ctx.rd().rank; ++m) {
            Mat diff = theta * x.v[m] - x.v[ctx.theta.perm[m]] * theta;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) cons((m * d + i) * d + j, c) = diff(i, j);
        }
    }
    Mat ns = nullspace(cons);

    ThetaSearch out;
    out.intertwiner_dim = ns.cols();
    if (ns.cols() == 0) {
        out.status = ThetaSearchStatus::not_isomorphic;
        return out;
    }
    if (ns.cols() > 1) {
        out.status = ThetaSearchStatus::ambiguous;
        return out;
    }
    Mat theta(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Rat acc = 0;
            for (int c = 0; c < dW; ++c) acc += ns(c, 0) * basis_rows[c][static_cast<size_t>(i) * d + j];
            theta(i, j) = acc;
        }
    Rat lambda;
    if (!(theta * theta).is_scalar(&lambda) || sgn(lambda) == 0)
        throw std::logic_error("intertwiner square is not a nonzero scalar");
    Rat root;
    if (!rat_sqrt(lambda, &root)) {
        out.status = ThetaSearchStatus::non_rational_scale;
        return out;
    }
    theta = theta.scaled(1 / root);
    // sign normalization: first nonzero entry row-major positive
    for (int i = 0; i < d * d; ++i) {
        const Rat& e = theta(i / d, i % d);
        if (sgn(e) == 0) continue;
        if (sgn(e) < 0) theta = -theta;
        break;
    }
    out.status = ThetaSearchStatus::found;
    out.theta = std::move(theta);
    return out;
}

ThetaStructure principal_series_theta_structure(const WeylContext& ctx, const HModule& ps,
                                                const std::vector<Rat>& gamma) {
    const WeylGroupTable& wt = ctx.table;
    if (ps.dim != wt.order) throw input_error("not a principal series module");
    std::vector<Rat> tg(gamma.size());
    for (size_t i = 0; i < gamma.size(); ++i) tg[i] = gamma[ctx.theta.perm[i]];
    if (tg != gamma) throw input_error("gamma is not theta-fixed");

    // basis positions follow min_coset_reps of the empty subset
    std::vector<int32_t> reps = min_coset_reps(wt, {});
    std::vector<int> pos(wt.order);
    for (size_t p = 0; p < reps.size(); ++p) pos[reps[p]] = static_cast<int>(p);
    Mat theta(ps.dim, ps.dim);
    for (size_t p = 0; p < reps.size(); ++p)
        theta(pos[theta_element(wt, ctx.theta, reps[p])], static_cast<int>(p)) = 1;
    // it must intertwine the action with the twist
    HModule tw = theta_twist(ctx, ps);
    for (int j = 0; j < ctx.rd().rank; ++j)
        if (!(theta * ps.t_of(j) == tw.t_of(j) * theta))
            throw std::logic_error("principal series theta permutation fails to intertwine t");
    for (int m = 0; m < ctx.rd().rank; ++m)
        if (!(theta * ps.v[m] == tw.v[m] * theta))
            throw std::logic_error("principal series theta permutation fails to intertwine v");
    if (!(theta * theta).is_identity()) throw std::logic_error("theta permutation not involutive");
    return {theta};
}

HModule restrict_module(const HModule& x, const std::vector<int>& J_in) {
    std::vector<int> J = J_in;
    std::sort(J.begin(), J.end());
    HModule y;
    y.datum = x.datum;
    y.support = J;
    y.dim = x.dim;
    y.v = x.v;
    y.label = x.label + "|" + subset_str(J);
    for (int j : J) y.t.push_back(x.t_of(j));
    return y;
}

SplitReport parabolic_restriction_split(const WeylContext& ctx, const HModule& x,
                                        const std::vector<int>& J_in, const HModule& u) {
    std::vector<int> J = J_in;
    std::sort(J.begin(), J.end());
    if (subset_stabilizer_count(ctx.table, J) != 1)
        throw input_error("restriction split is only asserted for rigid J");
    const RootDatum& rd = ctx.rd();

    WeightSpaces ws = weight_spaces(x);
    std::vector<std::vector<Rat>> ucols, ycols;
    for (size_t i = 0; i < ws.bases.size(); ++i) {
        bool in_dual = weight_in_vj_dual(rd, J, ws.multiset.entries[i].first);
        for (int c = 0; c < ws.bases[i].cols(); ++c)
            (in_dual ? ucols : ycols).push_back(ws.bases[i].col(c));
    }
    SplitReport rep;
    rep.u_dim = static_cast<int>(ucols.size());
    rep.y_dim = static_cast<int>(ycols.size());
    rep.u_basis = mat_from_cols(ucols, x.dim);
    rep.y_basis = mat_from_cols(ycols, x.dim);

    // U-block must be the embedded copy span{t_e otimes u} (coordinates 0..du)
    {
        RowSpace span(x.dim);
        for (int m = 0; m < u.dim; ++m) {
            std::vector<Rat> e(x.dim, Rat(0));
            e[m] = 1;
            span.insert(std::move(e));
        }
        bool match = rep.u_dim == u.dim;
        for (int c = 0; c < rep.u_basis.cols() && match; ++c)
            match = span.contains(rep.u_basis.col(c));
        rep.u_matches_embedding = match;
    }

    // both blocks H_J-invariant
    {
        auto invariant = [&](const Mat& basis) {
            if (basis.cols() == 0) return true;
            SpanSolver ss(basis);
            for (int j : J) {
                Mat im = x.t_of(j) * basis;
                for (int c = 0; c < basis.cols(); ++c)
                    if (!ss.coords(im.col(c))) return false;
            }
            for (int m = 0; m < rd.rank; ++m) {
                Mat im = x.v[m] * basis;
                for (int c = 0; c < basis.cols(); ++c)
                    if (!ss.coords(im.col(c))) return false;
            }
            return true;
        };
        rep.hj_invariant = invariant(rep.u_basis) && invariant(rep.y_basis);
    }

    // disjoint central characters over H_J: W_J-orbits of the weights
    {
        std::vector<std::vector<Rat>> uorb, yorb;
        for (size_t i = 0; i < ws.bases.size(); ++i) {
            const auto& g = ws.multiset.entries[i].first;
            auto rep0 = orbit_min_rep(rd, J, g);
            if (weight_in_vj_dual(rd, J, g)) uorb.push_back(rep0);
            else yorb.push_back(rep0);
        }
        std::sort(uorb.begin(), uorb.end());
        uorb.erase(std::unique(uorb.begin(), uorb.end()), uorb.end());
        std::sort(yorb.begin(), yorb.end());
        yorb.erase(std::unique(yorb.begin(), yorb.end()), yorb.end());
        bool disjoint = true;
        for (const auto& a : uorb)
            if (std::binary_search(yorb.begin(), yorb.end(), a)) disjoint = false;
        rep.disjoint_central_characters = disjoint;
    }
    return rep;
}

}  // namespace ghecke
