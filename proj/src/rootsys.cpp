#include "ghecke/rootsys.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ghecke {

namespace {

Mat cartan_matrix(char family, int rank) {
    int n = rank;
    Mat a(n, n);
    auto chain = [&](int upto) {
        for (int i = 0; i + 1 < upto; ++i) {
            a(i, i + 1) = -1;
            a(i + 1, i) = -1;
        }
    };
    for (int i = 0; i < n; ++i) a(i, i) = 2;
    switch (family) {
        case 'A':
            chain(n);
            break;
        case 'B':  // alpha_n short
            chain(n);
            a(n - 1, n - 2) = -2;
            break;
        case 'C':  // alpha_n long
            chain(n);
            a(n - 2, n - 1) = -2;
            break;
        case 'D':
            chain(n - 1);
            a(n - 3, n - 1) = -1;
            a(n - 1, n - 3) = -1;
            break;
        case 'E': {
            // Bourbaki: chain 1-3-4-5-...-n, node 2 attached to node 4.
            std::vector<std::pair<int, int>> bonds = {{0, 2}, {2, 3}, {1, 3}};
            for (int i = 4; i < n; ++i) bonds.emplace_back(i - 1, i);
            for (auto [x, y] : bonds) {
                a(x, y) = -1;
                a(y, x) = -1;
            }
            break;
        }
        case 'F':
            chain(n);
            a(2, 1) = -2;  // <alpha_2, alpha_3^vee> = -2
            break;
        case 'G':
            a(0, 1) = -3;  // <alpha_2, alpha_1^vee> = -3
            a(1, 0) = -1;
            break;
        default:
            throw input_error(std::string("unknown family '") + family + "'");
    }
    return a;
}

struct VecLess {
    bool operator()(const std::vector<int>& x, const std::vector<int>& y) const { return x < y; }
};

}  // namespace

bool valid_type(char family, int rank) {
    switch (family) {
        case 'A': return rank >= 1;
        case 'B': return rank >= 2;
        case 'C': return rank >= 2;
        case 'D': return rank >= 3;
        case 'E': return rank >= 6 && rank <= 8;
        case 'F': return rank == 4;
        case 'G': return rank == 2;
        default: return false;
    }
}

int RootDatum::root_index(const std::vector<int>& coords) const {
    auto it = root_lookup.find(hash_int_vec(coords));
    if (it == root_lookup.end()) return -1;
    // hash keys are unique in practice but verify to be exact
    if (roots[it->second] != coords) {
        for (size_t r = 0; r < roots.size(); ++r)
            if (roots[r] == coords) return static_cast<int>(r);
        return -1;
    }
    return it->second;
}

Mat RootDatum::simple_reflection(int i) const {
    Mat m = Mat::identity(rank);
    for (int j = 0; j < rank; ++j) m(i, j) -= cartan(i, j);
    return m;
}

Mat RootDatum::reflection(int r) const {
    // s_alpha(v) = v - <v, alpha^vee> alpha
    Mat m = Mat::identity(rank);
    const auto& alpha = roots[r];
    const auto& covec = coroots[r];
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) m(i, j) -= Rat(alpha[i]) * Rat(covec[j]);
    return m;
}

std::vector<Rat> RootDatum::root_rat(int r) const {
    std::vector<Rat> out(rank);
    for (int i = 0; i < rank; ++i) out[i] = roots[r][i];
    return out;
}

std::vector<Rat> RootDatum::coroot_rat(int r) const {
    std::vector<Rat> out(rank);
    for (int i = 0; i < rank; ++i) out[i] = coroots[r][i];
    return out;
}

Rat RootDatum::pair_with_coroot(const std::vector<Rat>& v, int r) const {
    Rat acc = 0;
    for (int i = 0; i < rank; ++i) acc += v[i] * Rat(coroots[r][i]);
    return acc;
}

int64_t RootDatum::weyl_order() const {
    int n = rank;
    auto fact = [](int m) {
        int64_t f = 1;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    switch (family) {
        case 'A': return fact(n + 1);
        case 'B':
        case 'C': return fact(n) << n;
        case 'D': return fact(n) << (n - 1);
        case 'E':
            if (n == 6) return 51840;
            if (n == 7) return 2903040;
            return 696729600;
        case 'F': return 1152;
        case 'G': return 12;
    }
    throw std::logic_error("weyl_order: bad family");
}

std::string RootDatum::root_name(int r) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < rank; ++i) {
        int c = roots[r][i];
        if (c == 0) continue;
        if (c > 0 && !first) os << "+";
        if (c == -1) os << "-";
        else if (c != 1) os << c;
        os << "a" << (i + 1);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

RootDatum build_root_datum(char family, int rank, const std::vector<Rat>& k_per_orbit) {
    if (!valid_type(family, rank))
        throw input_error(std::string("invalid type ") + family + std::to_string(rank));

    RootDatum rd;
    rd.family = family;
    rd.rank = rank;
    rd.cartan = cartan_matrix(family, rank);

    // reflection closure from the simple roots, coroots tracked alongside
    std::map<std::vector<int>, std::vector<int>, VecLess> closure;
    std::vector<std::vector<int>> frontier;
    for (int i = 0; i < rank; ++i) {
        std::vector<int> e(rank, 0), c(rank);
        e[i] = 1;
        for (int j = 0; j < rank; ++j) {
            Rat x = rd.cartan(i, j);
            c[j] = static_cast<int>(rat_to_long(x));
        }
        closure[e] = c;
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& root : frontier) {
            const auto& covec = closure[root];
            for (int j = 0; j < rank; ++j) {
                // s_j(root) = root - <root, alpha_j^vee> alpha_j, coroot alongside
                long pair = 0;
                for (int m = 0; m < rank; ++m) pair += root[m] * rat_to_long(rd.cartan(j, m));
                std::vector<int> r2 = root;
                r2[j] = root[j] - static_cast<int>(pair);
                std::vector<int> c2 = covec;
                long cj = covec[j];
                for (int m = 0; m < rank; ++m) c2[m] = covec[m] - static_cast<int>(rat_to_long(rd.cartan(j, m)) * cj);
                if (closure.find(r2) == closure.end()) {
                    closure[r2] = c2;
                    next.push_back(r2);
                }
            }
        }
        frontier = std::move(next);
    }

    // order: positives by (height, lex), negatives mirrored
    std::vector<std::vector<int>> pos;
    for (const auto& [root, covec] : closure) {
        bool nonneg = true, nonpos = true;
        for (int x : root) {
            if (x < 0) nonneg = false;
            if (x > 0) nonpos = false;
        }
        if (!nonneg && !nonpos) throw std::logic_error("mixed-sign root in closure");
        if (nonneg) pos.push_back(root);
    }
    std::sort(pos.begin(), pos.end(), [](const auto& x, const auto& y) {
        int hx = 0, hy = 0;
        for (int v : x) hx += v;
        for (int v : y) hy += v;
        if (hx != hy) return hx < hy;
        return x < y;
    });
    rd.npos = static_cast<int>(pos.size());
    rd.roots = pos;
    for (const auto& r : pos) {
        std::vector<int> neg(rank);
        for (int i = 0; i < rank; ++i) neg[i] = -r[i];
        rd.roots.push_back(neg);
    }
    rd.coroots.resize(rd.roots.size());
    for (size_t i = 0; i < rd.roots.size(); ++i) rd.coroots[i] = closure[rd.roots[i]];

    for (size_t i = 0; i < rd.roots.size(); ++i) rd.root_lookup[hash_int_vec(rd.roots[i])] = static_cast<int>(i);

    // W-orbits of roots via the simple-reflection action
    int nroots = static_cast<int>(rd.roots.size());
    rd.root_orbit.assign(nroots, -1);
    int next_orbit = 0;
    for (int seed = 0; seed < nroots; ++seed) {
        if (rd.root_orbit[seed] >= 0) continue;
        std::vector<int> stack{seed};
        rd.root_orbit[seed] = next_orbit;
        while (!stack.empty()) {
            int r = stack.back();
            stack.pop_back();
            for (int j = 0; j < rank; ++j) {
                long pair = 0;
                for (int m = 0; m < rank; ++m) pair += rd.roots[r][m] * rat_to_long(rd.cartan(j, m));
                std::vector<int> r2 = rd.roots[r];
                r2[j] -= static_cast<int>(pair);
                int idx = rd.root_index(r2);
                if (idx < 0) throw std::logic_error("orbit step left the root set");
                if (rd.root_orbit[idx] < 0) {
                    rd.root_orbit[idx] = next_orbit;
                    stack.push_back(idx);
                }
            }
        }
        ++next_orbit;
    }
    // reindex orbits by the smallest simple root they contain
    std::vector<int> simple_of_orbit(next_orbit, -1);
    for (int i = 0; i < rank; ++i) {
        std::vector<int> e(rank, 0);
        e[i] = 1;
        int o = rd.root_orbit[rd.root_index(e)];
        if (simple_of_orbit[o] < 0) simple_of_orbit[o] = i;
    }
    std::vector<std::pair<int, int>> order;  // (first simple, old orbit id)
    for (int o = 0; o < next_orbit; ++o) {
        if (simple_of_orbit[o] < 0) throw std::logic_error("root orbit without a simple root");
        order.emplace_back(simple_of_orbit[o], o);
    }
    std::sort(order.begin(), order.end());
    std::vector<int> remap(next_orbit);
    for (size_t i = 0; i < order.size(); ++i) remap[order[i].second] = static_cast<int>(i);
    for (int& o : rd.root_orbit) o = remap[o];
    rd.num_orbits = next_orbit;
    rd.simple_orbit.resize(rank);
    for (int i = 0; i < rank; ++i) {
        std::vector<int> e(rank, 0);
        e[i] = 1;
        rd.simple_orbit[i] = rd.root_orbit[rd.root_index(e)];
    }

    if (static_cast<int>(k_per_orbit.size()) != rd.num_orbits)
        throw input_error("parameter function has " + std::to_string(k_per_orbit.size()) +
                          " values but the type has " + std::to_string(rd.num_orbits) +
                          " simple-root orbits");
    rd.k = k_per_orbit;
    return rd;
}

RootDatum build_root_datum(char family, int rank, const Rat& k_const) {
    if (!valid_type(family, rank))
        throw input_error(std::string("invalid type ") + family + std::to_string(rank));
    int orbits = orbit_count(family, rank);
    return build_root_datum(family, rank, std::vector<Rat>(orbits, k_const));
}

int orbit_count(char family, int /*rank*/) {
    switch (family) {
        case 'B':
        case 'C':
        case 'F':
        case 'G': return 2;
        case 'A': return 1;
        case 'D': return 1;
        case 'E': return 1;
        default: throw input_error(std::string("unknown family '") + family + "'");
    }
}

std::vector<std::vector<Rat>> fundamental_weights(const RootDatum& rd) {
    auto inv = inverse(rd.cartan);
    if (!inv) throw std::logic_error("singular Cartan matrix");
    std::vector<std::vector<Rat>> out(rd.rank);
    for (int i = 0; i < rd.rank; ++i) out[i] = inv->col(i);
    return out;
}

std::vector<std::vector<Rat>> fundamental_coweights(const RootDatum& rd) {
    std::vector<std::vector<Rat>> out(rd.rank, std::vector<Rat>(rd.rank, Rat(0)));
    for (int i = 0; i < rd.rank; ++i) out[i][i] = 1;
    return out;
}

std::vector<std::vector<Rat>> vj_perp_basis(const RootDatum& rd, const std::vector<int>& J) {
    Mat rows(static_cast<int>(J.size()), rd.rank);
    for (size_t i = 0; i < J.size(); ++i)
        for (int j = 0; j < rd.rank; ++j) rows(static_cast<int>(i), j) = rd.cartan(J[i], j);
    Mat ns = nullspace(rows);
    std::vector<std::vector<Rat>> out;
    for (int c = 0; c < ns.cols(); ++c) out.push_back(ns.col(c));
    return out;
}

std::vector<Rat> project_to_vj(const RootDatum& rd, const std::vector<int>& J, const std::vector<Rat>& v) {
    std::vector<Rat> out(rd.rank, Rat(0));
    if (J.empty()) return out;
    int m = static_cast<int>(J.size());
    Mat block(m, m);
    std::vector<Rat> rhs(m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) block(a, b) = rd.cartan(J[a], J[b]);
        Rat acc = 0;
        for (int j = 0; j < rd.rank; ++j) acc += rd.cartan(J[a], j) * v[j];
        rhs[a] = acc;
    }
    auto c = solve(block, rhs);
    if (!c) throw std::logic_error("projection system inconsistent");
    for (int a = 0; a < m; ++a) out[J[a]] = (*c)[a];
    return out;
}

bool weight_in_vj_dual(const RootDatum& rd, const std::vector<int>& J, const std::vector<Rat>& gamma) {
    for (const auto& b : vj_perp_basis(rd, J)) {
        Rat acc = 0;
        for (int i = 0; i < rd.rank; ++i) acc += b[i] * gamma[i];
        if (sgn(acc) != 0) return false;
    }
    return true;
}

bool nu_orthogonal_to_vj(const RootDatum& /*rd*/, const std::vector<int>& J, const std::vector<Rat>& nu) {
    for (int j : J)
        if (sgn(nu[j]) != 0) return false;
    return true;
}

std::string subset_type(const RootDatum& rd, const std::vector<int>& J) {
    if (J.empty()) return "empty";
    std::vector<int> comp(J.size(), -1);
    auto bonded = [&](int a, int b) { return sgn(rd.cartan(J[a], J[b])) != 0; };
    int ncomp = 0;
    for (size_t s = 0; s < J.size(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<size_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            size_t x = stack.back();
            stack.pop_back();
            for (size_t y = 0; y < J.size(); ++y)
                if (comp[y] < 0 && x != y && bonded(static_cast<int>(x), static_cast<int>(y))) {
                    comp[y] = ncomp;
                    stack.push_back(y);
                }
        }
        ++ncomp;
    }
    std::vector<std::string> names;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> nodes;
        for (size_t s = 0; s < J.size(); ++s)
            if (comp[s] == c) nodes.push_back(J[s]);
        int n = static_cast<int>(nodes.size());
        // bond multiplicities and degrees inside the component
        int max_mult = 1;
        std::vector<int> deg(n, 0);
        int double_i = -1, double_j = -1;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b || sgn(rd.cartan(nodes[a], nodes[b])) == 0) continue;
                ++deg[a];  // counts neighbors: one per unordered bond at a
                long m = rat_to_long(rd.cartan(nodes[a], nodes[b]) * rd.cartan(nodes[b], nodes[a]));
                if (m > max_mult) max_mult = static_cast<int>(m);
                if (rat_to_long(rd.cartan(nodes[a], nodes[b])) == -2) {
                    double_i = a;  // <alpha_b, alpha_a^vee> = -2: alpha_a short
                    double_j = b;
                }
            }
        std::string label;
        if (n == 1) label = "A1";
        else if (max_mult == 3) label = "G2";
        else if (max_mult == 2) {
            if (n == 2) label = "B2";
            else {
                bool middle = deg[double_i] == 2 && deg[double_j] == 2;
                if (middle) label = "F4";
                else if (deg[double_i] == 1) label = "B" + std::to_string(n);  // short root at an end
                else label = "C" + std::to_string(n);
            }
        } else {
            int branch = -1, leaves = 0;
            for (int a = 0; a < n; ++a) {
                if (deg[a] >= 3) branch = a;
                if (deg[a] <= 1) ++leaves;
            }
            if (branch < 0) label = "A" + std::to_string(n);
            else {
                // arm lengths from the branch node
                std::vector<int> arms;
                for (int a = 0; a < n; ++a) {
                    if (a == branch || sgn(rd.cartan(nodes[branch], nodes[a])) == 0) continue;
                    int len = 1, prev = branch, cur = a;
                    while (true) {
                        int nxt = -1;
                        for (int b = 0; b < n; ++b)
                            if (b != prev && b != cur && sgn(rd.cartan(nodes[cur], nodes[b])) != 0) nxt = b;
                        if (nxt < 0) break;
                        prev = cur;
                        cur = nxt;
                        ++len;
                    }
                    arms.push_back(len);
                }
                std::sort(arms.begin(), arms.end());
                if (arms.size() == 3 && arms[0] == 1 && arms[1] == 1) label = "D" + std::to_string(n);
                else label = "E" + std::to_string(n);
            }
            (void)leaves;
        }
        names.push_back(label);
    }
    std::sort(names.begin(), names.end(), [](const std::string& x, const std::string& y) {
        return x.size() != y.size() ? x.size() > y.size() : x > y;
    });
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += "x";
        out += names[i];
    }
    return out;
}

std::string subset_str(const std::vector<int>& J) {
    std::string s = "{";
    for (size_t i = 0; i < J.size(); ++i) {
        if (i) s += ",";
        s += "a" + std::to_string(J[i] + 1);
    }
    return s + "}";
}

}  // namespace ghecke
