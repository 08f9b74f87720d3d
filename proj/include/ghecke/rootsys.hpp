#pragma once

#include "ghecke/linalg.hpp"

#include <unordered_map>

namespace ghecke {

// Crystallographic root datum with V = span(R). Coordinates: V uses the
// simple roots as basis, V^vee elements are stored by their values on the
// simple roots, so <v, gamma> is the plain dot product of coordinate vectors.
struct RootDatum {
    char family = 0;
    int rank = 0;
    Mat cartan;  // cartan(i,j) = <alpha_j, alpha_i^vee>

    // roots[0..npos) positive, ordered by (height, lex); roots[npos+i] = -roots[i].
    std::vector<std::vector<int>> roots;
    std::vector<std::vector<int>> coroots;  // parallel to roots
    int npos = 0;

    std::vector<int> simple_orbit;  // W-orbit id per simple index
    std::vector<int> root_orbit;    // W-orbit id per root
    int num_orbits = 0;
    std::vector<Rat> k;  // parameter function, one value per orbit

    int root_index(const std::vector<int>& coords) const;  // -1 if not a root
    int neg_root(int r) const { return r < npos ? r + npos : r - npos; }
    bool is_positive(int r) const { return r < npos; }

    const Rat& k_of_simple(int i) const { return k[simple_orbit[i]]; }
    const Rat& k_of_root(int r) const { return k[root_orbit[r]]; }

    Mat simple_reflection(int i) const;
    Mat reflection(int root_idx) const;
    std::vector<Rat> root_rat(int r) const;
    std::vector<Rat> coroot_rat(int r) const;
    // <v, alpha_r^vee> for v in simple coordinates
    Rat pair_with_coroot(const std::vector<Rat>& v, int r) const;

    int64_t weyl_order() const;
    std::string root_name(int r) const;  // "a1+a2", "-a1-2a2"

    std::unordered_map<size_t, int> root_lookup;  // hash(coords) -> index
};

bool valid_type(char family, int rank);
int orbit_count(char family, int rank);

RootDatum build_root_datum(char family, int rank, const std::vector<Rat>& k_per_orbit);
RootDatum build_root_datum(char family, int rank, const Rat& k_const = Rat(1));

// theta = -w0 as a linear map on V together with the induced permutation of
// the simple roots. Built by [weyl] from the enumerated group.
struct DiagramInvolution {
    std::vector<int> perm;
    Mat matrix;
};

std::vector<std::vector<Rat>> fundamental_weights(const RootDatum& rd);    // V coords
std::vector<std::vector<Rat>> fundamental_coweights(const RootDatum& rd);  // V^vee coords

// V_J^perp = { v : <v, alpha_j^vee> = 0 for j in J }, basis in V coords.
std::vector<std::vector<Rat>> vj_perp_basis(const RootDatum& rd, const std::vector<int>& J);
// Projection V -> V_J along V_J^perp.
std::vector<Rat> project_to_vj(const RootDatum& rd, const std::vector<int>& J, const std::vector<Rat>& v);
// gamma in V_J^vee = span of the coroots of J, i.e. gamma vanishes on V_J^perp.
bool weight_in_vj_dual(const RootDatum& rd, const std::vector<int>& J, const std::vector<Rat>& gamma);
// nu in (V_J^vee)^perp, i.e. nu(alpha_j) = 0 for all j in J.
bool nu_orthogonal_to_vj(const RootDatum& rd, const std::vector<int>& J, const std::vector<Rat>& nu);

// Isomorphism type of the sub-diagram spanned by J, e.g. "A2xA1".
std::string subset_type(const RootDatum& rd, const std::vector<int>& J);
std::string subset_str(const std::vector<int>& J);

}  // namespace ghecke
