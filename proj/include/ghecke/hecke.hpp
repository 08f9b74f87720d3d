#pragma once

#include "ghecke/weyl.hpp"

namespace ghecke {

// A finite-dimensional module over H (support = all simple indices) or over
// a parabolic subalgebra H_J (support = J). The v generators always cover
// the whole of V: H_J contains all of S(V).
struct HModule {
    const RootDatum* datum = nullptr;
    std::vector<int> support;  // sorted simple indices with t-generators
    int dim = 0;
    std::vector<Mat> t;  // parallel to support
    std::vector<Mat> v;  // one per simple basis vector of V
    std::string label;

    bool full_support() const { return static_cast<int>(support.size()) == datum->rank; }
    const Mat& t_of(int simple_index) const;
    bool has_t(int simple_index) const;
    // action of an arbitrary v in V, simple coordinates
    Mat v_of(const std::vector<Rat>& vec) const;
};

struct RelationViolation {
    std::string relation;  // "t2", "braid", "vcomm", "cross", "shape"
    int i = -1, j = -1;
};

struct RelationReport {
    std::vector<RelationViolation> items;
    bool ok() const { return items.empty(); }
    std::string str() const;
};

RelationReport check_relations(const HModule& x);

// product of t-generators along a reduced word of w (w must lie in W_support)
Mat group_action_matrix(const HModule& x, const WeylGroupTable& wt, int32_t w);

// matrices for a parent-closed element list (all of W, or any W_J), built
// incrementally along the BFS tree
std::vector<Mat> group_matrices_for(const HModule& x, const WeylGroupTable& wt,
                                    const std::vector<int32_t>& elements);

// pi(v) - 1/2 sum_{alpha>0} k_alpha <v, alpha^vee> pi(t_{s_alpha}); full support only
Mat tilde_matrix(const HModule& x, const WeylGroupTable& wt, const std::vector<Rat>& vec);

struct WeightMultiset {
    std::vector<std::pair<std::vector<Rat>, int>> entries;  // (gamma, multiplicity)
    int total() const;
    std::string str() const;
    bool same_as(const WeightMultiset& o) const;  // multiset equality
};

struct weight_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Joint generalized eigenvalues of the commuting v-generators; throws
// weight_error when an eigenvalue is irrational.
WeightMultiset weights(const HModule& x);
// Weight spaces with bases: columns of the i-th matrix span the generalized
// weight space of entries[i].
struct WeightSpaces {
    WeightMultiset multiset;
    std::vector<Mat> bases;
};
WeightSpaces weight_spaces(const HModule& x);

struct CentralCharacter {
    bool single = false;
    // lexicographically minimal orbit representatives, one per orbit
    std::vector<std::vector<Rat>> orbit_reps;
};
CentralCharacter central_character(const HModule& x, const WeylGroupTable& wt);
bool same_central_character(const CentralCharacter& a, const CentralCharacter& b);

bool is_tempered(const HModule& x);
bool is_discrete_series(const HModule& x);

// One-dimensional module from a sign choice on the simple roots; the cross
// relation forces the weight gamma(alpha) = sign(alpha) k_alpha.
HModule one_dim_module(const RootDatum& rd, const std::vector<int>& signs);
// Same over H_J with an extra character nu of S(V_J^perp); signs indexed by J.
HModule one_dim_parabolic(const RootDatum& rd, const std::vector<int>& J,
                          const std::vector<int>& signs, const std::vector<Rat>& nu);

HModule steinberg_module(const RootDatum& rd);
HModule trivial_module(const RootDatum& rd);

// X(J, U, nu) = H otimes_{H_J} (U otimes C_nu), basis t_x otimes u_m over
// x in W^J ordered by (length, index).
HModule induced_module(const WeylContext& ctx, const std::vector<int>& J, const HModule& u,
                       const std::vector<Rat>& nu, const std::string& label = "");
// principal series X(emptyset, C_gamma)
HModule principal_series(const WeylContext& ctx, const std::vector<Rat>& gamma);

HModule direct_sum(const HModule& a, const HModule& b);

// X^theta: pi(h) -> pi(theta(h))
HModule theta_twist(const WeylContext& ctx, const HModule& x);

struct ThetaStructure {
    Mat theta_mat;
};

enum class ThetaSearchStatus { found, not_isomorphic, ambiguous, non_rational_scale };

struct ThetaSearch {
    ThetaSearchStatus status = ThetaSearchStatus::not_isomorphic;
    int intertwiner_dim = 0;
    Mat theta;  // valid when status == found: theta^2 = Id, normalized sign
    bool found() const { return status == ThetaSearchStatus::found; }
};

ThetaSearch find_theta_structure(const WeylContext& ctx, const HModule& x);

// Closed-form structure on a principal series with theta-fixed gamma:
// t_x basis vectors permute by x -> theta(x). Verified against the module
// relations on construction.
ThetaStructure principal_series_theta_structure(const WeylContext& ctx, const HModule& ps,
                                                const std::vector<Rat>& gamma);

// Res_{H_J} X(J,U) = U + Y by H_J-central-character blocks (weights inside
// V_J^vee against the rest); requires J rigid.
struct SplitReport {
    int u_dim = 0, y_dim = 0;
    bool u_matches_embedding = false;  // U-block equals span{t_e otimes u}
    bool disjoint_central_characters = false;
    bool hj_invariant = false;
    Mat u_basis, y_basis;
    bool ok() const { return u_matches_embedding && disjoint_central_characters && hj_invariant; }
};
SplitReport parabolic_restriction_split(const WeylContext& ctx, const HModule& x,
                                        const std::vector<int>& J, const HModule& u);

// Restriction of a full module to H_J (drops t-generators outside J).
HModule restrict_module(const HModule& x, const std::vector<int>& J);

}  // namespace ghecke
