#pragma once

#include "ghecke/charpair.hpp"

#include <optional>

namespace ghecke {

// Basis of Hom_{W_J}(Res X otimes wedge^i V, Res Y); columns of each element
// are indexed by (X-basis a, lex subset s) as a * C(n,i) + s.
struct HomBasis {
    int degree = 0;
    int dim_x = 0, dim_y = 0, blocks = 0;
    std::vector<Mat> elems;
    Mat flat;           // ambient column per element, row-major flattening
    SpanSolver solver;  // coordinates in this basis
    int dim() const { return static_cast<int>(elems.size()); }
};

// dim Hom via the character inner product over the scope's classes.
long hom_w_dim_oracle(const ClassDomain& scope, const HModule& x, const HModule& y, int i);

// Group-averaging projector applied to elementary maps until the character
// dimension is reached.
HomBasis hom_w_basis(const ClassDomain& scope, const HModule& x, const HModule& y, int i,
                     Exec ex = Exec::parallel);
// Reference route: exact null space of the stacked equivariance system.
HomBasis hom_w_basis_nullspace(const ClassDomain& scope, const HModule& x, const HModule& y,
                               int i, Exec ex = Exec::serial);

// Matrix of the induced differential Hom_i -> Hom_{i+1} in the given bases.
Mat koszul_d_star(const HModule& x, const HModule& y, const HomBasis& from, const HomBasis& to);
// Same map built from the tilde generators; equal to koszul_d_star.
Mat koszul_d_star_tilde(const WeylContext& ctx, const HModule& x, const HModule& y,
                        const HomBasis& from, const HomBasis& to);
// theta* on Hom_i in basis coordinates.
Mat theta_star_matrix(const WeylContext& ctx, const HModule& x, const HModule& y,
                      const HomBasis& basis, const Mat& theta_x, const Mat& theta_y);

struct ExtResult {
    std::vector<long> dims;                          // degree 0..n
    std::optional<std::vector<Rat>> theta_traces;    // per degree
    long ep = 0;
    std::optional<Rat> ep_theta;
    std::optional<std::vector<long>> ext_extended_dims;
    std::string str() const;
};

struct ExtOptions {
    Exec ex = Exec::parallel;
    long unknown_cap = 100000;  // per-degree solver cap on dimX * C(n,i) * dimY
    bool verify_tilde = false;  // assert the tilde route gives the same differential
};

ExtResult ext_dims(const WeylContext& ctx, const HModule& x, const HModule& y,
                   const ExtOptions& opts = {});
ExtResult theta_star_on_ext(const WeylContext& ctx, const HModule& x, const HModule& y,
                            const Mat& theta_x, const Mat& theta_y, const ExtOptions& opts = {});

long ep_pair(const WeylContext& ctx, const HModule& x, const HModule& y,
             const ExtOptions& opts = {});
Rat ep_theta_pair(const WeylContext& ctx, const HModule& x, const HModule& y, const Mat& theta_x,
                  const Mat& theta_y, const ExtOptions& opts = {});

// (dims[i] + traces[i]) / 2, checked to be non-negative integers.
std::vector<long> extended_dims_from(const ExtResult& r);

struct RigidReport {
    std::vector<int> J;
    int r = 0;
    HModule x;
    Mat theta;
    ExtResult ext;
    Rat ep_theta_char;   // twisted character route
    Rat ep_char;         // untwisted character route
    bool full_pipeline = false;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Builds X(J, St_J, 0) and checks the dimension, trace, pairing, split and
// self-duality assertions; full_pipeline = false limits to the character
// level plus the restriction split.
RigidReport rigid_verification(const WeylContext& ctx, const std::vector<int>& J,
                               bool full_pipeline = true, const ExtOptions& opts = {});

struct DeformReport {
    bool distinct_central_characters = false;
    bool ext_all_zero = false;
    bool res_w_theta_fixed = false;  // Res_W X_nu isomorphic to Res_W X_nu^theta
    bool ok() const { return distinct_central_characters && ext_all_zero; }
};
DeformReport deformation_check(const WeylContext& ctx, const std::vector<int>& J, const HModule& u,
                               const std::vector<Rat>& nu, const ExtOptions& opts = {});

}  // namespace ghecke
