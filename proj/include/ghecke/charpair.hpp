#pragma once

#include "ghecke/hecke.hpp"

namespace ghecke {

// Where a class function lives: ordinary classes of W_J or twisted classes
// of its theta-coset, with J = all simple indices giving the full group.
struct ClassDomain {
    const WeylContext* ctx = nullptr;
    std::vector<int> J;
    bool twisted = false;
    std::vector<int32_t> elements;   // elements of W_J, ascending global indices
    std::vector<int32_t> rep;        // class representatives
    std::vector<int64_t> size;
    std::vector<int32_t> class_of;   // global element index -> class id (-1 outside)
    std::vector<Rat> cdet;           // det(1 - w) resp. det(1 - w theta) per class

    int count() const { return static_cast<int>(rep.size()); }
    int64_t group_order() const { return static_cast<int64_t>(elements.size()); }
    bool is_full() const { return static_cast<int>(J.size()) == ctx->rd().rank; }
};

ClassDomain full_domain(const WeylContext& ctx, bool twisted);
// Twisted parabolic domains require theta(J) = J.
ClassDomain parabolic_domain(const WeylContext& ctx, const std::vector<int>& J, bool twisted);

struct ClassFn {
    const ClassDomain* dom = nullptr;
    std::vector<Rat> v;
};

// tr_X(w) per class; X must carry t-generators for the domain's J.
ClassFn trace_class_function(const ClassDomain& dom, const HModule& x);
// tr_X(w theta) = tr(pi(t_w) Theta) per twisted class.
ClassFn twisted_trace_class_function(const ClassDomain& dom, const HModule& x, const Mat& theta_mat);
// i-th elementary symmetric function of the eigenvalues of w on V.
ClassFn exterior_character(const ClassDomain& dom, int i);

Rat elliptic_pairing(const ClassFn& f, const ClassFn& g);
Rat twisted_elliptic_pairing(const ClassFn& f, const ClassFn& g);

// sum over the group (or coset) of f * g, class-weighted
Rat class_sum(const ClassFn& f, const ClassFn& g);

ClassFn induce_class_function(const ClassDomain& target, const ClassFn& f);
ClassFn restrict_class_function(const ClassDomain& target, const ClassFn& f);

// f lies in the radical of the twisted elliptic pairing iff it vanishes on
// every elliptic twisted class.
bool radical_membership(const ClassFn& f);

int ell_space_dimension(const WeylContext& ctx, bool twisted);

long partition_count_distinct(int n);
long partition_count_odd_number_of_parts(int n);
// 'A' -> distinct parts, 'D' -> odd number of parts
long partition_oracle(char family, int n);

// The four quantities of the parabolic orthogonality chain; extended class
// functions are given as (even, odd) = (ordinary, twisted) pairs.
struct FrobeniusChain {
    Rat q_direct, q_induction, q_reciprocity, q_parabolic;
    bool holds() const { return q_direct == q_induction && q_induction == q_reciprocity && q_reciprocity == q_parabolic; }
};
FrobeniusChain frobenius_trick_check(const WeylContext& ctx, const std::vector<int>& J,
                                     const ClassFn& f_even, const ClassFn& f_odd,
                                     const ClassFn& g_even, const ClassFn& g_odd);

}  // namespace ghecke
