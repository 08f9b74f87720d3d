#pragma once

#include "ghecke/rootsys.hpp"

#include <memory>

namespace ghecke {

// Fully enumerated Weyl group. Element identity is the tuple of images of
// the simple roots as signed root indices; multiplication against the
// generator tables is O(rank).
struct WeylGroupTable {
    const RootDatum* datum = nullptr;
    int rank = 0;
    int nsigned = 0;
    int64_t order = 0;

    std::vector<int32_t> keys;          // order x rank
    std::vector<int32_t> lmult_tab;     // order x rank: index of s_j * w
    std::vector<int32_t> rmult_tab;     // order x rank: index of w * s_j
    std::vector<int32_t> inv;           // inverse index
    std::vector<int16_t> len;
    std::vector<int32_t> parent;        // BFS discovery: w = s_pgen * parent
    std::vector<int8_t> pgen;
    std::vector<int32_t> sperm;         // rank x nsigned: s_j acting on signed roots
    std::vector<int32_t> refl;          // element index of s_beta per positive root
    int32_t w0 = 0;

    int32_t id() const { return 0; }
    int32_t key_of(int32_t w, int i) const { return keys[static_cast<size_t>(w) * rank + i]; }
    int32_t lmult(int j, int32_t w) const { return lmult_tab[static_cast<size_t>(w) * rank + j]; }
    int32_t rmult(int32_t w, int j) const { return rmult_tab[static_cast<size_t>(w) * rank + j]; }
    int length(int32_t w) const { return len[w]; }

    std::vector<int> word(int32_t w) const;  // reduced word, left-to-right product
    std::string word_str(int32_t w) const;   // "s1 s2 s1", "e" for the identity
    int32_t from_word(const std::vector<int>& word) const;
    int32_t mult(int32_t a, int32_t b) const;
    // image of a signed root under w (word walk, O(len))
    int32_t root_image(int32_t w, int32_t signed_root) const;
    Mat matrix_of(int32_t w) const;  // action on V in simple coordinates
    // action on V^vee coordinate vectors: gamma -> w(gamma)
    std::vector<Rat> dual_apply(int32_t w, const std::vector<Rat>& gamma) const;
    bool keeps_positive(int32_t w, const std::vector<int>& J) const;  // w(alpha_j) > 0 for j in J
};

WeylGroupTable enumerate_group(const RootDatum& rd, int64_t cap = 10000000);

DiagramInvolution theta_involution(const WeylGroupTable& wt);
DiagramInvolution theta_involution(const RootDatum& rd);  // enumerates internally

int32_t longest_element(const WeylGroupTable& wt, const std::vector<int>& J);
std::vector<int32_t> min_coset_reps(const WeylGroupTable& wt, const std::vector<int>& J);
// w = x y, x in W^J, y in W_J, lengths additive
std::pair<int32_t, int32_t> parabolic_decompose(const WeylGroupTable& wt, int32_t w, const std::vector<int>& J);
std::vector<int32_t> parabolic_elements(const WeylGroupTable& wt, const std::vector<int>& J);

// theta(w) = w0 w w0 computed through the signed-root tables
int32_t theta_element(const WeylGroupTable& wt, const DiagramInvolution& theta, int32_t w);

// det_V(1 - w) or det_V(1 - w theta)
Rat det_ellipticity(const WeylGroupTable& wt, int32_t w, bool twisted,
                    const DiagramInvolution* theta = nullptr);

struct ConjClassSet {
    bool twisted = false;
    std::vector<int32_t> rep;        // minimal (length, word) member
    std::vector<int64_t> size;
    std::vector<int32_t> class_of;   // per element index
    int count() const { return static_cast<int>(rep.size()); }
};

ConjClassSet conjugacy_classes(const WeylGroupTable& wt);
ConjClassSet twisted_classes(const WeylGroupTable& wt, const DiagramInvolution& theta);

int elliptic_class_count(const WeylGroupTable& wt, const ConjClassSet& cs,
                         const DiagramInvolution* theta);

int64_t subset_stabilizer_count(const WeylGroupTable& wt, const std::vector<int>& J);
std::vector<std::vector<int>> rigid_subsets(const WeylGroupTable& wt);
std::vector<std::vector<int>> theta_stable_proper_subsets(const WeylGroupTable& wt,
                                                          const DiagramInvolution& theta);

// W rtimes <theta>: elements (w, eps) encoded as w + eps * |W|.
struct ExtendedGroupTable {
    const WeylGroupTable* base = nullptr;
    DiagramInvolution theta;
    std::vector<int32_t> theta_of;  // index of theta(w) per element
    ConjClassSet coset_classes;     // classes of the eps=1 coset, on W indices

    int64_t order() const { return 2 * base->order; }
    int64_t encode(int32_t w, int eps) const { return w + static_cast<int64_t>(eps) * base->order; }
    int32_t w_part(int64_t g) const { return static_cast<int32_t>(g % base->order); }
    int eps_part(int64_t g) const { return static_cast<int>(g / base->order); }
    int64_t mult(int64_t a, int64_t b) const;
    int64_t inverse(int64_t g) const;
};

ExtendedGroupTable build_extended_group(const WeylGroupTable& wt, const DiagramInvolution& theta);

// Everything downstream wants the same bundle; the datum is heap-pinned so
// the internal pointers survive moves of the context.
struct WeylContext {
    std::unique_ptr<RootDatum> datum;
    WeylGroupTable table;
    DiagramInvolution theta;
    ConjClassSet classes;    // ordinary
    ConjClassSet tclasses;   // twisted
    std::vector<Rat> class_det;   // det(1 - w) per ordinary class
    std::vector<Rat> tclass_det;  // det(1 - w theta) per twisted class

    const RootDatum& rd() const { return *datum; }
};

WeylContext make_context(char family, int rank, const std::vector<Rat>& k_per_orbit,
                         int64_t cap = 10000000);
WeylContext make_context(char family, int rank, const Rat& k_const = Rat(1),
                         int64_t cap = 10000000);

}  // namespace ghecke
