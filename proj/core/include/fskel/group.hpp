#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fskel/error.hpp"

namespace fskel {

inline constexpr int kDefaultMaxOrder = 64;
inline constexpr int kDefaultEnumBound = 24;

// A finite group given by its full multiplication table. Element identity is
// positional: elements are the dense indices 0..order-1 and never move after
// construction, so reports and golden files are stable.
struct FiniteGroup {
  int order = 0;
  std::vector<int> table;  // row-major: table[a*order + b] = a*b
  int identity = 0;
  std::vector<int> inverse;
  std::vector<std::string> labels;
  std::string spec;  // originating spec string, or a derived description

  // One-line permutation images (1-based points) for groups built from
  // permutations; enables cycle-notation lookup of elements.
  std::optional<std::vector<std::vector<int>>> perm_images;

  int mul(int a, int b) const { return table[a * order + b]; }
  int inv(int a) const { return inverse[a]; }
  bool is_abelian() const;
  const std::string& label(int x) const { return labels[x]; }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Validates the Latin-square, identity, and associativity invariants (exact
// integer checks) and fills in inverses. Throws Error on any violation.
GroupPtr make_group(int order, std::vector<int> table, int identity,
                    std::vector<std::string> labels, std::string spec,
                    std::optional<std::vector<std::vector<int>>> perm_images =
                        std::nullopt);

// Grammar: cyclic:<n> | dihedral:<2n> | symmetric:<n> | quaternion |
//          product:<spec>,<spec> | perm:<cycle-list;cycle-list;...>
GroupPtr construct_group(const std::string& spec,
                         int max_order = kDefaultMaxOrder);

class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<int> elements);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }
  bool contains(int x) const { return (mask_ >> x) & 1u; }
  std::uint64_t mask() const { return mask_; }
  bool is_whole_group() const { return size() == parent_->order; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_.get() == b.parent_.get() && a.mask_ == b.mask_;
  }

 private:
  GroupPtr parent_;
  std::vector<int> elements_;  // sorted ascending
  std::uint64_t mask_ = 0;
};

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup whole_subgroup(const GroupPtr& g);
Subgroup subgroup_from_mask(const GroupPtr& g, std::uint64_t mask);

// Smallest subgroup containing `seed`; closure by product saturation.
Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& seed);

// Complete, duplicate-free list of subgroups, sorted by (size, elements).
// Refuses groups larger than `bound`.
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g,
                                          int bound = kDefaultEnumBound);

// true iff hKh^-1 = K for all h in H. Requires K <= H (throws otherwise).
bool is_normal_in(const Subgroup& k, const Subgroup& h);

// N_G(K) = {x : xKx^-1 = K}, in the full parent group.
Subgroup normalizer(const Subgroup& k);

Subgroup intersect_subgroup(const Subgroup& a, const Subgroup& b);

// Set product K1K2; requires one factor to normalize the other so the
// product set is a subgroup. Reports a witness pair if closure fails.
Subgroup product_subgroup(const Subgroup& k1, const Subgroup& k2);

// Subgroup generated by the union.
Subgroup join_subgroup(const Subgroup& b1, const Subgroup& b2);

struct CosetPartition {
  enum class Side { right, left };
  Subgroup subgroup;
  Side side;
  std::vector<std::vector<int>> classes;  // ordered by minimal element
  std::vector<int> representatives;      // minimal element of each class
  std::vector<int> class_of;             // parent element -> class index

  const std::vector<int>& class_containing(int x) const {
    return classes[class_of[x]];
  }
};

CosetPartition right_cosets(const Subgroup& h);
CosetPartition left_cosets(const Subgroup& h);

struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> map;  // source element -> target element

  int operator()(int x) const { return map[x]; }
};

// Checks map(a*b) = map(a)*map(b) and map(e) = e; throws on failure.
GroupHom make_hom(GroupPtr source, GroupPtr target, std::vector<int> map);

// A subgroup realized as a standalone FiniteGroup with canonical indexing
// (local index i corresponds to elements()[i] in the parent).
struct RealizedSubgroup {
  GroupPtr group;
  std::vector<int> to_parent;
  std::vector<int> from_parent;  // -1 outside the subgroup
};

RealizedSubgroup realize(const Subgroup& h);

struct Quotient {
  GroupPtr group;           // H/K on coset classes
  GroupHom projection;      // realized H -> H/K
  RealizedSubgroup numerator;
  CosetPartition classes;   // cosets of K inside H, in parent indices
};

// Requires K normal in H. Quotient element i is classes.classes[i].
Quotient quotient_group(const Subgroup& h, const Subgroup& k);

struct InverseLimit {
  GroupPtr limit;     // compatible tuples under componentwise product
  GroupHom iso;       // O/K -> limit, K = intersection of the chain
  Quotient base;      // the quotient O/K
  std::vector<std::vector<int>> tuples;  // tuple of quotient elements per limit element
};

// chain must be decreasing (K1 >= K2 >= ...), every member normal in O.
// Builds the inverse limit of the quotients O/K_n and the canonical
// isomorphism from O/(intersection); verifies it is a bijective hom.
InverseLimit inverse_limit_iso(const Subgroup& o,
                               const std::vector<Subgroup>& chain);

// Resolves a comma/whitespace-separated generator list into element indices.
// Tokens may be element labels, plain indices, or cycle notation such as
// "(1 2)(3 4)" when the group carries a permutation structure.
std::vector<int> parse_element_tokens(const GroupPtr& g,
                                      const std::string& text);

}  // namespace fskel
