#include "fskel/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fskel {

namespace {

std::string describe_elems(const std::vector<int>& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

std::vector<int> mask_to_vec(std::uint64_t mask, int order) {
  std::vector<int> out;
  for (int x = 0; x < order; ++x)
    if ((mask >> x) & 1u) out.push_back(x);
  return out;
}

}  // namespace

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = a + 1; b < order; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

GroupPtr make_group(int order, std::vector<int> table, int identity,
                    std::vector<std::string> labels, std::string spec,
                    std::optional<std::vector<std::vector<int>>> perm_images) {
  if (order <= 0) throw Error("group order must be positive");
  if (static_cast<int>(table.size()) != order * order)
    throw Error("multiplication table has wrong size");
  if (identity < 0 || identity >= order) throw Error("identity out of range");

  auto g = std::make_shared<FiniteGroup>();
  g->order = order;
  g->table = std::move(table);
  g->identity = identity;
  g->spec = std::move(spec);
  if (labels.empty()) {
    labels.resize(order);
    for (int i = 0; i < order; ++i) labels[i] = std::to_string(i);
  }
  if (static_cast<int>(labels.size()) != order)
    throw Error("label list has wrong size");
  g->labels = std::move(labels);
  g->perm_images = std::move(perm_images);

  // Range + Latin square: each row and column is a permutation of 0..n-1.
  std::vector<char> seen(order);
  for (int a = 0; a < order; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < order; ++b) {
      const int p = g->mul(a, b);
      if (p < 0 || p >= order)
        throw Error("table entry out of range at (" + std::to_string(a) +
                    "," + std::to_string(b) + ")");
      if (seen[p]) throw Error("row " + std::to_string(a) +
                               " is not a permutation (not a Latin square)");
      seen[p] = 1;
    }
  }
  for (int b = 0; b < order; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < order; ++a) {
      const int p = g->mul(a, b);
      if (seen[p]) throw Error("column " + std::to_string(b) +
                               " is not a permutation (not a Latin square)");
      seen[p] = 1;
    }
  }
  for (int x = 0; x < order; ++x) {
    if (g->mul(identity, x) != x || g->mul(x, identity) != x)
      throw Error("identity axiom fails at element " + std::to_string(x));
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
          throw Error("associativity fails at (" + std::to_string(a) + "," +
                      std::to_string(b) + "," + std::to_string(c) + ")");

  g->inverse.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (g->mul(a, b) == identity) {
        g->inverse[a] = b;
        break;
      }
    }
    if (g->inverse[a] < 0) throw Error("no inverse for element " +
                                       std::to_string(a));
  }
  return g;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
  if (!parent_) throw Error("subgroup with null parent");
  const int n = parent_->order;
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
  for (const int x : elements_) {
    if (x < 0 || x >= n) throw Error("subgroup element out of range");
    mask_ |= std::uint64_t{1} << x;
  }
  if (!contains(parent_->identity))
    throw Error("subgroup must contain the identity");
  for (const int a : elements_) {
    if (!contains(parent_->inv(a)))
      throw Error("subgroup not closed under inverse at element " +
                  std::to_string(a));
    for (const int b : elements_)
      if (!contains(parent_->mul(a, b)))
        throw Error("subgroup not closed under product at (" +
                    std::to_string(a) + "," + std::to_string(b) + ")");
  }
  if (n % size() != 0)
    throw Error("subgroup size does not divide group order");  // unreachable
}

Subgroup trivial_subgroup(const GroupPtr& g) {
  return Subgroup(g, {g->identity});
}

Subgroup whole_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->order);
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

Subgroup subgroup_from_mask(const GroupPtr& g, std::uint64_t mask) {
  return Subgroup(g, mask_to_vec(mask, g->order));
}

Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& seed) {
  const int n = g->order;
  for (const int x : seed)
    if (x < 0 || x >= n) throw Error("generator index out of range");
  std::uint64_t mask = std::uint64_t{1} << g->identity;
  for (const int x : seed) mask |= std::uint64_t{1} << x;
  bool grew = true;
  while (grew) {
    grew = false;
    const auto elems = mask_to_vec(mask, n);
    for (const int a : elems) {
      for (const int b : elems) {
        const std::uint64_t bit = std::uint64_t{1} << g->mul(a, b);
        if (!(mask & bit)) {
          mask |= bit;
          grew = true;
        }
      }
    }
  }
  return subgroup_from_mask(g, mask);
}

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g, int bound) {
  if (g->order > bound)
    throw Error("subgroup enumeration refused: group order " +
                std::to_string(g->order) + " exceeds bound " +
                std::to_string(bound) + "; supply subgroups explicitly");
  std::set<std::uint64_t> masks;
  masks.insert(std::uint64_t{1} << g->identity);
  for (int x = 0; x < g->order; ++x)
    masks.insert(subgroup_generated(g, {x}).mask());
  // Close under pairwise joins until fixpoint.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::uint64_t> current(masks.begin(), masks.end());
    for (size_t i = 0; i < current.size(); ++i) {
      for (size_t j = i + 1; j < current.size(); ++j) {
        const auto joined =
            subgroup_generated(g, mask_to_vec(current[i] | current[j],
                                              g->order))
                .mask();
        if (masks.insert(joined).second) grew = true;
      }
    }
  }
  std::vector<Subgroup> out;
  out.reserve(masks.size());
  for (const auto m : masks) out.push_back(subgroup_from_mask(g, m));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return out;
}

namespace {

void require_same_parent(const Subgroup& a, const Subgroup& b) {
  if (a.parent().get() != b.parent().get())
    throw Error("subgroups belong to different parent groups");
}

}  // namespace

bool is_normal_in(const Subgroup& k, const Subgroup& h) {
  require_same_parent(k, h);
  if ((k.mask() & h.mask()) != k.mask())
    throw Error("is_normal_in requires K to be contained in H");
  const auto& g = *k.parent();
  for (const int x : h.elements()) {
    const int xi = g.inv(x);
    for (const int a : k.elements())
      if (!k.contains(g.mul(g.mul(x, a), xi))) return false;
  }
  return true;
}

Subgroup normalizer(const Subgroup& k) {
  const auto& gp = k.parent();
  const auto& g = *gp;
  std::vector<int> elems;
  for (int x = 0; x < g.order; ++x) {
    const int xi = g.inv(x);
    bool ok = true;
    for (const int a : k.elements()) {
      if (!k.contains(g.mul(g.mul(x, a), xi))) {
        ok = false;
        break;
      }
    }
    if (ok) elems.push_back(x);
  }
  return Subgroup(gp, std::move(elems));
}

Subgroup intersect_subgroup(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  return subgroup_from_mask(a.parent(), a.mask() & b.mask());
}

Subgroup product_subgroup(const Subgroup& k1, const Subgroup& k2) {
  require_same_parent(k1, k2);
  const auto& g = *k1.parent();
  const auto n1 = normalizer(k1);
  const auto n2 = normalizer(k2);
  const bool normalized = ((k2.mask() & n1.mask()) == k2.mask()) ||
                          ((k1.mask() & n2.mask()) == k1.mask());
  std::uint64_t product = 0;
  for (const int a : k1.elements())
    for (const int b : k2.elements())
      product |= std::uint64_t{1} << g.mul(a, b);
  // Closure check with witness.
  const auto elems = mask_to_vec(product, g.order);
  for (const int a : elems) {
    for (const int b : elems) {
      const int p = g.mul(a, b);
      if (!((product >> p) & 1u)) {
        throw Error(
            "product set K1K2 is not closed (witness pair " +
            std::to_string(a) + "*" + std::to_string(b) + " = " +
            std::to_string(p) + " outside " + describe_elems(elems) +
            "); neither factor normalizes the other");
      }
    }
  }
  if (!normalized)
    throw Error("product_subgroup precondition: neither factor normalizes "
                "the other");
  Subgroup result = subgroup_from_mask(k1.parent(), product);
  const auto inter = intersect_subgroup(k1, k2);
  if (result.size() * inter.size() != k1.size() * k2.size())
    throw Error("|K1K2|*|K1 n K2| != |K1|*|K2|");  // unreachable
  return result;
}

Subgroup join_subgroup(const Subgroup& b1, const Subgroup& b2) {
  require_same_parent(b1, b2);
  return subgroup_generated(b1.parent(),
                            mask_to_vec(b1.mask() | b2.mask(),
                                        b1.parent()->order));
}

namespace {

CosetPartition make_cosets(const Subgroup& h, CosetPartition::Side side) {
  const auto& g = *h.parent();
  CosetPartition part{h, side, {}, {}, std::vector<int>(g.order, -1)};
  for (int x = 0; x < g.order; ++x) {
    if (part.class_of[x] >= 0) continue;
    const int cls = static_cast<int>(part.classes.size());
    std::vector<int> members;
    for (const int a : h.elements()) {
      const int y = side == CosetPartition::Side::right ? g.mul(a, x)
                                                        : g.mul(x, a);
      members.push_back(y);
    }
    std::sort(members.begin(), members.end());
    for (const int y : members) part.class_of[y] = cls;
    part.representatives.push_back(members.front());
    part.classes.push_back(std::move(members));
  }
  return part;
}

}  // namespace

CosetPartition right_cosets(const Subgroup& h) {
  return make_cosets(h, CosetPartition::Side::right);
}

CosetPartition left_cosets(const Subgroup& h) {
  return make_cosets(h, CosetPartition::Side::left);
}

GroupHom make_hom(GroupPtr source, GroupPtr target, std::vector<int> map) {
  if (static_cast<int>(map.size()) != source->order)
    throw Error("hom map has wrong size");
  for (const int y : map)
    if (y < 0 || y >= target->order) throw Error("hom image out of range");
  if (map[source->identity] != target->identity)
    throw Error("hom does not preserve the identity");
  for (int a = 0; a < source->order; ++a)
    for (int b = 0; b < source->order; ++b)
      if (map[source->mul(a, b)] != target->mul(map[a], map[b]))
        throw Error("map is not a homomorphism at (" + std::to_string(a) +
                    "," + std::to_string(b) + ")");
  return GroupHom{std::move(source), std::move(target), std::move(map)};
}

RealizedSubgroup realize(const Subgroup& h) {
  const auto& g = *h.parent();
  const int m = h.size();
  std::vector<int> from_parent(g.order, -1);
  for (int i = 0; i < m; ++i) from_parent[h.elements()[i]] = i;
  std::vector<int> table(m * m);
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    labels[i] = g.label(h.elements()[i]);
    for (int j = 0; j < m; ++j)
      table[i * m + j] = from_parent[g.mul(h.elements()[i], h.elements()[j])];
  }
  std::optional<std::vector<std::vector<int>>> perms;
  if (g.perm_images) {
    perms.emplace();
    for (const int x : h.elements()) perms->push_back((*g.perm_images)[x]);
  }
  auto grp = make_group(m, std::move(table), from_parent[g.identity],
                        std::move(labels),
                        "sub(" + g.spec + ";" + describe_elems(h.elements()) +
                            ")",
                        std::move(perms));
  return RealizedSubgroup{std::move(grp), h.elements(), std::move(from_parent)};
}

Quotient quotient_group(const Subgroup& h, const Subgroup& k) {
  if (!is_normal_in(k, h))
    throw Error("quotient_group requires K normal in H");
  const auto& g = *h.parent();
  RealizedSubgroup rh = realize(h);

  // Cosets of K inside H, in parent element indices, ordered by min element.
  CosetPartition part{k,
                      CosetPartition::Side::right,
                      {},
                      {},
                      std::vector<int>(g.order, -1)};
  for (const int x : h.elements()) {
    if (part.class_of[x] >= 0) continue;
    const int cls = static_cast<int>(part.classes.size());
    std::vector<int> members;
    for (const int a : k.elements()) members.push_back(g.mul(a, x));
    std::sort(members.begin(), members.end());
    for (const int y : members) part.class_of[y] = cls;
    part.representatives.push_back(members.front());
    part.classes.push_back(std::move(members));
  }

  const int q = static_cast<int>(part.classes.size());
  std::vector<int> qtable(q * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      qtable[i * q + j] =
          part.class_of[g.mul(part.representatives[i],
                              part.representatives[j])];
  std::vector<std::string> qlabels(q);
  for (int i = 0; i < q; ++i)
    qlabels[i] = "[" + g.label(part.representatives[i]) + "]";
  auto qgroup = make_group(
      q, std::move(qtable), part.class_of[g.identity], std::move(qlabels),
      "quot(" + g.spec + ";" + describe_elems(k.elements()) + ")");

  std::vector<int> map(rh.group->order);
  for (int i = 0; i < rh.group->order; ++i)
    map[i] = part.class_of[rh.to_parent[i]];
  GroupHom proj = make_hom(rh.group, qgroup, std::move(map));
  return Quotient{std::move(qgroup), std::move(proj), std::move(rh),
                  std::move(part)};
}

InverseLimit inverse_limit_iso(const Subgroup& o,
                               const std::vector<Subgroup>& chain) {
  if (chain.empty()) throw Error("inverse limit of an empty chain");
  for (const auto& k : chain) {
    require_same_parent(k, o);
    if ((k.mask() & o.mask()) != k.mask())
      throw Error("chain member is not contained in O");
    if (!is_normal_in(k, o)) throw Error("chain member is not normal in O");
  }
  for (size_t i = 0; i + 1 < chain.size(); ++i)
    if ((chain[i + 1].mask() & chain[i].mask()) != chain[i + 1].mask())
      throw Error("chain is not decreasing at position " + std::to_string(i));

  const int m = static_cast<int>(chain.size());
  std::vector<Quotient> quotients;
  quotients.reserve(m);
  for (const auto& k : chain) quotients.push_back(quotient_group(o, k));

  // Bonding maps phi_n : O/K_{n+1} -> O/K_n via representatives.
  std::vector<std::vector<int>> phi(m > 1 ? m - 1 : 0);
  for (int n = 0; n + 1 < m; ++n) {
    const auto& fine = quotients[n + 1];
    phi[n].resize(fine.group->order);
    for (int c = 0; c < fine.group->order; ++c)
      phi[n][c] = quotients[n].classes.class_of[fine.classes.representatives[c]];
  }

  // Enumerate all compatible tuples by DFS in lexicographic order.
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur(m);
  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth == m) {
      tuples.push_back(cur);
      return;
    }
    for (int c = 0; c < quotients[depth].group->order; ++c) {
      if (depth > 0 && phi[depth - 1][c] != cur[depth - 1]) continue;
      cur[depth] = c;
      self(self, depth + 1);
    }
  };
  dfs(dfs, 0);

  std::map<std::vector<int>, int> tuple_index;
  for (size_t i = 0; i < tuples.size(); ++i)
    tuple_index[tuples[i]] = static_cast<int>(i);

  const int p = static_cast<int>(tuples.size());
  std::vector<int> ptable(p * p);
  std::vector<int> scratch(m);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      for (int n = 0; n < m; ++n)
        scratch[n] = quotients[n].group->mul(tuples[i][n], tuples[j][n]);
      const auto it = tuple_index.find(scratch);
      if (it == tuple_index.end())
        throw Error("inverse limit is not closed under product");  // unreachable
      ptable[i * p + j] = it->second;
    }
  }
  std::vector<int> id_tuple(m);
  for (int n = 0; n < m; ++n) id_tuple[n] = quotients[n].group->identity;
  std::vector<std::string> plabels(p);
  for (int i = 0; i < p; ++i) {
    std::string l = "(";
    for (int n = 0; n < m; ++n)
      l += (n ? "," : "") + quotients[n].group->label(tuples[i][n]);
    plabels[i] = l + ")";
  }
  auto limit = make_group(p, std::move(ptable), tuple_index.at(id_tuple),
                          std::move(plabels),
                          "invlim(" + o.parent()->spec + ")");

  // K = intersection of the chain; f(xK) = (q_n(x))_n.
  std::uint64_t kmask = chain.front().mask();
  for (const auto& k : chain) kmask &= k.mask();
  Quotient base = quotient_group(o, subgroup_from_mask(o.parent(), kmask));
  std::vector<int> fmap(base.group->order);
  std::vector<char> hit(p, 0);
  for (int c = 0; c < base.group->order; ++c) {
    const int rep = base.classes.representatives[c];
    for (int n = 0; n < m; ++n)
      scratch[n] = quotients[n].classes.class_of[rep];
    const auto it = tuple_index.find(scratch);
    if (it == tuple_index.end())
      throw Error("image of O/K escapes the inverse limit");
    fmap[c] = it->second;
    if (hit[it->second]) throw Error("inverse-limit map is not injective");
    hit[it->second] = 1;
  }
  for (const char h : hit)
    if (!h) throw Error("inverse-limit map is not surjective");
  GroupHom iso = make_hom(base.group, limit, std::move(fmap));
  return InverseLimit{std::move(limit), std::move(iso), std::move(base),
                      std::move(tuples)};
}

}  // namespace fskel
