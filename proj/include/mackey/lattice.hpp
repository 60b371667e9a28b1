#pragma once

#include "mackey/group.hpp"

#include <memory>
#include <set>

namespace mackey {

struct Subgroup {
  int id = -1;
  std::vector<int> elements;  // sorted
  std::vector<bool> member;   // indexed by group element

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const { return member[g]; }
};

/// Subgroup generated by a set of elements.
inline std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<int> elems{0};
  in[0] = true;
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (int s : gens) {
      int x = g.mul(elems[head], s);
      if (!in[x]) {
        in[x] = true;
        elems.push_back(x);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

/// All subgroups of a finite group with containment, conjugation and normalizers.
///
/// Subgroups are ordered by (order, sorted element list), so index 0 is the trivial
/// subgroup and the last index is the whole group.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(FiniteGroup group) : group_(std::move(group)) {
    const FiniteGroup& g = group_;
    std::set<std::vector<int>> found;
    for (int x = 0; x < g.order(); ++x) found.insert(generated_subgroup(g, {x}));
    // close under pairwise joins until nothing new appears
    std::vector<std::vector<int>> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
      std::vector<std::vector<int>> fresh;
      std::vector<std::vector<int>> all(found.begin(), found.end());
      for (const auto& a : frontier)
        for (const auto& b : all) {
          std::vector<int> gens = a;
          gens.insert(gens.end(), b.begin(), b.end());
          auto j = generated_subgroup(g, gens);
          if (found.insert(j).second) fresh.push_back(std::move(j));
        }
      frontier = std::move(fresh);
    }
    std::vector<std::vector<int>> sorted(found.begin(), found.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      Subgroup s;
      s.id = static_cast<int>(i);
      s.elements = sorted[i];
      s.member.assign(g.order(), false);
      for (int x : s.elements) s.member[x] = true;
      if (g.order() % s.order() != 0) throw Error("subgroup order violates Lagrange");
      index_.emplace(s.elements, s.id);
      subgroups_.push_back(std::move(s));
    }
    const int n = size();
    leq_.assign(n, std::vector<char>(n, 0));
    for (int k = 0; k < n; ++k)
      for (int h = 0; h < n; ++h) {
        bool in = subgroups_[k].order() <= subgroups_[h].order();
        if (in)
          for (int x : subgroups_[k].elements)
            if (!subgroups_[h].member[x]) {
              in = false;
              break;
            }
        leq_[k][h] = in;
      }
    conj_.assign(g.order(), std::vector<int>(n));
    for (int x = 0; x < g.order(); ++x)
      for (int h = 0; h < n; ++h) {
        std::vector<int> e;
        for (int y : subgroups_[h].elements) e.push_back(g.conjugate(x, y));
        std::sort(e.begin(), e.end());
        conj_[x][h] = index_.at(e);
      }
    class_of_.assign(n, -1);
    normalizer_.assign(n, -1);
    for (int h = 0; h < n; ++h) {
      if (class_of_[h] < 0) {
        const int c = static_cast<int>(class_reps_.size());
        class_reps_.push_back(h);
        std::vector<int> members;
        for (int x = 0; x < g.order(); ++x) {
          int k = conj_[x][h];
          if (class_of_[k] < 0) {
            class_of_[k] = c;
            members.push_back(k);
          }
        }
        std::sort(members.begin(), members.end());
        class_members_.push_back(std::move(members));
      }
      std::vector<int> norm;
      for (int x = 0; x < g.order(); ++x)
        if (conj_[x][h] == h) norm.push_back(x);
      normalizer_[h] = index_.at(norm);
    }
  }

  const FiniteGroup& group() const { return group_; }
  int size() const { return static_cast<int>(subgroups_.size()); }
  const Subgroup& operator[](int i) const { return subgroups_.at(i); }
  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  int trivial() const { return 0; }
  int whole() const { return size() - 1; }

  /// K <= H
  bool leq(int k, int h) const { return leq_[k][h]; }
  bool proper(int k, int h) const { return k != h && leq_[k][h]; }

  /// Index of gHg^{-1}.
  int conjugate(int g, int h) const { return conj_[g][h]; }
  /// Index of H^g = g^{-1} H g.
  int conjugate_by_inverse(int g, int h) const { return conj_[group_.inv(g)][h]; }

  int class_of(int h) const { return class_of_[h]; }
  int class_count() const { return static_cast<int>(class_reps_.size()); }
  const std::vector<int>& class_reps() const { return class_reps_; }
  int class_rep(int h) const { return class_reps_[class_of_[h]]; }
  const std::vector<int>& class_members(int c) const { return class_members_[c]; }
  bool conjugate_in_group(int a, int b) const { return class_of_[a] == class_of_[b]; }

  int normalizer(int h) const { return normalizer_[h]; }

  int index_of(std::vector<int> elements) const {
    std::sort(elements.begin(), elements.end());
    auto it = index_.find(elements);
    if (it == index_.end()) throw Error("SubgroupLattice: element set is not a subgroup");
    return it->second;
  }

  int intersection(int a, int b) const {
    std::vector<int> e;
    for (int x : subgroups_[a].elements)
      if (subgroups_[b].member[x]) e.push_back(x);
    return index_.at(e);
  }

  std::vector<int> subgroups_of(int h) const {
    std::vector<int> out;
    for (int k = 0; k < size(); ++k)
      if (leq_[k][h]) out.push_back(k);
    return out;
  }

  std::vector<int> maximal_subgroups_of(int h) const {
    std::vector<int> out;
    for (int k = 0; k < size(); ++k) {
      if (!proper(k, h)) continue;
      bool maximal = true;
      for (int m = 0; m < size() && maximal; ++m)
        if (proper(k, m) && proper(m, h)) maximal = false;
      if (maximal) out.push_back(k);
    }
    return out;
  }

  /// Smallest element generating H, or -1 when H is not cyclic.
  int cyclic_generator(int h) const {
    for (int x : subgroups_[h].elements)
      if (group_.element_order(x) == subgroups_[h].order()) return x;
    return -1;
  }
  bool is_cyclic(int h) const { return cyclic_generator(h) >= 0; }

  /// Representatives (the subgroup of smallest index) of the H-conjugacy classes of subgroups of H.
  std::vector<int> local_class_reps(int h) const {
    std::vector<int> reps;
    std::vector<bool> seen(size(), false);
    for (int k = 0; k < size(); ++k) {
      if (!leq_[k][h] || seen[k]) continue;
      reps.push_back(k);
      for (int x : subgroups_[h].elements) seen[conj_[x][k]] = true;
    }
    return reps;
  }

  /// Representative of the H-conjugacy class of K <= H.
  int local_rep(int h, int k) const {
    int best = k;
    for (int x : subgroups_[h].elements) best = std::min(best, conj_[x][k]);
    return best;
  }

  /// An element x of H with x K x^{-1} = K'.
  int conjugating_element(int h, int k, int target) const {
    for (int x : subgroups_[h].elements)
      if (conj_[x][k] == target) return x;
    return -1;
  }

 private:
  FiniteGroup group_;
  std::vector<Subgroup> subgroups_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<char>> leq_;
  std::vector<std::vector<int>> conj_;
  std::vector<int> class_of_;
  std::vector<int> class_reps_;
  std::vector<std::vector<int>> class_members_;
  std::vector<int> normalizer_;
};

using LatticePtr = std::shared_ptr<const SubgroupLattice>;

inline LatticePtr make_lattice(FiniteGroup g) { return std::make_shared<const SubgroupLattice>(std::move(g)); }

/// A subgroup viewed as a group in its own right, with the index translation.
struct LocalGroup {
  FiniteGroup group;
  std::vector<int> to_global;  // local index -> element of G
  std::vector<int> to_local;   // element of G -> local index or -1
};

inline LocalGroup local_group(const SubgroupLattice& lat, int h) {
  const auto& g = lat.group();
  const auto& elems = lat[h].elements;
  const int n = static_cast<int>(elems.size());
  LocalGroup out;
  out.to_global = elems;
  out.to_local.assign(g.order(), -1);
  for (int i = 0; i < n; ++i) out.to_local[elems[i]] = i;
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = out.to_local[g.mul(elems[a], elems[b])];
  out.group = FiniteGroup(g.label() + "[" + std::to_string(h) + "]", n, std::move(t));
  return out;
}

/// W_G(H) = N_G(H)/H with a section of coset representatives.
struct WeylGroup {
  int subgroup = -1;
  int normalizer = -1;
  FiniteGroup quotient;
  std::vector<int> section;   // quotient element -> representative in N_G(H)
  std::vector<int> coset_of;  // element of G -> quotient element, or -1 outside N_G(H)

  int order() const { return quotient.order(); }
};

/// Builds the Weyl group; representatives are the smallest (or, with largest_reps, largest) coset elements.
inline WeylGroup weyl_group(const SubgroupLattice& lat, int h, bool largest_reps = false) {
  const auto& g = lat.group();
  WeylGroup w;
  w.subgroup = h;
  w.normalizer = lat.normalizer(h);
  w.coset_of.assign(g.order(), -1);
  std::vector<std::vector<int>> cosets;
  for (int n : lat[w.normalizer].elements) {
    if (w.coset_of[n] >= 0) continue;
    std::vector<int> c;
    for (int x : lat[h].elements) c.push_back(g.mul(n, x));
    std::sort(c.begin(), c.end());
    const int idx = static_cast<int>(cosets.size());
    for (int x : c) w.coset_of[x] = idx;
    cosets.push_back(std::move(c));
  }
  // coset 0 is H itself because the identity is the smallest element
  for (const auto& c : cosets) w.section.push_back(largest_reps ? c.back() : c.front());
  const int q = static_cast<int>(cosets.size());
  std::vector<int> t(static_cast<std::size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) t[static_cast<std::size_t>(a) * q + b] = w.coset_of[g.mul(cosets[a].front(), cosets[b].front())];
  w.quotient = FiniteGroup("W(" + std::to_string(h) + ")", q, std::move(t));
  return w;
}

struct DoubleCoset {
  int rep = 0;          // x
  int size = 0;         // |K x L|
  int left_meet = -1;   // K cap xLx^{-1}
  int right_meet = -1;  // x^{-1}Kx cap L
};

/// Double cosets K\H/L inside H (K, L <= H), each represented by its smallest element.
inline std::vector<DoubleCoset> double_cosets(const SubgroupLattice& lat, int h, int k, int l) {
  const auto& g = lat.group();
  if (!lat.leq(k, h) || !lat.leq(l, h)) throw Error("double_cosets: subgroups must lie in the ambient subgroup");
  std::vector<bool> seen(g.order(), false);
  std::vector<DoubleCoset> out;
  for (int x : lat[h].elements) {
    if (seen[x]) continue;
    DoubleCoset dc;
    dc.rep = x;
    for (int a : lat[k].elements)
      for (int b : lat[l].elements) {
        int y = g.mul(g.mul(a, x), b);
        if (!seen[y]) {
          seen[y] = true;
          ++dc.size;
        }
      }
    dc.left_meet = lat.intersection(k, lat.conjugate(x, l));
    dc.right_meet = lat.intersection(lat.conjugate_by_inverse(x, k), l);
    out.push_back(dc);
  }
  return out;
}

/// The transitive G-set G/K of left cosets.
struct CosetSpace {
  int subgroup = -1;
  std::vector<int> reps;             // smallest element of each coset; point 0 is eK
  std::vector<int> point_of;         // element -> point containing it
  std::vector<std::vector<int>> action;  // action[g][p] = point of g * rep(p)

  int size() const { return static_cast<int>(reps.size()); }
};

inline CosetSpace coset_space(const SubgroupLattice& lat, int k) {
  const auto& g = lat.group();
  CosetSpace x;
  x.subgroup = k;
  x.point_of.assign(g.order(), -1);
  for (int a = 0; a < g.order(); ++a) {
    if (x.point_of[a] >= 0) continue;
    const int p = x.size();
    x.reps.push_back(a);
    for (int y : lat[k].elements) x.point_of[g.mul(a, y)] = p;
  }
  x.action.assign(g.order(), std::vector<int>(x.size()));
  for (int a = 0; a < g.order(); ++a)
    for (int p = 0; p < x.size(); ++p) x.action[a][p] = x.point_of[g.mul(a, x.reps[p])];
  return x;
}

/// (G/K)^H with the action of W_G(H) through its section.
struct FixedPointSet {
  CosetSpace ambient;
  int fixed_by = -1;
  std::vector<int> points;                     // points of the ambient coset space
  std::vector<int> local_of;                   // ambient point -> index in points, or -1
  std::vector<std::vector<int>> weyl_action;   // [w][i] -> index in points
  std::vector<std::vector<int>> orbits;        // indices into points, each orbit sorted
  std::vector<std::vector<int>> stabilizers;   // Weyl elements fixing the orbit's first point

  int size() const { return static_cast<int>(points.size()); }
};

inline FixedPointSet fixed_points(const SubgroupLattice& lat, const WeylGroup& weyl, int k) {
  const auto& g = lat.group();
  const int h = weyl.subgroup;
  FixedPointSet f;
  f.ambient = coset_space(lat, k);
  f.fixed_by = h;
  f.local_of.assign(f.ambient.size(), -1);
  for (int p = 0; p < f.ambient.size(); ++p) {
    const int rep = f.ambient.reps[p];
    bool fixed = true;
    for (int y : lat[h].elements)
      if (!lat[k].contains(g.mul(g.mul(g.inv(rep), y), rep))) {
        fixed = false;
        break;
      }
    if (fixed) {
      f.local_of[p] = f.size();
      f.points.push_back(p);
    }
  }
  f.weyl_action.assign(weyl.order(), std::vector<int>(f.size()));
  for (int w = 0; w < weyl.order(); ++w)
    for (int i = 0; i < f.size(); ++i) {
      const int target = f.local_of[f.ambient.action[weyl.section[w]][f.points[i]]];
      if (target < 0) throw Error("fixed_points: Weyl action leaves the fixed-point set");
      f.weyl_action[w][i] = target;
    }
  std::vector<bool> seen(f.size(), false);
  for (int i = 0; i < f.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    std::vector<int> stab;
    for (int w = 0; w < weyl.order(); ++w) {
      const int j = f.weyl_action[w][i];
      if (!seen[j]) {
        seen[j] = true;
        orbit.push_back(j);
      }
      if (j == i) stab.push_back(w);
    }
    std::sort(orbit.begin(), orbit.end());
    f.orbits.push_back(std::move(orbit));
    f.stabilizers.push_back(std::move(stab));
  }
  return f;
}

/// Convenience overload computing the Weyl group of H first.
inline FixedPointSet fixed_points(const SubgroupLattice& lat, int k, int h) { return fixed_points(lat, weyl_group(lat, h), k); }

}  // namespace mackey
