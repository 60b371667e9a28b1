#pragma once

// Command-line front end. Parsing problems raise UsageError (exit 2); anything thrown while
// running a check becomes a failed check (exit 1).

#include "mackey/box.hpp"
#include "mackey/report.hpp"
#include "mackey/splitting.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <map>
#include <random>

namespace mackey {

struct UsageError : Error {
  using Error::Error;
};

struct CliOptions {
  std::string subcommand;
  std::string group;
  std::string module = "burnside";
  std::string module2;
  std::string ring = "burnside";
  bool rational = false;
  std::string json_path;
  std::string dump_module;
  std::string dump_object;
  std::string object_path;
  long long seed = -1;
  int max_order = kDefaultMaxOrder;
};

inline const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"group",       "lattice",   "marks",      "idempotents", "chartab", "brauer",
                                              "split-verify", "box-check", "cell-model", "classify",    "all"};
  return names;
}

inline std::string subcommand_description(const std::string& name) {
  static const std::map<std::string, std::string> text{
      {"group", "group axioms and basic data"},
      {"lattice", "subgroup lattice and conjugacy classes"},
      {"marks", "table of marks"},
      {"idempotents", "rational Burnside idempotents"},
      {"chartab", "character table"},
      {"brauer", "Brauer quotients of B or Rep"},
      {"split-verify", "splitting of a module through its Brauer quotients"},
      {"box-check", "box product of two modules"},
      {"cell-model", "cyclotomic factor algebras, one per cyclic subgroup class"},
      {"classify", "invariants of a graded object in the cell model"},
      {"all", "every check above for one group"}};
  return text.at(name);
}

/// Element classes under x ~ y iff y is conjugate to a generator of <x>.
inline int generation_class_count(const FiniteGroup& g) {
  std::vector<int> label(g.order(), -1);
  int count = 0;
  for (int x = 0; x < g.order(); ++x) {
    if (label[x] >= 0) continue;
    const int o = g.element_order(x);
    for (int k = 1; k <= o; ++k)
      if (gcd_ll(k, o) == 1)
        for (int a = 0; a < g.order(); ++a) label[g.conjugate(a, g.power(x, k))] = count;
    ++count;
  }
  return count;
}

namespace cli {

inline Json rat_list(const RatVector& v) { return vector_to_json(v); }

inline Json torsion_list(const std::vector<Int>& t) { return int_vector_to_json(t); }

/// Shared state for one invocation: the group and rings built once.
class Context {
 public:
  explicit Context(CliOptions o) : opt(std::move(o)) {
    try {
      lattice = make_lattice(build_group(opt.group, opt.max_order));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }

  CliOptions opt;
  LatticePtr lattice;

  const SubgroupLattice& lat() const { return *lattice; }

  GreenPtr ring(const std::string& name) {
    auto it = rings_.find(name);
    if (it != rings_.end()) return it->second;
    return rings_[name] = ring_by_name(lattice, name);
  }

  /// burnside | rep | fixedpoint:{trivial|regular|coset<i>} | json:<path> | box(<spec>,<spec>)
  MackeyModule module(const std::string& spec) {
    MackeyModule m = raw_module(spec);
    if (opt.rational && m.mackey.base == Base::Z) m = scalar_extend(m, ring(m.ring->name + "_Q"));
    return m;
  }

 private:
  std::map<std::string, GreenPtr> rings_;

  MackeyModule raw_module(const std::string& spec) {
    if (spec == "burnside") {
      auto m = regular_module(ring("B"));
      m.name = "B";
      return m;
    }
    if (spec == "rep") {
      auto m = regular_module(ring("Rep"));
      m.name = "Rep";
      return m;
    }
    if (spec.rfind("fixedpoint:", 0) == 0) {
      const std::string v = spec.substr(11);
      const auto& g = lat().group();
      IntegralRepresentation rep;
      if (v == "trivial") {
        rep = trivial_representation(g);
      } else if (v == "regular") {
        rep = regular_representation(g);
      } else if (v.rfind("coset", 0) == 0 && v.size() > 5 && std::all_of(v.begin() + 5, v.end(), ::isdigit)) {
        const int k = std::stoi(v.substr(5));
        if (k < 0 || k >= lat().size()) throw UsageError("subgroup index out of range in " + spec);
        rep = coset_representation(lat(), k);
      } else {
        throw UsageError("unknown fixed-point representation \"" + v + "\" (expected trivial, regular or coset<i>)");
      }
      return canonical_burnside_action(fixed_point_mackey(lattice, rep), ring("B"), "FP(" + rep.name + ")");
    }
    if (spec.rfind("json:", 0) == 0) {
      MackeyModule m;
      try {
        m = module_from_json(read_json_file(spec.substr(5)), opt.max_order);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      if (m.lat().group().label() != lat().group().label() || m.lat().size() != lat().size())
        throw UsageError("module file is over " + m.lat().group().label() + ", not " + lat().group().label());
      // same group spec, so the rebuilt ring is identical; share one object so box products accept the pair
      auto shared = ring(m.ring->name);
      if (shared->mult != m.ring->mult) throw UsageError("module file ring differs from the built-in " + m.ring->name);
      m.mackey.lattice = lattice;
      m.ring = shared;
      return m;
    }
    if (spec.rfind("box(", 0) == 0 && spec.back() == ')') {
      const std::string inner = spec.substr(4, spec.size() - 5);
      int depth = 0;
      for (std::size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '(') ++depth;
        if (inner[i] == ')') --depth;
        if (inner[i] == ',' && depth == 0) {
          auto a = raw_module(inner.substr(0, i));
          auto b = raw_module(inner.substr(i + 1));
          if (a.ring != b.ring) throw UsageError("box factors are modules over different rings: " + spec);
          return box_product(a, b).module;
        }
      }
      throw UsageError("box(...) needs two comma separated modules: " + spec);
    }
    throw UsageError("unknown module \"" + spec + "\"");
  }
};

/// Runs one section; an exception inside becomes a failed "<area>.error" check.
template <class F>
void guarded(Report& r, const std::string& area, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    r.add(area + ".error", false, e.what());
  }
}

inline void group_section(Context& c, Report& r) {
  const auto& g = c.lat().group();
  guarded(r, "group", [&] {
    const int n = g.order();
    std::string witness;
    for (int a = 0; a < n && witness.empty(); ++a) {
      if (g.mul(0, a) != a || g.mul(a, 0) != a) witness = "identity fails at " + std::to_string(a);
      if (g.mul(a, g.inv(a)) != 0) witness = "inverse fails at " + std::to_string(a);
      for (int b = 0; b < n && witness.empty(); ++b)
        for (int x = 0; x < n && witness.empty(); ++x)
          if (g.mul(g.mul(a, b), x) != g.mul(a, g.mul(b, x)))
            witness = "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(x) + ")";
    }
    r.add("group.axioms", witness.empty(), witness.empty() ? "order " + std::to_string(n) : witness);
    std::vector<int> orders;
    bool abelian = true;
    for (int a = 0; a < n; ++a) {
      orders.push_back(g.element_order(a));
      for (int b = 0; b < n; ++b) abelian = abelian && g.mul(a, b) == g.mul(b, a);
    }
    const auto cls = conjugacy_classes(g);
    r.data["group"] = Json{{"element_orders", orders}, {"abelian", abelian}, {"class_sizes", cls.sizes}, {"multiplication", g.table()}};
  });
}

inline void lattice_section(Context& c, Report& r) {
  const auto& l = c.lat();
  const auto& g = l.group();
  guarded(r, "lattice", [&] {
    std::string lagrange, closed, classes;
    for (int h = 0; h < l.size(); ++h) {
      if (g.order() % l[h].order() != 0 && lagrange.empty()) lagrange = "subgroup " + std::to_string(h);
      for (int a : l[h].elements)
        for (int b : l[h].elements)
          if (!l[h].contains(g.mul(a, g.inv(b))) && closed.empty()) closed = "subgroup " + std::to_string(h);
    }
    std::vector<int> seen(l.size(), 0);
    for (int cl = 0; cl < l.class_count(); ++cl)
      for (int h : l.class_members(cl)) {
        ++seen[h];
        bool conj = false;
        for (int x = 0; x < g.order() && !conj; ++x) conj = l.conjugate(x, l.class_reps()[cl]) == h;
        if (!conj && classes.empty()) classes = "subgroup " + std::to_string(h) + " is not conjugate to its class representative";
      }
    for (int h = 0; h < l.size(); ++h)
      if (seen[h] != 1 && classes.empty()) classes = "subgroup " + std::to_string(h) + " lies in " + std::to_string(seen[h]) + " classes";
    r.add("lattice.lagrange", lagrange.empty(), lagrange.empty() ? std::to_string(l.size()) + " subgroups" : lagrange);
    r.add("lattice.closed", closed.empty(), closed);
    r.add("lattice.classes", classes.empty(), classes.empty() ? std::to_string(l.class_count()) + " classes" : classes);
    Json subs = Json::array();
    for (int h = 0; h < l.size(); ++h) {
      auto s = subgroup_to_json(l, h);
      s["class"] = l.class_of(h);
      s["normalizer"] = l.normalizer(h);
      s["cyclic"] = l.is_cyclic(h);
      subs.push_back(std::move(s));
    }
    r.data["lattice"] = Json{{"subgroups", std::move(subs)}, {"class_reps", l.class_reps()}};
  });
}

inline void marks_section(Context& c, Report& r) {
  const auto& l = c.lat();
  guarded(r, "marks", [&] {
    const auto m = marks_matrix(l, l.whole());
    const auto reps = l.local_class_reps(l.whole());
    std::string witness;
    for (std::size_t a = 0; a < reps.size(); ++a)
      for (std::size_t b = 0; b < reps.size(); ++b) {
        const Int expected = a == b ? Int(l[l.normalizer(reps[a])].order() / l[reps[a]].order()) : Int(0);
        if ((a == b || a > b) && m(a, b) != expected && witness.empty())
          witness = "entry (" + std::to_string(a) + "," + std::to_string(b) + ") = " + to_string(m(a, b));
      }
    r.add("marks.triangular", witness.empty(), witness.empty() ? "diagonal |N(H):H|, zero below" : witness);
    Json rows = Json::array();
    for (std::size_t a = 0; a < reps.size(); ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < reps.size(); ++b) row.push_back(rat_to_json(Rat(m(a, b))));
      rows.push_back(std::move(row));
    }
    r.data["marks"] = Json{{"subgroups", reps}, {"rows", std::move(rows)}};
  });
}

inline void idempotents_section(Context& c, Report& r) {
  const auto& l = c.lat();
  guarded(r, "idempotents", [&] {
    const auto ids = burnside_idempotents(l);
    const auto bq = c.ring("B_Q");
    const auto err = check_idempotents(*bq, ids);
    r.add("idempotents.orthogonal_complete", !err, err.value_or(std::to_string(ids.e.size()) + " idempotents"));
    // e_1 = [G/1] / |G|; the trivial subgroup is the first local class representative
    RatVector e1(bq->rank(l.whole()));
    e1[0] = Rat(1, l.group().order());
    r.add("idempotents.e_trivial", ids.e.front() == e1, "e_1 = (" + join(ids.e.front()) + ")", Json{{"e_1", rat_list(ids.e.front())}});
    Json list = Json::array();
    for (std::size_t i = 0; i < ids.e.size(); ++i) list.push_back({{"subgroup", ids.subgroups[i]}, {"coordinates", rat_list(ids.e[i])}});
    r.data["idempotents"] = Json{{"basis", l.local_class_reps(l.whole())}, {"e", std::move(list)}};
  });
}

inline void chartab_section(Context& c, Report& r) {
  guarded(r, "chartab", [&] {
    const auto t = character_table(c.lat().group());
    std::string witness;
    for (int i = 0; i < t.size(); ++i)
      for (int j = 0; j < t.size(); ++j) {
        const auto ip = t.inner_product(t.irreducibles[i], t.irreducibles[j]);
        if (ip != Cyclotomic::rational(t.conductor, i == j ? 1 : 0) && witness.empty())
          witness = "<chi_" + std::to_string(i) + ", chi_" + std::to_string(j) + "> = " + ip.str();
      }
    r.add("chartab.orthogonality", witness.empty(), witness);
    long sum = 0;
    for (int d : t.degrees()) sum += static_cast<long>(d) * d;
    const bool square = t.size() == t.classes.count() && sum == t.group.order();
    r.add("chartab.degrees", square, "sum of squared degrees " + std::to_string(sum) + ", " + std::to_string(t.size()) + " irreducibles");
    Json irr = Json::array();
    for (const auto& chi : t.irreducibles) {
      Json vals = Json::array();
      for (const auto& v : chi.values) vals.push_back(v.str());
      irr.push_back(std::move(vals));
    }
    r.data["chartab"] = Json{{"conductor", t.conductor}, {"class_sizes", t.classes.sizes}, {"irreducibles", std::move(irr)}};
  });
}

inline void brauer_burnside(Context& c, Report& r) {
  const auto& l = c.lat();
  guarded(r, "brauer", [&] {
    const auto b = c.ring(c.opt.rational ? "B_Q" : "B");
    Json levels = Json::array();
    std::string witness;
    for (int h : l.class_reps()) {
      const auto q = induced_quotient(b->mackey, h);
      Json e{{"subgroup", h}, {"dim", q.dim}};
      if (q.integral) e["integral"] = presentation_to_json(*q.integral);
      if (q.dim != 1 && witness.empty()) witness = "rank " + std::to_string(q.dim) + " at subgroup " + std::to_string(h);
      levels.push_back(std::move(e));
    }
    r.add("brauer.burnside_rank_one", witness.empty(), witness.empty() ? std::to_string(l.class_count()) + " classes" : witness);
    r.data["brauer_burnside"] = std::move(levels);
  });
}

inline void brauer_rep(Context& c, Report& r) {
  guarded(r, "brauer", [&] {
    const auto report = rep_brauer_check(c.lattice);
    std::string dims, iso, galois;
    Json entries = Json::array();
    for (const auto& e : report.entries) {
      const std::string at = " at subgroup " + std::to_string(e.subgroup);
      if (e.dim != e.expected && dims.empty()) dims = "dim " + std::to_string(e.dim) + " != " + std::to_string(e.expected) + at;
      if (e.cyclic && e.dim == e.expected && !(e.iso_bijective && e.iso_multiplicative && e.minimal_polynomial && e.maps_to_root) && iso.empty())
        iso = "no certified isomorphism to Q(zeta_" + std::to_string(e.n) + ")" + at;
      if (e.cyclic && e.dim == e.expected && !e.weyl_galois && galois.empty()) galois = "Weyl action is not galois(m)" + at;
      Json j{{"subgroup", e.subgroup}, {"order", e.n}, {"cyclic", e.cyclic}, {"dim", e.dim}, {"expected", e.expected}};
      if (e.integral) j["integral"] = presentation_to_json(*e.integral);
      if (e.cyclic && e.dim == e.expected) {
        j["m"] = e.m;
        j["faithful_character"] = e.faithful_character;
        j["iso"] = matrix_to_json(e.iso);
      }
      entries.push_back(std::move(j));
    }
    r.add("brauer.rep_dims", dims.empty(), dims);
    r.add("brauer.rep_iso", iso.empty(), iso.empty() ? "evaluation at the generator, minimal polynomial certified" : iso);
    r.add("brauer.weyl_galois", galois.empty(), galois);
    r.data["brauer_rep"] = std::move(entries);
  });
}

inline void brauer_section(Context& c, Report& r, bool both = false) {
  if (both || c.opt.ring == "burnside") brauer_burnside(c, r);
  if (both || c.opt.ring == "rep") brauer_rep(c, r);
}

inline void split_section(Context& c, Report& r, const std::string& spec, const std::string& suffix = "") {
  guarded(r, "split" + suffix, [&] {
    const auto m = c.module(spec);
    const auto v = validate_module(m);
    r.add("module.valid" + suffix, v.ok(), v.ok() ? m.name : v.summary());
    if (!v.ok()) return;
    const auto s = verify_splitting(m);
    for (const auto& ch : s.checks) r.add("split." + ch.name + suffix, ch.passed, ch.detail);
    if (!s.integral) r.skip("split.eta_integral_primes" + suffix, "rational module");
    Json data{{"module", m.name},
              {"source_ranks", s.source_ranks},
              {"brauer_dims", s.brauer_dims},
              {"component_ranks", s.component_ranks},
              {"integral", s.integral}};
    if (s.integral) {
      Json tors = Json::array();
      for (const auto& t : s.cokernel_torsion) tors.push_back(torsion_list(t));
      data["cokernel_torsion"] = std::move(tors);
      data["kernel_ranks"] = s.kernel_ranks;
      const auto bh = brauer_homomorphism(m);
      data["brauer_homomorphism"] = Json{{"cokernel", presentation_to_json(bh.integral->cokernel)}, {"kernel_rank", bh.integral->kernel_rank}};
    }
    r.data["split" + suffix] = std::move(data);
    if (!c.opt.dump_module.empty() && suffix.empty()) {
      std::ofstream out(c.opt.dump_module);
      out << module_to_json(m, c.opt.group).dump(1) << "\n";
    }
  });
}

inline void box_section(Context& c, Report& r, const std::string& spec1, const std::string& spec2, const std::string& suffix = "") {
  guarded(r, "box" + suffix, [&] {
    const auto m = c.module(spec1);
    const auto n = c.module(spec2);
    if (m.ring != n.ring) throw Error("modules are over different rings");
    const auto mn = box_product(m, n);
    const auto v = validate_module(mn.module);
    Json torsion = Json::array();
    for (const auto& lv : mn.levels) torsion.push_back(lv.integral ? torsion_list(lv.integral->torsion) : Json::array());
    r.add("box.valid" + suffix, v.ok(), v.ok() ? mn.module.name : v.summary(), Json{{"ranks", mn.module.mackey.rank}, {"torsion", torsion}});
    const auto u = box_unit_iso(m);
    r.add("box.unit_iso" + suffix, u.certificate.ok(), u.certificate.detail);
    const auto nm = box_product(n, m);
    const auto sw = box_swap(mn, nm);
    const bool sym = validate_morphism(mn.module, nm.module, sw).ok() && is_isomorphism(sw);
    r.add("box.symmetry" + suffix, sym);
    Json maps = Json::array();
    std::string witness;
    for (const auto& rb : brauer_rings(*m.ring)) {
      const auto mu = br_monoidal_map(rb, m, n, mn);
      Json e{{"subgroup", rb.subgroup}, {"dim", mu.map.rows()}, {"rational_iso", mu.certificate.rational_iso}};
      if (mu.certificate.integral_iso)
        e["integral_iso"] = *mu.certificate.integral_iso;
      else if (m.mackey.base == Base::Z)
        e["integral_iso"] = "undecided";
      maps.push_back(std::move(e));
      if (!mu.certificate.ok() && witness.empty()) witness = "subgroup " + std::to_string(rb.subgroup) + ": " + mu.certificate.detail;
    }
    r.add("box.monoidal_map" + suffix, witness.empty(), witness, Json{{"components", std::move(maps)}});
    r.data["box" + suffix] = Json{{"left", m.name}, {"right", n.name}, {"ranks", mn.module.mackey.rank}};
    if (!c.opt.dump_module.empty() && suffix.empty()) {
      std::ofstream out(c.opt.dump_module);
      out << module_to_json(mn.module, c.opt.group).dump(1) << "\n";
    }
  });
}

inline void cell_section(Context& c, Report& r) {
  guarded(r, "cell", [&] {
    const auto d = cell_model(c.lattice);
    const int by_elements = generation_class_count(c.lat().group());
    r.add("cell.factor_count", static_cast<int>(d.factors.size()) == by_elements,
          std::to_string(d.factors.size()) + " factors, " + std::to_string(by_elements) + " generation classes of elements");
    std::string hom, semi;
    Json factors = Json::array();
    for (const auto& f : d.factors) {
      const auto& w = f.weyl.quotient;
      for (int a = 0; a < w.order(); ++a)
        for (int b = 0; b < w.order(); ++b)
          if ((f.m[a] * f.m[b] - f.m[w.mul(a, b)]) % f.n != 0 && hom.empty()) hom = "factor at subgroup " + std::to_string(f.subgroup);
      if (!f.semisimple.semisimple && semi.empty()) semi = "factor at subgroup " + std::to_string(f.subgroup);
      factors.push_back({{"subgroup", f.subgroup},
                         {"n", f.n},
                         {"generator", f.generator},
                         {"weyl_order", w.order()},
                         {"m", f.m},
                         {"algebra_dim", f.algebra.algebra.dim},
                         {"center_dim", f.algebra.algebra.center().cols()},
                         {"gram_determinant", rat_to_json(f.semisimple.gram_determinant)}});
    }
    r.add("cell.m_homomorphism", hom.empty(), hom);
    r.add("cell.semisimple", semi.empty(), semi);
    r.data["cell_model"] = Json{{"factors", std::move(factors)}};
  });
}

inline void classify_section(Context& c, Report& r) {
  guarded(r, "classify", [&] {
    const auto d = cell_model(c.lattice);
    CellObject x;
    std::string source;
    if (!c.opt.object_path.empty()) {
      x = cell_object_from_json(d, read_json_file(c.opt.object_path));
      source = c.opt.object_path;
    } else {
      x = rep_cell_object(d, regular_module(c.ring("Rep_Q")));
      source = "br(Rep_Q)";
    }
    const auto inv = classify_object(d, x);
    r.add("classify.valid", true, source);
    Json parts = Json::array();
    for (std::size_t i = 0; i < inv.characters.size(); ++i)
      parts.push_back({{"subgroup", d.factors[i].subgroup}, {"even", rat_list(inv.characters[i][0])}, {"odd", rat_list(inv.characters[i][1])}});
    r.data["classify"] = Json{{"object", source}, {"invariant", std::move(parts)}, {"isomorphic_to_unit", iso_test(d, x, unit_object(d))}};
    if (c.opt.seed >= 0) {
      std::mt19937 rng(static_cast<unsigned>(c.opt.seed));
      std::uniform_int_distribution<int> entry(-3, 3);
      bool same = true;
      for (int trial = 0; trial < 4 && same; ++trial) {
        CellObject y = x;
        for (auto& p : y.parts)
          for (auto* v : {&p.even, &p.odd}) {
            if (v->dim == 0) continue;
            RatMatrix basis;
            do {
              basis = RatMatrix(v->dim, v->dim);
              for (std::size_t i = 0; i < v->dim; ++i)
                for (std::size_t j = 0; j < v->dim; ++j) basis(i, j) = entry(rng);
            } while (determinant(basis) == 0);
            *v = change_basis(*v, basis);
          }
        same = iso_test(d, x, y);
      }
      r.add("classify.rebase_invariance", same, "seed " + std::to_string(c.opt.seed), Json{{"seed", c.opt.seed}});
    }
    if (!c.opt.dump_object.empty()) {
      std::ofstream out(c.opt.dump_object);
      out << cell_object_to_json(d, x, c.opt.group).dump(1) << "\n";
    }
  });
}

inline void all_section(Context& c, Report& r) {
  group_section(c, r);
  lattice_section(c, r);
  marks_section(c, r);
  idempotents_section(c, r);
  chartab_section(c, r);
  brauer_section(c, r, true);
  for (const std::string spec : {"burnside", "rep", "fixedpoint:regular", "box(burnside,burnside)"}) split_section(c, r, spec, "[" + spec + "]");
  box_section(c, r, "burnside", "burnside", "[burnside,burnside]");
  box_section(c, r, "rep", "rep", "[rep,rep]");
  cell_section(c, r);
  classify_section(c, r);
}

}  // namespace cli

/// Options echoed into the report; output paths are left out so reports compare across runs.
inline Json command_echo(const CliOptions& o) {
  Json j{{"subcommand", o.subcommand}, {"group", o.group}, {"max_order", o.max_order}};
  if (o.subcommand == "split-verify" || o.subcommand == "box-check") j["module"] = o.module;
  if (o.subcommand == "box-check") j["module2"] = o.module2.empty() ? o.module : o.module2;
  if (o.subcommand == "brauer") j["ring"] = o.ring;
  if (o.subcommand == "brauer" || o.subcommand == "split-verify" || o.subcommand == "box-check") j["rational"] = o.rational;
  if (o.subcommand == "classify" && !o.object_path.empty()) j["object"] = o.object_path;
  if (o.seed >= 0) j["seed"] = o.seed;
  return j;
}

inline Report run_report(const CliOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  cli::Context c(opt);
  if (opt.ring != "burnside" && opt.ring != "rep") throw UsageError("--ring must be burnside or rep");
  Report r;
  r.command = command_echo(opt);
  r.group = group_to_json(c.lat().group());
  r.group["spec"] = opt.group;
  const auto& s = opt.subcommand;
  if (s == "split-verify" || s == "box-check") {
    // surface unknown module specs as usage errors before any check runs
    c.module(opt.module);
    if (s == "box-check") c.module(opt.module2.empty() ? opt.module : opt.module2);
  }
  if (s == "group") cli::group_section(c, r);
  else if (s == "lattice") cli::lattice_section(c, r);
  else if (s == "marks") cli::marks_section(c, r);
  else if (s == "idempotents") cli::idempotents_section(c, r);
  else if (s == "chartab") cli::chartab_section(c, r);
  else if (s == "brauer") cli::brauer_section(c, r);
  else if (s == "split-verify") cli::split_section(c, r, opt.module);
  else if (s == "box-check") cli::box_section(c, r, opt.module, opt.module2.empty() ? opt.module : opt.module2);
  else if (s == "cell-model") cli::cell_section(c, r);
  else if (s == "classify") cli::classify_section(c, r);
  else if (s == "all") cli::all_section(c, r);
  else throw UsageError("unknown subcommand " + s);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct RunResult {
  int code = 0;
  std::optional<Report> report;
};

/// Parses args (without the program name), runs, prints the text report and writes JSON if asked.
inline RunResult run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Mackey functors: Brauer quotients, idempotent splitting, box products and the cyclotomic cell model"};
  app.require_subcommand(1);
  CliOptions opt;
  for (const auto& name : subcommand_names()) {
    auto* sub = app.add_subcommand(name, subcommand_description(name));
    sub->add_option("--group", opt.group, "C<n>, D<n>, S<n> (n <= 4), Q8, A4 or \"perm: (1 2); (1 2 3)\"")->required();
    sub->add_option("--max-order", opt.max_order, "refuse groups larger than this");
    sub->add_option("--json", opt.json_path, "write the JSON report here (\"-\" for standard output)");
    sub->add_option("--seed", opt.seed, "seed for randomized checks");
    if (name == "brauer" || name == "split-verify" || name == "box-check") sub->add_flag("--rational", opt.rational, "tensor with Q first");
    if (name == "brauer") sub->add_option("--ring", opt.ring, "burnside or rep");
    if (name == "split-verify" || name == "box-check") {
      sub->add_option("--module", opt.module, "burnside, rep, fixedpoint:{trivial|regular|coset<i>}, json:<path> or box(<m>,<n>)");
      sub->add_option("--dump-module", opt.dump_module, "write the module's JSON layout here");
    }
    if (name == "box-check") sub->add_option("--module2", opt.module2, "right factor (defaults to --module)");
    if (name == "classify") {
      sub->add_option("--object", opt.object_path, "cell object JSON (defaults to br(Rep_Q))");
      sub->add_option("--dump-object", opt.dump_object, "write the classified object's JSON layout here");
    }
    sub->callback([&opt, name] { opt.subcommand = name; });
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return {code == 0 ? 0 : 2, std::nullopt};
  }
  try {
    Report r = run_report(opt);
    if (opt.json_path == "-") {
      out << r.to_json().dump(1) << "\n";
    } else {
      r.print(out);
      if (!opt.json_path.empty()) {
        std::ofstream f(opt.json_path);
        if (!f) throw UsageError("cannot write " + opt.json_path);
        f << r.to_json().dump(1) << "\n";
      }
    }
    return {r.passed() ? 0 : 1, std::move(r)};
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return {2, std::nullopt};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return {1, std::nullopt};
  }
}

}  // namespace mackey
