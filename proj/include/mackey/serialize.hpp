#pragma once

// JSON layouts for matrices, Mackey modules and cell objects. Objects are std::map backed,
// so keys come out sorted and dumps are byte-stable.

#include "mackey/cell_model.hpp"
#include "mackey/constructors.hpp"

#include <json.hpp>

#include <fstream>

namespace mackey {

using Json = nlohmann::json;

/// Integers that fit in 64 bits become JSON numbers; everything else is a "p/q" (or big "p") string.
inline Json rat_to_json(const Rat& q) {
  if (is_integral(q) && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(to_string(q));
}

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw Error("expected an integer or a \"p/q\" string, got " + j.dump());
}

inline Json vector_to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(rat_to_json(q));
  return a;
}

inline RatVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an array, got " + j.dump());
  RatVector v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

/// Row-major list of rows. The shape is stored too, since a list of zero rows loses the column count.
inline Json matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rat_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return Json{{"shape", {m.rows(), m.cols()}}, {"rows", std::move(rows)}};
}

inline RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("rows")) throw Error("matrix must have \"shape\" and \"rows\"");
  const auto r = j.at("shape").at(0).get<std::size_t>();
  const auto c = j.at("shape").at(1).get<std::size_t>();
  const auto& rows = j.at("rows");
  if (rows.size() != r) throw Error("matrix rows disagree with its shape");
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error("matrix row " + std::to_string(i) + " disagrees with its shape");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = rat_from_json(rows[i][k]);
  }
  return m;
}

inline Json int_vector_to_json(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(rat_to_json(Rat(z)));
  return a;
}

inline Json presentation_to_json(const AbelianPresentation& p) {
  return Json{{"free_rank", p.free_rank}, {"torsion", int_vector_to_json(p.torsion)}};
}

inline Json subgroup_to_json(const SubgroupLattice& l, int h) {
  return Json{{"index", h}, {"order", l[h].order()}, {"elements", l[h].elements}};
}

inline Json group_to_json(const FiniteGroup& g) {
  return Json{{"label", g.label()}, {"order", g.order()}, {"exponent", g.exponent()}};
}

// ---- Mackey modules ----

/// Rebuilds a ring from its stored name: B, Rep, optionally tensored with Q.
inline GreenPtr ring_by_name(LatticePtr lattice, const std::string& name) {
  const bool rational = name.size() > 2 && name.compare(name.size() - 2, 2, "_Q") == 0;
  const std::string base = rational ? name.substr(0, name.size() - 2) : name;
  GreenFunctor r;
  if (base == "B") {
    r = burnside_green(lattice);
  } else if (base == "Rep") {
    r = rep_green(lattice);
  } else {
    throw Error("unknown ring \"" + name + "\" (expected B, Rep, B_Q or Rep_Q)");
  }
  return std::make_shared<const GreenFunctor>(rational ? scalar_extend(std::move(r)) : std::move(r));
}

/// Layout: group spec, ring name, base, ranks per subgroup, and lists of res / ind / conj / act entries.
inline Json module_to_json(const MackeyModule& m, const std::string& group_spec) {
  const auto& l = m.lat();
  const auto& f = m.mackey;
  Json j;
  j["group"] = group_spec;
  j["ring"] = m.ring->name;
  j["base"] = base_name(f.base);
  j["name"] = m.name;
  j["rank"] = f.rank;
  Json res = Json::array(), ind = Json::array(), conj = Json::array(), act = Json::array();
  for (int h = 0; h < l.size(); ++h)
    for (int k = 0; k < l.size(); ++k)
      if (l.proper(k, h)) {
        res.push_back({{"from", h}, {"to", k}, {"matrix", matrix_to_json(f.res[h][k])}});
        ind.push_back({{"from", k}, {"to", h}, {"matrix", matrix_to_json(f.ind[h][k])}});
      }
  for (int g = 1; g < l.group().order(); ++g)
    for (int h = 0; h < l.size(); ++h) conj.push_back({{"element", g}, {"subgroup", h}, {"matrix", matrix_to_json(f.conj[g][h])}});
  for (int h = 0; h < l.size(); ++h)
    for (std::size_t i = 0; i < m.act[h].size(); ++i) act.push_back({{"subgroup", h}, {"basis", i}, {"matrix", matrix_to_json(m.act[h][i])}});
  j["res"] = std::move(res);
  j["ind"] = std::move(ind);
  j["conj"] = std::move(conj);
  j["act"] = std::move(act);
  return j;
}

/// Reads a module and validates it; identity maps (res/ind to the same subgroup, conj by 1) are implied.
inline MackeyModule module_from_json(const Json& j, int max_order = kDefaultMaxOrder) {
  auto lattice = make_lattice(build_group(j.at("group").get<std::string>(), max_order));
  const auto& l = *lattice;
  MackeyModule m;
  m.ring = ring_by_name(lattice, j.at("ring").get<std::string>());
  m.name = j.value("name", std::string("M"));
  const auto base = j.at("base").get<std::string>();
  if (base != "Z" && base != "Q") throw Error("base must be Z or Q");
  if ((base == "Q") != (m.ring->mackey.base == Base::Q)) throw Error("module base and ring base differ");
  const auto rank = j.at("rank").get<std::vector<std::size_t>>();
  if (static_cast<int>(rank.size()) != l.size()) throw Error("rank list needs one entry per subgroup");
  m.mackey = MackeyFunctor::shaped(lattice, base == "Z" ? Base::Z : Base::Q, rank);
  auto& f = m.mackey;
  for (int h = 0; h < l.size(); ++h) {
    f.res[h][h] = RatMatrix::identity(rank[h]);
    f.ind[h][h] = RatMatrix::identity(rank[h]);
    f.conj[0][h] = RatMatrix::identity(rank[h]);
  }
  auto index = [&](const Json& e, const char* key) {
    const int v = e.at(key).get<int>();
    if (v < 0 || v >= l.size()) throw Error(std::string("subgroup index out of range in \"") + key + "\"");
    return v;
  };
  for (const auto& e : j.at("res")) {
    const int h = index(e, "from"), k = index(e, "to");
    if (!l.leq(k, h)) throw Error("res entry between non-nested subgroups");
    f.res[h][k] = matrix_from_json(e.at("matrix"));
  }
  for (const auto& e : j.at("ind")) {
    const int k = index(e, "from"), h = index(e, "to");
    if (!l.leq(k, h)) throw Error("ind entry between non-nested subgroups");
    f.ind[h][k] = matrix_from_json(e.at("matrix"));
  }
  for (const auto& e : j.at("conj")) {
    const int g = e.at("element").get<int>();
    if (g < 0 || g >= l.group().order()) throw Error("conj element out of range");
    f.conj[g][index(e, "subgroup")] = matrix_from_json(e.at("matrix"));
  }
  m.act.assign(l.size(), {});
  for (int h = 0; h < l.size(); ++h) m.act[h].assign(m.ring->rank(h), RatMatrix(rank[h], rank[h]));
  for (const auto& e : j.at("act")) {
    const int h = index(e, "subgroup");
    const auto i = e.at("basis").get<std::size_t>();
    if (i >= m.act[h].size()) throw Error("act basis index out of range");
    m.act[h][i] = matrix_from_json(e.at("matrix"));
  }
  const auto report = validate_module(m);
  if (!report.ok()) throw Error("module fails validation:\n" + report.summary());
  return m;
}

// ---- cell objects ----

inline Json skew_module_to_json(const SkewModule& v) {
  Json s = Json::array(), p = Json::array();
  for (const auto& m : v.s_action) s.push_back(matrix_to_json(m));
  for (const auto& m : v.phi) p.push_back(matrix_to_json(m));
  return Json{{"dim", v.dim}, {"field_action", std::move(s)}, {"weyl_action", std::move(p)}};
}

inline SkewModule skew_module_from_json(const Json& j) {
  SkewModule v;
  v.dim = j.at("dim").get<std::size_t>();
  for (const auto& m : j.at("field_action")) v.s_action.push_back(matrix_from_json(m));
  for (const auto& m : j.at("weyl_action")) v.phi.push_back(matrix_from_json(m));
  return v;
}

/// Layout: group spec and one {subgroup, n, even, odd} entry per factor, in descriptor order.
inline Json cell_object_to_json(const CellModelDescriptor& d, const CellObject& x, const std::string& group_spec) {
  Json parts = Json::array();
  for (std::size_t i = 0; i < x.parts.size(); ++i)
    parts.push_back({{"subgroup", d.factors[i].subgroup},
                     {"n", d.factors[i].n},
                     {"even", skew_module_to_json(x.parts[i].even)},
                     {"odd", skew_module_to_json(x.parts[i].odd)}});
  return Json{{"group", group_spec}, {"factors", std::move(parts)}};
}

inline CellObject cell_object_from_json(const CellModelDescriptor& d, const Json& j) {
  const auto& parts = j.at("factors");
  if (parts.size() != d.factors.size())
    throw Error("cell object has " + std::to_string(parts.size()) + " factors, the model has " + std::to_string(d.factors.size()));
  CellObject x;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].at("subgroup").get<int>() != d.factors[i].subgroup || parts[i].at("n").get<int>() != d.factors[i].n)
      throw Error("cell object factor " + std::to_string(i) + " does not match the model");
    x.parts.push_back({skew_module_from_json(parts[i].at("even")), skew_module_from_json(parts[i].at("odd"))});
  }
  check_object(d, x, "cell_object_from_json");
  return x;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace mackey
