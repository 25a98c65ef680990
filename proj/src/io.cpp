#include "pearl/io.hpp"

#include <fstream>
#include <sstream>

namespace pearl::io {

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& message) {
  throw ParseError(ptr.empty() ? "/" : ptr, message);
}

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

const json& require_object(const json& j, const std::string& ptr) {
  if (!j.is_object()) fail(ptr, "expected an object");
  return j;
}

const json& field(const json& obj, const std::string& ptr, const std::string& key) {
  require_object(obj, ptr);
  auto it = obj.find(key);
  if (it == obj.end()) fail(child(ptr, key), "missing field '" + key + "'");
  return *it;
}

const json& array_field(const json& obj, const std::string& ptr, const std::string& key) {
  const auto& v = field(obj, ptr, key);
  if (!v.is_array()) fail(child(ptr, key), "expected an array");
  return v;
}

std::int64_t as_int(const json& v, const std::string& ptr) {
  if (!v.is_number_integer()) fail(ptr, "expected an integer");
  return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& ptr) {
  if (!v.is_string()) fail(ptr, "expected a string");
  return v.get<std::string>();
}

// Z₂ value given as a boolean or an integer reduced mod 2.
bool as_bit(const json& v, const std::string& ptr) {
  if (v.is_boolean()) return v.get<bool>();
  return (as_int(v, ptr) % 2) != 0;
}

int int_field(const json& obj, const std::string& ptr, const std::string& key) {
  return static_cast<int>(as_int(field(obj, ptr, key), child(ptr, key)));
}

std::string string_field(const json& obj, const std::string& ptr, const std::string& key) {
  return as_string(field(obj, ptr, key), child(ptr, key));
}

GradedLaurent parse_monomial(const json& v, const std::string& ptr, int N) {
  if (v.is_number_integer()) return GradedLaurent::monomial(N, v.get<std::int64_t>());
  try {
    return GradedLaurent::parse(as_string(v, ptr), N);
  } catch (const ParseError& e) {
    fail(ptr, e.what());
  }
}

std::size_t lookup(const GradedBasis& basis, const json& v, const std::string& ptr) {
  auto name = as_string(v, ptr);
  auto idx = basis.index_of(name);
  if (!idx) fail(ptr, "unknown generator '" + name + "'");
  return *idx;
}

std::vector<Generator> read_generators(const json& doc, const std::string& ptr) {
  std::vector<Generator> gens;
  const auto& arr = array_field(doc, ptr, "generators");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto p = child(child(ptr, "generators"), i);
    gens.push_back({string_field(arr[i], p, "name"), int_field(arr[i], p, "degree")});
  }
  return gens;
}

json write_generators(const GradedBasis& basis) {
  json arr = json::array();
  for (const auto& g : basis.generators()) arr.push_back({{"name", g.name}, {"degree", g.degree}});
  return arr;
}

GradedBasis make_basis(std::vector<Generator> gens, std::optional<int> dim, bool single_max, const std::string& ptr) {
  try {
    return GradedBasis(std::move(gens), dim, single_max);
  } catch (const Error& e) {
    fail(child(ptr, "generators"), e.what());
  }
}

// [{gen, monomial}] over `basis`.
ClassVector read_result(const json& arr, const std::string& ptr, const GradedBasis& basis, int N) {
  if (!arr.is_array()) fail(ptr, "expected an array");
  auto v = zero_class(basis.size(), N);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto p = child(ptr, i);
    v[lookup(basis, field(arr[i], p, "gen"), child(p, "gen"))] += parse_monomial(field(arr[i], p, "monomial"),
                                                                                  child(p, "monomial"), N);
  }
  return v;
}

json write_result(const ClassVector& v, const GradedBasis& basis) {
  json arr = json::array();
  for (std::size_t g = 0; g < v.size(); ++g) {
    if (!v[g].is_zero()) arr.push_back({{"gen", basis.name(g)}, {"monomial", v[g].to_string()}});
  }
  return arr;
}

// Bilinear table [{left, right, result}] with `left` over `lb` and `right` over `rb`.
StructureTable read_table(const json& doc, const std::string& ptr, const std::string& key, const std::string& left,
                          const GradedBasis& lb, const std::string& right, const GradedBasis& rb,
                          const GradedBasis& out, int N) {
  StructureTable t(lb.size(), std::vector<ClassVector>(rb.size(), zero_class(out.size(), N)));
  const auto& arr = array_field(doc, ptr, key);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto p = child(child(ptr, key), i);
    auto x = lookup(lb, field(arr[i], p, left), child(p, left));
    auto y = lookup(rb, field(arr[i], p, right), child(p, right));
    t[x][y] = add(t[x][y], read_result(field(arr[i], p, "result"), child(p, "result"), out, N));
  }
  return t;
}

json write_table(const StructureTable& t, const std::string& left, const GradedBasis& lb, const std::string& right,
                 const GradedBasis& rb, const GradedBasis& out) {
  json arr = json::array();
  for (std::size_t x = 0; x < t.size(); ++x) {
    for (std::size_t y = 0; y < t[x].size(); ++y) {
      if (is_zero(t[x][y])) continue;
      arr.push_back({{left, lb.name(x)}, {right, rb.name(y)}, {"result", write_result(t[x][y], out)}});
    }
  }
  return arr;
}

gf2::BitVector read_names(const json& arr, const std::string& ptr, const GradedBasis& basis) {
  if (!arr.is_array()) fail(ptr, "expected an array of generator names");
  gf2::BitVector v(basis.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v.flip(lookup(basis, arr[i], child(ptr, i)));
  return v;
}

json write_names(const gf2::BitVector& v, const GradedBasis& basis) {
  json arr = json::array();
  for (std::size_t g = 0; g < v.size(); ++g) {
    if (v.get(g)) arr.push_back(basis.name(g));
  }
  return arr;
}

AmbientModel read_ambient(const json& j, const std::string& ptr, int N) {
  const auto model = string_field(j, ptr, "model");
  try {
    if (model == "cpn") return ambient_cpn(int_field(j, ptr, "n"), N);
    if (model == "quadric") return ambient_quadric(int_field(j, ptr, "n"), N);
    if (model == "s2xs2") return ambient_s2xs2(N);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(ptr, e.what());
  }
  fail(child(ptr, "model"), "unknown ambient model '" + model + "' (expected cpn, quadric or s2xs2)");
}

json write_ambient(const AmbientModel& amb) {
  if (amb.name == "S2xS2") return {{"model", "s2xs2"}, {"n", 2}};
  if (!amb.name.empty() && amb.name[0] == 'Q') return {{"model", "quadric"}, {"n", amb.n}};
  return {{"model", "cpn"}, {"n", amb.n}};
}

std::string location_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const char* kind_name(classify::SideCondition::Kind k) {
  return k == classify::SideCondition::Kind::NarrowRequiresN ? "narrow_requires_N" : "unit_square";
}

}  // namespace

std::string to_string(DocType t) {
  switch (t) {
    case DocType::Complex:
      return "complex";
    case DocType::Structure:
      return "structure";
    case DocType::Nu:
      return "nu";
    case DocType::Triangle:
      return "triangle";
    case DocType::Problem:
      return "problem";
    case DocType::Preset:
      return "preset";
  }
  return "unknown";
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ":" + location_of(text, e.byte), "invalid JSON");
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

void write_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

DocType detect(const json& doc) {
  require_object(doc, "");
  if (doc.contains("type")) {
    const auto t = string_field(doc, "", "type");
    for (auto d : {DocType::Complex, DocType::Structure, DocType::Nu, DocType::Triangle, DocType::Problem,
                   DocType::Preset}) {
      if (t == to_string(d)) return d;
    }
    fail("/type", "unknown document type '" + t + "'");
  }
  if (doc.contains("differential")) return DocType::Complex;
  if (doc.contains("product")) return DocType::Structure;
  if (doc.contains("nu")) return DocType::Nu;
  if (doc.contains("n_Delta")) return DocType::Triangle;
  if (doc.contains("betti")) return DocType::Problem;
  fail("", "cannot determine the document type");
}

// ---------------------------------------------------------------------------

PearlComplex complex_from_json(const json& doc) {
  require_object(doc, "");
  const int n = int_field(doc, "", "n");
  const int N = int_field(doc, "", "N");
  if (N < 1) fail("/N", "minimal Maslov number must be positive");
  RingMode mode = RingMode::Lambda;
  if (doc.contains("ring")) {
    const auto ring = string_field(doc, "", "ring");
    if (ring == "lambda-plus") {
      mode = RingMode::LambdaPlus;
    } else if (ring != "lambda") {
      fail("/ring", "expected 'lambda' or 'lambda-plus'");
    }
  }
  const bool morse = doc.value("morse_basis", true);
  const bool single_max = doc.value("single_maximum", false);
  auto basis = make_basis(read_generators(doc, ""), morse ? std::optional<int>(n) : std::nullopt, single_max, "");
  auto diff = zero_laurent_matrix(basis.size(), basis.size(), N);
  const auto& arr = array_field(doc, "", "differential");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto p = child(std::string("/differential"), i);
    auto from = lookup(basis, field(arr[i], p, "from"), child(p, "from"));
    auto to = lookup(basis, field(arr[i], p, "to"), child(p, "to"));
    diff[to][from] += parse_monomial(field(arr[i], p, "monomial"), child(p, "monomial"), N);
  }
  return PearlComplex(std::move(basis), n, N, mode, std::move(diff));
}

json complex_to_json(const PearlComplex& c) {
  json doc = {{"type", "complex"},
              {"n", c.n()},
              {"N", c.min_maslov()},
              {"ring", c.mode() == RingMode::Lambda ? "lambda" : "lambda-plus"}};
  if (!c.basis().manifold_dim()) doc["morse_basis"] = false;
  if (c.basis().single_maximum()) doc["single_maximum"] = true;
  doc["generators"] = write_generators(c.basis());
  json diff = json::array();
  for (std::size_t from = 0; from < c.size(); ++from) {
    for (std::size_t to = 0; to < c.size(); ++to) {
      if (c.entry(to, from).is_zero()) continue;
      diff.push_back({{"from", c.basis().name(from)}, {"to", c.basis().name(to)}, {"monomial", c.entry(to, from).to_string()}});
    }
  }
  doc["differential"] = diff;
  return doc;
}

// ---------------------------------------------------------------------------

StructureDoc structure_from_json(const json& doc) {
  require_object(doc, "");
  StructureDoc out;
  auto& qs = out.structure;
  qs.name = doc.value("name", std::string("structure"));
  qs.n = int_field(doc, "", "n");
  qs.min_maslov = int_field(doc, "", "N");
  if (qs.min_maslov < 1) fail("/N", "minimal Maslov number must be positive");
  const int N = qs.min_maslov;
  qs.basis = make_basis(read_generators(doc, ""), qs.n, false, "");
  qs.unit = lookup(qs.basis, field(doc, "", "unit"), "/unit");
  qs.product = read_table(doc, "", "product", "x", qs.basis, "y", qs.basis, qs.basis, N);
  if (doc.contains("ambient")) {
    qs.ambient = read_ambient(doc["ambient"], "/ambient", N);
    const auto& amb = *qs.ambient;
    if (doc.contains("action")) {
      qs.action = read_table(doc, "", "action", "a", amb.basis, "x", qs.basis, qs.basis, N);
    }
    if (doc.contains("inclusion")) {
      std::vector<ClassVector> inc(qs.size(), zero_class(amb.size(), N));
      const auto& arr = array_field(doc, "", "inclusion");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto p = child(std::string("/inclusion"), i);
        auto x = lookup(qs.basis, field(arr[i], p, "x"), child(p, "x"));
        inc[x] = add(inc[x], read_result(field(arr[i], p, "result"), child(p, "result"), amb.basis, N));
      }
      qs.inclusion = std::move(inc);
    }
  } else if (doc.contains("action") || doc.contains("inclusion")) {
    fail("/ambient", "action and inclusion tables need an ambient model");
  }
  if (doc.contains("classical")) {
    const auto& cl = require_object(doc["classical"], "/classical");
    ClassicalTables t;
    const std::string base = "/classical";
    const std::size_t m = qs.size();
    if (cl.contains("intersection")) {
      std::vector<std::vector<gf2::BitVector>> tab(m, std::vector<gf2::BitVector>(m, gf2::BitVector(m)));
      const auto& arr = array_field(cl, base, "intersection");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto p = child(child(base, "intersection"), i);
        auto x = lookup(qs.basis, field(arr[i], p, "x"), child(p, "x"));
        auto y = lookup(qs.basis, field(arr[i], p, "y"), child(p, "y"));
        tab[x][y] ^= read_names(field(arr[i], p, "result"), child(p, "result"), qs.basis);
      }
      t.intersection = std::move(tab);
    }
    if ((cl.contains("action") || cl.contains("inclusion")) && !qs.ambient) {
      fail(base, "classical action and inclusion need an ambient model");
    }
    if (cl.contains("action")) {
      const auto& amb = *qs.ambient;
      std::vector<std::vector<gf2::BitVector>> tab(amb.size(), std::vector<gf2::BitVector>(m, gf2::BitVector(m)));
      const auto& arr = array_field(cl, base, "action");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto p = child(child(base, "action"), i);
        auto a = lookup(amb.basis, field(arr[i], p, "a"), child(p, "a"));
        auto x = lookup(qs.basis, field(arr[i], p, "x"), child(p, "x"));
        tab[a][x] ^= read_names(field(arr[i], p, "result"), child(p, "result"), qs.basis);
      }
      t.action = std::move(tab);
    }
    if (cl.contains("inclusion")) {
      const auto& amb = *qs.ambient;
      std::vector<gf2::BitVector> tab(m, gf2::BitVector(amb.size()));
      const auto& arr = array_field(cl, base, "inclusion");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto p = child(child(base, "inclusion"), i);
        auto x = lookup(qs.basis, field(arr[i], p, "x"), child(p, "x"));
        tab[x] ^= read_names(field(arr[i], p, "result"), child(p, "result"), amb.basis);
      }
      t.inclusion = std::move(tab);
    }
    out.classical = std::move(t);
  }
  return out;
}

json structure_to_json(const QuantumStructure& qs, const std::optional<ClassicalTables>& classical) {
  json doc = {{"type", "structure"}, {"name", qs.name}, {"n", qs.n}, {"N", qs.min_maslov}};
  doc["generators"] = write_generators(qs.basis);
  doc["unit"] = qs.basis.name(qs.unit);
  doc["product"] = write_table(qs.product, "x", qs.basis, "y", qs.basis, qs.basis);
  if (qs.ambient) {
    const auto& amb = *qs.ambient;
    doc["ambient"] = write_ambient(amb);
    if (qs.action) doc["action"] = write_table(*qs.action, "a", amb.basis, "x", qs.basis, qs.basis);
    if (qs.inclusion) {
      json arr = json::array();
      for (std::size_t x = 0; x < qs.size(); ++x) {
        if (!is_zero((*qs.inclusion)[x])) {
          arr.push_back({{"x", qs.basis.name(x)}, {"result", write_result((*qs.inclusion)[x], amb.basis)}});
        }
      }
      doc["inclusion"] = arr;
    }
  }
  if (classical) {
    json cl = json::object();
    if (classical->intersection) {
      json arr = json::array();
      for (std::size_t x = 0; x < qs.size(); ++x) {
        for (std::size_t y = 0; y < qs.size(); ++y) {
          const auto& v = (*classical->intersection)[x][y];
          if (v.any()) arr.push_back({{"x", qs.basis.name(x)}, {"y", qs.basis.name(y)}, {"result", write_names(v, qs.basis)}});
        }
      }
      cl["intersection"] = arr;
    }
    if (classical->action && qs.ambient) {
      json arr = json::array();
      for (std::size_t a = 0; a < classical->action->size(); ++a) {
        for (std::size_t x = 0; x < qs.size(); ++x) {
          const auto& v = (*classical->action)[a][x];
          if (v.any()) {
            arr.push_back({{"a", qs.ambient->basis.name(a)}, {"x", qs.basis.name(x)}, {"result", write_names(v, qs.basis)}});
          }
        }
      }
      cl["action"] = arr;
    }
    if (classical->inclusion && qs.ambient) {
      json arr = json::array();
      for (std::size_t x = 0; x < qs.size(); ++x) {
        const auto& v = (*classical->inclusion)[x];
        if (v.any()) arr.push_back({{"x", qs.basis.name(x)}, {"result", write_names(v, qs.ambient->basis)}});
      }
      cl["inclusion"] = arr;
    }
    doc["classical"] = cl;
  }
  return doc;
}

// ---------------------------------------------------------------------------

NuDoc nu_from_json(const json& doc) {
  require_object(doc, "");
  NuDoc out;
  const auto& arr = array_field(doc, "", "nu");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto p = child(std::string("/nu"), i);
    const auto k = as_int(field(arr[i], p, "k"), child(p, "k"));
    const auto l = as_int(field(arr[i], p, "l"), child(p, "l"));
    const bool count = arr[i].contains("count") ? as_bit(arr[i]["count"], child(p, "count")) : true;
    out.nu.add(k, l, count);
  }
  if (doc.contains("gammas")) {
    const auto& g = require_object(doc["gammas"], "/gammas");
    out.gammas = std::make_pair(as_bit(field(g, "/gammas", "gamma1"), "/gammas/gamma1"),
                                as_bit(field(g, "/gammas", "gamma2"), "/gammas/gamma2"));
  }
  return out;
}

json nu_to_json(const torus::NuTable& nu, const std::optional<std::pair<bool, bool>>& gammas) {
  json arr = json::array();
  for (const auto& [kl, v] : nu.entries()) {
    if (v) arr.push_back({{"k", kl.first}, {"l", kl.second}, {"count", 1}});
  }
  json doc = {{"type", "nu"}, {"nu", arr}};
  if (gammas) doc["gammas"] = {{"gamma1", gammas->first ? 1 : 0}, {"gamma2", gammas->second ? 1 : 0}};
  return doc;
}

torus::TriangleCounts triangle_from_json(const json& doc) {
  require_object(doc, "");
  torus::TriangleCounts tc;
  tc.n_A = as_bit(field(doc, "", "n_A"), "/n_A");
  tc.n_B = as_bit(field(doc, "", "n_B"), "/n_B");
  tc.n_C = as_bit(field(doc, "", "n_C"), "/n_C");
  tc.n_Delta = as_bit(field(doc, "", "n_Delta"), "/n_Delta");
  return tc;
}

json triangle_to_json(const torus::TriangleCounts& tc) {
  return {{"type", "triangle"}, {"n_A", int(tc.n_A)}, {"n_B", int(tc.n_B)}, {"n_C", int(tc.n_C)}, {"n_Delta", int(tc.n_Delta)}};
}

// ---------------------------------------------------------------------------

classify::ClassificationProblem problem_from_json(const json& doc) {
  require_object(doc, "");
  classify::ClassificationProblem p;
  p.name = doc.value("name", std::string("problem"));
  p.n = int_field(doc, "", "n");
  const auto& betti = array_field(doc, "", "betti");
  for (std::size_t i = 0; i < betti.size(); ++i) p.betti.push_back(static_cast<int>(as_int(betti[i], child(std::string("/betti"), i))));
  const auto& cands = array_field(doc, "", "candidate_N");
  for (std::size_t i = 0; i < cands.size(); ++i) {
    p.candidate_N.push_back(static_cast<int>(as_int(cands[i], child(std::string("/candidate_N"), i))));
  }
  if (doc.contains("ambient")) p.ambient = string_field(doc, "", "ambient");
  if (doc.contains("shifts")) {
    const auto& arr = array_field(doc, "", "shifts");
    for (std::size_t i = 0; i < arr.size(); ++i) p.shifts.push_back(as_int(arr[i], child(std::string("/shifts"), i)));
  }
  if (doc.contains("flags")) {
    const auto& arr = array_field(doc, "", "flags");
    for (std::size_t i = 0; i < arr.size(); ++i) p.flags.push_back(as_string(arr[i], child(std::string("/flags"), i)));
  }
  if (doc.contains("side_conditions")) {
    const auto& arr = array_field(doc, "", "side_conditions");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto ptr = child(std::string("/side_conditions"), i);
      classify::SideCondition c;
      const auto kind = string_field(arr[i], ptr, "kind");
      if (kind == "narrow_requires_N") {
        c.kind = classify::SideCondition::Kind::NarrowRequiresN;
        c.N = int_field(arr[i], ptr, "N");
      } else if (kind == "unit_square") {
        c.kind = classify::SideCondition::Kind::UnitSquare;
      } else {
        fail(child(ptr, "kind"), "unknown side condition '" + kind + "'");
      }
      c.even_n_only = arr[i].value("even_n_only", false);
      c.reason = arr[i].value("reason", std::string());
      p.side_conditions.push_back(std::move(c));
    }
  }
  if (doc.contains("max_bits")) p.max_bits = static_cast<std::size_t>(int_field(doc, "", "max_bits"));
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    fail("", e.what());
  }
  return p;
}

json problem_to_json(const classify::ClassificationProblem& p) {
  json conds = json::array();
  for (const auto& c : p.side_conditions) {
    json j = {{"kind", kind_name(c.kind)}, {"even_n_only", c.even_n_only}, {"reason", c.reason}};
    if (c.kind == classify::SideCondition::Kind::NarrowRequiresN) j["N"] = c.N;
    conds.push_back(j);
  }
  return {{"type", "problem"}, {"name", p.name},         {"n", p.n},           {"betti", p.betti},
          {"candidate_N", p.candidate_N}, {"ambient", p.ambient}, {"shifts", p.shifts}, {"flags", p.flags},
          {"side_conditions", conds},     {"max_bits", p.max_bits}};
}

json preset_to_json(const presets::Preset& p) {
  json doc = {{"type", "preset"}, {"name", p.name}, {"description", p.description}};
  if (p.complex) doc["complex"] = complex_to_json(*p.complex);
  if (p.structure) doc["structure"] = structure_to_json(*p.structure, p.classical);
  if (p.nu) {
    std::optional<std::pair<bool, bool>> gammas;
    if (p.torus_data && p.torus_data->has_gammas()) gammas = std::make_pair(*p.torus_data->gamma1, *p.torus_data->gamma2);
    doc["nu"] = nu_to_json(*p.nu, gammas);
  }
  if (p.triangle) doc["triangle"] = triangle_to_json(*p.triangle);
  if (!p.problems.empty()) {
    json arr = json::array();
    for (const auto& pr : p.problems) arr.push_back(problem_to_json(pr));
    doc["problems"] = arr;
  }
  doc["expected"] = p.expected;
  return doc;
}

}  // namespace pearl::io
