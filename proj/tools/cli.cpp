#include "cli.hpp"

#include <filesystem>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pearl/classify.hpp"
#include "pearl/io.hpp"
#include "pearl/presets.hpp"
#include "pearl/torus.hpp"

namespace pearl::cli {

namespace {

using nlohmann::json;

struct Globals {
  std::string format = "text";
  std::uint64_t seed = 1;
};

int exit_code(Outcome o) { return o == Outcome::Fail ? 1 : 0; }

int emit(const Report& rep, const Globals& g, std::ostream& out, const std::string& headline = "") {
  if (g.format == "machine") {
    auto j = rep.to_json();
    j["seed"] = g.seed;
    out << j.dump(2) << "\n";
  } else {
    if (!headline.empty()) out << headline << "\n";
    out << rep.to_text();
  }
  return exit_code(rep.status());
}

bool is_preset(const std::string& name) {
  const auto names = presets::preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::optional<int> optional_n(const std::vector<std::string>& args) {
  if (args.size() < 2) return std::nullopt;
  try {
    std::size_t used = 0;
    int n = std::stoi(args[1], &used);
    if (used == args[1].size()) return n;
  } catch (const std::logic_error&) {
  }
  throw ParseError("argument " + args[1], "expected an integer");
}

PearlComplex complex_source(const std::vector<std::string>& args, std::string& label) {
  label = args.at(0);
  if (is_preset(args[0])) {
    auto p = presets::make_preset(args[0], optional_n(args));
    if (!p.complex) throw PreconditionError("preset " + args[0] + " has no complex");
    return *p.complex;
  }
  auto doc = io::read_file(args[0]);
  if (io::detect(doc) != io::DocType::Complex) throw ParseError(args[0], "expected a complex document");
  return io::complex_from_json(doc);
}

std::pair<std::int64_t, std::int64_t> parse_window(const std::string& text) {
  auto colon = text.find(':');
  try {
    if (colon != std::string::npos) return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::logic_error&) {
  }
  throw ParseError("--window", "expected LO:HI, got '" + text + "'");
}

// Random Λ⁺ complexes with d² = 0 for the property part of the self-test.
PearlComplex random_complex(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 4), count(1, 5), maslov(2, 4);
  std::bernoulli_distribution fill(0.35);
  while (true) {
    const int n = dim(rng), N = maslov(rng);
    std::uniform_int_distribution<int> deg(0, n);
    std::vector<Generator> gens;
    const int m = count(rng);
    for (int i = 0; i < m; ++i) gens.push_back({"g" + std::to_string(i), deg(rng)});
    std::vector<DiffTerm> terms;
    for (std::size_t x = 0; x < gens.size(); ++x) {
      for (std::size_t y = 0; y < gens.size(); ++y) {
        const std::int64_t gap = gens[y].degree - gens[x].degree + 1;
        if (gap >= 0 && gap % N == 0 && fill(rng)) terms.push_back({x, y, gap / N});
      }
    }
    auto c = PearlComplex::from_terms(GradedBasis(gens, n), n, N, RingMode::LambdaPlus, terms);
    if (check_differential(c).passed("d_squared")) return c;
  }
}

// ---------------------------------------------------------------------------

int cmd_homology(const std::vector<std::string>& args, const std::string& ring, const std::string& window,
                 const Globals& g, std::ostream& out) {
  std::string label;
  auto c = complex_source(args, label);
  if (ring == "lambda") {
    c = c.with_ring(RingMode::Lambda);
  } else if (ring == "lambda-plus") {
    c = c.with_ring(RingMode::LambdaPlus);
  }
  Report rep("homology " + label);
  rep.merge(check_differential(c), "complex.");
  if (rep.status() == Outcome::Fail) return emit(rep, g, out);
  auto h = homology(c);
  rep.note("homology", h.to_string());
  rep.data()["homology"] = h.to_json();
  if (!window.empty()) {
    auto [lo, hi] = parse_window(window);
    if (hi < lo) throw ParseError("--window", "empty window");
    json dims = json::array();
    std::string text;
    for (auto d = lo; d <= hi; ++d) {
      dims.push_back({{"degree", d}, {"dim", h.z2_dimension(d)}});
      text += (text.empty() ? "" : " ") + std::string("H_") + std::to_string(d) + "=" + std::to_string(h.z2_dimension(d));
    }
    rep.note("window", text);
    rep.data()["window"] = dims;
  }
  return emit(rep, g, out, h.to_string());
}

Report verify_document(const json& doc, const std::string& label) {
  Report rep("verify " + label);
  switch (io::detect(doc)) {
    case io::DocType::Complex: {
      auto c = io::complex_from_json(doc);
      rep.merge(check_differential(c), "complex.");
      if (rep.status() != Outcome::Fail) {
        auto h = homology(c);
        rep.note("homology", h.to_string());
        if (c.mode() == RingMode::LambdaPlus) {
          rep.merge(specialization_check(c), "sigma.");
          rep.merge(check_spectral_sequence(c, spectral_sequence(c, static_cast<int>(c.max_exponent()) + 2)),
                    "spectral.");
        }
      }
      break;
    }
    case io::DocType::Structure: {
      auto s = io::structure_from_json(doc);
      auto v = verify_structure(s.structure);
      rep.merge(v, "structure.");
      rep.data()["commutative"] = v.data().value("commutative", true);
      if (s.classical) rep.merge(specialization_compat(s.structure, *s.classical), "structure.sigma.");
      break;
    }
    case io::DocType::Nu: {
      auto nu = io::nu_from_json(doc);
      auto d = torus::invariants_from_nu(nu.nu);
      if (nu.gammas) {
        auto full = torus::TorusQuantumData::full(d.alpha, d.beta, nu.gammas->first, nu.gammas->second);
        rep.check("gammas_match_s1", full.s1 == d.s1, "gamma1 + gamma2 against the census");
        rep.merge(torus::check_table(torus::product_table(full), full), "table.");
      }
      rep.note("invariants", "alpha=" + std::to_string(d.alpha) + " beta=" + std::to_string(d.beta) +
                                 " s1=" + std::to_string(d.s1));
      break;
    }
    case io::DocType::Triangle:
      throw PreconditionError("a triangle document needs torus data; use the torus command");
    case io::DocType::Problem: {
      auto outcome = classify::classify(io::problem_from_json(doc));
      rep.merge(outcome.report);
      break;
    }
    case io::DocType::Preset:
      throw PreconditionError("preset documents are verified by name");
  }
  return rep;
}

int cmd_verify(const std::vector<std::string>& args, const Globals& g, std::ostream& out) {
  if (is_preset(args.at(0))) {
    auto p = presets::make_preset(args[0], optional_n(args));
    return emit(presets::self_test(p), g, out);
  }
  return emit(verify_document(io::read_file(args[0]), args[0]), g, out);
}

int cmd_classify(const std::vector<std::string>& args, unsigned threads, const Globals& g, std::ostream& out) {
  const auto& what = args.at(0);
  classify::ClassificationOutcome outcome;
  if (what == "rpn" || what == "quadric") {
    auto n = optional_n(args);
    if (!n) throw ParseError("classify " + what, "missing n");
    outcome = what == "rpn" ? classify::classify(classify::rpn_problem(*n), threads)
                            : classify::classify_family("quadric " + std::to_string(*n), classify::quadric_problems(*n),
                                                        threads);
  } else {
    auto doc = io::read_file(what);
    if (io::detect(doc) != io::DocType::Problem) throw ParseError(what, "expected a problem document");
    outcome = classify::classify(io::problem_from_json(doc), threads);
  }
  json survivors = json::array();
  for (const auto& s : outcome.survivors) survivors.push_back(s.describe());
  outcome.report.data()["survivor_profiles"] = survivors;
  return emit(outcome.report, g, out);
}

torus::Ambient parse_ambient(const std::string& s) {
  if (s == "none") return torus::Ambient::None;
  if (s == "cp2") return torus::Ambient::CP2;
  if (s == "s2xs2") return torus::Ambient::S2xS2;
  throw ParseError("--ambient", "expected none, cp2 or s2xs2");
}

int cmd_torus(const std::string& nu_source, const std::string& triangle_source, const std::string& gammas_text,
              const std::string& ambient_text, const Globals& g, std::ostream& out) {
  io::NuDoc nu;
  std::optional<torus::TriangleCounts> triangle;
  if (nu_source == "clifford" || nu_source == "split_torus") {
    auto p = presets::make_preset(nu_source);
    nu.nu = *p.nu;
    if (p.torus_data && p.torus_data->has_gammas()) nu.gammas = {*p.torus_data->gamma1, *p.torus_data->gamma2};
    triangle = p.triangle;
  } else {
    auto doc = io::read_file(nu_source);
    if (io::detect(doc) != io::DocType::Nu) throw ParseError(nu_source, "expected a nu document");
    nu = io::nu_from_json(doc);
  }
  if (!gammas_text.empty()) {
    if (gammas_text.size() != 3 || gammas_text[1] != ',' || (gammas_text[0] != '0' && gammas_text[0] != '1') ||
        (gammas_text[2] != '0' && gammas_text[2] != '1')) {
      throw ParseError("--gammas", "expected G1,G2 with values 0 or 1");
    }
    nu.gammas = {gammas_text[0] == '1', gammas_text[2] == '1'};
  }
  if (!triangle_source.empty()) {
    auto doc = io::read_file(triangle_source);
    if (io::detect(doc) != io::DocType::Triangle) throw ParseError(triangle_source, "expected a triangle document");
    triangle = io::triangle_from_json(doc);
  }
  const auto ambient = parse_ambient(ambient_text);

  Report rep("torus " + nu_source);
  auto d = torus::invariants_from_nu(nu.nu);
  std::string headline = "alpha=" + std::to_string(d.alpha) + " beta=" + std::to_string(d.beta) +
                         " s1=" + std::to_string(d.s1);
  rep.data()["alpha"] = d.alpha;
  rep.data()["beta"] = d.beta;
  rep.data()["s1"] = d.s1;
  if (nu.gammas) {
    auto full = torus::TorusQuantumData::full(d.alpha, d.beta, nu.gammas->first, nu.gammas->second);
    rep.check("gammas_match_s1", full.s1 == d.s1,
              "gamma1 + gamma2 = " + std::to_string(full.s1) + ", census s1 = " + std::to_string(d.s1));
    d = full;
    headline += " s2=" + std::to_string(*d.s2);
    rep.data()["s2"] = *d.s2;
    auto table = torus::product_table(d, ambient);
    rep.merge(torus::check_table(table, d), "table.");
    if (ambient != torus::Ambient::None) rep.merge(verify_structure(table), "structure.");
    const auto expected = torus::basis_change_xi1(d);
    rep.check("xi1", torus::read_constants(torus::transform_xi1(table)) == expected,
              "transformed table vs basis-change formula");
    rep.note("xi1.s2", d.s1 ? "s1 = 1: s2 is invariant" : "s1 = 0: xi1 sends s2 to " + std::to_string(*expected.s2));
  } else {
    rep.note("s2", "needs gamma1 and gamma2 (--gammas)");
  }
  if (triangle) rep.merge(torus::triangle_identities(*triangle, d), "triangle.");
  return emit(rep, g, out, headline);
}

int cmd_obstruction(int n, int NL, int NLp, std::optional<int> chern, const Globals& g, std::ostream& out) {
  classify::ObstructionQuery q = classify::ObstructionQuery::cpn(n, NL, NLp);
  if (chern) q.chern = *chern;
  auto d = classify::intersection_obstruction(q);
  return emit(d.report, g, out, d.obstructed ? "OBSTRUCTED" : "NOT-OBSTRUCTED");
}

std::vector<classify::Rational> parse_areas(const std::vector<std::string>& items) {
  std::vector<classify::Rational> out;
  for (const auto& s : items) out.push_back(classify::parse_rational(s));
  return out;
}

int cmd_packing(int n, const std::string& preset, std::optional<std::int64_t> maslov, std::optional<std::int64_t> chern,
                const std::vector<std::string>& relative, const std::vector<std::string>& absolute, const Globals& g,
                std::ostream& out) {
  using classify::to_string;
  Report rep("packing");
  if (maslov || chern || !relative.empty() || !absolute.empty()) {
    if (!maslov || !chern) throw ParseError("packing", "--maslov and --chern are both required");
    const auto E = classify::disk_area_bound(*maslov, *chern);
    auto d = classify::packing_bound(parse_areas(relative), parse_areas(absolute), E);
    rep.check("inequality", d.satisfied,
              "total " + to_string(d.total) + " vs E = " + to_string(E) + ", slack " + to_string(d.slack));
    rep.data()["E"] = to_string(E);
    rep.data()["total"] = to_string(d.total);
    rep.data()["slack"] = to_string(d.slack);
    return emit(rep, g, out);
  }
  bool found = false;
  json rows = json::array();
  for (const auto& p : classify::packing_presets(n)) {
    if (!preset.empty() && p.name != preset) continue;
    found = true;
    const auto implied = classify::implied_bound(p);
    rep.check(p.name, implied == p.stated_bound,
              "bound " + to_string(implied) + " (stated: " + p.literal + ")");
    rows.push_back({{"name", p.name}, {"bound", to_string(implied)}, {"stated", to_string(p.stated_bound)},
                    {"literal", p.literal}});
  }
  if (!found) throw ParseError("--preset", "unknown packing preset '" + preset + "'");
  rep.data()["presets"] = rows;
  rep.data()["n"] = n;
  return emit(rep, g, out);
}

int cmd_examples(const std::vector<std::string>& args, bool self_test, int random, const std::string& out_dir,
                 const Globals& g, std::ostream& out) {
  if (self_test) {
    Report rep("examples self-test");
    for (const auto& p : presets::all_presets()) {
      auto r = presets::self_test(p);
      rep.merge(r, r.title() + ": ");
    }
    std::mt19937_64 rng(g.seed);
    int failures = 0;
    for (int i = 0; i < random; ++i) {
      auto c = random_complex(rng);
      auto ss = spectral_sequence(c, static_cast<int>(c.max_exponent()) + 2);
      auto r = check_spectral_sequence(c, ss);
      r.merge(specialization_check(c));
      if (r.status() == Outcome::Fail) ++failures;
    }
    if (random > 0) {
      rep.check("random_complexes", failures == 0,
                std::to_string(random - failures) + "/" + std::to_string(random) + " random complexes (seed " +
                    std::to_string(g.seed) + ")");
    }
    return emit(rep, g, out);
  }
  if (args.empty() || args[0] == "list") {
    if (g.format == "machine") {
      out << json(presets::preset_names()).dump() << "\n";
    } else {
      for (const auto& name : presets::preset_names()) out << name << "\n";
    }
    return 0;
  }
  if (args[0] == "dump") {
    if (args.size() < 2) throw ParseError("examples dump", "missing preset name");
    std::vector<std::string> rest(args.begin() + 1, args.end());
    auto p = presets::make_preset(rest[0], optional_n(rest));
    auto doc = io::preset_to_json(p);
    if (out_dir.empty()) {
      out << doc.dump(2) << "\n";
      return 0;
    }
    std::filesystem::create_directories(out_dir);
    const std::string stem = out_dir + "/" + p.name + (rest.size() > 1 ? "_" + rest[1] : "");
    for (const char* key : {"complex", "structure", "nu", "triangle"}) {
      if (doc.contains(key)) {
        io::write_file(stem + "." + key + ".json", doc[key]);
        out << stem << "." << key << ".json\n";
      }
    }
    if (doc.contains("problems")) {
      for (std::size_t i = 0; i < doc["problems"].size(); ++i) {
        const auto path = stem + ".problem" + std::to_string(i) + ".json";
        io::write_file(path, doc["problems"][i]);
        out << path << "\n";
      }
    }
    return 0;
  }
  throw ParseError("examples", "expected list, dump or --self-test");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lagrangian quantum homology toolkit", "pearl"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--seed", g.seed, "Seed for randomized checks");

  std::vector<std::string> hom_args;
  std::string ring, window;
  auto* hom = app.add_subcommand("homology", "Homology of a complex (preset name or document)");
  hom->add_option("source", hom_args, "Preset name [n] or complex document")->required();
  hom->add_option("--ring", ring, "Coefficient ring")->check(CLI::IsMember({"lambda", "lambda-plus"}));
  hom->add_option("--window", window, "Degree range LO:HI for Z2 dimensions");

  std::vector<std::string> ver_args;
  auto* ver = app.add_subcommand("verify", "Run every applicable check");
  ver->add_option("source", ver_args, "Preset name [n] or document")->required();

  std::vector<std::string> cls_args;
  unsigned threads = 0;
  auto* cls = app.add_subcommand("classify", "Classify homology-level differentials");
  cls->add_option("problem", cls_args, "rpn N | quadric N | problem document")->required();
  cls->add_option("--threads", threads, "Worker threads (0 = hardware)");

  std::string nu_source, triangle_source, gammas, ambient = "none";
  auto* tor = app.add_subcommand("torus", "Torus invariants from a disk census");
  tor->add_option("--nu", nu_source, "nu document, or clifford / split_torus")->required();
  tor->add_option("--triangle", triangle_source, "Triangle-count document");
  tor->add_option("--gammas", gammas, "gamma1,gamma2 (each 0 or 1)");
  tor->add_option("--ambient", ambient, "none, cp2 or s2xs2");

  int obs_n = 0, NL = 0, NLp = 0;
  std::optional<int> chern;
  auto* obs = app.add_subcommand("obstruction", "Intersection obstruction in CP^n");
  obs->add_option("--cpn", obs_n, "Complex dimension n")->required();
  obs->add_option("--NL", NL, "Minimal Maslov number of L")->required();
  obs->add_option("--NLp", NLp, "Minimal Maslov number of L'")->required();
  obs->add_option("--chern", chern, "Override C_M (default n+1)");

  int pack_n = 3;
  std::string pack_preset;
  std::optional<std::int64_t> maslov, pack_chern;
  std::vector<std::string> relative, absolute;
  auto* pack = app.add_subcommand("packing", "Packing inequalities (areas in units of pi)");
  pack->add_option("--n", pack_n, "Dimension for the presets");
  pack->add_option("--preset", pack_preset, "Single preset");
  pack->add_option("--maslov", maslov, "Maslov index of the disk");
  pack->add_option("--chern", pack_chern, "Minimal Chern number C_M");
  pack->add_option("--relative", relative, "Relative ball areas")->delimiter(',');
  pack->add_option("--absolute", absolute, "Absolute ball areas")->delimiter(',');

  std::vector<std::string> ex_args;
  bool self_test = false;
  int random = 50;
  std::string out_dir;
  auto* ex = app.add_subcommand("examples", "Built-in example library");
  ex->add_option("action", ex_args, "list | dump NAME [n]");
  ex->add_flag("--self-test", self_test, "Run every preset's self-test");
  ex->add_option("--random", random, "Random complexes in the self-test");
  ex->add_option("--out", out_dir, "Directory for dumped documents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*hom) return cmd_homology(hom_args, ring, window, g, out);
    if (*ver) return cmd_verify(ver_args, g, out);
    if (*cls) return cmd_classify(cls_args, threads, g, out);
    if (*tor) return cmd_torus(nu_source, triangle_source, gammas, ambient, g, out);
    if (*obs) return cmd_obstruction(obs_n, NL, NLp, chern, g, out);
    if (*pack) return cmd_packing(pack_n, pack_preset, maslov, pack_chern, relative, absolute, g, out);
    if (*ex) return cmd_examples(ex_args, self_test, random, out_dir, g, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace pearl::cli
