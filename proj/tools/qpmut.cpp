// Command-line front end for the quiver-with-potential mutation library.
//
// Subcommand families mirror the library modules:
//
//   qpmut quiver   validate|bmatrix|reflect|iso
//   qpmut qp       premutate|reduce|mutate|rigid
//   qpmut jacobian dim|certify|relations|ext|verify-complexes
//   qpmut rep      validate|mutate|morphism-mutate|iso|nearly-morita
//   qpmut coxeter  reduced|quiver|qp|rigid
//   qpmut selftest [--inner]
//
// All documents are JSON (rationals as "p/q" strings).  Identical inputs and
// seed produce byte-identical output.  Domain errors print a structured
// {"error": {"code", "message", "datum"}} object on stderr and exit 1.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qpmut/acceptance.hpp"
#include "qpmut/coxeter.hpp"
#include "qpmut/error.hpp"
#include "qpmut/jacobian.hpp"
#include "qpmut/json_io.hpp"
#include "qpmut/path_algebra.hpp"
#include "qpmut/qp.hpp"
#include "qpmut/quiver.hpp"
#include "qpmut/representation.hpp"

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;  // emission preserves insertion order
using namespace qpmut;

// Options shared across subcommands.  `truncation == -1` means "not given":
// loaded QP documents keep their own truncation, derived QPs use 12.
struct Opts {
  std::string in, out, at, qp, with_, from, base, word;
  std::string format = "json";
  std::string fixtures;
  int truncation = -1;
  int degree = 2;
  unsigned long long seed = 0;
  bool inner = false;
};

// The most recently touched piece of offending input, reported in errors.
std::string g_datum;

int g_exit = 0;

std::string describe_path(const std::filesystem::path& p) { return p.string(); }

// Resolve `path` against the fixture directory when it does not exist as
// given; the fixture directory comes from --fixtures or QPMUT_FIXTURES.
std::filesystem::path resolve_input(const std::string& path, const Opts& o) {
  namespace fs = std::filesystem;
  fs::path p(path);
  std::error_code ec;
  if (!fs::exists(p, ec) && p.is_relative() && !o.fixtures.empty()) {
    fs::path alt = fs::path(o.fixtures) / p;
    if (fs::exists(alt, ec)) return alt;
  }
  return p;
}

json load_doc(const std::string& path, const Opts& o) {
  g_datum = path;
  std::filesystem::path p = resolve_input(path, o);
  std::ifstream in(p);
  require(bool(in), "bad_file", "cannot read '" + describe_path(p) + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail("bad_json", "parse error in '" + describe_path(p) + "': " + e.what());
  }
  g_datum.clear();
  return j;
}

int effective_trunc(const Opts& o) { return o.truncation == -1 ? 12 : o.truncation; }

void check_trunc_flag(const Opts& o) {
  if (o.truncation != -1) {
    g_datum = std::to_string(o.truncation);
    require(o.truncation >= 3, "bad_truncation", "truncation must be at least 3");
    g_datum.clear();
  }
}

QP load_qp(const std::string& path, const Opts& o) {
  QP p = qp_from_json(load_doc(path, o));
  check_trunc_flag(o);
  if (o.truncation != -1 && o.truncation != p.trunc) {
    p.trunc = o.truncation;
    p.potential = el_retruncated(p.potential, o.truncation);
    p = validate_qp(p);
  }
  return p;
}

int resolve_vertex(const Quiver& q, const std::string& at) {
  g_datum = at;
  int k = q.vertex_index(at);
  require(k >= 0, "unknown_vertex", "no vertex named '" + at + "'");
  g_datum.clear();
  return k;
}

void emit(const ojson& doc, const Opts& o) {
  std::string text = o.format == "pretty" ? doc.dump(2) : doc.dump();
  text += '\n';
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    g_datum = o.out;
    require(bool(f), "bad_file", "cannot write '" + o.out + "'");
    f << text;
    require(bool(f), "bad_file", "failed writing '" + o.out + "'");
    g_datum.clear();
  }
}

ojson dims_to_json(const JacobianDims& d) {
  ojson j;
  j["layers"] = d.layers;
  j["total"] = d.total;
  j["nilpotency"] = d.nilpotency ? ojson(*d.nilpotency) : ojson(nullptr);
  j["finite"] = d.finite;
  return j;
}

ojson verdict_to_json(const RigidityVerdict& v) {
  ojson j;
  j["verdict"] = v.verdict;
  j["num_classes"] = v.span.num_classes;
  j["span_rank"] = v.span.span_rank;
  j["witness"] = v.span.witness ? ojson(*v.span.witness) : ojson(nullptr);
  j["dim"] = dims_to_json(v.dims);
  return j;
}

ojson complex_to_json(const VertexComplexReport& r) {
  ojson j;
  j["vertex"] = r.vertex;
  j["is_complex"] = r.is_complex;
  j["exact_at_end"] = r.exact_at_end;
  j["exact_at_relations"] = r.exact_at_relations;
  j["exact_at_arrows"] = r.exact_at_arrows;
  return j;
}

ojson typing_table(const CoxeterDatum& c, const WordQuiver& wq) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < wq.quiver.vertices.size(); ++i) {
    ojson row;
    row["vertex"] = wq.quiver.vertices[i];
    row["type"] = c.base.vertices[std::size_t(wq.vtype[i])];
    row["occurrence"] = wq.vocc[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> parse_word(const std::string& raw) {
  g_datum = raw;
  std::vector<std::string> out;
  std::string cur;
  for (char ch : raw + ",") {
    if (ch == ',') {
      // trim surrounding whitespace in each letter
      std::size_t a = cur.find_first_not_of(" \t");
      std::size_t b = cur.find_last_not_of(" \t");
      std::string letter = a == std::string::npos ? "" : cur.substr(a, b - a + 1);
      require(!letter.empty(), "bad_argument", "empty letter in word '" + raw + "'");
      out.push_back(letter);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  require(!out.empty(), "bad_argument", "empty word");
  g_datum.clear();
  return out;
}

// ---------------------------------------------------------------------------
// quiver family

void run_quiver_validate(const Opts& o) {
  Quiver q = quiver_from_json(load_doc(o.in, o));
  emit(ojson(quiver_to_json(q)), o);
}

void run_quiver_bmatrix(const Opts& o) {
  Quiver q = quiver_from_json(load_doc(o.in, o));
  ojson j;
  j["vertices"] = q.vertices;
  j["b"] = q.b_matrix();
  emit(j, o);
}

void run_quiver_reflect(const Opts& o) {
  Quiver q = quiver_from_json(load_doc(o.in, o));
  int k = resolve_vertex(q, o.at);
  g_datum = o.at;
  require(q.arrows_from(k).empty() || q.arrows_into(k).empty(), "bad_vertex",
          "vertex '" + o.at + "' is neither a sink nor a source");
  g_datum.clear();
  emit(ojson(quiver_to_json(reflect_at(q, k))), o);
}

void run_quiver_iso(const Opts& o) {
  Quiver a = quiver_from_json(load_doc(o.in, o));
  Quiver b = quiver_from_json(load_doc(o.with_, o));
  auto isos = quiver_isomorphisms(a, b, nullptr, nullptr, 64);
  ojson j;
  j["isomorphic"] = !isos.empty();
  j["count"] = isos.size();
  if (isos.empty()) {
    j["witness"] = nullptr;
  } else {
    const QuiverIso& iso = isos.front();
    ojson vm = ojson::object(), am = ojson::object();
    for (std::size_t i = 0; i < a.vertices.size(); ++i)
      vm[a.vertices[i]] = b.vertices[std::size_t(iso.vertex_map[i])];
    for (std::size_t i = 0; i < a.arrows.size(); ++i)
      am[a.arrows[i].name] = b.arrows[std::size_t(iso.arrow_map[i])].name;
    j["witness"] = ojson{{"vertices", vm}, {"arrows", am}};
  }
  emit(j, o);
}

// ---------------------------------------------------------------------------
// qp family

void run_qp_premutate(const Opts& o) {
  QP p = load_qp(o.in, o);
  int k = resolve_vertex(p.quiver, o.at);
  Premutation pre = premutate(p, k);
  emit(ojson(qp_to_json(pre.qp)), o);
}

void run_qp_reduce(const Opts& o) {
  QP p = load_qp(o.in, o);
  SplitReduceResult r = split_reduce(p);
  ojson j;
  j["qp"] = qp_to_json(r.reduced);
  ojson pairs = ojson::array();
  for (const auto& [x, y] : r.trivial_pairs) pairs.push_back(ojson::array({x, y}));
  j["trivial_pairs"] = std::move(pairs);
  emit(j, o);
}

void run_qp_mutate(const Opts& o) {
  QP p = load_qp(o.in, o);
  int k = resolve_vertex(p.quiver, o.at);
  MutationResult m = mutate(p, k);
  emit(ojson(qp_to_json(m.qp)), o);
}

void run_qp_rigid(const Opts& o) {
  QP p = load_qp(o.in, o);
  emit(verdict_to_json(is_rigid_truncated(p)), o);
}

// ---------------------------------------------------------------------------
// jacobian family

void run_jacobian_dim(const Opts& o) {
  QP p = load_qp(o.in, o);
  JacobianDims d = truncated_quotient(p);
  ojson j;
  j["dim"] = d.total;
  j["certified"] = d.finite;
  j["nilpotency"] = d.nilpotency ? ojson(*d.nilpotency) : ojson(nullptr);
  emit(j, o);
}

void run_jacobian_certify(const Opts& o) {
  QP p = load_qp(o.in, o);
  ojson j = dims_to_json(truncated_quotient(p));
  j["truncation"] = p.trunc;
  emit(j, o);
}

void run_jacobian_relations(const Opts& o) {
  QP p = load_qp(o.in, o);
  auto rel = minimal_relation_dims(p);
  ojson rows = ojson::array();
  for (const auto& [pair, dim] : rel) {
    ojson row;
    row["from"] = pair.first;
    row["to"] = pair.second;
    row["dim"] = dim;
    rows.push_back(std::move(row));
  }
  ojson j;
  j["relations"] = std::move(rows);
  emit(j, o);
}

void run_jacobian_ext(const Opts& o) {
  QP p = load_qp(o.in, o);
  g_datum = std::to_string(o.degree);
  require(o.degree >= 1, "bad_argument", "ext degree must be at least 1");
  g_datum.clear();
  TruncatedAlgebra alg = TruncatedAlgebra::build(p);
  ojson j;
  j["degree"] = o.degree;
  j["vertices"] = p.quiver.vertices;
  j["dims"] = ext_dims(alg, o.degree);
  emit(j, o);
}

void run_jacobian_verify_complexes(const Opts& o) {
  QP p = load_qp(o.in, o);
  PresentationReport r = verify_presentation_complexes(p);
  ojson j;
  j["all_required_hold"] = r.all_required_hold();
  j["ext2_simples_regular_vanish"] = r.ext2_simples_regular_vanish;
  ojson left = ojson::array(), right = ojson::array();
  for (const auto& c : r.left) left.push_back(complex_to_json(c));
  for (const auto& c : r.right) right.push_back(complex_to_json(c));
  j["left"] = std::move(left);
  j["right"] = std::move(right);
  emit(j, o);
}

// ---------------------------------------------------------------------------
// rep family

void run_rep_validate(const Opts& o) {
  QP p = load_qp(o.qp, o);
  Representation m = rep_from_json(p, load_doc(o.in, o));
  validate_rep(p, m);
  ojson j;
  j["valid"] = true;
  j["rep"] = rep_to_json(p, m);
  emit(j, o);
}

void run_rep_mutate(const Opts& o) {
  QP p = load_qp(o.qp, o);
  Representation m = rep_from_json(p, load_doc(o.in, o));
  validate_rep(p, m);
  int k = resolve_vertex(p.quiver, o.at);
  RepMutation rm = mutate_rep(p, m, k);
  ojson j;
  j["qp"] = qp_to_json(rm.mut.qp);
  j["rep"] = rep_to_json(rm.mut.qp, rm.rep);
  emit(j, o);
}

void run_rep_morphism_mutate(const Opts& o) {
  QP p = load_qp(o.qp, o);
  Representation a = rep_from_json(p, load_doc(o.from, o));
  Representation b = rep_from_json(p, load_doc(o.with_, o));
  validate_rep(p, a);
  validate_rep(p, b);
  RepMorphism f = morphism_from_json(p, a, b, load_doc(o.in, o));
  int k = resolve_vertex(p.quiver, o.at);
  RepMutation ra = mutate_rep(p, a, k);
  RepMutation rb = mutate_rep(p, b, k);
  RepMorphism mf = mutate_morphism(p, a, b, f, k);
  ojson j;
  j["qp"] = qp_to_json(ra.mut.qp);
  j["from"] = rep_to_json(ra.mut.qp, ra.rep);
  j["to"] = rep_to_json(rb.mut.qp, rb.rep);
  j["morphism"] = morphism_to_json(ra.mut.qp, mf);
  emit(j, o);
}

void run_rep_iso(const Opts& o) {
  QP p = load_qp(o.qp, o);
  Representation a = rep_from_json(p, load_doc(o.in, o));
  Representation b = rep_from_json(p, load_doc(o.with_, o));
  validate_rep(p, a);
  validate_rep(p, b);
  ojson j;
  j["isomorphic"] = are_isomorphic(p, a, b, o.seed);
  emit(j, o);
}

void run_rep_nearly_morita(const Opts& o) {
  QP p = load_qp(o.qp, o);
  Representation m = rep_from_json(p, load_doc(o.in, o));
  validate_rep(p, m);
  int k = resolve_vertex(p.quiver, o.at);
  ojson j;
  j["vertex"] = o.at;
  j["holds"] = check_nearly_morita(p, m, k, o.seed);
  emit(j, o);
}

// ---------------------------------------------------------------------------
// coxeter family

void run_coxeter_reduced(const Opts& o) {
  CoxeterDatum c = coxeter_datum(quiver_from_json(load_doc(o.base, o)));
  std::vector<std::string> w = parse_word(o.word);
  ojson j;
  j["word"] = w;
  j["reduced"] = is_reduced_word(c, w);
  emit(j, o);
}

void run_coxeter_quiver(const Opts& o) {
  CoxeterDatum c = coxeter_datum(quiver_from_json(load_doc(o.base, o)));
  std::vector<std::string> w = parse_word(o.word);
  WordQuiver wq = word_quiver(c, w);
  ojson j;
  j["word"] = w;
  j["quiver"] = quiver_to_json(wq.quiver);
  j["frozen"] = wq.frozen;
  j["typing"] = typing_table(c, wq);
  j["stable"] = quiver_to_json(wq.stable);
  emit(j, o);
}

void run_coxeter_qp(const Opts& o) {
  check_trunc_flag(o);
  CoxeterDatum c = coxeter_datum(quiver_from_json(load_doc(o.base, o)));
  std::vector<std::string> w = parse_word(o.word);
  WordQpResult r = word_qp(c, w, effective_trunc(o));
  ojson j;
  j["word"] = w;
  j["typing"] = typing_table(c, r.wq);
  j["frozen"] = r.wq.frozen;
  j["full"] = qp_to_json(r.full);
  j["full_status"] = "conjectural presentation";
  j["stable"] = qp_to_json(r.stable);
  emit(j, o);
}

void run_coxeter_rigid(const Opts& o) {
  check_trunc_flag(o);
  CoxeterDatum c = coxeter_datum(quiver_from_json(load_doc(o.base, o)));
  std::vector<std::string> w = parse_word(o.word);
  ojson j = verdict_to_json(word_qp_rigidity(c, w, effective_trunc(o)));
  ojson out;
  out["word"] = w;
  for (auto& [key, val] : j.items()) out[key] = std::move(val);
  emit(out, o);
}

// ---------------------------------------------------------------------------
// selftest

void run_selftest(const Opts& o, const std::string& self_path) {
  auto rows = run_selftest_criteria();
  if (!o.inner) rows.push_back(selftest_determinism(self_path));
  std::cout << format_selftest(rows);
  g_exit = count_failures(rows);
}

void add_common(CLI::App* leaf, Opts& o) {
  leaf->add_option("--truncation", o.truncation, "Potential truncation (>= 3)");
  leaf->add_option("--seed", o.seed, "Pseudorandom seed");
  leaf->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "pretty"}));
  leaf->add_option("--fixtures", o.fixtures, "Fixture directory for bare input names");
  leaf->add_option("--out", o.out, "Write the report to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;
  if (const char* env = std::getenv("QPMUT_FIXTURES")) o.fixtures = env;
  std::string self_path = argc > 0 ? argv[0] : "qpmut";

  CLI::App app{"Exact-arithmetic toolkit for quivers with potentials"};
  app.require_subcommand(1);

  auto add_leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                      void (*fn)(const Opts&)) {
    CLI::App* leaf = parent->add_subcommand(name, desc);
    add_common(leaf, o);
    leaf->callback([fn, &o] { fn(o); });
    return leaf;
  };

  CLI::App* quiver = app.add_subcommand("quiver", "Quiver documents");
  quiver->require_subcommand(1);
  add_leaf(quiver, "validate", "Parse, validate, and echo a quiver", run_quiver_validate)
      ->add_option("--in", o.in, "Quiver document")->required();
  add_leaf(quiver, "bmatrix", "Skew-symmetric exchange matrix", run_quiver_bmatrix)
      ->add_option("--in", o.in, "Quiver document")->required();
  {
    CLI::App* leaf = add_leaf(quiver, "reflect", "Reflect at a sink or source", run_quiver_reflect);
    leaf->add_option("--in", o.in, "Quiver document")->required();
    leaf->add_option("--at", o.at, "Vertex name")->required();
  }
  {
    CLI::App* leaf = add_leaf(quiver, "iso", "Test two quivers for isomorphism", run_quiver_iso);
    leaf->add_option("--in", o.in, "First quiver document")->required();
    leaf->add_option("--with", o.with_, "Second quiver document")->required();
  }

  CLI::App* qp = app.add_subcommand("qp", "Quivers with potentials");
  qp->require_subcommand(1);
  {
    CLI::App* leaf = add_leaf(qp, "premutate", "Premutation at a vertex", run_qp_premutate);
    leaf->add_option("--in", o.in, "QP document")->required();
    leaf->add_option("--at", o.at, "Vertex name")->required();
  }
  add_leaf(qp, "reduce", "Split off the trivial part", run_qp_reduce)
      ->add_option("--in", o.in, "QP document")->required();
  {
    CLI::App* leaf = add_leaf(qp, "mutate", "Mutation at a vertex", run_qp_mutate);
    leaf->add_option("--in", o.in, "QP document")->required();
    leaf->add_option("--at", o.at, "Vertex name")->required();
  }
  add_leaf(qp, "rigid", "Rigidity verdict with certificate data", run_qp_rigid)
      ->add_option("--in", o.in, "QP document")->required();

  CLI::App* jac = app.add_subcommand("jacobian", "Truncated Jacobian algebras");
  jac->require_subcommand(1);
  add_leaf(jac, "dim", "Dimension and nilpotency summary", run_jacobian_dim)
      ->add_option("--in", o.in, "QP document")->required();
  add_leaf(jac, "certify", "Per-degree dimension report", run_jacobian_certify)
      ->add_option("--in", o.in, "QP document")->required();
  add_leaf(jac, "relations", "Minimal relation counts between vertices", run_jacobian_relations)
      ->add_option("--in", o.in, "QP document")->required();
  {
    CLI::App* leaf = add_leaf(jac, "ext", "Ext dimensions between simples", run_jacobian_ext);
    leaf->add_option("--in", o.in, "QP document")->required();
    leaf->add_option("--degree", o.degree, "Ext degree (default 2)");
  }
  add_leaf(jac, "verify-complexes", "Check the presentation complexes", run_jacobian_verify_complexes)
      ->add_option("--in", o.in, "QP document")->required();

  CLI::App* rep = app.add_subcommand("rep", "Representations and their mutation");
  rep->require_subcommand(1);
  {
    CLI::App* leaf = add_leaf(rep, "validate", "Validate a representation", run_rep_validate);
    leaf->add_option("--qp", o.qp, "QP document")->required();
    leaf->add_option("--in", o.in, "Representation document")->required();
  }
  {
    CLI::App* leaf = add_leaf(rep, "mutate", "Mutate a representation", run_rep_mutate);
    leaf->add_option("--qp", o.qp, "QP document")->required();
    leaf->add_option("--in", o.in, "Representation document")->required();
    leaf->add_option("--at", o.at, "Vertex name")->required();
  }
  {
    CLI::App* leaf = add_leaf(rep, "morphism-mutate", "Mutate a morphism of representations",
                              run_rep_morphism_mutate);
    leaf->add_option("--qp", o.qp, "QP document")->required();
    leaf->add_option("--from", o.from, "Source representation document")->required();
    leaf->add_option("--with", o.with_, "Target representation document")->required();
    leaf->add_option("--in", o.in, "Morphism document")->required();
    leaf->add_option("--at", o.at, "Vertex name")->required();
  }
  {
    CLI::App* leaf = add_leaf(rep, "iso", "Test two representations for isomorphism", run_rep_iso);
    leaf->add_option("--qp", o.qp, "QP document")->required();
    leaf->add_option("--in", o.in, "First representation document")->required();
    leaf->add_option("--with", o.with_, "Second representation document")->required();
  }
  {
    CLI::App* leaf = add_leaf(rep, "nearly-morita", "Check double mutation recovers the input",
                              run_rep_nearly_morita);
    leaf->add_option("--qp", o.qp, "QP document")->required();
    leaf->add_option("--in", o.in, "Representation document")->required();
    leaf->add_option("--at", o.at, "Vertex name")->required();
  }

  CLI::App* cox = app.add_subcommand("coxeter", "Word quivers and word potentials");
  cox->require_subcommand(1);
  {
    CLI::App* leaf = add_leaf(cox, "reduced", "Test a word for reducedness", run_coxeter_reduced);
    leaf->add_option("--base", o.base, "Base quiver document")->required();
    leaf->add_option("--word", o.word, "Comma-separated base vertex names")->required();
  }
  {
    CLI::App* leaf = add_leaf(cox, "quiver", "Quiver of a reduced word", run_coxeter_quiver);
    leaf->add_option("--base", o.base, "Base quiver document")->required();
    leaf->add_option("--word", o.word, "Comma-separated base vertex names")->required();
  }
  {
    CLI::App* leaf = add_leaf(cox, "qp", "QP of a reduced word (full and stable)", run_coxeter_qp);
    leaf->add_option("--base", o.base, "Base quiver document")->required();
    leaf->add_option("--word", o.word, "Comma-separated base vertex names")->required();
  }
  {
    CLI::App* leaf = add_leaf(cox, "rigid", "Rigidity of the stable word QP", run_coxeter_rigid);
    leaf->add_option("--base", o.base, "Base quiver document")->required();
    leaf->add_option("--word", o.word, "Comma-separated base vertex names")->required();
  }

  CLI::App* self = app.add_subcommand("selftest", "Run the acceptance corpus");
  self->add_flag("--inner", o.inner, "Skip the determinism check (used by that check itself)");
  self->callback([&o, &self_path] { run_selftest(o, self_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const QpError& e) {
    ojson err;
    err["error"] = ojson{{"code", e.code()},
                         {"message", e.message()},
                         {"datum", g_datum.empty() ? ojson(nullptr) : ojson(g_datum)}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    ojson err;
    err["error"] = ojson{{"code", "internal_error"},
                         {"message", e.what()},
                         {"datum", g_datum.empty() ? ojson(nullptr) : ojson(g_datum)}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return g_exit;
}
