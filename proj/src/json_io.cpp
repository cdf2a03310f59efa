#include "qpmut/json_io.hpp"

#include <algorithm>
#include <vector>

#include "qpmut/error.hpp"

namespace qpmut {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  require(j.is_object(), "bad_json", std::string("expected an object with a '") +
                                         key + "' field, got: " + j.dump());
  auto it = j.find(key);
  require(it != j.end(), "bad_json",
          std::string("missing field '") + key + "' in: " + j.dump());
  return *it;
}

std::string as_string(const json& j, const char* what) {
  require(j.is_string(), "bad_json",
          std::string("expected a string for ") + what + ", got: " + j.dump());
  return j.get<std::string>();
}

int as_int(const json& j, const char* what) {
  require(j.is_number_integer(), "bad_json",
          std::string("expected an integer for ") + what + ", got: " + j.dump());
  return j.get<int>();
}

const json& as_array(const json& j, const char* what) {
  require(j.is_array(), "bad_json",
          std::string("expected an array for ") + what + ", got: " + j.dump());
  return j;
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
  return parse_rational(as_string(j, "a rational"));
}

}  // namespace

json quiver_to_json(const Quiver& q) {
  json arrows = json::array();
  for (const Arrow& a : q.arrows)
    arrows.push_back(
        {{"name", a.name}, {"from", q.vertices[a.from]}, {"to", q.vertices[a.to]}});
  return {{"vertices", q.vertices}, {"arrows", arrows}};
}

Quiver quiver_from_json(const json& j) {
  Quiver q;
  for (const json& v : as_array(field(j, "vertices"), "'vertices'"))
    q.add_vertex(as_string(v, "a vertex name"));
  for (const json& a : as_array(field(j, "arrows"), "'arrows'")) {
    std::string name = as_string(field(a, "name"), "an arrow name");
    std::string from = as_string(field(a, "from"), "an arrow source");
    std::string to = as_string(field(a, "to"), "an arrow target");
    require(q.has_vertex(from), "unknown_vertex",
            "arrow '" + name + "' starts at unknown vertex '" + from + "'");
    require(q.has_vertex(to), "unknown_vertex",
            "arrow '" + name + "' ends at unknown vertex '" + to + "'");
    q.add_arrow(name, from, to);
  }
  q.validate();
  return q;
}

json elem_to_json(const Quiver& q, const Elem& e) {
  NameOrder ord(q);
  std::vector<const Path*> paths;
  for (const auto& [p, c] : e.terms) paths.push_back(&p);
  std::sort(paths.begin(), paths.end(),
            [&](const Path* x, const Path* y) { return ord.path_less(*x, *y); });
  json out = json::array();
  for (const Path* p : paths) {
    json term = {{"coeff", rat_to_string(e.terms.at(*p))}};
    if (p->is_trivial()) {
      term["vertex"] = q.vertices[p->start];
    } else {
      json names = json::array();
      for (int a : p->seq) names.push_back(q.arrows[a].name);
      term["path"] = names;
    }
    out.push_back(term);
  }
  return out;
}

Elem elem_from_json(const Quiver& q, const json& j, int trunc) {
  Elem e = el_zero(trunc);
  for (const json& term : as_array(j, "an element")) {
    Rat coeff = rat_from_json(field(term, "coeff"));
    if (term.contains("vertex")) {
      std::string v = as_string(term["vertex"], "a vertex name");
      int vi = q.vertex_index(v);
      require(vi >= 0, "unknown_vertex", "unknown vertex '" + v + "' in element");
      el_add_term(e, trivial_path(vi), coeff);
      continue;
    }
    const json& names = as_array(field(term, "path"), "'path'");
    require(!names.empty(), "bad_json",
            "empty 'path' in element term; use the 'vertex' form");
    Path p;
    for (const json& n : names) {
      std::string name = as_string(n, "an arrow name");
      int a = q.arrow_index(name);
      require(a >= 0, "unknown_arrow", "unknown arrow '" + name + "' in element");
      if (p.seq.empty()) {
        p.start = q.arrows[a].from;
      } else {
        require(q.arrows[p.seq.back()].to == q.arrows[a].from, "not_composable",
                "arrows '" + q.arrows[p.seq.back()].name + "' and '" + name +
                    "' do not compose");
      }
      p.seq.push_back(a);
      p.end = q.arrows[a].to;
    }
    el_add_term(e, p, coeff);
  }
  return e;
}

json qp_to_json(const QP& p) {
  return {{"quiver", quiver_to_json(p.quiver)},
          {"potential", elem_to_json(p.quiver, p.potential)},
          {"frozen", std::vector<std::string>(p.frozen.begin(), p.frozen.end())},
          {"truncation", p.trunc}};
}

QP qp_from_json(const json& j) {
  QP p;
  p.quiver = quiver_from_json(field(j, "quiver"));
  p.trunc = j.contains("truncation") ? as_int(j["truncation"], "'truncation'") : 12;
  p.potential = j.contains("potential")
                    ? elem_from_json(p.quiver, j["potential"], p.trunc)
                    : el_zero(p.trunc);
  if (j.contains("frozen")) {
    for (const json& v : as_array(j["frozen"], "'frozen'")) {
      std::string name = as_string(v, "a frozen vertex name");
      require(p.quiver.has_vertex(name), "unknown_vertex",
              "unknown frozen vertex '" + name + "'");
      p.frozen.insert(name);
    }
  }
  return validate_qp(p);
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rat_to_string(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const json& j, int rows, int cols) {
  const json& rj = as_array(j, "a matrix");
  require(int(rj.size()) == rows, "shape_mismatch",
          "matrix has " + std::to_string(rj.size()) + " rows, expected " +
              std::to_string(rows));
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = as_array(rj[r], "a matrix row");
    require(int(row.size()) == cols, "shape_mismatch",
            "matrix row has " + std::to_string(row.size()) + " entries, expected " +
                std::to_string(cols));
    for (int c = 0; c < cols; ++c) m.at(r, c) = rat_from_json(row[c]);
  }
  return m;
}

json rep_to_json(const QP& p, const Representation& m) {
  json dims = json::object();
  for (std::size_t v = 0; v < p.quiver.vertices.size(); ++v)
    dims[p.quiver.vertices[v]] = m.dims[v];
  json mats = json::object();
  for (std::size_t a = 0; a < p.quiver.arrows.size(); ++a)
    mats[p.quiver.arrows[a].name] = mat_to_json(m.mats[a]);
  return {{"dims", dims}, {"matrices", mats}};
}

Representation rep_from_json(const QP& p, const json& j) {
  const Quiver& q = p.quiver;
  Representation m;
  const json& dims = field(j, "dims");
  require(dims.is_object(), "bad_json", "'dims' must be an object");
  for (const auto& [name, val] : dims.items())
    require(q.has_vertex(name), "unknown_vertex",
            "unknown vertex '" + name + "' in 'dims'");
  m.dims.resize(q.vertices.size(), 0);
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    auto it = dims.find(q.vertices[v]);
    require(it != dims.end(), "bad_json",
            "missing dimension for vertex '" + q.vertices[v] + "'");
    int d = as_int(*it, "a dimension");
    require(d >= 0, "bad_json", "negative dimension at vertex '" + q.vertices[v] + "'");
    m.dims[v] = d;
  }
  json mats = j.contains("matrices") ? j["matrices"] : json::object();
  require(mats.is_object(), "bad_json", "'matrices' must be an object");
  for (const auto& [name, val] : mats.items())
    require(q.has_arrow(name), "unknown_arrow",
            "unknown arrow '" + name + "' in 'matrices'");
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    int rows = m.dims[q.arrows[a].from], cols = m.dims[q.arrows[a].to];
    auto it = mats.find(q.arrows[a].name);
    m.mats.push_back(it == mats.end() ? Mat(rows, cols)
                                      : mat_from_json(*it, rows, cols));
  }
  return m;
}

json morphism_to_json(const QP& p, const RepMorphism& f) {
  json maps = json::object();
  for (std::size_t v = 0; v < p.quiver.vertices.size(); ++v)
    maps[p.quiver.vertices[v]] = mat_to_json(f.f[v]);
  return {{"maps", maps}};
}

RepMorphism morphism_from_json(const QP& p, const Representation& a,
                               const Representation& b, const json& j) {
  const Quiver& q = p.quiver;
  const json& maps = field(j, "maps");
  require(maps.is_object(), "bad_json", "'maps' must be an object");
  for (const auto& [name, val] : maps.items())
    require(q.has_vertex(name), "unknown_vertex",
            "unknown vertex '" + name + "' in 'maps'");
  RepMorphism f;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    auto it = maps.find(q.vertices[v]);
    f.f.push_back(it == maps.end() ? Mat(a.dims[v], b.dims[v])
                                   : mat_from_json(*it, a.dims[v], b.dims[v]));
  }
  return f;
}

}  // namespace qpmut
