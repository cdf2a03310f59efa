#include "qpmut/path_algebra.hpp"

#include <algorithm>
#include <numeric>

#include "qpmut/error.hpp"
#include "qpmut/ratmat.hpp"

namespace qpmut {

Path trivial_path(int v) {
  Path p;
  p.start = p.end = v;
  return p;
}

Path arrow_path(const Quiver& q, int a) {
  Path p;
  p.start = q.arrows[a].from;
  p.end = q.arrows[a].to;
  p.seq = {a};
  return p;
}

bool composable(const Path& p, const Path& r) { return p.end == r.start; }

Path concat(const Path& p, const Path& r) {
  require(composable(p, r), "not_composable", "paths are not composable");
  Path out;
  out.start = p.start;
  out.end = r.end;
  out.seq = p.seq;
  out.seq.insert(out.seq.end(), r.seq.begin(), r.seq.end());
  return out;
}

NameOrder::NameOrder(const Quiver& quiver) : q(&quiver) {
  const int na = int(quiver.arrows.size());
  const int nv = int(quiver.vertices.size());
  std::vector<int> aidx(na), vidx(nv);
  std::iota(aidx.begin(), aidx.end(), 0);
  std::iota(vidx.begin(), vidx.end(), 0);
  std::sort(aidx.begin(), aidx.end(), [&](int a, int b) {
    return quiver.arrows[a].name < quiver.arrows[b].name;
  });
  std::sort(vidx.begin(), vidx.end(),
            [&](int a, int b) { return quiver.vertices[a] < quiver.vertices[b]; });
  arrow_rank.assign(na, 0);
  vertex_rank.assign(nv, 0);
  for (int i = 0; i < na; ++i) arrow_rank[aidx[i]] = i;
  for (int i = 0; i < nv; ++i) vertex_rank[vidx[i]] = i;
  out_by_rank.assign(nv, {});
  in_by_rank.assign(nv, {});
  for (int i : aidx) {
    out_by_rank[quiver.arrows[i].from].push_back(i);
    in_by_rank[quiver.arrows[i].to].push_back(i);
  }
}

bool NameOrder::path_less(const Path& a, const Path& b) const {
  if (a.seq.size() != b.seq.size()) return a.seq.size() < b.seq.size();
  if (a.seq.empty()) return vertex_rank[a.start] < vertex_rank[b.start];
  for (std::size_t i = 0; i < a.seq.size(); ++i) {
    const int ra = arrow_rank[a.seq[i]], rb = arrow_rank[b.seq[i]];
    if (ra != rb) return ra < rb;
  }
  return false;
}

Path NameOrder::canonical_rotation(const Path& cycle) const {
  require(cycle.is_cycle(), "not_a_cycle", "canonical_rotation needs a cycle");
  const int m = cycle.length();
  int best = 0;
  for (int r = 1; r < m; ++r) {
    // compare rotation r against rotation best, lexicographically by rank
    for (int i = 0; i < m; ++i) {
      const int x = arrow_rank[cycle.seq[(r + i) % m]];
      const int y = arrow_rank[cycle.seq[(best + i) % m]];
      if (x != y) {
        if (x < y) best = r;
        break;
      }
    }
  }
  if (best == 0) return cycle;
  Path out;
  out.seq.reserve(m);
  for (int i = 0; i < m; ++i) out.seq.push_back(cycle.seq[(best + i) % m]);
  out.start = out.end = q->arrows[out.seq.front()].from;
  return out;
}

Elem el_zero(int trunc) {
  Elem e;
  e.trunc = trunc;
  return e;
}

Elem el_vertex(int v, int trunc) {
  Elem e = el_zero(trunc);
  e.terms[trivial_path(v)] = 1;
  return e;
}

Elem el_arrow(const Quiver& q, int a, int trunc) {
  Elem e = el_zero(trunc);
  if (trunc >= 1) e.terms[arrow_path(q, a)] = 1;
  return e;
}

Elem el_path(const Path& p, int trunc) {
  Elem e = el_zero(trunc);
  if (p.length() <= trunc) e.terms[p] = 1;
  return e;
}

void el_add_term(Elem& e, const Path& p, const Rat& c) {
  if (c == 0 || p.length() > e.trunc) return;
  auto it = e.terms.find(p);
  if (it == e.terms.end()) {
    e.terms.emplace(p, c);
  } else {
    it->second += c;
    if (it->second == 0) e.terms.erase(it);
  }
}

namespace {
void check_same_trunc(const Elem& a, const Elem& b) {
  require(a.trunc == b.trunc, "mixed_truncation",
          "operands have different truncation levels (" + std::to_string(a.trunc) +
              " vs " + std::to_string(b.trunc) + ")");
}
}  // namespace

Elem el_add(const Elem& a, const Elem& b) {
  check_same_trunc(a, b);
  Elem out = a;
  for (const auto& [p, c] : b.terms) el_add_term(out, p, c);
  return out;
}

Elem el_sub(const Elem& a, const Elem& b) {
  check_same_trunc(a, b);
  Elem out = a;
  for (const auto& [p, c] : b.terms) el_add_term(out, p, -c);
  return out;
}

Elem el_neg(const Elem& a) {
  Elem out = el_zero(a.trunc);
  for (const auto& [p, c] : a.terms) out.terms.emplace(p, -c);
  return out;
}

Elem el_scale(const Rat& c, const Elem& a) {
  Elem out = el_zero(a.trunc);
  if (c == 0) return out;
  for (const auto& [p, x] : a.terms) out.terms.emplace(p, c * x);
  return out;
}

Elem el_mul(const Elem& a, const Elem& b) {
  check_same_trunc(a, b);
  Elem out = el_zero(a.trunc);
  for (const auto& [p, pc] : a.terms)
    for (const auto& [r, rc] : b.terms) {
      if (!composable(p, r)) continue;
      if (p.length() + r.length() > a.trunc) continue;
      el_add_term(out, concat(p, r), pc * rc);
    }
  return out;
}

Elem el_retruncated(const Elem& a, int trunc) {
  Elem out = el_zero(trunc);
  for (const auto& [p, c] : a.terms)
    if (p.length() <= trunc) out.terms.emplace(p, c);
  return out;
}

bool el_is_zero(const Elem& a) { return a.terms.empty(); }

bool el_equal(const Elem& a, const Elem& b) {
  check_same_trunc(a, b);
  return a.terms == b.terms;
}

int el_min_degree(const Elem& a) {
  int d = a.trunc + 1;
  for (const auto& [p, c] : a.terms) d = std::min(d, p.length());
  return d;
}

int el_max_degree(const Elem& a) {
  int d = -1;
  for (const auto& [p, c] : a.terms) d = std::max(d, p.length());
  return d;
}

Elem deriv_right(const Quiver& q, const Elem& e, int arrow) {
  Elem out = el_zero(e.trunc);
  for (const auto& [p, c] : e.terms) {
    if (p.seq.empty() || p.seq.back() != arrow) continue;
    Path pre;
    pre.start = p.start;
    pre.end = q.arrows[arrow].from;
    pre.seq.assign(p.seq.begin(), p.seq.end() - 1);
    el_add_term(out, pre, c);
  }
  return out;
}

Elem deriv_left(const Quiver& q, const Elem& e, int arrow) {
  Elem out = el_zero(e.trunc);
  for (const auto& [p, c] : e.terms) {
    if (p.seq.empty() || p.seq.front() != arrow) continue;
    Path suf;
    suf.start = q.arrows[arrow].to;
    suf.end = p.end;
    suf.seq.assign(p.seq.begin() + 1, p.seq.end());
    el_add_term(out, suf, c);
  }
  return out;
}

Elem cyclic_deriv(const Quiver& q, const Elem& w, int arrow) {
  Elem out = el_zero(w.trunc);
  const int from = q.arrows[arrow].from, to = q.arrows[arrow].to;
  for (const auto& [p, c] : w.terms) {
    require(p.is_cycle() || p.is_trivial(), "not_a_cycle",
            "cyclic derivative of a non-cycle term");
    const int m = p.length();
    for (int i = 0; i < m; ++i) {
      if (p.seq[i] != arrow) continue;
      Path rem;
      rem.start = to;
      rem.end = from;
      rem.seq.reserve(m - 1);
      for (int k = 1; k < m; ++k) rem.seq.push_back(p.seq[(i + k) % m]);
      el_add_term(out, rem, c);
    }
  }
  return out;
}

Elem second_deriv(const Quiver& q, const Elem& w, int a, int b) {
  Elem out = el_zero(w.trunc);
  for (const auto& [p, c] : w.terms) {
    require(p.is_cycle() || p.is_trivial(), "not_a_cycle",
            "second derivative of a non-cycle term");
    const int m = p.length();
    if (m < 2) continue;
    for (int i = 0; i < m; ++i) {
      if (p.seq[i] != a) continue;
      const int j = (i + 1) % m;
      if (p.seq[j] != b) continue;
      // remainder: the rotation starting just after b, with the final a b
      // dropped; for m == 2 this is the trivial path at s(a).
      Path rem;
      rem.start = q.arrows[b].to;
      rem.end = q.arrows[a].from;
      rem.seq.reserve(m - 2);
      for (int k = 1; k <= m - 2; ++k) rem.seq.push_back(p.seq[(j + k) % m]);
      el_add_term(out, rem, c);
    }
  }
  return out;
}

Elem cyclize(const NameOrder& ord, const Elem& w) {
  Elem out = el_zero(w.trunc);
  for (const auto& [p, c] : w.terms) {
    require(p.is_cycle(), "not_a_cycle", "potential term is not a cycle of length >= 1");
    el_add_term(out, ord.canonical_rotation(p), c);
  }
  return out;
}

bool cyclically_equal(const NameOrder& ord, const Elem& a, const Elem& b) {
  return el_equal(cyclize(ord, a), cyclize(ord, b));
}

Elem degree_part(const Elem& a, int lo, int hi) {
  Elem out = el_zero(a.trunc);
  for (const auto& [p, c] : a.terms)
    if (p.length() >= lo && p.length() <= hi) out.terms.emplace(p, c);
  return out;
}

std::vector<std::vector<Path>> enumerate_paths(const NameOrder& ord, int maxlen) {
  const Quiver& q = *ord.q;
  std::vector<std::vector<Path>> groups(maxlen + 1);
  // Length 0: trivial paths by vertex name.
  std::vector<int> vidx(q.vertices.size());
  std::iota(vidx.begin(), vidx.end(), 0);
  std::sort(vidx.begin(), vidx.end(),
            [&](int a, int b) { return ord.vertex_rank[a] < ord.vertex_rank[b]; });
  for (int v : vidx) groups[0].push_back(trivial_path(v));
  // Length d+1: prepend each arrow (in name order) to the matching paths of
  // length d; this keeps every group in contract order.
  std::vector<int> aidx(q.arrows.size());
  std::iota(aidx.begin(), aidx.end(), 0);
  std::sort(aidx.begin(), aidx.end(),
            [&](int a, int b) { return ord.arrow_rank[a] < ord.arrow_rank[b]; });
  for (int d = 0; d < maxlen; ++d) {
    for (int a : aidx) {
      const Path ap = arrow_path(q, a);
      for (const Path& p : groups[d]) {
        if (p.start != ap.end) continue;
        groups[d + 1].push_back(concat(ap, p));
      }
    }
  }
  return groups;
}

void Substitution::validate() const {
  require(int(images.size()) == int(quiver.arrows.size()), "bad_substitution",
          "substitution must provide one image per arrow");
  for (int a = 0; a < int(images.size()); ++a) {
    const Elem& im = images[a];
    require(im.trunc == trunc, "mixed_truncation",
            "substitution image truncation mismatch");
    for (const auto& [p, c] : im.terms) {
      require(!p.is_trivial(), "bad_substitution",
              "arrow image has a degree-0 term");
      require(p.start == quiver.arrows[a].from && p.end == quiver.arrows[a].to,
              "bad_substitution", "arrow image endpoint mismatch for arrow '" +
                                      quiver.arrows[a].name + "'");
    }
  }
}

Substitution identity_substitution(const Quiver& q, int trunc) {
  Substitution s;
  s.quiver = q;
  s.trunc = trunc;
  for (int a = 0; a < int(q.arrows.size()); ++a) s.images.push_back(el_arrow(q, a, trunc));
  return s;
}

Elem substitute(const Substitution& s, const Elem& e) {
  require(e.trunc == s.trunc, "mixed_truncation", "substitute truncation mismatch");
  Elem out = el_zero(s.trunc);
  for (const auto& [p, c] : e.terms) {
    Elem acc = el_vertex(p.start, s.trunc);
    for (int a : p.seq) {
      acc = el_mul(acc, s.images[a]);
      if (el_is_zero(acc)) break;
    }
    out = el_add(out, el_scale(c, acc));
  }
  return out;
}

Substitution subst_then(const Substitution& s, const Substitution& t) {
  require(s.trunc == t.trunc, "mixed_truncation", "composition truncation mismatch");
  Substitution c;
  c.quiver = s.quiver;
  c.trunc = s.trunc;
  for (const Elem& im : s.images) c.images.push_back(substitute(t, im));
  return c;
}

Substitution subst_inverse(const Substitution& s) {
  s.validate();
  const Quiver& q = s.quiver;
  const int na = int(q.arrows.size());
  // Linear part: images[a] = sum_b L[a][b] * b + higher-degree terms.
  Mat lin(na, na);
  for (int a = 0; a < na; ++a)
    for (const auto& [p, c] : s.images[a].terms)
      if (p.length() == 1) lin.at(a, p.seq[0]) = c;
  Mat lin_inv;
  try {
    lin_inv = inverse(lin);
  } catch (const QpError&) {
    fail("substitution_not_invertible", "linear part of substitution is singular");
  }
  // inv0: the inverse of the degree-preserving part.
  Substitution inv0;
  inv0.quiver = q;
  inv0.trunc = s.trunc;
  for (int a = 0; a < na; ++a) {
    Elem im = el_zero(s.trunc);
    for (int b = 0; b < na; ++b)
      if (lin_inv.at(a, b) != 0) el_add_term(im, arrow_path(q, b), lin_inv.at(a, b));
    inv0.images.push_back(std::move(im));
  }
  // u = "apply s then inv0" is unitriangular: u(a) = a + (min degree >= 2).
  Substitution u = subst_then(s, inv0);
  // Solve w(a) = a - (u - id)(w(a)) by fixpoint iteration; each pass fixes
  // one more degree, so trunc passes suffice.
  Substitution w = identity_substitution(q, s.trunc);
  for (int pass = 0; pass < s.trunc + 1; ++pass) {
    Substitution next;
    next.quiver = q;
    next.trunc = s.trunc;
    bool changed = false;
    for (int a = 0; a < na; ++a) {
      Elem uw = substitute(u, w.images[a]);
      Elem nu = el_sub(uw, w.images[a]);  // (u - id)(w(a))
      Elem im = el_sub(el_arrow(q, a, s.trunc), nu);
      if (!el_equal(im, w.images[a])) changed = true;
      next.images.push_back(std::move(im));
    }
    w = std::move(next);
    if (!changed) break;
  }
  Substitution g = subst_then(inv0, w);
  // Sanity: g must invert s on generators (exact arithmetic: failure = bug).
  Substitution check = subst_then(s, g);
  for (int a = 0; a < na; ++a)
    require(el_equal(check.images[a], el_arrow(q, a, s.trunc)),
            "substitution_not_invertible", "inversion fixpoint failed to converge");
  return g;
}

}  // namespace qpmut
