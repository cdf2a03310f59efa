#include "qpmut/qp.hpp"

#include <algorithm>

#include "qpmut/error.hpp"
#include "qpmut/ratmat.hpp"

namespace qpmut {

std::set<int> QP::frozen_idx() const {
  std::set<int> out;
  for (const auto& name : frozen) {
    const int v = quiver.vertex_index(name);
    require(v >= 0, "unknown_vertex", "frozen vertex '" + name + "' is not in the quiver");
    out.insert(v);
  }
  return out;
}

QP validate_qp(const QP& p) {
  p.quiver.validate();
  require(p.trunc >= 3, "bad_truncation",
          "truncation level must be at least 3 (got " + std::to_string(p.trunc) + ")");
  require(!p.quiver.has_loops(), "loop_at_vertex", "QP quivers must be loop-free");
  require(p.potential.trunc == p.trunc, "mixed_truncation",
          "potential truncation does not match the QP truncation");
  p.frozen_idx();  // validates names
  for (const auto& [path, c] : p.potential.terms) {
    require(path.is_cycle() && path.length() >= 2, "not_a_cycle",
            "potential terms must be cycles of length >= 2");
    for (int a : path.seq)
      require(a >= 0 && a < int(p.quiver.arrows.size()), "unknown_arrow",
              "potential references an arrow outside the quiver");
  }
  QP out = p;
  NameOrder ord(out.quiver);
  out.potential = cyclize(ord, p.potential);
  return out;
}

bool is_reduced(const QP& p) { return el_is_zero(degree_part(p.potential, 2, 2)); }

std::vector<std::pair<int, Elem>> jacobian_generators(const QP& p) {
  const auto frozen = p.frozen_idx();
  std::vector<std::pair<int, Elem>> gens;
  for (int a = 0; a < int(p.quiver.arrows.size()); ++a) {
    if (frozen.count(p.quiver.arrows[a].from) || frozen.count(p.quiver.arrows[a].to))
      continue;
    gens.emplace_back(a, cyclic_deriv(p.quiver, p.potential, a));
  }
  return gens;
}

Premutation premutate(const QP& input, int k) {
  QP p = validate_qp(input);
  const Quiver& q = p.quiver;
  require(k >= 0 && k < int(q.vertices.size()), "bad_vertex", "mutation vertex out of range");
  require(!p.frozen.count(q.vertices[k]), "frozen_vertex",
          "cannot mutate at frozen vertex '" + q.vertices[k] + "'");
  require(!q.has_loop_at(k), "loop_at_vertex",
          "cannot mutate at a vertex with a loop");
  require(!q.has_two_cycle_through(k), "two_cycle_at_vertex",
          "cannot mutate at a vertex on a 2-cycle");

  Premutation pre;
  pre.k_old = k;
  pre.in_arrows = q.arrows_into(k);
  pre.out_arrows = q.arrows_from(k);

  Quiver nq;
  std::set<std::string> vtaken;
  for (int v = 0; v < int(q.vertices.size()); ++v)
    if (v != k) vtaken.insert(q.vertices[v]);
  for (int v = 0; v < int(q.vertices.size()); ++v) {
    if (v == k)
      nq.add_vertex(fresh_name(star_name(q.vertices[k]), vtaken));
    else
      nq.add_vertex(q.vertices[v]);
  }
  pre.k_new = k;

  std::set<std::string> ataken;
  pre.old_to_new_arrow.assign(q.arrows.size(), -1);
  for (int a = 0; a < int(q.arrows.size()); ++a) {
    const Arrow& ar = q.arrows[a];
    if (ar.from == k || ar.to == k) continue;
    ataken.insert(ar.name);
    pre.old_to_new_arrow[a] = nq.add_arrow_idx(ar.name, ar.from, ar.to);
  }
  // Composite arrows [ab] for every passage a: i -> k, b: k -> j.
  pre.comp_idx.assign(pre.in_arrows.size(), std::vector<int>(pre.out_arrows.size(), -1));
  for (std::size_t i = 0; i < pre.in_arrows.size(); ++i)
    for (std::size_t o = 0; o < pre.out_arrows.size(); ++o) {
      const Arrow& a = q.arrows[pre.in_arrows[i]];
      const Arrow& b = q.arrows[pre.out_arrows[o]];
      const std::string name = fresh_name("[" + a.name + b.name + "]", ataken);
      ataken.insert(name);
      pre.comp_idx[i][o] = nq.add_arrow_idx(name, a.from, b.to);
    }
  // Starred replacements: a: i -> k becomes a*: k* -> i, b: k -> j becomes
  // b*: j -> k*.
  for (int a : pre.in_arrows) {
    const std::string name = fresh_name(star_name(q.arrows[a].name), ataken);
    ataken.insert(name);
    pre.star_of_in.push_back(nq.add_arrow_idx(name, k, q.arrows[a].from));
  }
  for (int b : pre.out_arrows) {
    const std::string name = fresh_name(star_name(q.arrows[b].name), ataken);
    ataken.insert(name);
    pre.star_of_out.push_back(nq.add_arrow_idx(name, q.arrows[b].to, k));
  }

  auto in_pos = [&](int arrow) {
    return int(std::find(pre.in_arrows.begin(), pre.in_arrows.end(), arrow) -
               pre.in_arrows.begin());
  };
  auto out_pos = [&](int arrow) {
    return int(std::find(pre.out_arrows.begin(), pre.out_arrows.end(), arrow) -
               pre.out_arrows.begin());
  };

  // [W]: rotate each cycle off k, then collapse each passage through k into
  // the corresponding composite arrow.
  Elem nw = el_zero(p.trunc);
  for (const auto& [path, c] : p.potential.terms) {
    const int m = path.length();
    int rot = 0;
    if (path.start == k) {
      while (rot < m && q.arrows[path.seq[rot]].from == k) ++rot;
      require(rot < m, "loop_at_vertex", "cycle stuck at the mutation vertex");
    }
    std::vector<int> seq;
    for (int t = 0; t < m; ++t) seq.push_back(path.seq[(rot + t) % m]);
    std::vector<int> nseq;
    for (int t = 0; t < m;) {
      const int x = seq[t];
      if (q.arrows[x].to == k) {
        require(t + 1 < m, "internal_error", "cycle ends at the mutation vertex");
        const int y = seq[t + 1];
        nseq.push_back(pre.comp_idx[in_pos(x)][out_pos(y)]);
        t += 2;
      } else {
        nseq.push_back(pre.old_to_new_arrow[x]);
        t += 1;
      }
    }
    Path np;
    np.seq = std::move(nseq);
    np.start = np.end = nq.arrows[np.seq.front()].from;
    el_add_term(nw, np, c);
  }
  // Delta: a* [ab] b* over all passages.
  for (std::size_t i = 0; i < pre.in_arrows.size(); ++i)
    for (std::size_t o = 0; o < pre.out_arrows.size(); ++o) {
      Path d;
      d.start = d.end = k;
      d.seq = {pre.star_of_in[i], pre.comp_idx[i][o], pre.star_of_out[o]};
      el_add_term(nw, d, Rat(1));
    }

  QP np;
  np.quiver = std::move(nq);
  np.potential = std::move(nw);
  np.frozen = p.frozen;
  np.trunc = p.trunc;
  pre.qp = validate_qp(np);
  return pre;
}

namespace {

bool el_contains_arrow(const Elem& e, const std::set<int>& arrows) {
  for (const auto& [p, c] : e.terms)
    for (int a : p.seq)
      if (arrows.count(a)) return true;
  return false;
}

Path two_cycle_path(const Quiver& q, int a, int b) {
  Path p;
  p.start = p.end = q.arrows[a].from;
  p.seq = {a, b};
  return p;
}

}  // namespace

SplitReduceResult split_reduce(const QP& input) {
  QP p = validate_qp(input);
  const Quiver& q = p.quiver;
  const int N = p.trunc;
  NameOrder ord(q);
  Elem w = p.potential;
  Substitution phi = identity_substitution(q, N);

  std::vector<std::pair<int, int>> trivial;  // arrow-index pairs (a, b)

  // Stage 1: bring the degree-2 part into rank normal form — for each vertex
  // pair, an invertible linear change of the two opposed arrow families
  // turns the coefficient pairing into [[I,0],[0,0]].
  const int nv = int(q.vertices.size());
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) {
      std::vector<int> A, B;
      for (int a = 0; a < int(q.arrows.size()); ++a) {
        if (q.arrows[a].from == i && q.arrows[a].to == j) A.push_back(a);
        if (q.arrows[a].from == j && q.arrows[a].to == i) B.push_back(a);
      }
      if (A.empty() || B.empty()) continue;
      Elem w2 = degree_part(w, 2, 2);
      Mat c(int(A.size()), int(B.size()));
      bool any = false;
      for (int u = 0; u < int(A.size()); ++u)
        for (int v = 0; v < int(B.size()); ++v) {
          const Path cyc = ord.canonical_rotation(two_cycle_path(q, A[u], B[v]));
          auto it = w2.terms.find(cyc);
          if (it != w2.terms.end()) {
            c.at(u, v) = it->second;
            any = true;
          }
        }
      if (!any) continue;
      // E * C = rref(C) via the augmented matrix; E is invertible.
      Rref aug = rref(hstack({c, Mat::identity(int(A.size()))}));
      Mat r = submatrix_cols(aug.r, 0, int(B.size()));
      Mat e = submatrix_cols(aug.r, int(B.size()), int(A.size()));
      int rk = 0;
      for (int col : aug.pivot_cols)
        if (col < int(B.size())) ++rk;
      // F: pivot columns become the first unit vectors, non-pivot columns
      // are completed into the kernel, so rref(C) * F = [[I,0],[0,0]].
      std::vector<int> piv, nonpiv;
      for (int col : aug.pivot_cols)
        if (col < int(B.size())) piv.push_back(col);
      for (int v = 0; v < int(B.size()); ++v)
        if (std::find(piv.begin(), piv.end(), v) == piv.end()) nonpiv.push_back(v);
      Mat f(int(B.size()), int(B.size()));
      for (int m = 0; m < rk; ++m) f.at(piv[m], m) = 1;
      for (int t = 0; t < int(nonpiv.size()); ++t) {
        f.at(nonpiv[t], rk + t) = 1;
        for (int m = 0; m < rk; ++m) f.at(piv[m], rk + t) = -r.at(m, nonpiv[t]);
      }
      // Substitution: a_u -> sum_w E[w][u] a_w, b_v -> sum_x F[v][x] b_x.
      Substitution step = identity_substitution(q, N);
      for (int u = 0; u < int(A.size()); ++u) {
        Elem im = el_zero(N);
        for (int wdx = 0; wdx < int(A.size()); ++wdx)
          if (e.at(wdx, u) != 0) el_add_term(im, arrow_path(q, A[wdx]), e.at(wdx, u));
        step.images[A[u]] = std::move(im);
      }
      for (int v = 0; v < int(B.size()); ++v) {
        Elem im = el_zero(N);
        for (int x = 0; x < int(B.size()); ++x)
          if (f.at(v, x) != 0) el_add_term(im, arrow_path(q, B[x]), f.at(v, x));
        step.images[B[v]] = std::move(im);
      }
      w = cyclize(ord, substitute(step, w));
      phi = subst_then(phi, step);
      for (int m = 0; m < rk; ++m) trivial.emplace_back(A[m], B[m]);
    }

  // Trivial part and the set of arrows to be deleted.
  Elem tpart = el_zero(N);
  std::set<int> tarrows;
  for (const auto& [a, b] : trivial) {
    el_add_term(tpart, ord.canonical_rotation(two_cycle_path(q, a, b)), Rat(1));
    tarrows.insert(a);
    tarrows.insert(b);
  }

  // Stage 2: eliminate the trivial arrows from the higher-degree part by the
  // substitutions a -> a - d_b(rest), b -> d_a-adjusted companion; each pass
  // pushes the contamination into strictly higher degree.
  for (int pass = 0; pass <= N + 2; ++pass) {
    Elem rest = el_sub(w, tpart);
    if (!el_contains_arrow(rest, tarrows)) break;
    require(pass <= N + 1, "internal_error", "split reduction did not converge");
    bool moved = false;
    for (const auto& [a, b] : trivial) {
      rest = el_sub(w, tpart);
      Elem da = cyclic_deriv(q, rest, b);  // corrects a
      Elem db = cyclic_deriv(q, rest, a);  // corrects b
      if (el_is_zero(da) && el_is_zero(db)) continue;
      Substitution step = identity_substitution(q, N);
      step.images[a] = el_sub(el_arrow(q, a, N), da);
      step.images[b] = el_sub(el_arrow(q, b, N), db);
      w = cyclize(ord, substitute(step, w));
      phi = subst_then(phi, step);
      moved = true;
    }
    if (!moved) {
      Elem check = el_sub(w, tpart);
      require(!el_contains_arrow(check, tarrows), "internal_error",
              "split reduction stalled with trivial arrows remaining");
      break;
    }
  }

  // Stage 3: delete the trivial arrows.
  Elem rest = el_sub(w, tpart);
  require(!el_contains_arrow(rest, tarrows), "internal_error",
          "split reduction left trivial arrows in the reduced part");

  SplitReduceResult out;
  Quiver rq;
  rq.vertices = q.vertices;
  std::vector<int> old_to_red(q.arrows.size(), -1);
  for (int a = 0; a < int(q.arrows.size()); ++a) {
    if (tarrows.count(a)) continue;
    out.kept_arrows.push_back(a);
    old_to_red[a] = rq.add_arrow_idx(q.arrows[a].name, q.arrows[a].from, q.arrows[a].to);
  }
  Elem rw = el_zero(N);
  for (const auto& [path, cf] : rest.terms) {
    Path np = path;
    for (int& a : np.seq) a = old_to_red[a];
    el_add_term(rw, np, cf);
  }
  QP red;
  red.quiver = std::move(rq);
  red.potential = std::move(rw);
  red.frozen = p.frozen;
  red.trunc = N;
  out.reduced = validate_qp(red);
  out.split_potential = w;
  for (const auto& [a, b] : trivial)
    out.trivial_pairs.emplace_back(q.arrows[a].name, q.arrows[b].name);
  out.equivalence = phi;
  out.inverse = subst_inverse(phi);
  return out;
}

MutationResult mutate(const QP& p, int k) {
  MutationResult mr;
  mr.pre = premutate(p, k);
  mr.split = split_reduce(mr.pre.qp);
  mr.qp = mr.split.reduced;
  return mr;
}

Elem transport_potential(const Elem& w, const Quiver& src, const QuiverIso& iso,
                         const Quiver& dst) {
  Elem out = el_zero(w.trunc);
  for (const auto& [path, c] : w.terms) {
    Path np;
    np.start = iso.vertex_map[path.start];
    np.end = iso.vertex_map[path.end];
    for (int a : path.seq) np.seq.push_back(iso.arrow_map[a]);
    el_add_term(out, np, c);
  }
  (void)src;
  (void)dst;
  return out;
}

std::vector<QuiverIso> qp_isomorphisms(const QP& a, const QP& b, std::size_t limit) {
  QP va = validate_qp(a), vb = validate_qp(b);
  std::vector<QuiverIso> out;
  NameOrder ordb(vb.quiver);
  const auto all = quiver_isomorphisms(va.quiver, vb.quiver, nullptr, nullptr, 100000);
  for (const auto& iso : all) {
    // frozen vertices must map to frozen vertices
    bool ok = true;
    for (const auto& name : va.frozen) {
      const int v = va.quiver.vertex_index(name);
      if (!vb.frozen.count(vb.quiver.vertices[iso.vertex_map[v]])) {
        ok = false;
        break;
      }
    }
    if (!ok || va.frozen.size() != vb.frozen.size()) continue;
    if (va.trunc != vb.trunc) continue;
    Elem moved = transport_potential(va.potential, va.quiver, iso, vb.quiver);
    if (cyclically_equal(ordb, moved, vb.potential)) {
      out.push_back(iso);
      if (out.size() >= limit) break;
    }
  }
  return out;
}

RigiditySpan rigidity_span(const QP& input) {
  QP p = validate_qp(input);
  const Quiver& q = p.quiver;
  const int N = p.trunc;
  NameOrder ord(q);
  const auto groups = enumerate_paths(ord, N);

  // Cyclic classes in contract order: canonical rotation representatives.
  std::vector<Path> classes;
  std::map<Path, int> class_index;
  for (int d = 1; d <= N; ++d)
    for (const Path& path : groups[d]) {
      if (!path.is_cycle()) continue;
      if (!(ord.canonical_rotation(path) == path)) continue;
      class_index.emplace(path, int(classes.size()));
      classes.push_back(path);
    }

  // Sparse echelon over class coordinates (pivot = least class index).
  std::map<int, std::map<int, Rat>> ech;  // pivot -> row
  auto insert_vec = [&](std::map<int, Rat> vec) {
    while (!vec.empty()) {
      const int piv = vec.begin()->first;
      auto it = ech.find(piv);
      if (it == ech.end()) {
        // normalize
        const Rat inv = Rat(1) / vec.begin()->second;
        for (auto& [kk, vv] : vec) vv *= inv;
        ech.emplace(piv, std::move(vec));
        return true;
      }
      const Rat f = vec.begin()->second;
      for (const auto& [kk, vv] : it->second) {
        auto jt = vec.find(kk);
        if (jt == vec.end()) {
          vec.emplace(kk, -f * vv);
        } else {
          jt->second -= f * vv;
          if (jt->second == 0) vec.erase(jt);
        }
      }
    }
    return false;
  };

  for (const auto& [arrow, g] : jacobian_generators(p)) {
    if (el_is_zero(g)) continue;
    const int s = q.arrows[arrow].from, e = q.arrows[arrow].to;
    const int gmin = el_min_degree(g);
    for (int d = 1; d + gmin <= N; ++d) {
      for (const Path& r : groups[d]) {
        if (r.start != s || r.end != e) continue;
        Elem prod = el_mul(g, el_path(r, N));
        if (el_is_zero(prod)) continue;
        std::map<int, Rat> vec;
        for (const auto& [path, c] : prod.terms) {
          const Path cls = ord.canonical_rotation(path);
          auto it = class_index.find(cls);
          require(it != class_index.end(), "internal_error", "unindexed cyclic class");
          vec[it->second] += c;
          if (vec[it->second] == 0) vec.erase(it->second);
        }
        if (!vec.empty()) insert_vec(std::move(vec));
      }
    }
  }

  RigiditySpan out;
  out.num_classes = int(classes.size());
  out.span_rank = int(ech.size());
  if (out.span_rank < out.num_classes) {
    for (int c = 0; c < int(classes.size()); ++c) {
      std::map<int, Rat> unit{{c, Rat(1)}};
      // membership: reduce; if it does not vanish the class is outside
      std::map<int, Rat> vec = unit;
      bool inside = true;
      while (!vec.empty()) {
        const int piv = vec.begin()->first;
        auto it = ech.find(piv);
        if (it == ech.end()) {
          inside = false;
          break;
        }
        const Rat f = vec.begin()->second;
        for (const auto& [kk, vv] : it->second) {
          auto jt = vec.find(kk);
          if (jt == vec.end()) {
            vec.emplace(kk, -f * vv);
          } else {
            jt->second -= f * vv;
            if (jt->second == 0) vec.erase(jt);
          }
        }
      }
      if (!inside) {
        std::vector<std::string> names;
        for (int a : classes[c].seq) names.push_back(q.arrows[a].name);
        out.witness = names;
        break;
      }
    }
  }
  return out;
}

QP random_reduced_qp(std::uint64_t seed, int nv, int max_mult, int maxdeg, int trunc,
                     int max_terms) {
  DetRng rng(seed);
  Quiver q = random_quiver(rng.next(), nv, max_mult);
  NameOrder ord(q);
  const auto groups = enumerate_paths(ord, std::min(maxdeg, trunc));
  std::vector<Path> classes;
  for (int d = 3; d < int(groups.size()); ++d)
    for (const Path& path : groups[d])
      if (path.is_cycle() && ord.canonical_rotation(path) == path) classes.push_back(path);
  Elem w = el_zero(trunc);
  if (!classes.empty()) {
    const int want = int(rng.below(std::uint64_t(max_terms) + 1));
    for (int t = 0; t < want; ++t) {
      const Path& cyc = classes[rng.below(classes.size())];
      const long num = long(rng.below(7)) - 3;
      const long den = long(rng.below(2)) + 1;
      if (num == 0) continue;
      el_add_term(w, cyc, Rat(num, den));
    }
  }
  QP p;
  p.quiver = std::move(q);
  p.potential = std::move(w);
  p.trunc = trunc;
  return validate_qp(p);
}

}  // namespace qpmut
