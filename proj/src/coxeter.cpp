#include "qpmut/coxeter.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qpmut/error.hpp"

namespace qpmut {

CoxeterDatum coxeter_datum(const Quiver& q) {
  q.validate();
  require(!q.has_loops(), "loop_at_vertex", "Coxeter data require a loop-free quiver");
  const int n = int(q.vertices.size());
  std::vector<std::vector<int>> cnt(n, std::vector<int>(n, 0));
  for (const Arrow& a : q.arrows) {
    cnt[a.from][a.to] += 1;
    cnt[a.to][a.from] += 1;
  }
  CoxeterDatum c;
  c.base = q;
  c.m.assign(n, std::vector<int>(n, 2));
  c.b = Mat(n, n);
  for (int i = 0; i < n; ++i) {
    c.m[i][i] = 1;
    c.b.at(i, i) = 1;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (cnt[i][j] == 0) {
        c.m[i][j] = 2;
        c.b.at(i, j) = 0;
      } else if (cnt[i][j] == 1) {
        c.m[i][j] = 3;
        c.b.at(i, j) = Rat(-1, 2);
      } else {
        c.m[i][j] = kCoxeterInfinity;
        c.b.at(i, j) = -1;
      }
    }
  }
  return c;
}

std::vector<int> word_letters(const Quiver& q, const std::vector<std::string>& word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (const std::string& letter : word) {
    int v = q.vertex_index(letter);
    require(v >= 0, "unknown_vertex", "word letter '" + letter + "' is not a vertex");
    out.push_back(v);
  }
  return out;
}

bool is_reduced_word(const CoxeterDatum& c, const std::vector<std::string>& word) {
  const std::vector<int> u = word_letters(c.base, word);
  const int n = int(c.base.vertices.size());
  const int m = int(u.size());
  // The word is reduced iff each prefix lengthens: equivalently the root
  // s_{u_1} ... s_{u_{t-1}} (alpha_{u_t}) is positive for every t.  In the
  // simple-root coordinates a reflection s_i changes only coordinate i.
  for (int t = 0; t < m; ++t) {
    std::vector<Rat> v(n, Rat(0));
    v[u[t]] = 1;
    for (int s = t - 1; s >= 0; --s) {
      const int i = u[s];
      Rat dot = 0;
      for (int j = 0; j < n; ++j) dot += c.b.at(i, j) * v[j];
      v[i] -= 2 * dot;
    }
    for (const Rat& x : v)
      if (x < 0) return false;
  }
  return true;
}

DoubledQuiver doubled_quiver(const Quiver& q, int trunc) {
  q.validate();
  require(!q.has_loops(), "loop_at_vertex", "doubling requires a loop-free quiver");
  const int n = int(q.arrows.size());
  DoubledQuiver d;
  d.quiver = q;
  std::set<std::string> taken;
  for (const Arrow& a : q.arrows) taken.insert(a.name);
  for (int i = 0; i < n; ++i) {
    std::string nm = fresh_name(star_name(q.arrows[i].name), taken);
    taken.insert(nm);
    d.quiver.add_arrow_idx(nm, q.arrows[i].to, q.arrows[i].from);
  }
  d.epsilon.assign(std::size_t(2) * n, 1);
  d.star_of.assign(std::size_t(2) * n, -1);
  for (int i = 0; i < n; ++i) {
    d.epsilon[std::size_t(n) + i] = -1;
    d.star_of[i] = n + i;
    d.star_of[std::size_t(n) + i] = i;
  }
  d.preprojective_relation = el_zero(trunc);
  for (int i = 0; i < n; ++i) {
    const Arrow& a = q.arrows[i];
    el_add_term(d.preprojective_relation, Path{a.from, a.from, {i, n + i}}, Rat(1));
    el_add_term(d.preprojective_relation, Path{a.to, a.to, {n + i, i}}, Rat(-1));
  }
  return d;
}

WordQuiver word_quiver(const CoxeterDatum& c, const std::vector<std::string>& word) {
  const std::vector<int> u = word_letters(c.base, word);
  require(is_reduced_word(c, word), "non_reduced_word",
          "the word is not a reduced expression");
  const DoubledQuiver dq = doubled_quiver(c.base);
  const int m = int(u.size());
  WordQuiver w;
  w.word = u;

  std::map<int, int> occ_count;
  std::set<std::string> vtaken;
  std::vector<std::string> vname(m);
  for (int p = 0; p < m; ++p) {
    const int r = ++occ_count[u[p]];
    w.vtype.push_back(u[p]);
    w.vocc.push_back(r);
    std::string nm =
        fresh_name(c.base.vertices[u[p]] + ":" + std::to_string(r), vtaken);
    vtaken.insert(nm);
    vname[p] = nm;
    w.quiver.add_vertex(nm);
  }

  // Frozen vertices: the last occurrence of each type, listed in base order.
  std::vector<int> last(c.base.vertices.size(), -1);
  for (int p = 0; p < m; ++p) last[u[p]] = p;
  std::set<int> frozen_pos;
  for (std::size_t i = 0; i < last.size(); ++i)
    if (last[i] >= 0) {
      w.frozen.push_back(vname[last[i]]);
      frozen_pos.insert(last[i]);
    }

  // Left arrows: each occurrence points back to its same-type predecessor.
  std::set<std::string> ataken;
  std::vector<int> prev_of_type(c.base.vertices.size(), -1);
  for (int p = 0; p < m; ++p) {
    const int i = u[p];
    if (prev_of_type[i] >= 0) {
      std::string nm = fresh_name(
          "L:" + c.base.vertices[i] + ":" + std::to_string(w.vocc[p]), ataken);
      ataken.insert(nm);
      w.quiver.add_arrow_idx(nm, p, prev_of_type[i]);
      w.arrow_left.push_back(true);
      w.arrow_base.push_back("");
      w.arrow_eps.push_back(0);
    }
    prev_of_type[i] = p;
  }

  // Right arrows: for a doubled-quiver arrow A: i -> j, a source occurrence u
  // of type i reaches a later occurrence v of type j when no type-i vertex
  // lies strictly between them and every later type-j vertex is separated
  // from v by a type-i vertex (it suffices to check the next one).
  for (std::size_t ai = 0; ai < dq.quiver.arrows.size(); ++ai) {
    const Arrow& A = dq.quiver.arrows[ai];
    for (int p = 0; p < m; ++p) {
      if (u[p] != A.from) continue;
      int ni = m;
      for (int t = p + 1; t < m; ++t)
        if (u[t] == A.from) {
          ni = t;
          break;
        }
      for (int v = p + 1; v < ni; ++v) {
        if (u[v] != A.to) continue;
        int nj = -1;
        for (int t = v + 1; t < m; ++t)
          if (u[t] == A.to) {
            nj = t;
            break;
          }
        bool ok = true;
        if (nj >= 0) {
          ok = false;
          for (int t = v + 1; t < nj; ++t)
            if (u[t] == A.from) {
              ok = true;
              break;
            }
        }
        if (!ok) continue;
        std::string nm =
            fresh_name(A.name + ":" + std::to_string(w.vocc[p]), ataken);
        ataken.insert(nm);
        w.quiver.add_arrow_idx(nm, p, v);
        w.arrow_left.push_back(false);
        w.arrow_base.push_back(A.name);
        w.arrow_eps.push_back(dq.epsilon[ai]);
      }
    }
  }
  w.quiver.validate();

  // Stable quiver: drop frozen vertices and every incident arrow.
  std::vector<int> vmap(m, -1);
  for (int p = 0; p < m; ++p)
    if (!frozen_pos.count(p)) vmap[p] = w.stable.add_vertex(vname[p]);
  for (std::size_t a = 0; a < w.quiver.arrows.size(); ++a) {
    const Arrow& ar = w.quiver.arrows[a];
    if (vmap[ar.from] >= 0 && vmap[ar.to] >= 0) {
      w.stable.add_arrow_idx(ar.name, vmap[ar.from], vmap[ar.to]);
      w.stable_to_full.push_back(int(a));
    }
  }
  w.stable.validate();
  return w;
}

WordQpResult word_qp(const CoxeterDatum& c, const std::vector<std::string>& word,
                     int trunc) {
  WordQpResult r;
  r.wq = word_quiver(c, word);
  const WordQuiver& w = r.wq;
  const DoubledQuiver dq = doubled_quiver(c.base);
  const int nq = int(w.quiver.arrows.size());

  std::map<std::pair<std::string, int>, int> right_at;  // (base, source) -> arrow
  std::map<int, int> left_at;                           // source -> left arrow
  for (int a = 0; a < nq; ++a) {
    if (w.arrow_left[a])
      left_at[w.quiver.arrows[a].from] = a;
    else
      right_at[{w.arrow_base[a], w.quiver.arrows[a].from}] = a;
  }

  // For each right arrow b with a star companion continuing out of its
  // target, close the cycle b b* p with the descending left path p.
  Elem W = el_zero(trunc);
  for (int b = 0; b < nq; ++b) {
    if (w.arrow_left[b]) continue;
    const int bsrc = w.quiver.arrows[b].from;
    const int btgt = w.quiver.arrows[b].to;
    const int alpha = dq.quiver.arrow_index(w.arrow_base[b]);
    const std::string& star = dq.quiver.arrows[dq.star_of[alpha]].name;
    auto it = right_at.find({star, btgt});
    if (it == right_at.end()) continue;
    const int bstar = it->second;
    std::vector<int> seq = {b, bstar};
    int cur = w.quiver.arrows[bstar].to;
    while (cur != bsrc) {
      auto lit = left_at.find(cur);
      require(lit != left_at.end(), "internal_error",
              "missing left path while closing a potential cycle");
      seq.push_back(lit->second);
      cur = w.quiver.arrows[lit->second].to;
    }
    el_add_term(W, Path{bsrc, bsrc, seq}, Rat(w.arrow_eps[b]));
  }
  r.full = validate_qp(
      QP{w.quiver, W, std::set<std::string>(w.frozen.begin(), w.frozen.end()), trunc});

  // The stable potential is the same sum inside the stable quiver; a cycle
  // survives exactly when all of its arrows do.
  std::map<int, int> full_to_stable;
  for (std::size_t s = 0; s < w.stable_to_full.size(); ++s)
    full_to_stable[w.stable_to_full[s]] = int(s);
  Elem ws = el_zero(trunc);
  for (const auto& [path, coeff] : r.full.potential.terms) {
    std::vector<int> seq;
    bool keep = true;
    for (int a : path.seq) {
      auto sit = full_to_stable.find(a);
      if (sit == full_to_stable.end()) {
        keep = false;
        break;
      }
      seq.push_back(sit->second);
    }
    if (!keep) continue;
    const int sv = w.stable.vertex_index(w.quiver.vertices[path.start]);
    el_add_term(ws, Path{sv, sv, seq}, coeff);
  }
  r.stable = validate_qp(QP{w.stable, ws, {}, trunc});
  return r;
}

RigidityVerdict word_qp_rigidity(const CoxeterDatum& c,
                                 const std::vector<std::string>& word, int trunc) {
  return is_rigid_truncated(word_qp(c, word, trunc).stable);
}

}  // namespace qpmut
