#include "qpmut/quiver.hpp"

#include <algorithm>

#include "qpmut/error.hpp"

namespace qpmut {

int Quiver::add_vertex(const std::string& name) {
  vertices.push_back(name);
  return int(vertices.size()) - 1;
}

int Quiver::add_arrow(const std::string& name, const std::string& from, const std::string& to) {
  const int f = vertex_index(from);
  const int t = vertex_index(to);
  require(f >= 0, "unknown_vertex", "arrow '" + name + "' starts at unknown vertex '" + from + "'");
  require(t >= 0, "unknown_vertex", "arrow '" + name + "' ends at unknown vertex '" + to + "'");
  return add_arrow_idx(name, f, t);
}

int Quiver::add_arrow_idx(const std::string& name, int from, int to) {
  arrows.push_back(Arrow{name, from, to});
  return int(arrows.size()) - 1;
}

int Quiver::vertex_index(const std::string& name) const {
  for (int i = 0; i < int(vertices.size()); ++i)
    if (vertices[i] == name) return i;
  return -1;
}

int Quiver::arrow_index(const std::string& name) const {
  for (int i = 0; i < int(arrows.size()); ++i)
    if (arrows[i].name == name) return i;
  return -1;
}

void Quiver::validate() const {
  std::set<std::string> vnames, anames;
  for (const auto& v : vertices) {
    require(!v.empty(), "bad_name", "empty vertex name");
    require(vnames.insert(v).second, "duplicate_name", "duplicate vertex name '" + v + "'");
  }
  for (const auto& a : arrows) {
    require(!a.name.empty(), "bad_name", "empty arrow name");
    require(anames.insert(a.name).second, "duplicate_name",
            "duplicate arrow name '" + a.name + "'");
    require(a.from >= 0 && a.from < int(vertices.size()) && a.to >= 0 &&
                a.to < int(vertices.size()),
            "unknown_vertex", "arrow '" + a.name + "' has a dangling endpoint");
  }
}

bool Quiver::has_loops() const {
  for (const auto& a : arrows)
    if (a.from == a.to) return true;
  return false;
}

bool Quiver::has_loop_at(int v) const {
  for (const auto& a : arrows)
    if (a.from == v && a.to == v) return true;
  return false;
}

bool Quiver::has_two_cycle_through(int v) const {
  for (const auto& a : arrows) {
    if (a.from != v && a.to != v) continue;
    if (a.from == a.to) continue;
    for (const auto& b : arrows)
      if (b.from == a.to && b.to == a.from) return true;
  }
  return false;
}

bool Quiver::is_two_acyclic() const {
  if (has_loops()) return false;
  for (const auto& a : arrows)
    for (const auto& b : arrows)
      if (b.from == a.to && b.to == a.from) return false;
  return true;
}

std::vector<int> Quiver::arrows_from(int v) const {
  std::vector<int> out;
  for (int i = 0; i < int(arrows.size()); ++i)
    if (arrows[i].from == v) out.push_back(i);
  return out;
}

std::vector<int> Quiver::arrows_into(int v) const {
  std::vector<int> out;
  for (int i = 0; i < int(arrows.size()); ++i)
    if (arrows[i].to == v) out.push_back(i);
  return out;
}

std::vector<std::vector<long long>> Quiver::b_matrix() const {
  const int n = int(vertices.size());
  std::vector<std::vector<long long>> b(n, std::vector<long long>(n, 0));
  for (const auto& a : arrows) {
    if (a.from == a.to) continue;
    b[a.from][a.to] += 1;
    b[a.to][a.from] -= 1;
  }
  return b;
}

Quiver reversed(const Quiver& q) {
  Quiver r;
  r.vertices = q.vertices;
  for (const auto& a : q.arrows) r.arrows.push_back(Arrow{a.name, a.to, a.from});
  return r;
}

std::vector<std::vector<long long>> fz_mutate(const std::vector<std::vector<long long>>& b,
                                              int k) {
  const int n = int(b.size());
  require(k >= 0 && k < n, "bad_vertex", "mutation vertex out of range");
  for (int i = 0; i < n; ++i) {
    require(int(b[i].size()) == n, "shape_mismatch", "b-matrix is not square");
    for (int j = 0; j < n; ++j)
      require(b[i][j] == -b[j][i], "not_skew", "b-matrix is not skew-symmetric");
  }
  std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) {
        c[i][j] = -b[i][j];
      } else {
        const long long ik = b[i][k], kj = b[k][j];
        c[i][j] = b[i][j] + (std::llabs(ik) * kj + ik * std::llabs(kj)) / 2;
      }
    }
  return c;
}

Quiver reflect_at(const Quiver& q, int k) {
  Quiver r;
  r.vertices = q.vertices;
  for (const auto& a : q.arrows) {
    if (a.from == k || a.to == k)
      r.arrows.push_back(Arrow{a.name, a.to, a.from});
    else
      r.arrows.push_back(a);
  }
  return r;
}

std::string star_name(const std::string& name) {
  if (!name.empty() && name.back() == '*') return name.substr(0, name.size() - 1);
  return name + "*";
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  std::string n = base;
  while (taken.count(n)) n += "'";
  return n;
}

namespace {

// Arrow multiplicity per ordered vertex pair.
std::map<std::pair<int, int>, std::vector<int>> parallel_classes(const Quiver& q) {
  std::map<std::pair<int, int>, std::vector<int>> cls;
  for (int i = 0; i < int(q.arrows.size()); ++i)
    cls[{q.arrows[i].from, q.arrows[i].to}].push_back(i);
  return cls;
}

}  // namespace

std::vector<QuiverIso> quiver_isomorphisms(const Quiver& q1, const Quiver& q2,
                                           const std::vector<std::string>* types1,
                                           const std::vector<std::string>* types2,
                                           std::size_t limit) {
  std::vector<QuiverIso> found;
  const int n = int(q1.vertices.size());
  if (n != int(q2.vertices.size()) || q1.arrows.size() != q2.arrows.size()) return found;
  if ((types1 == nullptr) != (types2 == nullptr)) return found;

  auto cls1 = parallel_classes(q1);
  auto cls2 = parallel_classes(q2);

  std::vector<int> vmap(n, -1), used(n, 0);
  std::vector<int> outdeg1(n, 0), indeg1(n, 0), outdeg2(n, 0), indeg2(n, 0);
  for (const auto& a : q1.arrows) ++outdeg1[a.from], ++indeg1[a.to];
  for (const auto& a : q2.arrows) ++outdeg2[a.from], ++indeg2[a.to];

  // With a full vertex map in hand, enumerate the compatible arrow
  // bijections class by class; within a class the source arrows are taken in
  // name order and the target side runs through permutations starting from
  // name order.
  auto emit_arrow_maps = [&]() {
    std::vector<std::vector<int>> src_cls, dst_perm_base;
    for (const auto& [pair1, list1] : cls1) {
      const std::pair<int, int> pair2{vmap[pair1.first], vmap[pair1.second]};
      auto it = cls2.find(pair2);
      if (it == cls2.end() || it->second.size() != list1.size()) return;
      auto sorted_by_name = [](std::vector<int> v, const Quiver& q) {
        std::sort(v.begin(), v.end(),
                  [&](int a, int b) { return q.arrows[a].name < q.arrows[b].name; });
        return v;
      };
      src_cls.push_back(sorted_by_name(list1, q1));
      dst_perm_base.push_back(sorted_by_name(it->second, q2));
    }
    // Odometer over per-class permutations.
    std::vector<std::vector<int>> perms = dst_perm_base;
    while (true) {
      QuiverIso iso;
      iso.vertex_map = vmap;
      iso.arrow_map.assign(q1.arrows.size(), -1);
      for (std::size_t c = 0; c < src_cls.size(); ++c)
        for (std::size_t i = 0; i < src_cls[c].size(); ++i)
          iso.arrow_map[src_cls[c][i]] = perms[c][i];
      found.push_back(std::move(iso));
      if (found.size() >= limit) return;
      // advance odometer
      std::size_t c = 0;
      for (; c < perms.size(); ++c) {
        if (std::next_permutation(perms[c].begin(), perms[c].end(),
                                  [&](int a, int b) {
                                    return q2.arrows[a].name < q2.arrows[b].name;
                                  }))
          break;
        // wrapped to name-sorted order; carry to next class
      }
      if (c == perms.size()) return;
    }
  };

  // Backtracking vertex assignment in q1 index order, candidates in q2 index
  // order: the enumeration is deterministic.
  auto rec = [&](auto&& self, int v) -> void {
    if (found.size() >= limit) return;
    if (v == n) {
      emit_arrow_maps();
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w]) continue;
      if (outdeg1[v] != outdeg2[w] || indeg1[v] != indeg2[w]) continue;
      if (types1 && (*types1)[v] != (*types2)[w]) continue;
      // partial consistency: multiplicities against already-mapped vertices
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        auto m1 = cls1.find({u, v});
        auto m2 = cls2.find({vmap[u], w});
        std::size_t s1 = m1 == cls1.end() ? 0 : m1->second.size();
        std::size_t s2 = m2 == cls2.end() ? 0 : m2->second.size();
        if (s1 != s2) ok = false;
        m1 = cls1.find({v, u});
        m2 = cls2.find({w, vmap[u]});
        s1 = m1 == cls1.end() ? 0 : m1->second.size();
        s2 = m2 == cls2.end() ? 0 : m2->second.size();
        if (s1 != s2) ok = false;
      }
      auto l1 = cls1.find({v, v});
      auto l2 = cls2.find({w, w});
      if ((l1 == cls1.end() ? 0 : l1->second.size()) !=
          (l2 == cls2.end() ? 0 : l2->second.size()))
        ok = false;
      if (!ok) continue;
      vmap[v] = w;
      used[w] = 1;
      self(self, v + 1);
      used[w] = 0;
      vmap[v] = -1;
      if (found.size() >= limit) return;
    }
  };
  rec(rec, 0);
  return found;
}

bool quivers_isomorphic(const Quiver& q1, const Quiver& q2) {
  return !quiver_isomorphisms(q1, q2, nullptr, nullptr, 1).empty();
}

std::uint64_t DetRng::next() {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t DetRng::below(std::uint64_t n) {
  require(n > 0, "bad_argument", "DetRng::below(0)");
  return next() % n;
}

Quiver random_quiver(std::uint64_t seed, int nv, int max_mult) {
  DetRng rng(seed);
  Quiver q;
  for (int i = 1; i <= nv; ++i) q.add_vertex(std::to_string(i));
  int counter = 0;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) {
      const int mult = int(rng.below(std::uint64_t(max_mult) + 1));
      if (mult == 0) continue;
      const bool forward = rng.below(2) == 0;
      for (int m = 0; m < mult; ++m) {
        ++counter;
        const std::string name = "x" + std::to_string(counter);
        if (forward)
          q.add_arrow_idx(name, i, j);
        else
          q.add_arrow_idx(name, j, i);
      }
    }
  return q;
}

}  // namespace qpmut
