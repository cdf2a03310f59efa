#include "qpmut/representation.hpp"

#include <algorithm>

#include "qpmut/error.hpp"

namespace qpmut {

namespace {

void check_shapes(const QP& p, const Representation& m) {
  const Quiver& q = p.quiver;
  require(m.dims.size() == q.vertices.size(), "shape_mismatch",
          "representation has wrong number of vertex spaces");
  require(m.mats.size() == q.arrows.size(), "shape_mismatch",
          "representation has wrong number of arrow matrices");
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    require(m.mats[a].rows() == m.dims[q.arrows[a].from] &&
                m.mats[a].cols() == m.dims[q.arrows[a].to],
            "shape_mismatch", "arrow matrix " + q.arrows[a].name + " has wrong shape");
  }
  for (int d : m.dims) require(d >= 0, "shape_mismatch", "negative dimension");
}

}  // namespace

Representation zero_rep(const QP& p) {
  Representation m;
  m.dims.assign(p.quiver.vertices.size(), 0);
  for (const auto& a : p.quiver.arrows) m.mats.push_back(Mat(0, 0));
  (void)p;
  return m;
}

Representation simple_rep(const QP& p, int v) {
  const Quiver& q = p.quiver;
  require(v >= 0 && v < int(q.vertices.size()), "unknown_vertex",
          "simple_rep: vertex out of range");
  Representation m;
  m.dims.assign(q.vertices.size(), 0);
  m.dims[v] = 1;
  for (const auto& a : q.arrows) m.mats.push_back(Mat(m.dims[a.from], m.dims[a.to]));
  return m;
}

Representation direct_sum(const QP& p, const Representation& a, const Representation& b) {
  const Quiver& q = p.quiver;
  Representation m;
  m.dims.resize(q.vertices.size());
  for (std::size_t v = 0; v < q.vertices.size(); ++v) m.dims[v] = a.dims[v] + b.dims[v];
  for (std::size_t ar = 0; ar < q.arrows.size(); ++ar) {
    const int rf = m.dims[q.arrows[ar].from], ct = m.dims[q.arrows[ar].to];
    Mat s(rf, ct);
    const Mat& ma = a.mats[ar];
    const Mat& mb = b.mats[ar];
    for (int i = 0; i < ma.rows(); ++i)
      for (int j = 0; j < ma.cols(); ++j) s.at(i, j) = ma.at(i, j);
    for (int i = 0; i < mb.rows(); ++i)
      for (int j = 0; j < mb.cols(); ++j) s.at(ma.rows() + i, ma.cols() + j) = mb.at(i, j);
    m.mats.push_back(std::move(s));
  }
  return m;
}

Mat eval_path(const Representation& m, const Path& p) {
  Mat acc = Mat::identity(m.dims[p.start]);
  for (int a : p.seq) acc = acc * m.mats[a];
  return acc;
}

Mat eval_elem(const Quiver& q, const Representation& m, const Elem& e, int from, int to) {
  (void)q;
  Mat acc(m.dims[from], m.dims[to]);
  for (const auto& [path, c] : e.terms) {
    require(path.start == from && path.end == to, "shape_mismatch",
            "eval_elem: term endpoints do not match");
    acc = acc + scale(c, eval_path(m, path));
  }
  return acc;
}

void validate_rep(const QP& input, const Representation& m) {
  QP p = validate_qp(input);
  const Quiver& q = p.quiver;
  check_shapes(p, m);
  // nilpotency within the truncation: products of more than trunc arrows
  // must vanish, since such paths are zero in the truncated algebra
  std::vector<Mat> layer;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) layer.push_back(Mat::identity(m.dims[v]));
  for (int step = 0; step < p.trunc + 1; ++step) {
    std::vector<Mat> next;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
      std::vector<Mat> imgs;
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].to == int(v)) imgs.push_back(layer[q.arrows[a].from] * m.mats[a]);
      next.push_back(imgs.empty() ? Mat(0, m.dims[v]) : row_space(vstack(imgs)));
    }
    layer = std::move(next);
  }
  for (const auto& l : layer)
    require(l.rows() == 0, "not_nilpotent",
            "some product of more than trunc arrows acts nonzero");
  for (const auto& [a, g] : jacobian_generators(p)) {
    Mat v = eval_elem(q, m, g, q.arrows[a].to, q.arrows[a].from);
    require(v.is_zero(), "relations_fail",
            "defining relation for arrow " + q.arrows[a].name + " acts nonzero");
  }
}

bool is_morphism(const QP& p, const Representation& a, const Representation& b,
                 const RepMorphism& f) {
  const Quiver& q = p.quiver;
  if (f.f.size() != q.vertices.size()) return false;
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    if (f.f[v].rows() != a.dims[v] || f.f[v].cols() != b.dims[v]) return false;
  for (std::size_t ar = 0; ar < q.arrows.size(); ++ar) {
    const int s = q.arrows[ar].from, e = q.arrows[ar].to;
    if (a.mats[ar] * f.f[e] != f.f[s] * b.mats[ar]) return false;
  }
  return true;
}

RepMorphism compose(const RepMorphism& f, const RepMorphism& g) {
  RepMorphism h;
  for (std::size_t v = 0; v < f.f.size(); ++v) h.f.push_back(f.f[v] * g.f[v]);
  return h;
}

std::vector<RepMorphism> hom_basis(const QP& p, const Representation& a,
                                   const Representation& b) {
  const Quiver& q = p.quiver;
  const int nv = int(q.vertices.size());
  // unknowns: the entries of f[v], vertex-major then row-major
  std::vector<int> off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + a.dims[v] * b.dims[v];
  const int nunk = off[nv];
  // constraints: mats_a[ar] . f[e] - f[s] . mats_b[ar] = 0 entrywise
  int ncon = 0;
  for (const auto& ar : q.arrows) ncon += a.dims[ar.from] * b.dims[ar.to];
  Mat con(ncon, nunk);
  int row = 0;
  for (std::size_t ar = 0; ar < q.arrows.size(); ++ar) {
    const int s = q.arrows[ar].from, e = q.arrows[ar].to;
    const Mat& ma = a.mats[ar];
    const Mat& mb = b.mats[ar];
    for (int i = 0; i < a.dims[s]; ++i)
      for (int j = 0; j < b.dims[e]; ++j) {
        // sum_l ma(i,l) f[e](l,j) - sum_l f[s](i,l) mb(l,j) = 0
        for (int l = 0; l < a.dims[e]; ++l)
          con.at(row, off[e] + l * b.dims[e] + j) += ma.at(i, l);
        for (int l = 0; l < b.dims[s]; ++l)
          con.at(row, off[s] + i * b.dims[s] + l) -= mb.at(l, j);
        ++row;
      }
  }
  Mat sols = left_nullspace(transpose(con));
  std::vector<RepMorphism> basis;
  for (int r = 0; r < sols.rows(); ++r) {
    RepMorphism f;
    for (int v = 0; v < nv; ++v) {
      Mat fv(a.dims[v], b.dims[v]);
      for (int i = 0; i < a.dims[v]; ++i)
        for (int j = 0; j < b.dims[v]; ++j) fv.at(i, j) = sols.at(r, off[v] + i * b.dims[v] + j);
      f.f.push_back(std::move(fv));
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

namespace {

bool combo_invertible(const std::vector<RepMorphism>& basis, const std::vector<Rat>& coeff,
                      const std::vector<int>& dims) {
  for (std::size_t v = 0; v < dims.size(); ++v) {
    if (dims[v] == 0) continue;
    Mat fv(dims[v], dims[v]);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (coeff[i] != 0) fv = fv + scale(coeff[i], basis[i].f[v]);
    if (rank(fv) != dims[v]) return false;
  }
  return true;
}

}  // namespace

bool are_isomorphic(const QP& p, const Representation& a, const Representation& b,
                    std::uint64_t seed) {
  if (a.dims != b.dims) return false;
  if (std::all_of(a.dims.begin(), a.dims.end(), [](int d) { return d == 0; })) return true;
  auto h12 = hom_basis(p, a, b);
  auto h21 = hom_basis(p, b, a);
  if (h12.size() != h21.size() || h12.empty()) return false;
  const int n = int(h12.size());
  DetRng rng(0x9c0ffee0u ^ seed);
  std::vector<Rat> coeff(n);
  for (int trial = 0; trial < 64; ++trial) {
    for (int i = 0; i < n; ++i) coeff[i] = Rat(long(rng.below(17)) - 8);
    if (combo_invertible(h12, coeff, a.dims)) return true;
  }
  if (n <= 4) {  // exhaustive over a small grid
    std::vector<int> idx(n, 0);
    while (true) {
      for (int i = 0; i < n; ++i) coeff[i] = Rat(idx[i] - 2);
      if (combo_invertible(h12, coeff, a.dims)) return true;
      int pos = 0;
      while (pos < n && ++idx[pos] == 5) idx[pos++] = 0;
      if (pos == n) break;
    }
  }
  return false;
}

StripResult strip_simple_summands(const QP& p, const Representation& m, int k) {
  const Quiver& q = p.quiver;
  require(k >= 0 && k < int(q.vertices.size()), "unknown_vertex", "strip: vertex out of range");
  const int n = m.dims[k];
  StripResult out;
  out.rep = m;
  if (n == 0) return out;
  const auto ins = q.arrows_into(k);
  const auto outs = q.arrows_from(k);
  std::vector<Mat> inb, outb;
  for (int a : ins) inb.push_back(m.mats[a]);
  for (int b : outs) outb.push_back(m.mats[b]);
  Mat A = inb.empty() ? Mat(0, n) : vstack(inb);       // M_in -> M_k stacked
  Mat B = outb.empty() ? Mat(n, 0) : hstack(outb);     // M_k -> M_out
  Mat kerB = left_nullspace(B);
  Mat imA = row_space(A);
  // W0 = Ker B  intersect  Im A: rows x.kerB with x.kerB = y.imA
  Mat w0;
  {
    std::vector<Mat> stacked = {kerB, scale(Rat(-1), imA)};
    Mat rel = left_nullspace(vstack(stacked));
    Mat xs = submatrix_cols(rel, 0, kerB.rows());
    w0 = row_space(xs * kerB);
  }
  Mat u = complement_rows(w0, kerB);  // the simple summand: u.rows copies of S_k
  if (u.rows() == 0) return out;
  Mat span_kb_ia = row_space(vstack(std::vector<Mat>{kerB, imA}));
  Mat d = complement_rows(span_kb_ia, Mat::identity(n));
  Mat nrows = vstack(std::vector<Mat>{imA, d});
  require(nrows.rows() + u.rows() == n, "internal_error", "strip: dimensions disagree");
  Mat t = vstack(std::vector<Mat>{nrows, u});
  Mat ti = inverse(t);
  Mat proj = submatrix_cols(ti, 0, nrows.rows());  // M_k -> N coords
  out.stripped = u.rows();
  out.rep.dims[k] = nrows.rows();
  for (int a : ins) out.rep.mats[a] = m.mats[a] * proj;
  for (int b : outs) out.rep.mats[b] = nrows * m.mats[b];
  return out;
}

Representation transport_rep(const Representation& m, const Quiver& src,
                             const QuiverIso& iso, const Quiver& dst) {
  Representation out;
  out.dims.assign(dst.vertices.size(), 0);
  out.mats.assign(dst.arrows.size(), Mat());
  for (std::size_t v = 0; v < src.vertices.size(); ++v) out.dims[iso.vertex_map[v]] = m.dims[v];
  for (std::size_t a = 0; a < src.arrows.size(); ++a) out.mats[iso.arrow_map[a]] = m.mats[a];
  return out;
}

MutationScaffold build_scaffold(const QP& input, const Representation& m, int k,
                                bool alt_splitting) {
  QP p = validate_qp(input);
  const Quiver& q = p.quiver;
  require(k >= 0 && k < int(q.vertices.size()), "unknown_vertex",
          "scaffold: vertex out of range");
  MutationScaffold s;
  s.in_arrows = q.arrows_into(k);
  s.out_arrows = q.arrows_from(k);
  for (int a : s.in_arrows) {
    s.in_off.push_back(s.n_in);
    s.n_in += m.dims[q.arrows[a].from];
  }
  for (int b : s.out_arrows) {
    s.out_off.push_back(s.n_out);
    s.n_out += m.dims[q.arrows[b].to];
  }
  const int nk = m.dims[k];
  {
    std::vector<Mat> blocks;
    for (int a : s.in_arrows) blocks.push_back(m.mats[a]);
    s.alpha = blocks.empty() ? Mat(0, nk) : vstack(blocks);
  }
  {
    std::vector<Mat> blocks;
    for (int b : s.out_arrows) blocks.push_back(m.mats[b]);
    s.beta = blocks.empty() ? Mat(nk, 0) : hstack(blocks);
  }
  s.gamma = Mat(s.n_out, s.n_in);
  for (std::size_t qi = 0; qi < s.out_arrows.size(); ++qi)
    for (std::size_t pi = 0; pi < s.in_arrows.size(); ++pi) {
      const int a = s.in_arrows[pi], b = s.out_arrows[qi];
      Elem dd = second_deriv(q, p.potential, a, b);
      Mat block = eval_elem(q, m, dd, q.arrows[b].to, q.arrows[a].from);
      for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j)
          s.gamma.at(s.out_off[qi] + i, s.in_off[pi] + j) = block.at(i, j);
    }
  require((s.beta * s.gamma).is_zero(), "relations_fail",
          "beta.gamma nonzero: the module does not satisfy the relations at k");
  require((s.gamma * s.alpha).is_zero(), "relations_fail",
          "gamma.alpha nonzero: the module does not satisfy the relations at k");

  Mat kg = left_nullspace(s.gamma);
  s.im_beta = row_space(s.beta);
  s.c1rows = complement_rows(s.im_beta, kg, alt_splitting);
  s.c2rows = row_space(s.gamma);
  Mat ka = left_nullspace(s.alpha);
  s.c3rows = complement_rows(s.c2rows, ka, alt_splitting);
  s.c1 = s.c1rows.rows();
  s.c2 = s.c2rows.rows();
  s.c3 = s.c3rows.rows();
  s.kalpha = vstack(std::vector<Mat>{s.c2rows, s.c3rows});

  // retraction of M_out onto Ker gamma, composed with the projection to
  // (Ker gamma)/(Im beta) in the adapted coordinates
  Mat kfull = vstack(std::vector<Mat>{s.im_beta, s.c1rows});
  Mat dg = complement_rows(kfull, Mat::identity(s.n_out), alt_splitting);
  Mat t = vstack(std::vector<Mat>{kfull, dg});
  Mat ti = inverse(t);
  s.rho_pi = submatrix_cols(ti, s.im_beta.rows(), s.c1);
  s.gamma_c2 = coords_in_rows(s.c2rows, s.gamma);

  s.alpha_t = hstack(std::vector<Mat>{scale(Rat(-1), s.rho_pi), scale(Rat(-1), s.gamma_c2),
                                      Mat(s.n_out, s.c3)});
  s.beta_t = vstack(std::vector<Mat>{Mat(s.c1, s.n_in), s.c2rows, s.c3rows});

  // Cok beta coordinates and the induced maps between the pieces
  s.cok_basis = complement_rows(s.im_beta, Mat::identity(s.n_out), alt_splitting);
  Mat t2 = vstack(std::vector<Mat>{s.im_beta, s.cok_basis});
  Mat t2i = inverse(t2);
  s.pcok = submatrix_cols(t2i, s.im_beta.rows(), s.cok_basis.rows());
  s.itil = s.c1rows * s.pcok;
  s.gtil = coords_in_rows(s.c2rows, s.cok_basis * s.gamma);
  s.rtil = s.cok_basis * s.rho_pi;
  const int ncok = s.cok_basis.rows();
  Mat rhs = Mat::identity(ncok) - s.rtil * s.itil;
  auto jt = solve_left(transpose(s.gtil), transpose(rhs));
  require(jt.has_value(), "internal_error", "induced splitting of Cok beta not solvable");
  s.jmat = transpose(*jt);
  require(s.jmat * s.gtil == Mat::identity(s.c2), "internal_error", "j.gtil != id");
  require((s.jmat * s.rtil).is_zero(), "internal_error", "j.rtil != 0");
  require(s.itil * s.rtil == Mat::identity(s.c1), "internal_error", "itil.rtil != id");
  require((s.itil * s.gtil).is_zero(), "internal_error", "itil.gtil != 0");
  return s;
}

RepMutation mutate_rep(const QP& input, const Representation& m, int k, bool alt_splitting) {
  QP p = validate_qp(input);
  validate_rep(p, m);
  RepMutation out;
  out.mut = mutate(p, k);
  out.scaffold = build_scaffold(p, m, k, alt_splitting);
  const MutationScaffold& s = out.scaffold;
  const Premutation& pre = out.mut.pre;
  const Quiver& q = p.quiver;
  const Quiver& nq = pre.qp.quiver;
  const int ntk = s.c1 + s.c2 + s.c3;

  Representation n;
  n.dims = m.dims;
  n.dims[pre.k_new] = ntk;
  n.mats.assign(nq.arrows.size(), Mat());
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    if (pre.old_to_new_arrow[a] >= 0) n.mats[pre.old_to_new_arrow[a]] = m.mats[a];
  for (std::size_t pi = 0; pi < s.in_arrows.size(); ++pi)
    for (std::size_t qi = 0; qi < s.out_arrows.size(); ++qi)
      n.mats[pre.comp_idx[pi][qi]] = m.mats[s.in_arrows[pi]] * m.mats[s.out_arrows[qi]];
  for (std::size_t pi = 0; pi < s.in_arrows.size(); ++pi) {
    // a_p* : k~ -> s(a_p) acts by the p-th column block of beta_t
    const int a = s.in_arrows[pi];
    const int d = m.dims[q.arrows[a].from];
    Mat act(ntk, d);
    for (int i = 0; i < ntk; ++i)
      for (int j = 0; j < d; ++j) act.at(i, j) = s.beta_t.at(i, s.in_off[pi] + j);
    n.mats[pre.star_of_in[pi]] = std::move(act);
  }
  for (std::size_t qi = 0; qi < s.out_arrows.size(); ++qi) {
    // b_q* : e(b_q) -> k~ acts by the q-th row block of alpha_t
    const int b = s.out_arrows[qi];
    const int d = m.dims[q.arrows[b].to];
    Mat act(d, ntk);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < ntk; ++j) act.at(i, j) = s.alpha_t.at(s.out_off[qi] + i, j);
    n.mats[pre.star_of_out[qi]] = std::move(act);
  }
  validate_rep(pre.qp, n);
  out.premutated = n;

  // transport through the reduction: an arrow of the reduced QP acts by the
  // inverse substitution image evaluated in the premutated representation;
  // the deleted trivial arrows must act by zero
  Representation red;
  red.dims = n.dims;
  for (std::size_t a = 0; a < nq.arrows.size(); ++a) {
    const Elem& img = out.mut.split.inverse.images[a];
    Mat act = eval_elem(nq, n, img, nq.arrows[a].from, nq.arrows[a].to);
    if (std::find(out.mut.split.kept_arrows.begin(), out.mut.split.kept_arrows.end(),
                  int(a)) != out.mut.split.kept_arrows.end()) {
      red.mats.push_back(std::move(act));
    } else {
      require(act.is_zero(), "internal_error", "trivial arrow acts nonzero after reduction");
    }
  }
  validate_rep(out.mut.qp, red);
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    if (int(v) != pre.k_new)
      require(red.dims[v] == m.dims[v], "internal_error",
              "mutation changed a dimension away from the mutated vertex");
  out.rep = std::move(red);
  return out;
}

namespace {

// blocks of the mutated morphism at the mutated vertex, following the
// splitting data of the source (s) and target (t) scaffolds
Mat mutated_vertex_map(const MutationScaffold& s, const MutationScaffold& t,
                       const Mat& f_in, const Mat& f_out) {
  Mat ftil_out = s.cok_basis * f_out * t.pcok;
  Mat b11 = s.itil * ftil_out * t.rtil;
  Mat b12 = s.itil * ftil_out * t.gtil;
  Mat b21 = s.jmat * ftil_out * t.rtil;
  Mat c2f = coords_in_rows(t.kalpha, s.c2rows * f_in);
  Mat c3f = coords_in_rows(t.kalpha, s.c3rows * f_in);
  Mat b22 = submatrix_cols(c2f, 0, t.c2);
  Mat b23 = submatrix_cols(c2f, t.c2, t.c3);
  Mat b32 = submatrix_cols(c3f, 0, t.c2);
  Mat b33 = submatrix_cols(c3f, t.c2, t.c3);
  require(b12.is_zero(), "internal_error",
          "the (1,2) block of the mutated morphism should vanish");
  Mat out(s.c1 + s.c2 + s.c3, t.c1 + t.c2 + t.c3);
  auto put = [&](const Mat& blk, int r0, int c0) {
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) out.at(r0 + i, c0 + j) = blk.at(i, j);
  };
  put(b11, 0, 0);
  put(b12, 0, t.c1);
  put(b21, s.c1, 0);
  put(b22, s.c1, t.c1);
  put(b23, s.c1, t.c1 + t.c2);
  put(b32, s.c1 + s.c2, t.c1);
  put(b33, s.c1 + s.c2, t.c1 + t.c2);
  return out;
}

Mat restrict_in(const QP& p, const MutationScaffold& s, const Representation& a,
                const Representation& b, const RepMorphism& f) {
  // block-diagonal action of f on M_in (same arrow list for both reps)
  const Quiver& q = p.quiver;
  int nb = 0;
  for (int ar : s.in_arrows) nb += b.dims[q.arrows[ar].from];
  Mat out(s.n_in, nb);
  int ro = 0, co = 0;
  for (int ar : s.in_arrows) {
    const Mat& blk = f.f[q.arrows[ar].from];
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) out.at(ro + i, co + j) = blk.at(i, j);
    ro += a.dims[q.arrows[ar].from];
    co += b.dims[q.arrows[ar].from];
  }
  return out;
}

Mat restrict_out(const QP& p, const MutationScaffold& s, const Representation& a,
                 const Representation& b, const RepMorphism& f) {
  const Quiver& q = p.quiver;
  int nb = 0;
  for (int ar : s.out_arrows) nb += b.dims[q.arrows[ar].to];
  Mat out(s.n_out, nb);
  int ro = 0, co = 0;
  for (int ar : s.out_arrows) {
    const Mat& blk = f.f[q.arrows[ar].to];
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) out.at(ro + i, co + j) = blk.at(i, j);
    ro += a.dims[q.arrows[ar].to];
    co += b.dims[q.arrows[ar].to];
  }
  return out;
}

}  // namespace

RepMorphism mutate_morphism(const QP& input, const Representation& a,
                            const Representation& b, const RepMorphism& f, int k,
                            bool alt_splitting) {
  QP p = validate_qp(input);
  require(is_morphism(p, a, b, f), "not_a_morphism",
          "mutate_morphism: the map does not commute with the arrow actions");
  MutationScaffold sa = build_scaffold(p, a, k, alt_splitting);
  MutationScaffold sb = build_scaffold(p, b, k, alt_splitting);
  Mat f_in = restrict_in(p, sa, a, b, f);
  Mat f_out = restrict_out(p, sa, a, b, f);
  RepMorphism out;
  out.f = f.f;
  out.f[k] = mutated_vertex_map(sa, sb, f_in, f_out);
  return out;
}

DefectReport functoriality_defect(const QP& input, const Representation& a,
                                  const Representation& b, const Representation& c,
                                  const RepMorphism& f, const RepMorphism& g, int k,
                                  bool alt_splitting) {
  QP p = validate_qp(input);
  RepMorphism mf = mutate_morphism(p, a, b, f, k, alt_splitting);
  RepMorphism mg = mutate_morphism(p, b, c, g, k, alt_splitting);
  RepMorphism mfg = mutate_morphism(p, a, c, compose(f, g), k, alt_splitting);
  MutationScaffold sa = build_scaffold(p, a, k, alt_splitting);
  MutationScaffold sb = build_scaffold(p, b, k, alt_splitting);
  MutationScaffold sc = build_scaffold(p, c, k, alt_splitting);

  DefectReport rep;
  rep.diff_k = mf.f[k] * mg.f[k] - mfg.f[k];

  // predicted corner: sigma . f_in . eps' . j' . ~g_out . rho''
  Mat f_in = restrict_in(p, sa, a, b, f);
  Mat sf_eps = submatrix_cols(coords_in_rows(sb.kalpha, sa.c3rows * f_in), 0, sb.c2);
  Mat g_out = restrict_out(p, sb, b, c, g);
  Mat gtil_out = sb.cok_basis * g_out * sc.pcok;
  rep.predicted = sf_eps * sb.jmat * gtil_out * sc.rtil;

  rep.corner_only = true;
  for (int i = 0; i < rep.diff_k.rows(); ++i)
    for (int j = 0; j < rep.diff_k.cols(); ++j) {
      const bool in_corner = (i >= sa.c1 + sa.c2) && (j < sc.c1);
      if (!in_corner && rep.diff_k.at(i, j) != 0) rep.corner_only = false;
    }
  rep.corner_matches = true;
  for (int i = 0; i < sa.c3; ++i)
    for (int j = 0; j < sc.c1; ++j)
      if (rep.diff_k.at(sa.c1 + sa.c2 + i, j) != rep.predicted.at(i, j))
        rep.corner_matches = false;
  return rep;
}

bool check_nearly_morita(const QP& input, const Representation& m, int k,
                         std::uint64_t seed) {
  QP p = validate_qp(input);
  Representation n = strip_simple_summands(p, m, k).rep;
  RepMutation r1 = mutate_rep(p, n, k);
  const QP& p1 = r1.mut.qp;
  Representation n1 = strip_simple_summands(p1, r1.rep, r1.mut.pre.k_new).rep;
  RepMutation r2 = mutate_rep(p1, n1, r1.mut.pre.k_new);
  const QP& p2 = r2.mut.qp;
  Representation n2 = strip_simple_summands(p2, r2.rep, r2.mut.pre.k_new).rep;
  for (const QuiverIso& iso : qp_isomorphisms(p2, p, 16)) {
    Representation back = transport_rep(n2, p2.quiver, iso, p.quiver);
    Representation backs = strip_simple_summands(p, back, k).rep;
    if (are_isomorphic(p, backs, n, seed)) return true;
  }
  return false;
}

}  // namespace qpmut
