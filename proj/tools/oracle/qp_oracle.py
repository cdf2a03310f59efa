#!/usr/bin/env python3
"""Reference oracle for the quiver-with-potential library.

Everything here is an independent, straightforward implementation of the
definitions (path enumeration, cyclic derivatives, truncated ideal quotients,
word quivers, Coxeter reflections, Fomin-Zelevinsky matrix mutation), written
against Python's exact `fractions.Fraction`.  Its output is frozen into
tests/expected/oracle.json and the C++ test suite asserts against that file.
Run from the repository root:

    python3 tools/oracle/qp_oracle.py [--out tests/expected/oracle.json]
"""

from fractions import Fraction
import argparse
import json
import sys

# ---------------------------------------------------------------------------
# quivers and paths
#
# A quiver is {"vertices": [...], "arrows": [(name, frm, to), ...]}.
# A path of length >= 1 is a tuple of arrow names, composable left to right
# (the composite "ab" means first a then b).  A length-0 path at vertex v is
# represented as ("e:" + v,).  Path order: length first, then the name tuple.


def arrow_map(quiver):
    return {name: (frm, to) for (name, frm, to) in quiver["arrows"]}


def path_start(quiver, p):
    if p[0].startswith("e:"):
        return p[0][2:]
    return arrow_map(quiver)[p[0]][0]


def path_end(quiver, p):
    if p[0].startswith("e:"):
        return p[0][2:]
    return arrow_map(quiver)[p[-1]][1]


def path_len(p):
    if p[0].startswith("e:"):
        return 0
    return len(p)


def path_key(p):
    return (path_len(p), p)


def enumerate_paths(quiver, max_len):
    """All basic paths of length 0..max_len, grouped by length."""
    am = arrow_map(quiver)
    by_len = [[("e:" + v,) for v in quiver["vertices"]]]
    for ell in range(1, max_len + 1):
        layer = []
        for p in by_len[ell - 1]:
            end = path_end(quiver, p)
            for (name, frm, to) in quiver["arrows"]:
                if frm == end:
                    layer.append((name,) if ell == 1 else p + (name,))
        by_len.append(layer)
    del am
    return by_len


def compose(quiver, p, q):
    """Concatenate two paths, or None if not composable."""
    if path_end(quiver, p) != path_start(quiver, q):
        return None
    if path_len(p) == 0:
        return q
    if path_len(q) == 0:
        return p
    return p + q


# ---------------------------------------------------------------------------
# potentials: {path tuple: Fraction}, every path a cycle of length >= 2.


def canonical_rotation(names):
    """Lexicographically least rotation of the arrow-name sequence; ties are
    broken by the earliest rotation offset."""
    best = None
    best_off = 0
    for off in range(len(names)):
        rot = names[off:] + names[:off]
        if best is None or rot < best:
            best, best_off = rot, off
    return best, best_off


def normalize_potential(terms):
    out = {}
    for names, c in terms.items():
        rot, _ = canonical_rotation(tuple(names))
        out[rot] = out.get(rot, Fraction(0)) + c
    return {p: c for p, c in out.items() if c != 0}


def cyclic_derivative(terms, a):
    """sum over occurrences of a in each cycle of the rotated remainder."""
    out = {}
    for names, c in terms.items():
        m = len(names)
        for i, x in enumerate(names):
            if x == a:
                rest = names[i + 1:] + names[:i]
                out[rest] = out.get(rest, Fraction(0)) + c
    return {p: c for p, c in out.items() if c != 0}


def second_derivative(quiver, terms, a, b):
    """Pairs of cyclically consecutive letters (a, b), wrap-around included.
    The remainder of an adjacent pair in a 2-cycle is the trivial path at
    s(a)."""
    out = {}
    for names, c in terms.items():
        m = len(names)
        for i in range(m):
            j = (i + 1) % m
            if names[i] == a and names[j] == b:
                if m == 2:
                    rest = ("e:" + arrow_map(quiver)[a][0],)
                else:
                    rot = names[j + 1:] + names[:j + 1]
                    rest = rot[:m - 2]
                out[rest] = out.get(rest, Fraction(0)) + c
    return {p: c for p, c in out.items() if c != 0}


def element_str(elem):
    """Canonical string for {path: Fraction}, for frozen comparisons."""
    items = sorted(elem.items(), key=lambda kv: path_key(kv[0]))
    return [[str(c), list(p)] for p, c in items]


# ---------------------------------------------------------------------------
# truncated ideal quotient.
#
# Span of the two-sided truncated ideal generated by elements G: left
# multiples u*g for all paths u, then closure under right multiplication by
# arrows, all products truncated above max_len.  Row echelon over Fraction
# with pivot = first nonzero coordinate in path order.


class Echelon:
    def __init__(self):
        self.rows = {}  # pivot key -> vector (dict path->Fraction)

    def reduce(self, vec):
        vec = dict(vec)
        while vec:
            piv = min(vec, key=path_key)
            row = self.rows.get(piv)
            if row is None:
                c = vec[piv]
                return {p: x / c for p, x in vec.items()}, piv
            c = vec[piv]
            for p, x in row.items():
                nv = vec.get(p, Fraction(0)) - c * x
                if nv == 0:
                    vec.pop(p, None)
                else:
                    vec[p] = nv
        return None, None

    def insert(self, vec):
        red, piv = self.reduce(vec)
        if red is None:
            return None
        self.rows[piv] = red
        return piv


def truncate_vec(vec, max_len):
    return {p: c for p, c in vec.items() if path_len(p) <= max_len}


def right_mul_arrow(quiver, vec, name, frm, max_len):
    out = {}
    for p, c in vec.items():
        if path_end(quiver, p) != frm:
            continue
        if path_len(p) + 1 > max_len:
            continue
        q = (name,) if path_len(p) == 0 else p + (name,)
        out[q] = out.get(q, Fraction(0)) + c
    return out


def ideal_span(quiver, gens, max_len, paths_by_len=None):
    """Echelon basis of the truncated two-sided ideal generated by gens."""
    if paths_by_len is None:
        paths_by_len = enumerate_paths(quiver, max_len)
    ech = Echelon()
    work = []
    for g in gens:
        if not g:
            continue
        mindeg = min(path_len(p) for p in g)
        gstart = path_start(quiver, next(iter(g)))
        for ell in range(0, max_len - mindeg + 1):
            for u in paths_by_len[ell]:
                if path_end(quiver, u) != gstart:
                    continue
                vec = {}
                for p, c in g.items():
                    if ell + path_len(p) > max_len:
                        continue
                    q = compose(quiver, u, p)
                    vec[q] = vec.get(q, Fraction(0)) + c
                piv = ech.insert(vec)
                if piv is not None:
                    work.append(piv)
    while work:
        piv = work.pop()
        row = ech.rows.get(piv)
        if row is None:
            continue
        row = dict(row)  # rows may be rewritten later; snapshot
        for (name, frm, to) in quiver["arrows"]:
            vec = right_mul_arrow(quiver, row, name, frm, max_len)
            if vec:
                p2 = ech.insert(vec)
                if p2 is not None:
                    work.append(p2)
    return ech


def quotient_layers(quiver, potential, max_len, gens=None):
    """Per-degree dimensions of paths modulo (Jacobian ideal + degree>max_len).

    Returns (layers, total, nilpotency_index or None).  The generators default
    to all cyclic derivatives of the potential."""
    paths_by_len = enumerate_paths(quiver, max_len)
    if gens is None:
        arrows = [a for (a, _, _) in quiver["arrows"]]
        gens = [cyclic_derivative(potential, a) for a in arrows]
    ech = ideal_span(quiver, gens, max_len, paths_by_len)
    pivots_per_deg = [0] * (max_len + 1)
    for piv in ech.rows:
        pivots_per_deg[path_len(piv)] += 1
    layers = [len(paths_by_len[d]) - pivots_per_deg[d] for d in range(max_len + 1)]
    nilp = None
    for d in range(1, max_len + 1):
        if layers[d] == 0:
            nilp = d
            break
    total = sum(layers[:nilp]) if nilp is not None else sum(layers)
    return layers, total, nilp


def relation_space_dims(quiver, potential, max_len):
    """dim of I/(IJ+JI) per ordered vertex pair (start, end), where I is the
    truncated Jacobian ideal.  Since the ideal is generated by basic elements
    the computation splits over vertex pairs."""
    paths_by_len = enumerate_paths(quiver, max_len)
    arrows = [a for (a, _, _) in quiver["arrows"]]
    gens = [cyclic_derivative(potential, a) for a in arrows]
    dims = {}
    for i in quiver["vertices"]:
        for j in quiver["vertices"]:
            full = Echelon()
            sub = Echelon()  # the part with deg(u) + deg(v) >= 1
            for g in gens:
                if not g:
                    continue
                p0 = next(iter(g))
                gs, ge = path_start(quiver, p0), path_end(quiver, p0)
                mindeg = min(path_len(p) for p in g)
                for lu in range(0, max_len - mindeg + 1):
                    for u in paths_by_len[lu]:
                        if path_start(quiver, u) != i or path_end(quiver, u) != gs:
                            continue
                        for lv in range(0, max_len - mindeg - lu + 1):
                            for v in paths_by_len[lv]:
                                if path_start(quiver, v) != ge or path_end(quiver, v) != j:
                                    continue
                                vec = {}
                                for p, c in g.items():
                                    if lu + path_len(p) + lv > max_len:
                                        continue
                                    q = compose(quiver, compose(quiver, u, p), v)
                                    vec[q] = vec.get(q, Fraction(0)) + c
                                if vec:
                                    full.insert(dict(vec))
                                    if lu + lv >= 1:
                                        sub.insert(vec)
            d = len(full.rows) - len(sub.rows)
            if d:
                dims[f"{i}->{j}"] = d
    return dims


# ---------------------------------------------------------------------------
# rigidity span: cyclic classes of (partial_a W * r) over closing paths r.


def rigidity(quiver, potential, max_len):
    paths_by_len = enumerate_paths(quiver, max_len)
    classes = set()
    for d in range(1, max_len + 1):
        for p in paths_by_len[d]:
            if path_start(quiver, p) == path_end(quiver, p):
                rot, _ = canonical_rotation(p)
                classes.add(rot)
    class_list = sorted(classes, key=path_key)
    ech = Echelon()
    arrows = [(a, frm, to) for (a, frm, to) in quiver["arrows"]]
    for (a, frm, to) in arrows:
        g = cyclic_derivative(potential, a)  # basic: to -> frm
        if not g:
            continue
        mindeg = min(path_len(p) for p in g)
        for ell in range(0, max_len - mindeg + 1):
            for r in paths_by_len[ell]:
                if path_start(quiver, r) != frm or path_end(quiver, r) != to:
                    continue
                vec = {}
                for p, c in g.items():
                    q = compose(quiver, p, r)
                    if path_len(q) == 0 or path_len(q) > max_len:
                        continue
                    rot, _ = canonical_rotation(q)
                    vec[rot] = vec.get(rot, Fraction(0)) + c
                if vec:
                    ech.insert(vec)
    covered = len(ech.rows)
    witness = None
    if covered < len(class_list):
        for cls in class_list:
            red, piv = ech.reduce({cls: Fraction(1)})
            if red is not None:
                witness = list(cls)
                break
    return {"num_classes": len(class_list), "span_rank": covered,
            "witness": witness}


# ---------------------------------------------------------------------------
# Fomin-Zelevinsky matrix mutation.


def fz_mutate(B, k):
    n = len(B)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
    return out


# ---------------------------------------------------------------------------
# Coxeter data and word quivers.


def star(name):
    return name[:-1] if name.endswith("*") else name + "*"


def coxeter_m(quiver):
    vs = quiver["vertices"]
    count = {}
    for (a, f, t) in quiver["arrows"]:
        key = tuple(sorted((f, t)))
        count[key] = count.get(key, 0) + 1
    m = {}
    for i in vs:
        for j in vs:
            if i == j:
                continue
            c = count.get(tuple(sorted((i, j))), 0)
            m[f"{i},{j}"] = 2 if c == 0 else (3 if c == 1 else 0)  # 0 encodes infinity
    return m


def coxeter_B(quiver):
    vs = quiver["vertices"]
    m = coxeter_m(quiver)
    B = {}
    for i in vs:
        for j in vs:
            if i == j:
                B[f"{i},{j}"] = Fraction(1)
            else:
                mij = m[f"{i},{j}"]
                B[f"{i},{j}"] = Fraction(0) if mij == 2 else (Fraction(-1, 2) if mij == 3 else Fraction(-1))
    return B


def is_reduced_word(quiver, word):
    """word reduced iff every prefix sends the next simple root to a positive
    root under the geometric representation."""
    vs = quiver["vertices"]
    B = coxeter_B(quiver)
    idx = {v: n for n, v in enumerate(vs)}

    def refl(i, vec):
        # s_i(v) = v - 2 B(alpha_i, v) alpha_i
        coeff = sum(Fraction(2) * B[f"{i},{vs[n]}"] * vec[n] for n in range(len(vs)))
        out = list(vec)
        out[idx[i]] -= coeff
        return out

    for t in range(len(word)):
        root = [Fraction(0)] * len(vs)
        root[idx[word[t]]] = Fraction(1)
        for s in range(t - 1, -1, -1):
            root = refl(word[s], root)
        if not all(c >= 0 for c in root):
            return False
    return True


def word_quiver(base, word):
    """Vertices "type:occ"; left arrows "L:type:occ" from type:occ to
    type:occ-1; right arrows "name:occ(source)" per doubled-quiver arrow."""
    positions = list(range(len(word)))
    occ = {}
    vname = []
    for p in positions:
        t = word[p]
        occ[p] = occ.get("cnt:" + t, 0) + 1
        occ["cnt:" + t] = occ[p]
        vname.append(f"{t}:{occ[p]}")
    type_positions = {}
    for p in positions:
        type_positions.setdefault(word[p], []).append(p)

    vertices = [vname[p] for p in positions]
    frozen = [vname[ps[-1]] for t, ps in sorted(type_positions.items())]
    arrows = []
    for t, ps in sorted(type_positions.items()):
        for r in range(1, len(ps)):
            arrows.append((f"L:{t}:{r + 1}", vname[ps[r]], vname[ps[r - 1]]))

    doubled = []
    for (a, f, t) in base["arrows"]:
        doubled.append((a, f, t, 1))
        doubled.append((star(a), t, f, -1))
    eps = {}
    for (nm, i, j, e) in doubled:
        for u in type_positions.get(i, []):
            for v in type_positions.get(j, []):
                if v <= u:
                    continue
                if any(word[x] == i for x in range(u + 1, v)):
                    break  # later v only get worse
                later_j = [x for x in type_positions.get(j, []) if x > v]
                if later_j:
                    nxt = later_j[0]
                    if not any(word[x] == i for x in range(v + 1, nxt)):
                        continue
                name = f"{nm}:{occ[u]}"
                arrows.append((name, vname[u], vname[v]))
                eps[name] = e
    return {"vertices": vertices, "arrows": arrows}, frozen, eps, vname, type_positions, occ


def word_potential(base, word):
    q, frozen, eps, vname, type_positions, occ = word_quiver(base, word)
    am = {a: (f, t) for (a, f, t) in q["arrows"]}
    pos_of_vertex = {vname[p]: p for p in range(len(word))}
    terms = {}
    for (name, f, t) in q["arrows"]:
        if name not in eps:
            continue  # left arrow
        base_name = name.split(":")[0]
        partner_base = star(base_name)
        s_occ = occ[pos_of_vertex[t]]
        partner = f"{partner_base}:{s_occ}"
        if partner not in am or am[partner][0] != t:
            continue
        land = am[partner][1]  # i_t
        i_type = word[pos_of_vertex[f]]
        t_occ = occ[pos_of_vertex[land]]
        r_occ = occ[pos_of_vertex[f]]
        left = tuple(f"L:{i_type}:{x}" for x in range(t_occ, r_occ, -1))
        cyc = (name, partner) + left
        rot, _ = canonical_rotation(cyc)
        terms[rot] = terms.get(rot, Fraction(0)) + Fraction(eps[name])
    return q, frozen, normalize_potential(terms)


def restrict_to_stable(q, frozen, terms):
    fz = set(frozen)
    vertices = [v for v in q["vertices"] if v not in fz]
    arrows = [(a, f, t) for (a, f, t) in q["arrows"] if f not in fz and t not in fz]
    names = {a for (a, _, _) in arrows}
    out = {p: c for p, c in terms.items() if all(x in names for x in p)}
    return {"vertices": vertices, "arrows": arrows}, out


def is_full_cycle(quiver, names):
    am = arrow_map(quiver)
    verts = [am[x][0] for x in names]
    if len(set(verts)) != len(verts):
        return False
    vset = set(verts)
    cycle_pairs = {(am[x][0], am[x][1]) for x in names}
    for (a, f, t) in quiver["arrows"]:
        if f in vset and t in vset and (f, t) not in cycle_pairs:
            return False
    return True


# ---------------------------------------------------------------------------
# hom spaces between quiver representations (dims only, small dense solve).


def hom_dim(quiver, dims, matsM, matsN):
    """Representations as {vertex: dim} plus {arrow: matrix (list of rows)},
    row-vector convention: path ab acts as M_a * M_b.  Morphism f: M -> N is
    {v: dim_M[v] x dim_N[v]} with M_a * f_{e(a)} = f_{s(a)} * N_a."""
    dimsM, dimsN = dims
    unk = {}
    n_unk = 0
    for v in quiver["vertices"]:
        unk[v] = (n_unk, dimsM.get(v, 0), dimsN.get(v, 0))
        n_unk += dimsM.get(v, 0) * dimsN.get(v, 0)
    rows = []
    for (a, f, t) in quiver["arrows"]:
        Ma = matsM.get(a)
        Na = matsN.get(a)
        rM, cM = dimsM.get(f, 0), dimsM.get(t, 0)
        rN, cN = dimsN.get(f, 0), dimsN.get(t, 0)
        # equation entries indexed by (i in rM, j in cN)
        for i in range(rM):
            for j in range(cN):
                row = [Fraction(0)] * n_unk
                # (M_a f_t)_{ij} = sum_k Ma[i][k] f_t[k][j]
                base_t = unk[t][0]
                for k in range(cM):
                    row[base_t + k * cN + j] += Ma[i][k] if Ma else Fraction(0)
                # -(f_f N_a)_{ij} = -sum_k f_f[i][k] Na[k][j]
                base_f = unk[f][0]
                for k in range(rN):
                    row[base_f + i * rN + k] -= Na[k][j] if Na else Fraction(0)
                if any(x != 0 for x in row):
                    rows.append(row)
    # rank by gaussian elimination
    rank = 0
    rows = [r[:] for r in rows]
    col = 0
    nrows = len(rows)
    pivot_rows = []
    for c in range(n_unk):
        sel = None
        for r in range(len(rows)):
            if r not in pivot_rows and rows[r][c] != 0:
                sel = r
                break
        if sel is None:
            continue
        pivot_rows.append(sel)
        pv = rows[sel][c]
        for r in range(len(rows)):
            if r != sel and rows[r][c] != 0:
                f2 = rows[r][c] / pv
                for cc in range(c, n_unk):
                    rows[r][cc] -= f2 * rows[sel][cc]
        rank += 1
    return n_unk - rank


# ---------------------------------------------------------------------------
# the frozen scenarios.


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="tests/expected/oracle.json")
    args = ap.parse_args()
    out = {}

    F = Fraction

    a3 = {"vertices": ["1", "2", "3"],
          "arrows": [("a", "1", "2"), ("b", "2", "3")]}
    tri = {"vertices": ["1", "2", "3"],
           "arrows": [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]}
    tri_abc = {("a", "b", "c"): F(1)}

    # --- jacobian layer dims -------------------------------------------------
    layers, total, nilp = quotient_layers(a3, {}, 8)
    out["jac_a3_zero_N8"] = {"layers": layers, "total": total, "nilpotency": nilp}
    layers, total, nilp = quotient_layers(tri, tri_abc, 12)
    out["jac_tri_abc_N12"] = {"layers": layers, "total": total, "nilpotency": nilp}
    layers, total, nilp = quotient_layers(tri, {}, 8)
    out["jac_tri_zero_N8"] = {"layers": layers, "total": total, "nilpotency": nilp}

    mu2a3 = {"vertices": ["1", "2*", "3"],
             "arrows": [("[ab]", "1", "3"), ("a*", "2*", "1"), ("b*", "3", "2*")]}
    mu2a3_W = {("[ab]", "b*", "a*"): F(1)}  # canonical rotation of a*[ab]b*
    layers, total, nilp = quotient_layers(mu2a3, mu2a3_W, 12)
    out["jac_mu2_a3_N12"] = {"layers": layers, "total": total, "nilpotency": nilp}

    rq1 = {"vertices": ["1", "2", "3"],
           "arrows": [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("d", "3", "1")]}
    rq1_W = normalize_potential({("a", "b", "c"): F(1), ("a", "b", "d"): F(3)})
    layers, total, nilp = quotient_layers(rq1, rq1_W, 10)
    out["jac_rq1_N10"] = {"layers": layers, "total": total, "nilpotency": nilp}

    rq2 = {"vertices": ["1", "2", "3"],
           "arrows": [("a1", "1", "2"), ("a2", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]}
    rq2_W = normalize_potential({("a1", "b", "c"): F(1), ("a2", "b", "c"): F(2),
                                 ("a1", "b", "c", "a1", "b", "c"): F(1, 3)})
    layers, total, nilp = quotient_layers(rq2, rq2_W, 9)
    out["jac_rq2_N9"] = {"layers": layers, "total": total, "nilpotency": nilp}

    out["relations_tri_abc_N12"] = relation_space_dims(tri, tri_abc, 12)
    out["relations_rq1_N10"] = relation_space_dims(rq1, rq1_W, 10)

    # --- rigidity spans ------------------------------------------------------
    out["rigid_tri_abc_N9"] = rigidity(tri, tri_abc, 9)
    out["rigid_tri_zero_N9"] = rigidity(tri, {}, 9)
    out["rigid_mu2_a3_N9"] = rigidity(mu2a3, mu2a3_W, 9)

    # --- derivatives of W = cd + abd on the reduction-example quiver --------
    redq = {"vertices": ["1", "2", "3"],
            "arrows": [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3"), ("d", "3", "1")]}
    W = normalize_potential({("c", "d"): F(1), ("a", "b", "d"): F(1)})
    derivs = {}
    for ar in ["a", "b", "c", "d"]:
        derivs[ar] = element_str(cyclic_derivative(W, ar))
    out["cyclic_derivs_cd_abd"] = derivs
    second = {}
    for x in ["a", "b", "c", "d"]:
        for y in ["a", "b", "c", "d"]:
            val = second_derivative(redq, W, x, y)
            if val:
                second[f"{x},{y}"] = element_str(val)
    out["second_derivs_cd_abd"] = second

    # --- FZ matrix mutation --------------------------------------------------
    B3 = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]
    out["fz_tri_mu2"] = fz_mutate(B3, 1)  # vertex "2" is index 1
    B4 = [[0, 2, -1, 0], [-2, 0, 1, -1], [1, -1, 0, 3], [0, 1, -3, 0]]
    seq = [0, 2, 1, 3, 0]
    Bm = B4
    for k in seq:
        Bm = fz_mutate(Bm, k)
    out["fz_rand4_seq"] = {"input": B4, "seq": seq, "output": Bm}

    # --- Coxeter -------------------------------------------------------------
    base = {"vertices": ["1", "2", "3"],
            "arrows": [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]}
    word = ["1", "2", "1", "3", "1", "2", "3", "1", "2", "3", "2"]
    out["cox_m"] = coxeter_m(base)
    out["cox_B"] = {k: str(v) for k, v in coxeter_B(base).items()}
    out["word_reduced"] = is_reduced_word(base, word)
    a2 = {"vertices": ["1", "2"], "arrows": [("a", "1", "2")]}
    out["word_a2_1212_reduced"] = is_reduced_word(a2, ["1", "2", "1", "2"])
    out["word_a2_121_reduced"] = is_reduced_word(a2, ["1", "2", "1"])

    q, frozen, terms = word_potential(base, word)
    out["wq_vertices"] = q["vertices"]
    out["wq_frozen"] = sorted(frozen)
    out["wq_arrows"] = sorted([list(x) for x in q["arrows"]])
    out["wq_potential"] = element_str(terms)
    sq, sterms = restrict_to_stable(q, frozen, terms)
    out["wq_stable_vertices"] = sq["vertices"]
    out["wq_stable_arrows"] = sorted([list(x) for x in sq["arrows"]])
    out["wq_stable_potential"] = element_str(sterms)
    out["wq_full_cycles"] = all(is_full_cycle(sq, p) for p in sterms)
    out["wq_full_cycles_frozenq"] = all(is_full_cycle(q, p) for p in terms)

    # growth of the stable quiver, and its Jacobian layers
    sp = enumerate_paths(sq, 12)
    out["wq_stable_path_counts"] = [len(x) for x in sp]
    layers, total, nilp = quotient_layers(sq, sterms, 12)
    out["jac_wq_stable_N12"] = {"layers": layers, "total": total, "nilpotency": nilp}
    out["rigid_wq_stable_N12"] = rigidity(sq, sterms, 12)

    # small word example on A2
    q2, frozen2, terms2 = word_potential(a2, ["1", "2", "1"])
    out["wq_a2_vertices"] = q2["vertices"]
    out["wq_a2_frozen"] = sorted(frozen2)
    out["wq_a2_arrows"] = sorted([list(x) for x in q2["arrows"]])
    out["wq_a2_potential"] = element_str(terms2)

    # --- hom dims over A2 ----------------------------------------------------
    one = [[F(1)]]
    P1 = ({"1": 1, "2": 1}, {"a": one})
    S1 = ({"1": 1, "2": 0}, {})
    S2 = ({"1": 0, "2": 1}, {})
    reps = {"P1": P1, "S1": S1, "S2": S2}
    hom = {}
    for nm, rm in reps.items():
        for nn, rn in reps.items():
            hom[f"{nm},{nn}"] = hom_dim(a2, (rm[0], rn[0]), rm[1], rn[1])
    out["hom_a2"] = hom

    json.dump(out, open(args.out, "w"), indent=1, sort_keys=True)
    print(f"wrote {args.out}")
    for k in sorted(out):
        v = out[k]
        s = json.dumps(v)
        print(f"  {k}: {s if len(s) < 100 else s[:100] + '...'}")


if __name__ == "__main__":
    main()
