"""Constructors for the shipped catalog of pairs.

Each builder turns the defining matrix picture of a family (bracket
formula, K generators, invariant polynomials) into flat rational data:
structure constants, realified generator matrices and Hilbert-basis
polynomials.  The same basis conventions are reused by the normal-form
and block-pattern helpers, so everything that depends on a choice of
coordinates lives in this module.

Coordinate conventions:
  * C^n realified as (x1, y1, ..., xn, yn);
  * H^n realified as (a1, b1, c1, d1, ...) for q = a + bi + cj + dk;
  * w coordinates are taken with respect to the explicit basis lists
    below, with Gram matrices from the Re tr(A*B) pairing.
"""

from __future__ import annotations

from fractions import Fraction

from . import exactmat as em
from . import linalg
from .gaussrat import QQi, QQI_I
from .poly import Polynomial

HALF = Fraction(1, 2)


# small generic helpers


def _coords(basis, mat, pairing, gram=None):
    """Coordinates of mat in the span of basis, via the given pairing."""
    if gram is None:
        gram = [[pairing(a, b) for b in basis] for a in basis]
    rhs = [pairing(b, mat) for b in basis]
    sol = linalg.solve(gram, rhs)
    if sol is None:
        raise ValueError("matrix outside the span of the basis")
    return sol


def _pairing_gram(basis, pairing):
    return [[pairing(a, b) for b in basis] for a in basis]


def _sum_of_squares(nv, nw, indices):
    p = Polynomial.zero(nv, nw)
    for i in indices:
        x = Polynomial.variable(nv, nw, i)
        p = p + x * x
    return p


def _pmat_from_basis(nv, nw, basis, entry):
    """Polynomial matrix sum_l w_l * B_l; entry(B, i, j) -> QQi."""
    n = len(basis[0])
    out = [[Polynomial.zero(nv, nw) for _ in range(n)] for _ in range(n)]
    for l, b in enumerate(basis):
        wl = Polynomial.w_var(nv, nw, l)
        for i in range(n):
            for j in range(n):
                c = entry(b, i, j)
                if c:
                    out[i][j] = out[i][j] + wl.scale(c)
    return out


def _pmat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    zero = Polynomial.zero(a[0][0].nv, a[0][0].nw)
    out = [[zero for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if a[i][t].is_zero():
                continue
            for j in range(m):
                if not b[t][j].is_zero():
                    out[i][j] = out[i][j] + a[i][t] * b[t][j]
    return out


def _pmat_trace(a):
    t = Polynomial.zero(a[0][0].nv, a[0][0].nw)
    for i in range(len(a)):
        t = t + a[i][i]
    return t


def _imag_part(p: Polynomial) -> Polynomial:
    return (p - p.conjugate()).scale(QQi(0, Fraction(-1, 2)))


def _real_part(p: Polynomial) -> Polynomial:
    return (p + p.conjugate()).scale(Fraction(1, 2))


def _z_vector(nv, nw):
    """Complex coordinate polynomials z_j = x_j + i y_j as a column."""
    n = nv // 2
    col = []
    for j in range(n):
        x = Polynomial.v_var(nv, nw, 2 * j)
        y = Polynomial.v_var(nv, nw, 2 * j + 1)
        col.append(x + y.scale(QQI_I))
    return col


def _zbar_row(nv, nw):
    return [z.conjugate() for z in _z_vector(nv, nw)]


# w-space descriptions reused by brackets, block patterns, normal forms


def so_basis_pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _so_matrices(n):
    out = []
    for i, j in so_basis_pairs(n):
        m = em.czeros(n)
        m[i][j] = QQi(1)
        m[j][i] = QQi(-1)
        out.append(m)
    return out


def _u_matrices(n):
    """Basis of u_n: i E_kk, then E_jk - E_kj and i(E_jk + E_kj), j<k."""
    out = [em.cE(n, k, k, QQI_I) for k in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            a = em.czeros(n)
            a[j][k] = QQi(1)
            a[k][j] = QQi(-1)
            out.append(a)
            b = em.czeros(n)
            b[j][k] = QQI_I
            b[k][j] = QQI_I
            out.append(b)
    return out


def _su_matrices(n):
    """Basis of su_n: traceless diagonals, then the off-diagonal pairs."""
    out = []
    for k in range(n - 1):
        m = em.czeros(n)
        m[k][k] = QQI_I
        m[k + 1][k + 1] = QQi(0, -1)
        out.append(m)
    out.extend(_u_matrices(n)[n:])
    return out


def _lambda2_matrices(n):
    """Basis of Lambda^2 C^n as antisymmetric matrices: S_jk and i S_jk."""
    out = []
    for j in range(n):
        for k in range(j + 1, n):
            s = em.czeros(n)
            s[j][k] = QQi(1)
            s[k][j] = QQi(-1)
            out.append(s)
            t = em.czeros(n)
            t[j][k] = QQI_I
            t[k][j] = QQi(0, -1)
            out.append(t)
    return out


def _sp_matrices(n):
    """Basis of sp_n: quaternionic skew-hermitian n x n matrices."""
    out = []
    for a in range(n):
        for u in ("i", "j", "k"):
            m = em.qzeros(n)
            m[a][a] = em.Quat.unit(u)
            out.append(m)
    for a in range(n):
        for b in range(a + 1, n):
            for u in ("1", "i", "j", "k"):
                q = em.Quat.unit(u)
                m = em.qzeros(n)
                m[a][b] = q
                m[b][a] = -q.conjugate()
                out.append(m)
    return out


def _hs2_matrices(n, traceless):
    """Basis of quaternionic hermitian n x n matrices (traceless option)."""
    out = []
    if traceless:
        for a in range(n - 1):
            m = em.qzeros(n)
            m[a][a] = em.Quat.unit("1")
            m[a + 1][a + 1] = -em.Quat.unit("1")
            out.append(m)
    else:
        for a in range(n):
            m = em.qzeros(n)
            m[a][a] = em.Quat.unit("1")
            out.append(m)
    for a in range(n):
        for b in range(a + 1, n):
            for u in ("1", "i", "j", "k"):
                q = em.Quat.unit(u)
                m = em.qzeros(n)
                m[a][b] = q
                m[b][a] = q.conjugate()
                out.append(m)
    return out


# family builders


def build_abelian_so(n):
    nv, nw = n, 0
    gens = []
    for m in _so_matrices(n):
        av = [[m[i][j].re for j in range(n)] for i in range(n)]
        gens.append((av, []))
    if n == 1:
        basis = [("v", Polynomial.v_var(1, 0, 0))]
    else:
        basis = [("v", _sum_of_squares(nv, nw, range(nv)))]
    return {
        "name": f"R{n}-SO{n}",
        "family_tag": "abelian",
        "group_tag": "trivial" if n == 1 else "SO_n",
        "params": {"n": n},
        "dim_v": nv,
        "dim_w": nw,
        "structure_constants": [[[ ] for _ in range(nv)] for _ in range(nv)],
        "gram_v": None,
        "gram_w": None,
        "derived": False,
        "k_generators": gens,
        "hilbert_basis": basis,
    }


def build_heisenberg(n):
    nv, nw = 2 * n, 1
    c = [[[Fraction(0)] for _ in range(nv)] for _ in range(nv)]
    for j in range(n):
        c[2 * j][2 * j + 1][0] = Fraction(1)
        c[2 * j + 1][2 * j][0] = Fraction(-1)
    gens = []
    for m in _u_matrices(n):
        gens.append((em.realify_complex_matrix(m), [[Fraction(0)]]))
    basis = [
        ("wcheck", Polynomial.w_var(nv, nw, 0)),
        ("v", _sum_of_squares(nv, nw, range(nv))),
    ]
    return {
        "name": f"H{n}-U{n}",
        "family_tag": "heisenberg",
        "group_tag": "U_n",
        "params": {"n": n},
        "dim_v": nv,
        "dim_w": nw,
        "structure_constants": c,
        "gram_v": None,
        "gram_w": None,
        "derived": True,
        "k_generators": gens,
        "hilbert_basis": basis,
    }


def _ad_action_matrix(gen, basis, pairing, gram, commute):
    cols = []
    for b in basis:
        cols.append(_coords(basis, commute(gen, b), pairing, gram))
    d = len(basis)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def build_line1(n=4):
    nv = n
    basis = _so_matrices(n)
    nw = len(basis)
    pairing = em.re_trace_pairing
    gram = _pairing_gram(basis, pairing)

    c = [[[Fraction(0)] * nw for _ in range(nv)] for _ in range(nv)]
    for i in range(nv):
        for j in range(nv):
            if i == j:
                continue
            m = em.czeros(n)
            m[i][j] = QQi(HALF)
            m[j][i] = QQi(-HALF)
            c[i][j] = _coords(basis, m, pairing, gram)

    gens = []
    for g in _so_matrices(n):
        av = [[g[i][j].re for j in range(n)] for i in range(n)]
        aw = _ad_action_matrix(
            g, basis, pairing, gram, lambda a, b: em.ccommutator(a, b)
        )
        gens.append((av, aw))

    # invariant polynomials; w matrix entries in terms of coordinates
    wmat = _pmat_from_basis(nv, nw, basis, lambda b, i, j: b[i][j])
    pairs = so_basis_pairs(n)
    idx = {p: l for l, p in enumerate(pairs)}
    q1 = _sum_of_squares(nv, nw, range(nv, nv + nw))
    basis_polys = [("w0", q1)]
    if n == 4:
        pf = (
            Polynomial.w_var(nv, nw, idx[(0, 1)]) * Polynomial.w_var(nv, nw, idx[(2, 3)])
            - Polynomial.w_var(nv, nw, idx[(0, 2)]) * Polynomial.w_var(nv, nw, idx[(1, 3)])
            + Polynomial.w_var(nv, nw, idx[(0, 3)]) * Polynomial.w_var(nv, nw, idx[(1, 2)])
        )
        basis_polys.append(("w0", pf))
    basis_polys.append(("v", _sum_of_squares(nv, nw, range(nv))))
    vcol = [[Polynomial.v_var(nv, nw, i)] for i in range(nv)]
    wv = _pmat_mul(wmat, vcol)
    mix = Polynomial.zero(nv, nw)
    for i in range(nv):
        mix = mix + wv[i][0] * wv[i][0]
    basis_polys.append(("vw0", mix.scale(-1)))
    if n == 4:
        basis_polys.append(("vw0", _line1_epsilon_invariant(nv, nw, vcol, wv, wmat)))

    return {
        "name": f"line1-n{n}",
        "family_tag": "line1",
        "group_tag": "SO_n",
        "params": {"n": n},
        "dim_v": nv,
        "dim_w": nw,
        "structure_constants": c,
        "gram_v": None,
        "gram_w": gram_to_fractions(gram),
        "derived": True,
        "k_generators": gens,
        "hilbert_basis": basis_polys,
    }


def _line1_epsilon_invariant(nv, nw, vcol, wv, wmat):
    """The orientation invariant det-like mixed candidate on R^4 + so_4:
    sum over permutations eps(i,j,k,l) v_i (wv)_j w_kl."""
    from itertools import permutations

    def sign(p):
        s = 1
        p = list(p)
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if p[i] > p[j]:
                    s = -s
        return s

    out = Polynomial.zero(nv, nw)
    for p in permutations(range(4)):
        i, j, k, l = p
        out = out + (vcol[i][0] * wv[j][0] * wmat[k][l]).scale(sign(p))
    return out.scale(Fraction(1, 4))


def build_line2(n):
    nv = 2 * n
    basis = _u_matrices(n)
    nw = len(basis)
    pairing = em.re_trace_pairing
    gram = _pairing_gram(basis, pairing)

    c = [[[Fraction(0)] * nw for _ in range(nv)] for _ in range(nv)]
    for i in range(nv):
        vi = em.complex_unit_vector(n, i)
        for j in range(nv):
            vj = em.complex_unit_vector(n, j)
            m = em.czeros(n)
            for a in range(n):
                for b in range(n):
                    m[a][b] = (
                        vi[a] * vj[b].conjugate() - vj[a] * vi[b].conjugate()
                    ) * QQi(HALF)
            c[i][j] = _coords(basis, m, pairing, gram)

    gens = []
    for g in basis:
        av = em.realify_complex_matrix(g)
        aw = _ad_action_matrix(
            g, basis, pairing, gram, lambda a, b: em.ccommutator(a, b)
        )
        gens.append((av, aw))

    wmat = _pmat_from_basis(nv, nw, basis, lambda b, i, j: b[i][j])
    # trace-free part: W0 = W - (tr W / n), tr W = i (w_1 + ... + w_n)
    u = Polynomial.zero(nv, nw)
    for k in range(n):
        u = u + Polynomial.w_var(nv, nw, k)
    w0mat = [row[:] for row in wmat]
    for k in range(n):
        w0mat[k][k] = w0mat[k][k] - u.scale(QQi(0, Fraction(1, n)))

    w0sq = _pmat_mul(w0mat, w0mat)
    q2 = _pmat_trace(w0sq).scale(-1)
    zb, zc = _zbar_row(nv, nw), _z_vector(nv, nw)
    m1 = _imag_part(_pmat_mul([zb], _pmat_mul(w0mat, [[z] for z in zc]))[0][0])
    basis_polys = [("w0", q2)]
    if n >= 3:
        q3 = _pmat_trace(_pmat_mul(w0sq, w0mat)).scale(QQi(0, -1))
        basis_polys.append(("w0", q3))
    basis_polys.append(("wcheck", u))
    basis_polys.append(("v", _sum_of_squares(nv, nw, range(nv))))
    basis_polys.append(("vw0", m1))
    if n >= 3:
        # z* W0^2 z is a real quadratic form (W0^2 is hermitian)
        m2 = _real_part(
            _pmat_mul([zb], _pmat_mul(w0sq, [[z] for z in zc]))[0][0]
        )
        basis_polys.append(("vw0", m2))

    return {
        "name": f"line2-n{n}",
        "family_tag": "line2",
        "group_tag": "U_n",
        "params": {"n": n},
        "dim_v": nv,
        "dim_w": nw,
        "structure_constants": c,
        "gram_v": None,
        "gram_w": gram_to_fractions(gram),
        "derived": True,
        "k_generators": gens,
        "hilbert_basis": basis_polys,
    }


def build_line3(n=2):
    nv = 4 * n
    hs_basis = _hs2_matrices(n, traceless=True)
    nw = len(hs_basis) + 3  # matrix part plus Im H scalars (i, j, k)
    pairing = em.q_re_trace_pairing
    gram_m = _pairing_gram(hs_basis, pairing)

    def bracket_coords(vi, vj):
        m = em.qzeros(n)
        iq = em.Quat.unit("i")
        for a in range(n):
            for b in range(n):
                m[a][b] = (
                    vi[a] * iq * vj[b].conjugate() - vj[a] * iq * vi[b].conjugate()
                ) * HALF
        s = em.Quat()
        for a in range(n):
            s = s + vi[a].conjugate() * vj[a]
        imag = (s - s.conjugate()) * HALF
        # remove the i-trace so the matrix part is traceless
        for a in range(n):
            m[a][a] = m[a][a] - em.Quat(0, imag.b, 0, 0) * Fraction(1, n)
        coords = _coords(hs_basis, m, pairing, gram_m)
        return coords + [imag.b, imag.c, imag.d]

    c = [[None] * nv for _ in range(nv)]
    for i in range(nv):
        vi = em.quaternion_unit_vector(n, i)
        for j in range(nv):
            vj = em.quaternion_unit_vector(n, j)
            c[i][j] = bracket_coords(vi, vj)

    gens = []
    for g in _sp_matrices(n):
        av = em.realify_quaternion_matrix(g)
        aw_m = _ad_action_matrix(
            g,
            hs_basis,
            pairing,
            gram_m,
            lambda a, b: em.qadd(em.qmul(a, b), em.qscale(Fraction(-1), em.qmul(b, a))),
        )
        d = len(hs_basis)
        aw = [[Fraction(0)] * nw for _ in range(nw)]
        for r in range(d):
            for s in range(d):
                aw[r][s] = aw_m[r][s]
        gens.append((av, aw))

    gram_w = [[Fraction(0)] * nw for _ in range(nw)]
    d = len(hs_basis)
    for i in range(d):
        for j in range(d):
            gram_w[i][j] = gram_m[i][j]
    for s in range(3):
        gram_w[d + s][d + s] = Fraction(1)

    return {
        "name": f"line3-n{n}",
        "family_tag": "line3",
        "group_tag": "Sp_n",
        "params": {"n": n},
        "dim_v": nv,
        "dim_w": nw,
        "structure_constants": c,
        "gram_v": None,
        "gram_w": gram_w,
        "derived": True,
        "k_generators": gens,
        "hilbert_basis": None,
    }


def build_line456(line):
    """Lines 4, 5 (m = 3) and 6 (m = 4): C^m with Lambda^2 C^m brackets."""
    if line == 4:
        m, with_r, kbasis, group = 3, False, _su_matrices(3), "SU_n"
    elif line == 5:
        m, with_r, kbasis, group = 3, True, _u_matrices(3), "U_n"
    elif line == 6:
        m, with_r, kbasis, group = 4, True, _su_matrices(4), "SU_n"
    else:
        raise ValueError(line)
    nv = 2 * m
    basis = _lambda2_matrices(m)
    nw = len(basis) + (1 if with_r else 0)
    pairing = em.re_trace_pairing
    gram_m = _pairing_gram(basis, pairing)

    c = [[None] * nv for _ in range(nv)]
    for i in range(nv):
        vi = em.complex_unit_vector(m, i)
        for j in range(nv):
            vj = em.complex_unit_vector(m, j)
            mat = em.czeros(m)
            for a in range(m):
                for b in range(m):
                    mat[a][b] = (vi[a] * vj[b] - vj[a] * vi[b]) * QQi(HALF)
            coords = _coords(basis, mat, pairing, gram_m)
            if with_r:
                s = QQi(0)
                for a in range(m):
                    s = s + vi[a].conjugate() * vj[a]
                coords.append(s.im)
            c[i][j] = coords

    gens = []
    for g in kbasis:
        av = em.realify_complex_matrix(g)
        aw_m = _ad_action_matrix(
            g,
            basis,
            pairing,
            gram_m,
            lambda a, b: em.cadd(em.cmul(a, b), em.cmul(b, em.ctranspose(a))),
        )
        aw = [list(row) for row in aw_m]
        if with_r:
            for row in aw:
                row.append(Fraction(0))
            aw.append([Fraction(0)] * nw)
        gens.append((av, aw))

    gram_w = [list(row) for row in gram_m]
    if with_r:
        for row in gram_w:
            row.append(Fraction(0))
        gram_w.append([Fraction(0)] * nw)
        gram_w[nw - 1][nw - 1] = Fraction(1)

    n_param = m // 2 if line == 6 else (m - 1) // 2
    return {
        "name": f"line{line}-n{n_param}",
        "family_tag": f"line{line}",
        "group_tag": group,
        "params": {"n": n_param, "m": m},
        "dim_v": nv,
        "dim_w": nw,
        "structure_constants": c,
        "gram_v": None,
        "gram_w": gram_w,
        "derived": True,
        "k_generators": gens,
        "hilbert_basis": None,
    }


def gram_to_fractions(gram):
    return [list(row) for row in gram]


def build_all():
    out = []
    for n in (1, 2, 3, 4):
        out.append(build_abelian_so(n))
    for n in (1, 2, 3):
        out.append(build_heisenberg(n))
    out.append(build_line1(4))
    out.append(build_line2(2))
    out.append(build_line2(3))
    out.append(build_line3(2))
    out.append(build_line456(4))
    out.append(build_line456(5))
    out.append(build_line456(6))
    return out


# registry used by normal forms and block-pattern checks


def _complexify_quat(q: em.Quat):
    a, b, c, d = [float(x) for x in q.components()]
    import numpy as np

    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def _quat_matrix_complexified(mat):
    import numpy as np

    n = len(mat)
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = _complexify_quat(mat[i][j])
    return out


def family_w_context(family_tag, params):
    """Numeric description of the w coordinate system of a family."""
    import numpy as np

    n = params["n"]
    if family_tag == "line1":
        exact = _so_matrices(n)
        basis = [np.array([[float(x.re) for x in row] for row in m]) for m in exact]
        return {"tag": family_tag, "n": n, "basis": basis, "scalar_slots": 0}
    if family_tag == "line2":
        exact = _u_matrices(n)
        basis = [
            np.array([[complex(x) for x in row] for row in m]) for m in exact
        ]
        return {"tag": family_tag, "n": n, "basis": basis, "scalar_slots": 0}
    if family_tag == "line3":
        exact = _hs2_matrices(n, traceless=True)
        basis = [_quat_matrix_complexified(m) for m in exact]
        return {"tag": family_tag, "n": n, "basis": basis, "scalar_slots": 3}
    if family_tag in ("line4", "line5", "line6"):
        m = params["m"]
        exact = _lambda2_matrices(m)
        basis = [
            np.array([[complex(x) for x in row] for row in mat]) for mat in exact
        ]
        slots = 0 if family_tag == "line4" else 1
        return {"tag": family_tag, "n": n, "m": m, "basis": basis,
                "scalar_slots": slots}
    raise ValueError(f"no w context for family {family_tag}")


def w_matrix_numeric(ctx, coords, with_scalars=False):
    import numpy as np

    d = len(ctx["basis"])
    mat = np.zeros_like(ctx["basis"][0], dtype=complex)
    for l in range(d):
        mat = mat + float(coords[l]) * ctx["basis"][l]
    if ctx["tag"] == "line1":
        mat = np.real(mat)
    if with_scalars:
        return mat, [float(x) for x in coords[d:]]
    return mat


def w_coords_numeric(ctx, mat, scalars=()):
    """Least-squares coordinates of a numeric matrix in the w basis."""
    import numpy as np

    cols = [b.reshape(-1) for b in ctx["basis"]]
    a = np.column_stack(cols)
    rhs = np.asarray(mat, dtype=complex).reshape(-1)
    areal = np.vstack([np.real(a), np.imag(a)])
    rreal = np.concatenate([np.real(rhs), np.imag(rhs)])
    sol, *_ = np.linalg.lstsq(areal, rreal, rcond=None)
    return list(sol) + [float(s) for s in scalars]


def admissible_patterns(family_tag, params):
    """Block patterns (ps, q) realizable for nonzero t in w0."""
    n = params["n"]
    if family_tag == "line1":
        out = []
        for ps, q in _partitions_with_rest(n, 2):
            if ps:
                out.append((ps, q))
        return out
    if family_tag in ("line2", "line3"):
        # traceless diag with distinct entries: at least two blocks
        return [(ps, 0) for ps, q in _partitions_with_rest(n, 1) if len(ps) >= 2 and q == 0]
    if family_tag in ("line4", "line5"):
        return [(ps, q) for ps, q in _partitions_with_rest(n, 1) if ps]
    if family_tag == "line6":
        return [(ps, q) for ps, q in _partitions_with_rest(n, 1) if ps]
    if family_tag == "heisenberg":
        return [([], 0)]
    raise ValueError(family_tag)


def _partitions_with_rest(total, unit):
    """All (non-increasing part list, rest) with unit*sum(parts) + ... bound."""
    out = []

    def rec(remaining, maxpart, acc):
        out.append((list(acc), remaining))
        for p in range(min(maxpart, remaining), 0, -1):
            rec(remaining - p, p, acc + [p])

    rec(total, total, [])
    # for unit 2 (line1) the rest is n - 2*sum(parts)
    if unit == 2:
        fixed = []
        for ps, rest in out:
            q = total - 2 * sum(ps)
            if q >= 0:
                fixed.append((ps, q))
        seen = set()
        uniq = []
        for ps, q in fixed:
            key = (tuple(ps), q)
            if key not in seen:
                seen.add(key)
                uniq.append((ps, q))
        return uniq
    return out


def expected_block_dims(family_tag, ps, q):
    """Stabilizer and normal-space dimensions from the classification."""
    if family_tag == "line1":
        kt = sum(p * p for p in ps) + q * (q - 1) // 2
        return kt, kt
    if family_tag == "line2":
        kt = sum(p * p for p in ps)
        return kt, kt
    if family_tag == "line3":
        kt = sum(p * (2 * p + 1) for p in ps)
        wt = sum(2 * p * p - p for p in ps) - 1 + 3
        return kt, wt
    if family_tag == "line4":
        kt = sum(p * (2 * p + 1) for p in ps) + (2 * q + 1) ** 2 - 1
        wt = sum(2 * p * p - p for p in ps) + (2 * q + 1) * 2 * q
        return kt, wt
    if family_tag == "line5":
        kt = sum(p * (2 * p + 1) for p in ps) + (2 * q + 1) ** 2
        wt = sum(2 * p * p - p for p in ps) + (2 * q + 1) * 2 * q + 1
        return kt, wt
    if family_tag == "line6":
        kt = sum(p * (2 * p + 1) for p in ps) + ((2 * q) ** 2 - 1 if q else 0)
        wt = sum(2 * p * p - p for p in ps) + (2 * q * (2 * q - 1) + 1 if q else 2)
        return kt, wt
    if family_tag == "heisenberg":
        return None, 1
    raise ValueError(family_tag)


def t_from_blocks(family_tag, params, ps, q, values):
    """Exact w coordinates of t = diag(t_1 block, ..., 0 block)."""
    n = params["n"]
    values = [Fraction(v) for v in values]
    if family_tag == "line1":
        basis = _so_matrices(n)
        mat = em.czeros(n)
        pos = 0
        for p, t in zip(ps, values):
            for a in range(p):
                mat[pos][pos + 1] = QQi(t)
                mat[pos + 1][pos] = QQi(-t)
                pos += 2
        coords = _coords(basis, mat, em.re_trace_pairing)
        return coords
    if family_tag == "line2":
        basis = _u_matrices(n)
        mat = em.czeros(n)
        pos = 0
        for p, t in zip(ps, values):
            for a in range(p):
                mat[pos][pos] = QQi(0, t)
                pos += 1
        return _coords(basis, mat, em.re_trace_pairing)
    if family_tag == "line3":
        basis = _hs2_matrices(n, traceless=True)
        mat = em.qzeros(n)
        pos = 0
        for p, t in zip(ps, values):
            for a in range(p):
                mat[pos][pos] = em.Quat(t)
                pos += 1
        coords = _coords(basis, mat, em.q_re_trace_pairing)
        return list(coords) + [Fraction(0)] * 3
    if family_tag in ("line4", "line5", "line6"):
        m = params["m"]
        basis = _lambda2_matrices(m)
        mat = em.czeros(m)
        pos = 0
        for p, t in zip(ps, values):
            for a in range(p):
                mat[pos][pos + 1] = QQi(t)
                mat[pos + 1][pos] = QQi(-t)
                pos += 2
        coords = list(_coords(basis, mat, em.re_trace_pairing))
        if family_tag != "line4":
            coords.append(Fraction(0))
        return coords
    if family_tag == "heisenberg":
        return [values[0]]
    raise ValueError(family_tag)
