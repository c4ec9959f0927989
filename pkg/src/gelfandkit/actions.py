"""Compact group actions on a step-2 algebra, at the Lie algebra level.

A CompactAction stores generators of k as pairs of matrices (A_v, A_w)
acting by derivations.  Stabilizers, orbit tangents and quotient pairs
are exact rational computations; normal forms use floating-point
eigendecompositions and are family specific.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import (
    CentralReduction,
    StepTwoAlgebra,
    ValidationReport,
    central_reduction,
)


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _fmat(rows):
    return tuple(tuple(_frac(x) for x in r) for r in rows)


def _mat_vec(m, v):
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)


def _mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def _mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(s, a):
    return tuple(tuple(s * x for x in r) for r in a)


def _mat_T(a):
    return tuple(zip(*a))


class CompactAction:
    def __init__(self, algebra: StepTwoAlgebra, k_generators, group_tag="trivial"):
        self.algebra = algebra
        gens = []
        for av, aw in k_generators:
            av = _fmat(av) if av else tuple()
            aw = _fmat(aw) if aw else tuple()
            gens.append((av, aw))
        self.k_generators = tuple(gens)
        self.group_tag = group_tag

    @property
    def dim_k(self):
        return len(self.k_generators)

    def act_w(self, gen_index, t):
        av, aw = self.k_generators[gen_index]
        if not aw:
            return tuple(Fraction(0) for _ in t)
        return _mat_vec(aw, t)

    def __repr__(self):
        return f"CompactAction({self.group_tag}, dim_k={self.dim_k})"


def check_action(action: CompactAction) -> ValidationReport:
    alg = action.algebra
    checks = []
    gv, gw = alg.gram_v, alg.gram_w
    for gi, (av, aw) in enumerate(action.k_generators):
        # skew-adjointness: G A + A^T G = 0 on each factor
        ok_v = not av or _mat_add(
            _mat_mul(gv, av), _mat_mul(_mat_T(av), gv)
        ) == _mat_scale(0, gv)
        ok_w = not aw or _mat_add(
            _mat_mul(gw, aw), _mat_mul(_mat_T(aw), gw)
        ) == _mat_scale(0, gw)
        checks.append((f"gen{gi}_skew_v", bool(ok_v), ""))
        checks.append((f"gen{gi}_skew_w", bool(ok_w), ""))

        # derivation property on all basis pairs
        ok_der = True
        for i in range(alg.dim_v):
            ei = [Fraction(int(a == i)) for a in range(alg.dim_v)]
            aei = _mat_vec(av, ei) if av else ei
            for j in range(alg.dim_v):
                ej = [Fraction(int(a == j)) for a in range(alg.dim_v)]
                aej = _mat_vec(av, ej) if av else ej
                lhs = action.act_w(gi, alg.bracket(ei, ej))
                rhs = tuple(
                    x + y
                    for x, y in zip(alg.bracket(aei, ej), alg.bracket(ei, aej))
                )
                if lhs != rhs:
                    ok_der = False
        checks.append((f"gen{gi}_derivation", ok_der, ""))

    # closure of the generator span under commutators
    if action.dim_k:
        flat = [_flatten_gen(g) for g in action.k_generators]
        base_rank = linalg.rank(flat)
        ok_closure = True
        for a in range(action.dim_k):
            for b in range(a + 1, action.dim_k):
                av = _comm(action.k_generators[a][0], action.k_generators[b][0])
                aw = _comm(action.k_generators[a][1], action.k_generators[b][1])
                ext = flat + [_flatten_gen((av, aw))]
                if linalg.rank(ext) != base_rank:
                    ok_closure = False
        checks.append(("closure", ok_closure, ""))
    return ValidationReport(tuple(checks))


def _comm(a, b):
    if not a or not b:
        return a or b
    return _mat_add(_mat_mul(a, b), _mat_scale(-1, _mat_mul(b, a)))


def _flatten_gen(gen):
    av, aw = gen
    out = [x for row in av for x in row]
    out += [x for row in aw for x in row]
    return out


def fixed_subspace(action: CompactAction):
    """(wcheck basis, w0 basis): joint kernel of the A_w and its complement."""
    alg = action.algebra
    if alg.dim_w == 0:
        return [], []
    rows = []
    for av, aw in action.k_generators:
        rows.extend(list(r) for r in aw)
    wcheck = (
        linalg.nullspace(rows)
        if rows
        else [list(r) for r in _eye(alg.dim_w)]
    )
    if not wcheck:
        return [], [list(r) for r in _eye(alg.dim_w)]
    cons = [
        [
            sum(alg.gram_w[i][j] * vec[i] for i in range(alg.dim_w))
            for j in range(alg.dim_w)
        ]
        for vec in wcheck
    ]
    w0 = linalg.nullspace(cons) if len(wcheck) < alg.dim_w else []
    return wcheck, w0


def _eye(n):
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    )


def _orbit_map_matrix(action: CompactAction, t):
    """Matrix of X -> A_w(X) t: rows indexed by w, columns by generators."""
    cols = [action.act_w(g, t) for g in range(action.dim_k)]
    return [
        [cols[g][i] for g in range(action.dim_k)]
        for i in range(action.algebra.dim_w)
    ]


def stabilizer_subalgebra(action: CompactAction, t):
    """Basis of k_t as coefficient vectors over the stored generators."""
    t = tuple(_frac(x) for x in t)
    if action.dim_k == 0:
        return []
    m = _orbit_map_matrix(action, t)
    return linalg.nullspace(m, ncols=action.dim_k)


def orbit_tangent(action: CompactAction, t):
    """Basis of k.t inside w, in canonical (rref) form."""
    t = tuple(_frac(x) for x in t)
    cols = [list(action.act_w(g, t)) for g in range(action.dim_k)]
    cols = [c for c in cols if any(c)]
    if not cols:
        return []
    red, piv = linalg.rref(cols)
    return [red[r] for r in range(len(piv))]


def materialize(action: CompactAction, coeffs):
    """Linear combination of generators given coefficient vector."""
    alg = action.algebra
    av = tuple(tuple(Fraction(0) for _ in range(alg.dim_v)) for _ in range(alg.dim_v))
    aw = tuple(tuple(Fraction(0) for _ in range(alg.dim_w)) for _ in range(alg.dim_w))
    for c, (gv, gw) in zip(coeffs, action.k_generators):
        if not c:
            continue
        if gv:
            av = _mat_add(av, _mat_scale(c, gv))
        if gw:
            aw = _mat_add(aw, _mat_scale(c, gw))
    return av, aw


@dataclass(frozen=True)
class QuotientPairData:
    base_point: tuple
    stabilizer_coefficients: tuple  # basis of k_t over the ambient generators
    stabilizer_generators: tuple  # materialized (A_v, A_w) pairs on n
    tangent_basis: tuple  # basis of k.t
    normal_basis: tuple  # basis of w_t, rows embedded in w
    reduction: CentralReduction
    quotient_action: "CompactAction"

    @property
    def quotient_algebra(self) -> StepTwoAlgebra:
        return self.reduction.algebra


def quotient_pair(action: CompactAction, t) -> QuotientPairData:
    alg = action.algebra
    t = tuple(_frac(x) for x in t)
    if len(t) != alg.dim_w:
        raise ValueError("t must be a w-vector")
    tangent = orbit_tangent(action, t)
    if not tangent:
        raise ValueError("trivial quotient: t is fixed by the action")
    red = central_reduction(alg, tangent)
    stab = stabilizer_subalgebra(action, t)
    stab_gens = tuple(materialize(action, c) for c in stab)

    # restrict stabilizer generators to v + w_t; the normal space is
    # invariant so coordinates come from the stored projection
    comp = red.complement_basis
    proj = red.projection
    q_gens = []
    for av, aw in stab_gens:
        aw_q = tuple(
            tuple(
                sum(
                    proj[r][i] * sum(aw[i][j] * comp[s][j] for j in range(alg.dim_w))
                    for i in range(alg.dim_w)
                )
                for s in range(len(comp))
            )
            for r in range(len(comp))
        )
        # sanity: A_w must map w_t into itself
        for s in range(len(comp)):
            img = _mat_vec(aw, comp[s]) if aw else None
            if img is not None:
                back = tuple(
                    sum(aw_q[r][s2] * Fraction(int(s2 == s)) for s2 in range(len(comp)))
                    for r in range(len(comp))
                )
                recon = tuple(
                    sum(back[r] * comp[r][j] for r in range(len(comp)))
                    for j in range(alg.dim_w)
                )
                if tuple(img) != recon:
                    raise ValueError("stabilizer does not preserve the normal space")
        q_gens.append((av, aw_q))
    q_action = CompactAction(red.algebra, q_gens, group_tag=f"{action.group_tag}_t")
    return QuotientPairData(
        base_point=t,
        stabilizer_coefficients=tuple(tuple(c) for c in stab),
        stabilizer_generators=stab_gens,
        tangent_basis=tuple(tuple(r) for r in tangent),
        normal_basis=comp,
        reduction=red,
        quotient_action=q_action,
    )


def central_quotient(action: CompactAction, s_basis) -> QuotientPairData:
    """Quotient data for reduction by a central subspace s of w.

    Unlike quotient_pair, the whole group survives: every generator must
    preserve s.  Covers reductions by w-check directions (e.g. the
    Heisenberg center), which quotient_pair rejects as trivial orbits.
    """
    alg = action.algebra
    s_rows = [tuple(_frac(x) for x in row) for row in s_basis]
    red = central_reduction(alg, s_rows)
    comp = red.complement_basis
    proj = red.projection
    q_gens = []
    for av, aw in action.k_generators:
        aw_q = []
        for s in range(len(comp)):
            img = _mat_vec(aw, comp[s]) if aw else tuple(
                Fraction(0) for _ in range(alg.dim_w)
            )
            coords = tuple(
                sum(proj[r][i] * img[i] for i in range(alg.dim_w))
                for r in range(len(comp))
            )
            recon = tuple(
                sum(coords[r] * comp[r][j] for r in range(len(comp)))
                for j in range(alg.dim_w)
            )
            if tuple(img) != recon:
                raise ValueError("action does not preserve the complement of s")
        aw_q = tuple(
            tuple(
                sum(
                    proj[r][i]
                    * sum(
                        (aw[i][j] if aw else Fraction(0)) * comp[s][j]
                        for j in range(alg.dim_w)
                    )
                    for i in range(alg.dim_w)
                )
                for s in range(len(comp))
            )
            for r in range(len(comp))
        )
        q_gens.append((av, aw_q))
    q_action = CompactAction(
        red.algebra, q_gens, group_tag=action.group_tag
    )
    coeffs = tuple(
        tuple(Fraction(int(i == g)) for i in range(action.dim_k))
        for g in range(action.dim_k)
    )
    return QuotientPairData(
        base_point=tuple(Fraction(0) for _ in range(alg.dim_w)),
        stabilizer_coefficients=coeffs,
        stabilizer_generators=tuple(action.k_generators),
        tangent_basis=tuple(s_rows),
        normal_basis=comp,
        reduction=red,
        quotient_action=q_action,
    )


def radialize(action: CompactAction, f, family_tag, params):
    """Invariant extension from canonical representatives: evaluate f at
    the normal form of the argument.  Catalog families only."""

    def g(w):
        t, _, _ = normal_form_coords(family_tag, params, w)
        return f(t)

    return g


# normal forms (floating point, family specific)


def _cluster(values, tol):
    """Group a descending-sorted value list into (value, multiplicity)."""
    blocks = []
    for x in values:
        if blocks and abs(x - blocks[-1][0]) <= tol * max(1.0, abs(blocks[-1][0])):
            v, m = blocks[-1]
            blocks[-1] = ((v * m + x) / (m + 1), m + 1)
        else:
            blocks.append((x, 1))
    return blocks


def normal_form_coords(family_tag, params, w_coords, tol=1e-9):
    """Canonical representative of w under K, in w coordinates.

    Returns (t_coords, block_multiplicities, conjugating_matrix).  The
    conjugating matrix is the family's defining-representation element
    (orthogonal or unitary) with w = U t U^T or U t U*, as appropriate.
    """
    from . import families

    w_coords = [float(x) for x in w_coords]
    if family_tag in ("heisenberg", "abelian"):
        mult = [] if not w_coords else [(w_coords[0], 1)]
        return list(w_coords), mult, np.eye(max(len(w_coords), 0) or 1)

    ctx = families.family_w_context(family_tag, params)
    if family_tag == "line1":
        m = families.w_matrix_numeric(ctx, w_coords)
        return _normal_form_real_skew(ctx, np.real(m), tol)
    if family_tag == "line2":
        m = families.w_matrix_numeric(ctx, w_coords)
        return _normal_form_skew_hermitian(ctx, m, tol)
    if family_tag == "line3":
        m, scalars = families.w_matrix_numeric(ctx, w_coords, with_scalars=True)
        return _normal_form_quaternion_hermitian(ctx, m, scalars, tol)
    if family_tag in ("line4", "line5", "line6"):
        if ctx["scalar_slots"]:
            m, scalars = families.w_matrix_numeric(ctx, w_coords, with_scalars=True)
        else:
            m = families.w_matrix_numeric(ctx, w_coords)
            scalars = []
        return _normal_form_antisymmetric(ctx, m, scalars, tol)
    raise ValueError(f"no normal form procedure for family {family_tag}")


def _coords_numeric(ctx, mat, scalars=()):
    from . import families

    return families.w_coords_numeric(ctx, mat, scalars)


def _normal_form_real_skew(ctx, m, tol):
    import scipy.linalg

    n = m.shape[0]
    tq, q = scipy.linalg.schur(m, output="real")
    angles = []
    i = 0
    pair_cols = []
    zero_cols = []
    while i < n:
        if i + 1 < n and abs(tq[i + 1, i]) > tol * max(1.0, np.abs(tq).max()):
            theta = tq[i, i + 1]
            cols = (q[:, i], q[:, i + 1])
            if theta < 0:
                theta = -theta
                cols = (cols[1], cols[0])
            angles.append(theta)
            pair_cols.append(cols)
            i += 2
        else:
            zero_cols.append(q[:, i])
            i += 1
    order = np.argsort([-a for a in angles], kind="stable")
    angles = [angles[k] for k in order]
    pair_cols = [pair_cols[k] for k in order]
    cols = []
    for a, b in pair_cols:
        cols.extend([a, b])
    cols.extend(zero_cols)
    u = np.column_stack(cols)
    if np.linalg.det(u) < 0:
        # stay inside SO_n: flip the last basis vector; if it belongs to a
        # J block this also flips the sign of the trailing angle
        u[:, -1] = -u[:, -1]
        if not zero_cols and angles:
            angles[-1] = -angles[-1]
    blocks = _cluster(angles, tol)
    q_dim = len(zero_cols)
    canon = np.zeros((n, n))
    i = 0
    for a in angles:
        canon[i, i + 1] = a
        canon[i + 1, i] = -a
        i += 2
    t_coords = _coords_numeric(ctx, canon)
    mults = [(v, mcount) for v, mcount in blocks]
    if q_dim:
        mults.append((0.0, q_dim))
    return t_coords, mults, u


def _normal_form_skew_hermitian(ctx, m, tol):
    h = -1j * np.asarray(m, dtype=complex)
    vals, vecs = np.linalg.eigh(h)
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    u = vecs[:, order]
    blocks = _cluster(list(vals), tol)
    canon = 1j * np.diag(vals)
    t_coords = _coords_numeric(ctx, canon)
    return t_coords, blocks, u


def _normal_form_quaternion_hermitian(ctx, m, scalars, tol):
    """m is the complexified 2p x 2p hermitian matrix of the quaternionic
    part; eigenvalues come in pairs."""
    vals, vecs = np.linalg.eigh(m)
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    u = vecs[:, order]
    # quaternionic eigenvalues: each appears twice
    qvals = vals[::2]
    blocks = _cluster(list(qvals), tol)
    canon = np.diag(np.repeat(qvals, 2)).astype(complex)
    t_coords = _coords_numeric(ctx, canon, scalars)
    return t_coords, blocks, u


def _normal_form_antisymmetric(ctx, m, scalars, tol):
    """Canonical pairing form for a complex antisymmetric matrix:
    w = U diag(theta_1 J, ..., 0) U^T with theta descending."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    h = m @ m.conj().T
    vals, vecs = np.linalg.eigh(h)
    sigma = np.sqrt(np.clip(vals, 0.0, None))
    scale = max(1.0, sigma.max() if n else 1.0)
    used = np.zeros(n, dtype=bool)
    order = np.argsort(-sigma, kind="stable")
    pairs = []
    zero_cols = []
    basis = []

    def _orth(v):
        for b in basis:
            v = v - b * (b.conj() @ v)
        nv = np.linalg.norm(v)
        return v / nv if nv > 1e-12 else None

    for idx in order:
        if used[idx]:
            continue
        s = sigma[idx]
        if s <= tol * scale:
            v = _orth(vecs[:, idx])
            if v is not None:
                zero_cols.append(v)
                basis.append(v)
            used[idx] = True
            continue
        x = _orth(vecs[:, idx])
        if x is None:
            used[idx] = True
            continue
        y = m @ x.conj() / s
        y = _orth(y)
        if y is None:
            used[idx] = True
            continue
        pairs.append((s, y, x))
        basis.append(x)
        basis.append(y)
        used[idx] = True
        # mark the partner eigenvector consumed by y
        for jdx in order:
            if not used[jdx] and abs(sigma[jdx] - s) <= tol * scale:
                overlap = abs(vecs[:, jdx].conj() @ y)
                if overlap > 0.5:
                    used[jdx] = True
                    break
    thetas = [p[0] for p in pairs]
    cols = []
    for s, y, x in pairs:
        cols.extend([y, x])
    cols.extend(zero_cols)
    u = np.column_stack(cols) if cols else np.eye(n, dtype=complex)
    blocks = _cluster(thetas, tol)
    q_dim = len(zero_cols) // 2
    canon = np.zeros((n, n), dtype=complex)
    i = 0
    for t in thetas:
        canon[i, i + 1] = t
        canon[i + 1, i] = -t
        i += 2
    t_coords = _coords_numeric(ctx, canon, scalars)
    mults = list(blocks)
    if q_dim:
        mults.append((0.0, q_dim))
    return t_coords, mults, u
