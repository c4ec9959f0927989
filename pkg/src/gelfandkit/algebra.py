"""Step-2 nilpotent Lie algebras and their groups in exponential coordinates.

An algebra is a direct sum n = v + w with bracket v x v -> w given by a
rational structure tensor; w is central.  Group elements are pairs (v, w)
and multiply by the truncated Baker-Campbell-Hausdorff product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _fvec(xs):
    return tuple(_frac(x) for x in xs)


def identity_gram(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple = ()  # tuple of (name, ok: bool, detail: str)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(name, detail) for name, ok, detail in self.checks if not ok]

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [
                {"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks
            ],
        }


class StepTwoAlgebra:
    """Immutable container for dims, structure constants and Gram data."""

    def __init__(
        self,
        dim_v,
        dim_w,
        structure_constants,
        gram_v=None,
        gram_w=None,
        derived=False,
        name="",
    ):
        if dim_v < 1 or dim_w < 0:
            raise ValueError("bad dimensions")
        self.dim_v = dim_v
        self.dim_w = dim_w
        self.c = tuple(
            tuple(_fvec(structure_constants[i][j]) for j in range(dim_v))
            for i in range(dim_v)
        )
        self.gram_v = tuple(_fvec(r) for r in (gram_v or identity_gram(dim_v)))
        self.gram_w = tuple(_fvec(r) for r in (gram_w or identity_gram(dim_w)))
        self.derived = derived
        self.name = name

    def bracket(self, a, b):
        """[a, b] in w coordinates, for v-vectors a, b."""
        out = [Fraction(0)] * self.dim_w
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                row = self.c[i][j]
                f = _frac(ai) * _frac(bj)
                for k in range(self.dim_w):
                    if row[k]:
                        out[k] += f * row[k]
        return tuple(out)

    def inner_v(self, a, b):
        return _dot_gram(self.gram_v, a, b)

    def inner_w(self, a, b):
        return _dot_gram(self.gram_w, a, b)

    def zero(self) -> "GroupElement":
        return GroupElement((Fraction(0),) * self.dim_v, (Fraction(0),) * self.dim_w)

    def basis_v(self, j) -> "GroupElement":
        v = [Fraction(0)] * self.dim_v
        v[j] = Fraction(1)
        return GroupElement(tuple(v), (Fraction(0),) * self.dim_w)

    def basis_w(self, k) -> "GroupElement":
        w = [Fraction(0)] * self.dim_w
        w[k] = Fraction(1)
        return GroupElement((Fraction(0),) * self.dim_v, tuple(w))

    def __repr__(self):
        tag = self.name or "step2"
        return f"StepTwoAlgebra({tag}, dim_v={self.dim_v}, dim_w={self.dim_w})"


def _dot_gram(gram, a, b):
    total = Fraction(0)
    for i, ai in enumerate(a):
        if not ai:
            continue
        row = gram[i]
        for j, bj in enumerate(b):
            if bj and row[j]:
                total += _frac(ai) * row[j] * _frac(bj)
    return total


@dataclass(frozen=True)
class GroupElement:
    v_part: tuple
    w_part: tuple
    exact: bool = True

    @staticmethod
    def make(v, w):
        return GroupElement(_fvec(v), _fvec(w))

    def __iter__(self):
        yield self.v_part
        yield self.w_part


def _check_dims(alg, x):
    if len(x.v_part) != alg.dim_v or len(x.w_part) != alg.dim_w:
        raise ValueError("element does not match algebra dimensions")


def bch_multiply(alg: StepTwoAlgebra, x: GroupElement, y: GroupElement) -> GroupElement:
    """Group product (v+v', w+w'+[v,v']/2)."""
    _check_dims(alg, x)
    _check_dims(alg, y)
    if x.exact and y.exact:
        v = tuple(a + b for a, b in zip(x.v_part, y.v_part))
        br = alg.bracket(x.v_part, y.v_part)
        w = tuple(a + b + Fraction(1, 2) * c for a, b, c in zip(x.w_part, y.w_part, br))
        return GroupElement(v, w)
    v = tuple(float(a) + float(b) for a, b in zip(x.v_part, y.v_part))
    br = alg.bracket(x.v_part, y.v_part)
    w = tuple(
        float(a) + float(b) + 0.5 * float(c)
        for a, b, c in zip(x.w_part, y.w_part, br)
    )
    return GroupElement(v, w, exact=False)


def group_inverse(alg: StepTwoAlgebra, x: GroupElement) -> GroupElement:
    _check_dims(alg, x)
    return GroupElement(
        tuple(-a for a in x.v_part), tuple(-a for a in x.w_part), exact=x.exact
    )


def _rational_sqrt(d: Fraction):
    num, den = d.numerator, d.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def dilate(alg: StepTwoAlgebra, delta, x: GroupElement) -> GroupElement:
    """Group dilation (v, w) -> (delta^(1/2) v, delta w)."""
    _check_dims(alg, x)
    if isinstance(delta, (int, Fraction)):
        delta = _frac(delta)
        if delta <= 0:
            raise ValueError("dilation parameter must be positive")
        root = _rational_sqrt(delta)
        if root is not None and x.exact:
            return GroupElement(
                tuple(root * a for a in x.v_part),
                tuple(delta * a for a in x.w_part),
            )
        delta = float(delta)
    if delta <= 0:
        raise ValueError("dilation parameter must be positive")
    root = math.sqrt(delta)
    return GroupElement(
        tuple(root * float(a) for a in x.v_part),
        tuple(delta * float(a) for a in x.w_part),
        exact=False,
    )


def direct_product(a: StepTwoAlgebra, b: StepTwoAlgebra) -> StepTwoAlgebra:
    nv, nw = a.dim_v + b.dim_v, a.dim_w + b.dim_w
    c = [[[Fraction(0)] * nw for _ in range(nv)] for _ in range(nv)]
    for i in range(a.dim_v):
        for j in range(a.dim_v):
            for k in range(a.dim_w):
                c[i][j][k] = a.c[i][j][k]
    for i in range(b.dim_v):
        for j in range(b.dim_v):
            for k in range(b.dim_w):
                c[a.dim_v + i][a.dim_v + j][a.dim_w + k] = b.c[i][j][k]
    gv = _block_diag(a.gram_v, b.gram_v)
    gw = _block_diag(a.gram_w, b.gram_w)
    name = f"{a.name}x{b.name}" if a.name and b.name else ""
    return StepTwoAlgebra(
        nv, nw, c, gv, gw, derived=a.derived and b.derived, name=name
    )


def _block_diag(m1, m2):
    n1, n2 = len(m1), len(m2)
    out = [[Fraction(0)] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            out[i][j] = m1[i][j]
    for i in range(n2):
        for j in range(n2):
            out[n1 + i][n1 + j] = m2[i][j]
    return out


class CentralReduction(NamedTuple):
    algebra: StepTwoAlgebra
    projection: tuple  # rows: coordinates on the complement, columns: ambient w
    complement_basis: tuple  # rows: basis vectors of the orthogonal complement


def central_reduction(alg: StepTwoAlgebra, s_basis) -> CentralReduction:
    """Quotient by a central subspace s: new algebra on v + s-perp.

    The bracket is followed by the Gram-orthogonal projection onto the
    complement of s in w.  Returns the reduced algebra together with the
    coordinate projection matrix and the embedded complement basis.
    """
    from . import linalg

    s_rows = [_fvec(s) for s in s_basis]
    if not s_rows:
        raise ValueError("empty central subspace")
    if any(len(s) != alg.dim_w for s in s_rows):
        raise ValueError("basis vectors must live in w")
    if linalg.rank(s_rows) != len(s_rows):
        raise ValueError("central subspace basis is dependent")

    # x in s-perp iff (s_i)^T Gw x = 0 for all i
    constraint = [
        [_dot_gram(alg.gram_w, s, _unit(alg.dim_w, j)) for j in range(alg.dim_w)]
        for s in s_rows
    ]
    comp = linalg.nullspace(constraint)
    dim_new = len(comp)

    # projection onto s-perp along s: invert the change of basis [s | comp]
    cols = s_rows + comp
    m = [[cols[c][r] for c in range(alg.dim_w)] for r in range(alg.dim_w)]
    aug = [row + _unit(alg.dim_w, r) for r, row in enumerate(m)]
    red, piv = linalg.rref(aug)
    if len(piv) != alg.dim_w:
        raise ValueError("degenerate basis assembly")
    inv = [row[alg.dim_w :] for row in red]
    proj = tuple(tuple(inv[len(s_rows) + m_][j] for j in range(alg.dim_w))
                 for m_ in range(dim_new))

    c_new = [
        [
            [
                sum(proj[k][t] * alg.c[i][j][t] for t in range(alg.dim_w))
                for k in range(dim_new)
            ]
            for j in range(alg.dim_v)
        ]
        for i in range(alg.dim_v)
    ]
    gw_new = [
        [_dot_gram(alg.gram_w, comp[i], comp[j]) for j in range(dim_new)]
        for i in range(dim_new)
    ]
    reduced = StepTwoAlgebra(
        alg.dim_v,
        dim_new,
        c_new,
        [list(r) for r in alg.gram_v],
        gw_new,
        derived=False,
        name=f"{alg.name}/s" if alg.name else "",
    )
    return CentralReduction(reduced, proj, tuple(tuple(r) for r in comp))


def _unit(n, j):
    row = [Fraction(0)] * n
    row[j] = Fraction(1)
    return row


def _is_spd(gram) -> bool:
    n = len(gram)
    for i in range(n):
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                return False
    # Sylvester: all leading principal minors positive, by exact elimination
    m = [list(row) for row in gram]
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


def validate_algebra(alg: StepTwoAlgebra) -> ValidationReport:
    from . import linalg

    checks = []
    anti_ok, anti_detail = True, ""
    for i in range(alg.dim_v):
        for j in range(alg.dim_v):
            for k in range(alg.dim_w):
                if alg.c[i][j][k] != -alg.c[j][i][k]:
                    anti_ok = False
                    anti_detail = f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]"
    checks.append(("antisymmetry", anti_ok, anti_detail))

    checks.append(("gram_v_spd", _is_spd(alg.gram_v), ""))
    checks.append(("gram_w_spd", _is_spd(alg.gram_w), ""))

    if alg.derived and alg.dim_w > 0:
        rows = [
            list(alg.c[i][j])
            for i in range(alg.dim_v)
            for j in range(i + 1, alg.dim_v)
        ]
        span_ok = bool(rows) and linalg.rank(rows) == alg.dim_w
        checks.append(
            ("derived_span", span_ok, "" if span_ok else "brackets do not span w")
        )
    return ValidationReport(tuple(checks))
