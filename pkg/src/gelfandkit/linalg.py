"""Exact linear algebra helpers.

Two layers:

* generic dense routines (rref, rank, nullspace, linear solve) that work
  over any exact field element supporting +, -, *, / and truthiness; used
  with Fraction and QQi entries,
* a fast modular path for large rational matrices: nullspace mod a big
  prime with rational reconstruction of the result.  Candidates from the
  modular path must be verified exactly by the caller; the dimension
  argument (modular nullity >= rational nullity, while exactly verified
  independent null vectors bound it from below) then makes the final
  answer exact, not heuristic.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_PRIMES = (2147483647, 2147483629, 2147483587)


# generic exact routines


def rref(rows):
    """Reduced row echelon form, in place on a copied matrix.

    Returns (matrix, pivot_columns).
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of the right nullspace, one vector per free column.

    Each basis vector has entry 1 at its free column, so the result is in
    a canonical (rref) form.
    """
    if rows:
        ncols = len(rows[0])
    if ncols is None:
        raise ValueError("ncols required for an empty matrix")
    if not rows:
        return [_unit(ncols, j) for j in range(ncols)]
    m, pivots = rref(rows)
    one = _one_like(rows[0][0])
    piv_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in piv_set:
            continue
        vec = [one * 0 for _ in range(ncols)]
        vec[free] = one
        for r, c in enumerate(pivots):
            vec[c] = -m[r][free]
        basis.append(vec)
    return basis


def solve(rows, rhs):
    """One exact solution of A x = b, or None if inconsistent.

    Free variables are set to zero, pivots taken greedily from the left,
    so with columns pre-sorted the answer is the canonical minimal one.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    m, pivots = rref(aug)
    for r in range(len(pivots), len(m)):
        if m[r][ncols]:
            return None
    if pivots and pivots[-1] == ncols:
        return None
    zero = _zero_like(rhs[0]) if rhs else Fraction(0)
    x = [zero for _ in range(ncols)]
    for r, c in enumerate(pivots):
        x[c] = m[r][ncols]
    return x


def _one_like(x):
    return x / x if x else Fraction(1)


def _zero_like(x):
    return x * 0


def _unit(n, j):
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v


# modular fast path for rational matrices


def _to_modp(rows, p):
    num = np.empty((len(rows), len(rows[0])), dtype=np.int64)
    for i, row in enumerate(rows):
        num[i] = [
            (x.numerator * pow(x.denominator, -1, p)) % p if x else 0 for x in row
        ]
    return num


def _modp_echelon(m, p):
    """Row echelon form mod p. Returns (matrix, pivot_columns)."""
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        below = m[r + 1 :, c]
        mask = below != 0
        if mask.any():
            m[r + 1 :][mask] = (m[r + 1 :][mask] - np.outer(below[mask], m[r])) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def modp_rank(rows, p=_PRIMES[0]) -> int:
    if not rows:
        return 0
    return len(_modp_echelon(_to_modp(rows, p), p)[1])


def _back_substitute(m, pivots, p):
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        above = m[:r, c]
        mask = above != 0
        if mask.any():
            m[:r][mask] = (m[:r][mask] - np.outer(above[mask], m[r])) % p
    return m


def _rational_reconstruct(a, p):
    """Find n/d = a (mod p) with |n|, d <= sqrt(p/2), or None."""
    if a == 0:
        return Fraction(0)
    bound = int((p // 2) ** 0.5)
    r0, r1 = p, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if abs(s1) > bound or s1 == 0:
        return None
    return Fraction(r1, s1)


def modp_nullspace_candidate(rows, ncols=None, p=_PRIMES[0]):
    """Rational nullspace basis candidate via arithmetic mod p.

    Returns a list of Fraction vectors in the same canonical form as
    nullspace(), or None when rational reconstruction fails (caller
    should retry with another prime).  Entries are reconstructed, not
    proven; verify exactness on the original matrix.
    """
    if rows:
        ncols = len(rows[0])
    if not rows:
        return [_unit(ncols, j) for j in range(ncols)]
    m = _to_modp(rows, p)
    m, pivots = _modp_echelon(m, p)
    m = _back_substitute(m[: len(pivots)], pivots, p)
    piv_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in piv_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        ok = True
        for r, c in enumerate(pivots):
            val = _rational_reconstruct(int((-m[r, free]) % p), p)
            if val is None:
                ok = False
                break
            vec[c] = val
        if not ok:
            return None
        basis.append(vec)
    return basis


def alternative_primes():
    return _PRIMES[1:]
