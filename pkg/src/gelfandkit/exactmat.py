"""Exact complex and quaternionic matrix scratchpad.

Used by the catalog builders to turn matrix formulas (brackets, group
generators) into rational structure constants.  Complex matrices have
QQi entries; quaternionic ones have Quat entries.  Nothing here is
performance critical.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussrat import QQi, QQI_ONE, QQI_I


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


# complex matrices (lists of lists of QQi)


def czeros(n, m=None):
    m = n if m is None else m
    return [[QQi(0) for _ in range(m)] for _ in range(n)]


def ceye(n):
    out = czeros(n)
    for i in range(n):
        out[i][i] = QQI_ONE
    return out


def cE(n, j, k, scalar=QQI_ONE):
    out = czeros(n)
    out[j][k] = QQi.coerce(scalar)
    return out


def cadd(*ms):
    n, m = len(ms[0]), len(ms[0][0])
    out = czeros(n, m)
    for mat in ms:
        for i in range(n):
            for j in range(m):
                out[i][j] = out[i][j] + mat[i][j]
    return out


def cscale(s, mat):
    s = QQi.coerce(s)
    return [[s * x for x in row] for row in mat]

def cmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = czeros(n, m)
    for i in range(n):
        for t in range(k):
            x = a[i][t]
            if not x:
                continue
            for j in range(m):
                if b[t][j]:
                    out[i][j] = out[i][j] + x * b[t][j]
    return out


def ctranspose(mat):
    return [list(col) for col in zip(*mat)]


def cconjtrans(mat):
    return [[x.conjugate() for x in col] for col in zip(*mat)]


def ctrace(mat):
    t = QQi(0)
    for i in range(len(mat)):
        t = t + mat[i][i]
    return t


def ccommutator(a, b):
    return cadd(cmul(a, b), cscale(-1, cmul(b, a)))


def re_trace_pairing(a, b):
    """Re tr(a* b), the real invariant pairing."""
    return ctrace(cmul(cconjtrans(a), b)).re


def realify_complex_matrix(mat):
    """2n x 2n rational matrix of z -> M z, coords (x1, y1, x2, y2, ...)."""
    n = len(mat)
    out = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for j in range(n):
        for k in range(n):
            a, b = mat[j][k].re, mat[j][k].im
            out[2 * j][2 * k] = a
            out[2 * j][2 * k + 1] = -b
            out[2 * j + 1][2 * k] = b
            out[2 * j + 1][2 * k + 1] = a
    return out


def complex_unit_vector(n, real_index):
    """Complex column for the real coordinate x_j (even) or y_j (odd)."""
    j, s = divmod(real_index, 2)
    vec = [QQi(0)] * n
    vec[j] = QQI_ONE if s == 0 else QQI_I
    return vec


# quaternions over the rationals


class Quat:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a, self.b, self.c, self.d = _frac(a), _frac(b), _frac(c), _frac(d)

    UNITS = ("1", "i", "j", "k")

    @staticmethod
    def unit(s):
        return Quat(*[int(s == u) for u in Quat.UNITS])

    def __add__(self, other):
        return Quat(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d
        )

    def __neg__(self):
        return Quat(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = _frac(other)
            return Quat(self.a * f, self.b * f, self.c * f, self.d * f)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quat(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def conjugate(self):
        return Quat(self.a, -self.b, -self.c, -self.d)

    def re(self):
        return self.a

    def components(self):
        return (self.a, self.b, self.c, self.d)

    def is_zero(self):
        return not (self.a or self.b or self.c or self.d)

    def __eq__(self, other):
        return self.components() == other.components()

    def __repr__(self):
        return f"Quat{self.components()}"


def left_mult_matrix(q: Quat):
    """Real 4x4 matrix of p -> q p in coords (a, b, c, d)."""
    cols = []
    for s in Quat.UNITS:
        cols.append((q * Quat.unit(s)).components())
    return [[cols[j][i] for j in range(4)] for i in range(4)]


def qzeros(n, m=None):
    m = n if m is None else m
    return [[Quat() for _ in range(m)] for _ in range(n)]


def qadd(*ms):
    n, m = len(ms[0]), len(ms[0][0])
    out = qzeros(n, m)
    for mat in ms:
        for i in range(n):
            for j in range(m):
                out[i][j] = out[i][j] + mat[i][j]
    return out


def qscale(f, mat):
    return [[x * f for x in row] for row in mat]


def qmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = qzeros(n, m)
    for i in range(n):
        for t in range(k):
            x = a[i][t]
            if x.is_zero():
                continue
            for j in range(m):
                if not b[t][j].is_zero():
                    out[i][j] = out[i][j] + x * b[t][j]
    return out


def qconjtrans(mat):
    return [[x.conjugate() for x in col] for col in zip(*mat)]


def qtrace(mat):
    t = Quat()
    for i in range(len(mat)):
        t = t + mat[i][i]
    return t


def q_re_trace_pairing(a, b):
    """Re tr(a* b)."""
    return qtrace(qmul(qconjtrans(a), b)).re()


def realify_quaternion_matrix(mat):
    """4n x 4n rational matrix of v -> M v, coords (a1, b1, c1, d1, ...)."""
    n = len(mat)
    out = [[Fraction(0)] * (4 * n) for _ in range(4 * n)]
    for j in range(n):
        for k in range(n):
            block = left_mult_matrix(mat[j][k])
            for r in range(4):
                for c in range(4):
                    out[4 * j + r][4 * k + c] = block[r][c]
    return out


def quaternion_unit_vector(n, real_index):
    """Quaternionic column for real coordinate index in (a1, b1, c1, d1, ...)."""
    j, s = divmod(real_index, 4)
    vec = [Quat() for _ in range(n)]
    vec[j] = Quat.unit(Quat.UNITS[s])
    return vec
