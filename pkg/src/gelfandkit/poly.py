"""Sparse multivariate polynomials over Gaussian rationals.

Variables are split into a v-block (first nv coordinates) and a w-block
(last nw coordinates); bi-degree bookkeeping refers to this split.
Exponent tuples always have length nv + nw, v-block first.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussrat import QQi, QQI_ONE

_EXACT_POINT_TYPES = (int, Fraction, QQi)


class Polynomial:
    __slots__ = ("nv", "nw", "terms")

    def __init__(self, nv: int, nw: int, terms=None):
        self.nv = nv
        self.nw = nw
        clean = {}
        if terms:
            for expo, coef in terms.items():
                coef = QQi.coerce(coef)
                if coef:
                    if len(expo) != nv + nw:
                        raise ValueError("exponent length mismatch")
                    clean[tuple(expo)] = coef
        self.terms = clean

    # constructors

    @classmethod
    def zero(cls, nv, nw):
        return cls(nv, nw)

    @classmethod
    def constant(cls, nv, nw, c):
        return cls(nv, nw, {(0,) * (nv + nw): QQi.coerce(c)})

    @classmethod
    def variable(cls, nv, nw, index):
        expo = [0] * (nv + nw)
        expo[index] = 1
        return cls(nv, nw, {tuple(expo): QQI_ONE})

    @classmethod
    def v_var(cls, nv, nw, j):
        return cls.variable(nv, nw, j)

    @classmethod
    def w_var(cls, nv, nw, k):
        return cls.variable(nv, nw, nv + k)

    def _compatible(self, other):
        if self.nv != other.nv or self.nw != other.nw:
            raise ValueError("variable split mismatch")

    # ring operations

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nv, self.nw, other)
        self._compatible(other)
        terms = dict(self.terms)
        for expo, coef in other.terms.items():
            s = terms.get(expo, 0) + coef
            if s:
                terms[expo] = s
            else:
                terms.pop(expo, None)
        out = Polynomial(self.nv, self.nw)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial(self.nv, self.nw)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nv, self.nw, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._compatible(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        out = Polynomial(self.nv, self.nw)
        out.terms = terms
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = QQi.coerce(c)
        out = Polynomial(self.nv, self.nw)
        if c:
            out.terms = {e: c * v for e, v in self.terms.items()}
        return out

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.nv, self.nw, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.nv, self.nw) == (other.nv, other.nw) and self.terms == other.terms

    def __hash__(self):
        return hash((self.nv, self.nw, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # calculus and evaluation

    def partial(self, index: int) -> "Polynomial":
        terms = {}
        for expo, coef in self.terms.items():
            k = expo[index]
            if k == 0:
                continue
            e = list(expo)
            e[index] = k - 1
            terms[tuple(e)] = coef * k
        out = Polynomial(self.nv, self.nw)
        out.terms = terms
        return out

    def derivative(self, orders) -> "Polynomial":
        """Mixed partial with multi-index orders over all variables."""
        p = self
        for i, k in enumerate(orders):
            for _ in range(k):
                p = p.partial(i)
                if p.is_zero():
                    return p
        return p

    def evaluate(self, point):
        """Evaluate at a point (length nv + nw).

        Exact inputs (int / Fraction / QQi) give a QQi result; anything
        else is computed in complex floating point.
        """
        if len(point) != self.nv + self.nw:
            raise ValueError("point length mismatch")
        exact = all(isinstance(x, _EXACT_POINT_TYPES) for x in point)
        if exact:
            vals = [QQi.coerce(x) for x in point]
            total = QQi(0)
            for expo, coef in self.terms.items():
                term = coef
                for x, k in zip(vals, expo):
                    if k:
                        term = term * x**k
                total = total + term
            return total
        vals = [complex(x) for x in point]
        total = 0j
        for expo, coef in self.terms.items():
            term = complex(coef)
            for x, k in zip(vals, expo):
                if k:
                    term *= x**k
            total += term
        return total

    def substitute(self, images) -> "Polynomial":
        """Substitute each variable by a polynomial (all over one split)."""
        if len(images) != self.nv + self.nw:
            raise ValueError("need an image per variable")
        nv, nw = images[0].nv, images[0].nw
        out = Polynomial.zero(nv, nw)
        for expo, coef in self.terms.items():
            term = Polynomial.constant(nv, nw, coef)
            for img, k in zip(images, expo):
                if k:
                    term = term * img**k
            out = out + term
        return out

    def conjugate(self) -> "Polynomial":
        """Conjugate the coefficients (variables are treated as real)."""
        out = Polynomial(self.nv, self.nw)
        out.terms = {e: c.conjugate() for e, c in self.terms.items()}
        return out

    # grading

    def bidegrees(self):
        return {
            (sum(e[: self.nv]), sum(e[self.nv :])) for e in self.terms
        }

    def bidegree(self):
        """Bi-degree of a bi-homogeneous polynomial, else ValueError."""
        degs = self.bidegrees()
        if not degs:
            return (0, 0)
        if len(degs) > 1:
            raise ValueError("not bi-homogeneous")
        return degs.pop()

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def v_degree(self) -> int:
        return max((sum(e[: self.nv]) for e in self.terms), default=0)

    def w_degree(self) -> int:
        return max((sum(e[self.nv :]) for e in self.terms), default=0)

    def sorted_terms(self):
        """Graded-lex order, highest degree first, v-block before w."""
        return sorted(
            self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0]))
        )

    # serialization

    def to_json(self):
        return [
            {"exponents": list(e), "re": str(c.re), "im": str(c.im)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, nv, nw, data):
        terms = {
            tuple(t["exponents"]): QQi(Fraction(t["re"]), Fraction(t.get("im", "0")))
            for t in data
        }
        return cls(nv, nw, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for expo, coef in self.sorted_terms():
            names = []
            for i, k in enumerate(expo):
                if not k:
                    continue
                base = f"v{i + 1}" if i < self.nv else f"w{i - self.nv + 1}"
                names.append(base if k == 1 else f"{base}^{k}")
            mono = "*".join(names) or "1"
            bits.append(f"{coef!r}*{mono}")
        return " + ".join(bits)
