"""Left-invariant differential operators on a step-2 group.

Operators are kept in normal-ordered form: a sum of terms

    p(v) * d_v^alpha * d_w^beta

with the polynomial coefficient on the left.  On a step-2 group the
coefficients of left-invariant operators only involve v, and the w
derivatives are central, so this normal form is unique and composition
reduces to a Leibniz expansion in the v block.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import StepTwoAlgebra, central_reduction
from .gaussrat import QQi
from .invariants import restrict
from .poly import Polynomial


class InvariantOperator:
    __slots__ = ("algebra", "terms", "symbol")

    def __init__(self, algebra: StepTwoAlgebra, terms=None, symbol=None):
        self.algebra = algebra
        nv, nw = algebra.dim_v, algebra.dim_w
        clean = {}
        if terms:
            for (alpha, beta), coef in terms.items():
                if len(alpha) != nv or len(beta) != nw:
                    raise ValueError("multi-index length mismatch")
                if coef.nv != nv or coef.nw != nw:
                    raise ValueError("coefficient split mismatch")
                if coef.w_degree() > 0:
                    raise ValueError("coefficients must depend on v only")
                if coef:
                    clean[(tuple(alpha), tuple(beta))] = coef
        self.terms = clean
        self.symbol = symbol

    @classmethod
    def zero(cls, algebra):
        return cls(algebra)

    @classmethod
    def identity(cls, algebra):
        nv, nw = algebra.dim_v, algebra.dim_w
        one = Polynomial.constant(nv, nw, 1)
        return cls(algebra, {((0,) * nv, (0,) * nw): one})

    def _compatible(self, other):
        if self.algebra is not other.algebra and (
            self.algebra.dim_v != other.algebra.dim_v
            or self.algebra.dim_w != other.algebra.dim_w
            or self.algebra.c != other.algebra.c
        ):
            raise ValueError("operators live on different algebras")

    def __add__(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for key, coef in other.terms.items():
            s = terms.get(key)
            s = coef if s is None else s + coef
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        out = InvariantOperator(self.algebra)
        out.terms = terms
        return out

    def __neg__(self):
        out = InvariantOperator(self.algebra)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = QQi.coerce(c)
        out = InvariantOperator(self.algebra)
        if c:
            out.terms = {k: p.scale(c) for k, p in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, InvariantOperator):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, InvariantOperator):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def order(self):
        return max(
            (sum(a) + sum(b) for a, b in self.terms), default=0
        )

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (-(sum(kv[0][0]) + sum(kv[0][1])), kv[0]),
        )

    def to_json(self):
        return [
            {"alpha": list(a), "beta": list(b), "coefficient": p.to_json()}
            for (a, b), p in self.sorted_terms()
        ]

    def __repr__(self):
        if not self.terms:
            return "0"
        nv = self.algebra.dim_v
        bits = []
        for (a, b), p in self.sorted_terms():
            ds = []
            for i, k in enumerate(a):
                if k:
                    ds.append(f"dv{i + 1}" + (f"^{k}" if k > 1 else ""))
            for i, k in enumerate(b):
                if k:
                    ds.append(f"dw{i + 1}" + (f"^{k}" if k > 1 else ""))
            bits.append(f"({p!r})" + ("*" + "*".join(ds) if ds else ""))
        return " + ".join(bits)


def left_invariant_field(alg: StepTwoAlgebra, v0) -> InvariantOperator:
    """X_{v0}: equals the v0-directional derivative at the identity."""
    nv, nw = alg.dim_v, alg.dim_w
    v0 = [Fraction(x) for x in v0]
    terms = {}
    for j, c in enumerate(v0):
        if not c:
            continue
        alpha = [0] * nv
        alpha[j] = 1
        key = (tuple(alpha), (0,) * nw)
        coef = Polynomial.constant(nv, nw, c)
        terms[key] = terms.get(key, Polynomial.zero(nv, nw)) + coef
    # BCH correction: one half of [v, v0] in w coordinates
    for k in range(nw):
        coef = Polynomial.zero(nv, nw)
        for i in range(nv):
            total = Fraction(0)
            for j, c in enumerate(v0):
                if c:
                    total += c * alg.c[i][j][k]
            if total:
                coef = coef + Polynomial.v_var(nv, nw, i).scale(total / 2)
        if coef:
            beta = [0] * nw
            beta[k] = 1
            key = ((0,) * nv, tuple(beta))
            terms[key] = terms.get(key, Polynomial.zero(nv, nw)) + coef
    out = InvariantOperator(alg)
    out.terms = {k: p for k, p in terms.items() if p}
    return out


def _frozen_mul(f1, f2, nv, nw):
    """Product of frozen-coefficient operators: no Leibniz action."""
    out = {}
    for (a1, b1), p1 in f1.items():
        for (a2, b2), p2 in f2.items():
            key = (
                tuple(x + y for x, y in zip(a1, a2)),
                tuple(x + y for x, y in zip(b1, b2)),
            )
            prod = p1 * p2
            s = out.get(key)
            s = prod if s is None else s + prod
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def symmetrize(alg: StepTwoAlgebra, p: Polynomial) -> InvariantOperator:
    """Modified symmetrization: polynomial symbol to invariant operator.

    Each monomial v^alpha w^beta maps to the frozen-coefficient product
    of the corresponding left-invariant fields and central derivatives,
    scaled by i^-(|alpha|+|beta|).  The frozen product multiplies the
    polynomial coefficients without differentiating them, which is what
    repeated directional differentiation of f((v,w)(v',w')) at the
    origin produces.
    """
    nv, nw = alg.dim_v, alg.dim_w
    if p.nv != nv or p.nw != nw:
        raise ValueError("symbol split mismatch")
    # gradient components in non-orthonormal coordinates carry the
    # inverse Gram: substituting v_j or w_k means the j-th or k-th
    # coordinate of the gradient vector, not the bare partial
    gv_inv = _invert(alg.gram_v)
    gw_inv = _invert(alg.gram_w)
    fields = [left_invariant_field(alg, _unit(nv, j)).terms for j in range(nv)]
    vfactors = []
    for j in range(nv):
        fac = {}
        for l in range(nv):
            if gv_inv[j][l]:
                for key, poly in fields[l].items():
                    s = fac.get(key)
                    t = poly.scale(gv_inv[j][l])
                    fac[key] = t if s is None else s + t
        vfactors.append({k: q for k, q in fac.items() if q})
    wfactors = []
    for k in range(nw):
        fac = {}
        for l in range(nw):
            if gw_inv[k][l]:
                beta = [0] * nw
                beta[l] = 1
                fac[((0,) * nv, tuple(beta))] = Polynomial.constant(
                    nv, nw, gw_inv[k][l]
                )
        wfactors.append(fac)
    total = {}
    for expo, coef in p.terms.items():
        frozen = {((0,) * nv, (0,) * nw): Polynomial.constant(nv, nw, 1)}
        for j in range(nv):
            for _ in range(expo[j]):
                frozen = _frozen_mul(frozen, vfactors[j], nv, nw)
        for k in range(nw):
            for _ in range(expo[nv + k]):
                frozen = _frozen_mul(frozen, wfactors[k], nv, nw)
        scale = coef * _inv_i_power(sum(expo))
        for key, poly in frozen.items():
            term = poly.scale(scale)
            s = total.get(key)
            s = term if s is None else s + term
            if s:
                total[key] = s
            else:
                total.pop(key, None)
    out = InvariantOperator(alg, symbol=p)
    out.terms = total
    return out


def _inv_i_power(d):
    return (QQi(0, -1)) ** (d % 4)


def _invert(gram):
    """Exact inverse of a symmetric positive matrix of Fractions."""
    n = len(gram)
    aug = [
        list(row) + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(gram)
    ]
    from .linalg import rref

    m, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("gram matrix is singular")
    return [row[n:] for row in m[:n]]


def _unit(n, j):
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v


def unsymmetrize(a: InvariantOperator) -> Polynomial:
    """Exact inverse of symmetrize.

    The symmetrization of a degree-m monomial only produces terms with m
    derivatives, and the term with the full v-derivative multi-index has
    a constant coefficient; so within each graded piece the map is
    triangular in the v-derivative count and can be peeled off from the
    top.  Raises if the operator is not a symmetrized polynomial.
    """
    alg = a.algebra
    nv, nw = alg.dim_v, alg.dim_w
    symbol = Polynomial.zero(nv, nw)
    work = a
    guard = 0
    while not work.is_zero():
        guard += 1
        if guard > 10000:
            raise ValueError("operator is not in the symmetrized image")
        m = work.order()
        top = [
            (key, p)
            for key, p in work.terms.items()
            if sum(key[0]) + sum(key[1]) == m
        ]
        alpha, beta = max((k for k, _ in top), key=lambda k: (sum(k[0]), k))
        coef_poly = work.terms[(alpha, beta)]
        const_key = (0,) * (nv + nw)
        coef = coef_poly.terms.get(const_key)
        if coef is None or len(coef_poly.terms) != 1:
            raise ValueError("operator is not in the symmetrized image")
        # invert the Gram raising and the i^-m factor on this monomial
        mono = Polynomial(nv, nw, {tuple(alpha) + tuple(beta): coef})
        gv = _gram_poly_map(alg.gram_v, nv, nw, v_block=True)
        gw = _gram_poly_map(alg.gram_w, nv, nw, v_block=False)
        raised = _substitute_linear(mono, gv + gw)
        piece = raised.scale(QQi(0, 1) ** (m % 4))
        symbol = symbol + piece
        work = work - symmetrize(alg, piece)
    out = symbol
    return out


def _gram_poly_map(gram, nv, nw, v_block):
    """Images x_a -> sum_b G[a][b] x_b inside the right variable block."""
    n = len(gram)
    off = 0 if v_block else nv
    out = []
    for a in range(n):
        img = Polynomial.zero(nv, nw)
        for b in range(n):
            if gram[a][b]:
                img = img + Polynomial.variable(nv, nw, off + b).scale(
                    gram[a][b]
                )
        out.append(img)
    return out


def _substitute_linear(p, images):
    return p.substitute(images)


def compose(a: InvariantOperator, b: InvariantOperator) -> InvariantOperator:
    """Normal-ordered product ab via the Leibniz rule in the v block."""
    a._compatible(b)
    alg = a.algebra
    nv, nw = alg.dim_v, alg.dim_w
    total = {}
    for (alpha, beta), p in a.terms.items():
        for (gamma, delta), q in b.terms.items():
            for mu in _sub_multi_indices(alpha):
                dq = q.derivative(mu + (0,) * nw)
                if dq.is_zero():
                    continue
                binom = 1
                for x, y in zip(alpha, mu):
                    binom *= comb(x, y)
                key = (
                    tuple(x - y + z for x, y, z in zip(alpha, mu, gamma)),
                    tuple(x + y for x, y in zip(beta, delta)),
                )
                term = (p * dq).scale(binom)
                s = total.get(key)
                s = term if s is None else s + term
                if s:
                    total[key] = s
                else:
                    total.pop(key, None)
    out = InvariantOperator(alg)
    out.terms = total
    return out


def _sub_multi_indices(alpha):
    out = [()]
    for a in alpha:
        out = [m + (k,) for m in out for k in range(a + 1)]
    return out


def commutator(a: InvariantOperator, b: InvariantOperator) -> InvariantOperator:
    return compose(a, b) - compose(b, a)


def apply_to_polynomial(a: InvariantOperator, q: Polynomial) -> Polynomial:
    alg = a.algebra
    nv, nw = alg.dim_v, alg.dim_w
    if q.nv != nv or q.nw != nw:
        raise ValueError("polynomial split mismatch")
    out = Polynomial.zero(nv, nw)
    for (alpha, beta), p in a.terms.items():
        dq = q.derivative(alpha + beta)
        if dq:
            out = out + p * dq
    return out


def push_forward(a: InvariantOperator, s_basis) -> InvariantOperator:
    """Transfer the operator to the quotient by a central subspace.

    Requires a recorded symbol: the result is the symmetrization of the
    symbol's restriction to v + (orthogonal complement of s in w), over
    the reduced algebra.
    """
    if a.symbol is None:
        raise ValueError("operator has no recorded symbol")
    alg = a.algebra
    nv, nw = alg.dim_v, alg.dim_w
    red = central_reduction(alg, s_basis)
    vunits = [
        tuple(Fraction(int(i == j)) for i in range(nv + nw)) for j in range(nv)
    ]
    wvecs = [
        tuple([Fraction(0)] * nv) + tuple(Fraction(x) for x in vec)
        for vec in red.complement_basis
    ]
    restricted = restrict(a.symbol, vunits + wvecs)
    return symmetrize(red.algebra, restricted)


@dataclass(frozen=True)
class CommutativityReport:
    pair_name: str
    entries: tuple  # (i, j, is_zero)

    @property
    def commutative(self):
        return all(ok for _, _, ok in self.entries)

    def to_json(self):
        return {
            "pair": self.pair_name,
            "commutative": self.commutative,
            "entries": [
                {"i": i, "j": j, "commutes": ok} for i, j, ok in self.entries
            ],
        }


def gelfand_commutativity_check(pair) -> CommutativityReport:
    """All pairwise commutators of the symmetrized Hilbert basis."""
    basis = pair.require_basis()
    ops = [symmetrize(pair.algebra, p) for p in basis.polynomials]
    entries = []
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            entries.append((i, j, commutator(ops[i], ops[j]).is_zero()))
    return CommutativityReport(pair.name, tuple(entries))
