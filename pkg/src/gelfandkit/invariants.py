"""Invariant polynomials of a compact action.

Invariant subspaces per bi-degree are exact kernels of the stacked
infinitesimal derivation matrices on the monomial basis.  Large kernels
go through arithmetic mod a big prime with rational reconstruction; the
reconstructed vectors are then verified exactly, which together with the
mod-p dimension bound makes the final basis provably correct.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from . import linalg
from .actions import CompactAction
from .gaussrat import QQi
from .poly import Polynomial

SIZE_CAP = 20000


def monomial_exponents(nvars, degree):
    """All exponent tuples over nvars summing to degree, sorted."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []

    def rec(i, remaining, acc):
        if i == nvars - 1:
            out.append(tuple(acc + [remaining]))
            return
        for d in range(remaining, -1, -1):
            rec(i + 1, remaining - d, acc + [d])

    rec(0, degree, [])
    return out


def bidegree_monomials(nv, nw, r, s):
    return [
        ev + ew
        for ev in monomial_exponents(nv, r)
        for ew in monomial_exponents(nw, s)
    ]


def derivation_action(action: CompactAction, gen_index: int, p: Polynomial):
    """Infinitesimal action (X.p)(v,w) = -grad p . (A_v v, A_w w)."""
    av, aw = action.k_generators[gen_index]
    nv, nw = p.nv, p.nw
    out = Polynomial.zero(nv, nw)
    for a in range(nv):
        dp = p.partial(a)
        if dp.is_zero() or not av:
            continue
        lin = Polynomial.zero(nv, nw)
        for b in range(nv):
            if av[a][b]:
                lin = lin + Polynomial.v_var(nv, nw, b).scale(av[a][b])
        out = out - dp * lin
    for a in range(nw):
        dp = p.partial(nv + a)
        if dp.is_zero() or not aw:
            continue
        lin = Polynomial.zero(nv, nw)
        for b in range(nw):
            if aw[a][b]:
                lin = lin + Polynomial.w_var(nv, nw, b).scale(aw[a][b])
        out = out - dp * lin
    return out


def _derivation_matrix(action, gen_index, monomials, index):
    """Sparse rows: row per monomial, entries on the same monomial list."""
    av, aw = action.k_generators[gen_index]
    nv = action.algebra.dim_v
    rows = [dict() for _ in monomials]
    for col, expo in enumerate(monomials):
        for a, ea in enumerate(expo):
            if not ea:
                continue
            mat = av if a < nv else aw
            arel = a if a < nv else a - nv
            off = 0 if a < nv else nv
            if not mat:
                continue
            for b in range(len(mat[arel])):
                coef = mat[arel][b]
                if not coef:
                    continue
                e = list(expo)
                e[a] -= 1
                e[off + b] += 1
                row = index[tuple(e)]
                rows[row][col] = rows[row].get(col, Fraction(0)) - ea * coef
    return rows


def _sparse_apply(rows, vec):
    out = []
    for row in rows:
        total = Fraction(0)
        for col, coef in row.items():
            if vec[col]:
                total += coef * vec[col]
        out.append(total)
    return out


def invariant_subspace(action: CompactAction, bidegree, size_cap=SIZE_CAP):
    """Exact basis of K-invariant polynomials of the given bi-degree."""
    r, s = bidegree
    alg = action.algebra
    monomials = bidegree_monomials(alg.dim_v, alg.dim_w, r, s)
    if len(monomials) > size_cap:
        raise ValueError(
            f"bidegree {bidegree} needs {len(monomials)} monomials, over the cap"
        )
    if action.dim_k == 0 or not monomials:
        return [
            Polynomial(alg.dim_v, alg.dim_w, {e: QQi(1)}) for e in monomials
        ]
    index = {e: i for i, e in enumerate(monomials)}
    gen_rows = [
        _derivation_matrix(action, g, monomials, index)
        for g in range(action.dim_k)
    ]
    n = len(monomials)

    if n <= 60:
        dense = []
        for rows in gen_rows:
            for row in rows:
                dense.append(
                    [row.get(c, Fraction(0)) for c in range(n)]
                )
        basis_vecs = linalg.nullspace(dense, ncols=n)
    else:
        basis_vecs = _modular_nullspace(gen_rows, n)

    out = []
    for vec in basis_vecs:
        terms = {monomials[i]: vec[i] for i in range(n) if vec[i]}
        out.append(Polynomial(alg.dim_v, alg.dim_w, terms))
    return out


def _modular_nullspace(gen_rows, n):
    """Mod-p candidate plus exact verification; see module docstring."""
    dense_rows = []
    for rows in gen_rows:
        for row in rows:
            if row:
                dense_rows.append([row.get(c, Fraction(0)) for c in range(n)])
    primes = (linalg._PRIMES[0],) + tuple(linalg.alternative_primes())
    for p in primes:
        cand = linalg.modp_nullspace_candidate(dense_rows, ncols=n, p=p)
        if cand is None:
            continue
        ok = True
        for vec in cand:
            for rows in gen_rows:
                if any(_sparse_apply(rows, vec)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            # candidates are exactly invariant and independent (canonical
            # free-column form); mod-p nullity bounds the true nullity
            # from above, so this is the full kernel
            return cand
    # reconstruction kept failing: fall back to exact elimination
    return linalg.nullspace(dense_rows, ncols=n)


@dataclass(frozen=True)
class HilbertBasis:
    elements: tuple  # tuples (component_tag, Polynomial)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def polynomials(self):
        return [p for _, p in self.elements]

    @property
    def components(self):
        return [c for c, _ in self.elements]

    def bidegrees(self):
        return [p.bidegree() for _, p in self.elements]

    def homogeneity_exponents(self):
        """nu_j = r_j + 2 s_j, the dilation weight of each element."""
        return [r + 2 * s for r, s in self.bidegrees()]

    def validate(self, action: CompactAction) -> "list[str]":
        problems = []
        for i, (tag, p) in enumerate(self.elements):
            try:
                r, s = p.bidegree()
            except ValueError:
                problems.append(f"element {i} is not bi-homogeneous")
                continue
            if tag == "wcheck" and (r != 0 or s != 1):
                problems.append(f"element {i}: wcheck tag requires a linear w form")
            if tag == "vw0" and (r == 0 or s == 0):
                problems.append(f"element {i}: mixed tag requires r, s > 0")
            if tag == "v" and s != 0:
                problems.append(f"element {i}: v tag requires s = 0")
            if tag in ("w0", "wcheck") and r != 0:
                problems.append(f"element {i}: w tag requires r = 0")
            for g in range(action.dim_k):
                if not derivation_action(action, g, p).is_zero():
                    problems.append(f"element {i} is not invariant (gen {g})")
                    break
        return problems


def _basis_monomial_exponents(bidegs, target):
    """Exponent tuples m with sum m_j * bidegs_j == target, graded order."""
    d = len(bidegs)
    out = []

    def rec(j, r_left, s_left, acc):
        if j == d:
            if r_left == 0 and s_left == 0:
                out.append(tuple(acc))
            return
        rj, sj = bidegs[j]
        mmax = min(
            r_left // rj if rj else (s_left // sj if sj else 0),
            s_left // sj if sj else (r_left // rj if rj else 0),
        )
        if rj == 0 and sj == 0:
            mmax = 0
        for m in range(mmax, -1, -1):
            rec(j + 1, r_left - m * rj, s_left - m * sj, acc + [m])

    rec(0, target[0], target[1], [])
    out.sort(key=lambda e: (sum(e), e))
    return out


def _expand_basis_monomial(basis_polys, expo):
    p = None
    for q, m in zip(basis_polys, expo):
        for _ in range(m):
            p = q if p is None else p * q
    if p is None:
        q0 = basis_polys[0]
        return Polynomial.constant(q0.nv, q0.nw, 1)
    return p


def express_in_basis(p: Polynomial, basis: HilbertBasis) -> Polynomial:
    """Write p as a polynomial in the basis elements.

    The result is a Polynomial in d formal variables (nv = d, nw = 0),
    one per basis element, chosen canonically (pivots in graded-lex
    order, free coordinates zero).  Raises if p is outside the generated
    algebra.
    """
    d = len(basis)
    bidegs = basis.bidegrees()
    polys = basis.polynomials
    pieces = {}
    for expo, coef in p.terms.items():
        nvp = p.nv
        key = (sum(expo[:nvp]), sum(expo[nvp:]))
        pieces.setdefault(key, {})[expo] = coef
    result = Polynomial.zero(d, 0)
    for key, terms in sorted(pieces.items()):
        piece = Polynomial(p.nv, p.nw)
        piece.terms = dict(terms)
        expos = _basis_monomial_exponents(bidegs, key)
        if not expos:
            raise ValueError("not in generated algebra")
        expanded = [_expand_basis_monomial(polys, e) for e in expos]
        monoms = sorted(set().union(*[set(q.terms) for q in expanded + [piece]]))
        midx = {m: i for i, m in enumerate(monoms)}
        rows = [[QQi(0)] * len(expos) for _ in monoms]
        for c, q in enumerate(expanded):
            for m, coef in q.terms.items():
                rows[midx[m]][c] = coef
        rhs = [piece.terms.get(m, QQi(0)) for m in monoms]
        sol = linalg.solve(rows, rhs)
        if sol is None:
            raise ValueError("not in generated algebra")
        for e, c in zip(expos, sol):
            c = QQi.coerce(c)
            if c:
                result = result + Polynomial(d, 0, {e: c})
    return result


def evaluate_expression(expr: Polynomial, basis: HilbertBasis) -> Polynomial:
    """Expand a formal expression back into an ambient polynomial."""
    polys = basis.polynomials
    q0 = polys[0]
    out = Polynomial.zero(q0.nv, q0.nw)
    for expo, coef in expr.terms.items():
        term = Polynomial.constant(q0.nv, q0.nw, coef)
        for q, m in zip(polys, expo):
            for _ in range(m):
                term = term * q
        out = out + term
    return out


def restrict(p: Polynomial, subspace_basis):
    """Restrict p to the span of the given ambient vectors.

    Each vector must be supported purely on v or purely on w; the result
    polynomial has one variable per vector, v-type vectors first.
    """
    nv, nw = p.nv, p.nw
    vvecs, wvecs = [], []
    for vec in subspace_basis:
        vec = list(vec)
        if len(vec) != nv + nw:
            raise ValueError("subspace vectors must live in the ambient space")
        if any(vec[:nv]) and any(vec[nv:]):
            raise ValueError("subspace vectors must be pure v or pure w")
        (vvecs if any(vec[:nv]) else wvecs).append(vec)
    ordered = vvecs + wvecs
    nv2, nw2 = len(vvecs), len(wvecs)
    images = []
    for a in range(nv + nw):
        img = Polynomial.zero(nv2, nw2)
        for i, vec in enumerate(ordered):
            if vec[a]:
                img = img + Polynomial.variable(nv2, nw2, i).scale(vec[a])
        images.append(img)
    return p.substitute(images)


@dataclass(frozen=True)
class GenerationReport:
    cutoff: tuple
    entries: tuple  # (bidegree, invariant_dim, span_rank, ok)
    certificates: tuple  # (bidegree, Polynomial) for deficient bidegrees

    @property
    def passed(self):
        return all(ok for _, _, _, ok in self.entries)

    def to_json(self):
        return {
            "cutoff": list(self.cutoff),
            "passed": self.passed,
            "entries": [
                {
                    "bidegree": list(bd),
                    "invariant_dim": di,
                    "span_rank": rk,
                    "ok": ok,
                }
                for bd, di, rk, ok in self.entries
            ],
        }


def generation_check(
    action: CompactAction, basis: HilbertBasis, cutoff
) -> GenerationReport:
    """Check that basis products span all invariants up to the cutoff.

    Product ranks are taken mod a large prime: products are invariant,
    so the modular rank is a lower bound on their true rank, which in
    turn is at most the invariant dimension; equality certifies spanning
    exactly.
    """
    rmax, smax = cutoff
    alg = action.algebra
    bidegs = basis.bidegrees()
    polys = basis.polynomials
    entries = []
    certs = []
    for r in range(rmax + 1):
        for s in range(smax + 1):
            if r == 0 and s == 0:
                continue
            inv = invariant_subspace(action, (r, s))
            dim = len(inv)
            expos = _basis_monomial_exponents(bidegs, (r, s))
            if dim == 0 and not expos:
                entries.append(((r, s), 0, 0, True))
                continue
            monoms = bidegree_monomials(alg.dim_v, alg.dim_w, r, s)
            midx = {m: i for i, m in enumerate(monoms)}
            rows = []
            for e in expos:
                q = _expand_basis_monomial(polys, e)
                row = [Fraction(0)] * len(monoms)
                for m, coef in q.terms.items():
                    if not coef.is_real():
                        raise ValueError("basis expansion has complex terms")
                    row[midx[m]] = coef.re
                rows.append(row)
            rank = linalg.modp_rank(rows) if rows else 0
            ok = rank == dim
            entries.append(((r, s), dim, rank, ok))
            if not ok and inv:
                cert = _deficiency_certificate(inv, rows, monoms)
                if cert is not None:
                    certs.append(((r, s), cert))
    return GenerationReport(tuple(cutoff), tuple(entries), tuple(certs))


def _graded_bidegrees(cutoff):
    rmax, smax = cutoff
    degs = [
        (r, s)
        for r in range(rmax + 1)
        for s in range(smax + 1)
        if (r, s) != (0, 0)
    ]
    degs.sort(key=lambda rs: (rs[0] + 2 * rs[1], rs[0]))
    return degs


def _real_row(p, midx):
    row = [Fraction(0)] * len(midx)
    for m, coef in p.terms.items():
        if not coef.is_real():
            raise ValueError("expected a real-coefficient invariant")
        row[midx[m]] = coef.re
    return row


def quotient_hilbert_basis(action: CompactAction, cutoff=(2, 2)) -> HilbertBasis:
    """Generating invariants of a (small) action up to the cutoff.

    Walks bi-degrees in graded order; at each one, keeps the invariants
    that are exactly independent of the products of earlier generators.
    The result generates every invariant of bi-degree within the cutoff,
    which is what the restriction table needs.
    """
    alg = action.algebra
    elements = []
    for r, s in _graded_bidegrees(cutoff):
        inv = invariant_subspace(action, (r, s))
        if not inv:
            continue
        monoms = bidegree_monomials(alg.dim_v, alg.dim_w, r, s)
        midx = {m: i for i, m in enumerate(monoms)}
        polys = [p for _, p in elements]
        rows = [
            _real_row(_expand_basis_monomial(polys, e), midx)
            for e in _basis_monomial_exponents(
                [p.bidegree() for p in polys], (r, s)
            )
        ]
        rank = linalg.rank(rows) if rows else 0
        for p in inv:
            row = _real_row(p, midx)
            new_rank = linalg.rank(rows + [row])
            if new_rank > rank:
                rows.append(row)
                rank = new_rank
                if s == 0:
                    tag = "v"
                elif r == 0:
                    tag = "wcheck" if s == 1 else "w0"
                else:
                    tag = "vw0"
                elements.append((tag, p))
    return HilbertBasis(tuple(elements))


@dataclass(frozen=True)
class RestrictionTable:
    """Restrictions of the ambient basis, organised by v-degree.

    For an ambient element of v-degree 0, q0[j] is its restriction
    written in the v-degree-0 quotient generators.  For v-degree k > 0,
    the restriction splits as sum over quotient generators of v-degree k
    with coefficient polynomials qk[(j, l)] in the v-degree-0 quotient
    generators, plus a remainder r_terms[j] in quotient generators of
    v-degree below k.  All expressions are polynomials in the formal
    quotient-basis variables.
    """

    ambient_basis: HilbertBasis
    quotient_basis: HilbertBasis
    quotient_algebra: object  # StepTwoAlgebra of the quotient pair
    subspace_basis: tuple  # ambient vectors parametrizing v + w_t
    q0: dict  # j -> expression
    qk: dict  # (j, l) -> expression
    r_terms: dict  # j -> expression
    expressions: tuple  # full expression per ambient element

    def restriction_expression(self, j):
        return self.expressions[j]


def quotient_restriction_table(pair, quotient) -> RestrictionTable:
    """Restrict each ambient basis element to v + w_t and decompose it.

    pair is a catalog GelfandPair with a Hilbert basis; quotient comes
    from quotient_pair.  The quotient basis is generated on the fly from
    the quotient action, up to the largest ambient bi-degree.
    """
    ambient = pair.require_basis()
    alg = pair.algebra
    nv, nw = alg.dim_v, alg.dim_w
    vunits = [
        tuple(Fraction(int(i == a)) for i in range(nv + nw))
        for a in range(nv)
    ]
    wvecs = [
        tuple([Fraction(0)] * nv) + tuple(Fraction(x) for x in vec)
        for vec in quotient.normal_basis
    ]
    subspace = tuple(vunits + wvecs)
    rmax = max((r for r, _ in ambient.bidegrees()), default=0)
    smax = max((s for _, s in ambient.bidegrees()), default=0)
    qbasis = quotient_hilbert_basis(quotient.quotient_action, (rmax, smax))
    qdegs = qbasis.bidegrees()
    d = len(qbasis)
    q0, qk, r_terms, exprs = {}, {}, {}, []
    for j, (_, rho) in enumerate(ambient.elements):
        restricted = restrict(rho, subspace)
        expr = express_in_basis(restricted, qbasis)
        exprs.append(expr)
        k = rho.bidegree()[0]
        if k == 0:
            q0[j] = expr
            continue
        remainder = Polynomial.zero(d, 0)
        for expo, coef in expr.terms.items():
            top = [
                l for l, m in enumerate(expo) if m and qdegs[l][0] == k
            ]
            if top:
                l = top[0]
                reduced = list(expo)
                reduced[l] -= 1
                key = (j, l)
                prev = qk.get(key, Polynomial.zero(d, 0))
                qk[key] = prev + Polynomial(d, 0, {tuple(reduced): coef})
            else:
                remainder = remainder + Polynomial(d, 0, {expo: coef})
        r_terms[j] = remainder
    return RestrictionTable(
        ambient_basis=ambient,
        quotient_basis=qbasis,
        quotient_algebra=quotient.quotient_action.algebra,
        subspace_basis=subspace,
        q0=q0,
        qk=qk,
        r_terms=r_terms,
        expressions=tuple(exprs),
    )


def _deficiency_certificate(inv, span_rows, monoms):
    base_rank = linalg.modp_rank(span_rows) if span_rows else 0
    for p in inv:
        row = [Fraction(0)] * len(monoms)
        for m, coef in p.terms.items():
            row[monoms.index(m)] = coef.re
        if linalg.modp_rank(span_rows + [row]) > base_rank:
            return p
    return None
