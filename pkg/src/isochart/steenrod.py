"""Mod-2 Steenrod algebra arithmetic in the Milnor basis.

Basis elements Sq(r1,...,rk) and dual monomials xi_1^e1 ... xi_k^ek are both
represented as plain exponent tuples with trailing zeros trimmed; () is the
unit.  GF(2) polynomials are frozensets of such tuples, tensors are
frozensets of tuple pairs.  Only the prime 2 is supported.
"""

from __future__ import annotations

from functools import lru_cache
from typing import FrozenSet, List, Tuple

Exponents = Tuple[int, ...]
Poly = FrozenSet[Exponents]
TensorPoly = FrozenSet[Tuple[Exponents, Exponents]]

UNIT: Exponents = ()
ZERO: Poly = frozenset()


def trim(exps) -> Exponents:
    exps = tuple(exps)
    while exps and exps[-1] == 0:
        exps = exps[:-1]
    return exps


def degree(exps: Exponents) -> int:
    """Classical degree: Sq(r1,...,rk) and xi^(e1,...,ek) both grade by
    sum of e_i (2^i - 1)."""
    return sum(e * ((1 << (i + 1)) - 1) for i, e in enumerate(exps))


def g_bidegree(exps: Exponents) -> Tuple[int, int]:
    """Bidegree of a dual monomial in the evenly regraded Hopf algebra,
    placing the classical degree-d part in bidegree (2d, d)."""
    d = degree(exps)
    return (2 * d, d)


def _odd_multinomial(parts: List[int]) -> bool:
    # multinomial(parts) is odd iff the binary digits are disjoint (Lucas)
    acc = 0
    for p in parts:
        if acc & p:
            return False
        acc |= p
    return True


@lru_cache(maxsize=None)
def milnor_product(r: Exponents, s: Exponents) -> Poly:
    """Milnor-basis expansion of Sq(R) * Sq(S) via the matrix formula.

    Sums over matrices X = (x_ij) with row sums sum_j 2^j x_ij = r_i and
    column sums sum_i x_ij = s_j; each admissible X contributes Sq(T) with
    t_n = sum_{i+j=n} x_ij when all the diagonal multinomials are odd.
    """
    r = trim(r)
    s = trim(s)
    if not r:
        return frozenset((s,))
    if not s:
        return frozenset((r,))
    nrows = len(r)
    ncols = len(s)
    result = set()

    # x[i][j] for 1 <= i <= nrows, 1 <= j <= ncols; row 0 / column 0 are
    # determined by the sum conditions.
    x = [[0] * (ncols + 1) for _ in range(nrows + 1)]

    def place(i: int, j: int, col_left: List[int], row_left: int):
        if j > ncols:
            x[i][0] = row_left
            fill_row(i + 1, col_left)
            return
        step = 1 << j
        max_here = min(row_left >> j, col_left[j])
        for val in range(max_here + 1):
            x[i][j] = val
            col_left[j] -= val
            place(i, j + 1, col_left, row_left - val * step)
            col_left[j] += val
        x[i][j] = 0

    def fill_row(i: int, col_left: List[int]):
        if i > nrows:
            finish(col_left)
            return
        place(i, 1, col_left, r[i - 1])

    def finish(col_left: List[int]):
        for j in range(1, ncols + 1):
            x[0][j] = col_left[j]
        t = []
        for n in range(1, nrows + ncols + 1):
            parts = [
                x[i][n - i]
                for i in range(max(0, n - ncols), min(n, nrows) + 1)
            ]
            if not _odd_multinomial([p for p in parts if p]):
                return
            t.append(sum(parts))
        term = trim(t)
        if term in result:
            result.discard(term)
        else:
            result.add(term)

    fill_row(1, [0] + list(s))
    return frozenset(result)


def poly_mul(p: Poly, q: Poly) -> Poly:
    """GF(2) product of Milnor-basis polynomials."""
    acc: set = set()
    for a in p:
        for b in q:
            for term in milnor_product(a, b):
                if term in acc:
                    acc.discard(term)
                else:
                    acc.add(term)
    return frozenset(acc)


def mono_mul(a: Exponents, b: Exponents) -> Exponents:
    """Product of dual monomials (exponentwise sum)."""
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


def _xor_into(acc: set, item):
    if item in acc:
        acc.discard(item)
    else:
        acc.add(item)


def tensor_mul(t1: TensorPoly, t2: TensorPoly) -> TensorPoly:
    acc: set = set()
    for (a1, b1) in t1:
        for (a2, b2) in t2:
            _xor_into(acc, (mono_mul(a1, a2), mono_mul(b1, b2)))
    return frozenset(acc)


@lru_cache(maxsize=None)
def _xi_coproduct(n: int) -> TensorPoly:
    # psi(xi_n) = sum_{i=0..n} xi_{n-i}^{2^i} (x) xi_i
    terms = set()
    for i in range(n + 1):
        left: Exponents = UNIT
        if n - i > 0:
            left = trim([0] * (n - i - 1) + [1 << i])
        right: Exponents = UNIT
        if i > 0:
            right = trim([0] * (i - 1) + [1])
        terms.add((left, right))
    return frozenset(terms)


@lru_cache(maxsize=None)
def dual_coproduct(exps: Exponents) -> TensorPoly:
    """Milnor coproduct on a dual monomial, extended multiplicatively."""
    exps = trim(exps)
    acc: TensorPoly = frozenset(((UNIT, UNIT),))
    for i, e in enumerate(exps):
        if e == 0:
            continue
        base = _xi_coproduct(i + 1)
        power = base
        # xi^e via repeated squaring keeps the tensor sizes down
        result: TensorPoly = frozenset(((UNIT, UNIT),))
        k = e
        while k:
            if k & 1:
                result = tensor_mul(result, power)
            k >>= 1
            if k:
                power = tensor_mul(power, power)
        acc = tensor_mul(acc, result)
    return acc


@lru_cache(maxsize=None)
def reduced_coproduct(exps: Exponents) -> TensorPoly:
    """Coproduct minus the primitive part x(x)1 + 1(x)x; the cobar
    differential inserts exactly this."""
    exps = trim(exps)
    return frozenset(
        (a, b) for (a, b) in dual_coproduct(exps) if a != UNIT and b != UNIT
    )


def counit(p: Poly) -> int:
    return 1 if UNIT in p else 0


@lru_cache(maxsize=None)
def basis_in_degree(d: int, dual: bool = False) -> Tuple[Exponents, ...]:
    """All Milnor basis elements (or dual monomials) of classical degree d,
    in descending lexicographic order on exponent tuples.

    The enumeration is shared: Sq(R) and xi^R grade identically.  The flag
    only documents which algebra the caller means.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    del dual
    out: List[Exponents] = []

    def gen(remaining: int, idx: int, acc: List[int]):
        if idx < 0:
            if remaining == 0:
                out.append(trim(acc))
            return
        weight = (1 << (idx + 1)) - 1
        for e in range(remaining // weight, -1, -1):
            acc[idx] = e
            gen(remaining - e * weight, idx - 1, acc)
        acc[idx] = 0

    if d == 0:
        return (UNIT,)
    max_idx = 0
    while (1 << (max_idx + 2)) - 1 <= d:
        max_idx += 1
    gen(d, max_idx, [0] * (max_idx + 1))
    out.sort(reverse=True)
    return tuple(out)


def dim_in_degree(d: int) -> int:
    return len(basis_in_degree(d))


__all__ = [
    "Exponents",
    "Poly",
    "TensorPoly",
    "UNIT",
    "ZERO",
    "basis_in_degree",
    "counit",
    "degree",
    "dim_in_degree",
    "dual_coproduct",
    "g_bidegree",
    "milnor_product",
    "mono_mul",
    "poly_mul",
    "reduced_coproduct",
    "tensor_mul",
    "trim",
]
