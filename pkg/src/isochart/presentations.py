"""Bigraded GF(2) presentations of the isotropic coefficient algebras.

A presented algebra carries generators with bidegrees and homogeneous
rewrite rules of the shape g^2 -> polynomial.  Rewriting always eliminates
the square in favor of higher-index generators, so normal monomials are
squarefree in the relation-bearing generators and the bigraded dimension
count reduces to straight enumeration.

Built-in instances:

  HZ_ISO       F2[rho, r_i] / (r_i^2 - rho r_{i+1})
  A_ISO        F2[rho, r_i, tau_i, xi_{i+1}] /
                 (r_i^2 - rho r_{i+1},
                  tau_i^2 - rho tau_{i+1} - rho (r_0 + tau_0) xi_{i+1})
  MBP_ISO      F2[rho]
  MBP_MBP_ISO  F2[rho, xi_i]   (xi_i in bidegree (2(2^i - 1), 2^i - 1))

rho sits in bidegree (-1, -1), r_i and tau_i in (2^{i+1} - 1, 2^i - 1),
xi_{i+1} in (2^{i+2} - 2, 2^{i+1} - 1).  All indices are truncated to the
window; a rewrite that would leave the truncation raises instead of
silently dropping terms.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .charts import Chart
from .reporting import Report

Monomial = Tuple[int, ...]  # exponents indexed by generator position
Polynomial = FrozenSet[Monomial]


class TruncationError(RuntimeError):
    """A rewrite needs a generator index beyond the truncation."""


class WindowError(ValueError):
    """Requested bidegree lies outside the configured window."""


class BuiltinAlgebra(Enum):
    HZ_ISO = "hz_iso"
    A_ISO = "a_iso"
    MBP_ISO = "mbp_iso"
    MBP_MBP_ISO = "mbp_mbp_iso"


@dataclass(frozen=True)
class PresentedAlgebra:
    names: Tuple[str, ...]
    bidegrees: Tuple[Tuple[int, int], ...]
    # gen index -> replacement polynomial for gen^2
    rules: Dict[int, Polynomial]
    # gens whose square is reducible in the untruncated algebra but whose
    # rule would leave the truncation
    frontier: FrozenSet[int]
    window: int

    def index(self, name: str) -> int:
        return self.names.index(name)

    def monomial(self, exps: Dict[str, int]) -> Monomial:
        out = [0] * len(self.names)
        for name, e in exps.items():
            out[self.index(name)] = e
        return tuple(out)

    def monomial_bidegree(self, m: Monomial) -> Tuple[int, int]:
        p = sum(e * self.bidegrees[i][0] for i, e in enumerate(m))
        q = sum(e * self.bidegrees[i][1] for i, e in enumerate(m))
        return (p, q)

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for i, e in enumerate(m):
            if e == 1:
                parts.append(self.names[i])
            elif e > 1:
                parts.append(f"{self.names[i]}^{e}")
        return "*".join(parts) if parts else "1"


def _pad(m: Sequence[int], n: int) -> Monomial:
    return tuple(m) + (0,) * (n - len(m))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _xor(acc: set, m: Monomial) -> None:
    if m in acc:
        acc.discard(m)
    else:
        acc.add(m)


def _max_index(window: int) -> int:
    # r_i / tau_i have stem 2^i; anything with stem beyond the window can
    # never appear in a windowed bidegree
    i = 0
    while (1 << (i + 1)) <= window:
        i += 1
    return i


def build_algebra(kind: BuiltinAlgebra, window: int = 20) -> PresentedAlgebra:
    imax = _max_index(window)
    names: List[str] = ["rho"]
    bidegrees: List[Tuple[int, int]] = [(-1, -1)]

    def add(name: str, bd: Tuple[int, int]) -> int:
        names.append(name)
        bidegrees.append(bd)
        return len(names) - 1

    r_idx: Dict[int, int] = {}
    tau_idx: Dict[int, int] = {}
    xi_idx: Dict[int, int] = {}

    if kind in (BuiltinAlgebra.HZ_ISO, BuiltinAlgebra.A_ISO):
        for i in range(imax + 1):
            r_idx[i] = add(f"r{i}", ((1 << (i + 1)) - 1, (1 << i) - 1))
    if kind is BuiltinAlgebra.A_ISO:
        for i in range(imax + 1):
            tau_idx[i] = add(f"tau{i}", ((1 << (i + 1)) - 1, (1 << i) - 1))
        for i in range(1, imax + 2):
            xi_idx[i] = add(f"xi{i}", ((1 << (i + 1)) - 2, (1 << i) - 1))
    if kind is BuiltinAlgebra.MBP_MBP_ISO:
        for i in range(1, imax + 2):
            xi_idx[i] = add(f"xi{i}", (2 * ((1 << i) - 1), (1 << i) - 1))

    n = len(names)
    rules: Dict[int, Polynomial] = {}
    frontier = set()

    def mono(**exps: int) -> Monomial:
        out = [0] * n
        for name, e in exps.items():
            out[names.index(name)] = e
        return tuple(out)

    for i, gi in r_idx.items():
        if i + 1 in r_idx:
            rules[gi] = frozenset({mono(rho=1, **{f"r{i + 1}": 1})})
        else:
            frontier.add(gi)
    for i, gi in tau_idx.items():
        if i + 1 in tau_idx and i + 1 in xi_idx:
            rules[gi] = frozenset(
                {
                    mono(rho=1, **{f"tau{i + 1}": 1}),
                    mono(rho=1, r0=1, **{f"xi{i + 1}": 1}),
                    mono(rho=1, tau0=1, **{f"xi{i + 1}": 1}),
                }
            )
        else:
            frontier.add(gi)

    alg = PresentedAlgebra(
        names=tuple(names),
        bidegrees=tuple(bidegrees),
        rules=rules,
        frontier=frozenset(frontier),
        window=window,
    )
    for gi, rhs in rules.items():
        lhs = [0] * n
        lhs[gi] = 2
        lhs_bd = alg.monomial_bidegree(tuple(lhs))
        for m in rhs:
            if alg.monomial_bidegree(m) != lhs_bd:
                raise ValueError(f"inhomogeneous rule for {names[gi]}")
    return alg


def rewrite_bound(alg: PresentedAlgebra, poly: Polynomial) -> int:
    """Upper bound on the number of rewrite steps for `poly`.

    One rewrite consumes a square and emits at most three monomials, each
    with strictly smaller relation-generator weight, so a monomial of
    weight L needs at most (3^L - 1) / 2 steps.
    """
    reducible = set(alg.rules) | set(alg.frontier)
    total = 0
    for m in poly:
        weight = sum(e for i, e in enumerate(m) if i in reducible)
        total += (3**weight - 1) // 2
    return total


def normal_form(
    alg: PresentedAlgebra,
    poly: Polynomial,
    rng: Optional[random.Random] = None,
) -> Polynomial:
    """Exhaustively rewrite `poly`; the fixed point is order-independent.

    With `rng` the rewrite position is chosen at random each step (used by
    the confluence tests); by default the lexicographically largest
    reducible monomial is rewritten first.
    """
    current = set(poly)
    bound = rewrite_bound(alg, poly)
    steps = 0
    while True:
        candidates = []
        for m in current:
            for gi, e in enumerate(m):
                if e >= 2 and (gi in alg.rules or gi in alg.frontier):
                    candidates.append((m, gi))
        if not candidates:
            return frozenset(current)
        if rng is None:
            m, gi = max(candidates)
        else:
            m, gi = candidates[rng.randrange(len(candidates))]
        if gi in alg.frontier:
            raise TruncationError(
                f"square of {alg.names[gi]} needs a generator beyond the window"
            )
        steps += 1
        if steps > bound:
            raise AssertionError("rewrite chain exceeded its termination bound")
        rest = tuple(e - 2 if i == gi else e for i, e in enumerate(m))
        _xor(current, m)
        for rhs in alg.rules[gi]:
            _xor(current, _mono_mul(rest, rhs))


def _check_window(alg: PresentedAlgebra, p: int, q: int) -> None:
    if abs(p) + abs(q) > alg.window:
        raise WindowError(f"bidegree ({p},{q}) outside window {alg.window}")


def hilbert_basis(
    alg: PresentedAlgebra,
    p: int,
    q: int,
    restrict_to: Optional[Sequence[str]] = None,
) -> List[Monomial]:
    """Normal monomials of bidegree (p, q), enumerated directly.

    Normal monomials are squarefree in the relation-bearing generators;
    their non-rho part has stem p - q, and the rho power is then forced by
    the weight.  `restrict_to` limits the usable generators (rho always
    allowed).
    """
    _check_window(alg, p, q)
    stem_target = p - q
    if stem_target < 0:
        return []
    allowed = set(range(len(alg.names)))
    if restrict_to is not None:
        keep = set(restrict_to) | {"rho"}
        allowed = {i for i, nm in enumerate(alg.names) if nm in keep}
    squarefree = set(alg.rules) | set(alg.frontier)
    gens = [
        (i, alg.bidegrees[i][0] - alg.bidegrees[i][1], alg.bidegrees[i][1])
        for i in range(1, len(alg.names))
        if i in allowed
    ]
    out: List[Monomial] = []
    exps = [0] * len(alg.names)

    def go(idx: int, stem_left: int):
        if idx == len(gens):
            if stem_left == 0:
                q_part = sum(
                    e * alg.bidegrees[i][1] for i, e in enumerate(exps) if e
                )
                a = q_part - q
                if a >= 0:
                    m = list(exps)
                    m[0] = a
                    mono = tuple(m)
                    assert alg.monomial_bidegree(mono) == (p, q)
                    out.append(mono)
            return
        gi, stem, _ = gens[idx]
        cap = 1 if gi in squarefree else stem_left // stem
        cap = min(cap, stem_left // stem)
        for e in range(cap, -1, -1):
            exps[gi] = e
            go(idx + 1, stem_left - e * stem)
        exps[gi] = 0

    go(0, stem_target)
    return sorted(out)


def hilbert_dim(
    alg: PresentedAlgebra,
    p: int,
    q: int,
    restrict_to: Optional[Sequence[str]] = None,
) -> int:
    return len(hilbert_basis(alg, p, q, restrict_to))


def window_bidegrees(window: int) -> List[Tuple[int, int]]:
    out = []
    for p in range(-window, window + 1):
        for q in range(-(window - abs(p)), window - abs(p) + 1):
            out.append((p, q))
    return out


def verify_free_basis_over_mbp(window: int = 20) -> Report:
    """Hilbert-series form of the statement that the motivic-cohomology
    algebra is free over F2[rho] on the squarefree classes r_I.

    Left side: direct normal-monomial count in HZ_ISO.  Right side: the
    sum over index sets I of the F2[rho] dimension shifted by deg r_I,
    enumerated independently over subsets.
    """
    alg = build_algebra(BuiltinAlgebra.HZ_ISO, window)
    report = Report("free-basis-over-mbp")
    imax = _max_index(window)
    subsets = []
    for size in range(imax + 2):
        for I in itertools.combinations(range(imax + 1), size):
            p_i = sum((1 << (i + 1)) - 1 for i in I)
            q_i = sum((1 << i) - 1 for i in I)
            subsets.append((p_i, q_i))
    first_bad = None
    for (p, q) in window_bidegrees(window):
        lhs = hilbert_dim(alg, p, q)
        rhs = sum(
            1 for (p_i, q_i) in subsets if p - p_i == q - q_i and p - p_i <= 0
        )
        if lhs != rhs and first_bad is None:
            first_bad = (p, q, lhs, rhs)
    report.check(
        f"dim HZ_ISO(p,q) = sum_I dim F2[rho](p-p_I, q-q_I) on |p|+|q| <= {window}",
        first_bad is None,
        "" if first_bad is None else
        f"first failure at {first_bad[:2]}: lhs={first_bad[2]} rhs={first_bad[3]}",
    )
    return report


def tau_image_check(window: int = 20) -> Report:
    """The bidegree (0,-1) component is one-dimensional with basis rho*r0,
    so the image of the motivic tau class has a unique non-zero target."""
    alg = build_algebra(BuiltinAlgebra.HZ_ISO, window)
    report = Report("tau-image")
    basis = hilbert_basis(alg, 0, -1)
    names = [alg.format_monomial(m) for m in basis]
    report.check("dim at (0,-1) is 1", len(basis) == 1, f"basis={names}")
    report.check("basis at (0,-1) is rho*r0", names == ["rho*r0"], f"basis={names}")
    unit_basis = [alg.format_monomial(m) for m in hilbert_basis(alg, 0, 0)]
    report.check("basis at (0,0) is 1", unit_basis == ["1"], f"basis={unit_basis}")
    return report


def pure_quotient_algebra(kind: BuiltinAlgebra, window: int = 20) -> PresentedAlgebra:
    """Quotient by the ideal generated by all r_i."""
    if kind not in (BuiltinAlgebra.HZ_ISO, BuiltinAlgebra.A_ISO):
        raise ValueError("pure quotient only defined for HZ_ISO / A_ISO")
    if kind is BuiltinAlgebra.HZ_ISO:
        return build_algebra(BuiltinAlgebra.MBP_ISO, window)
    full = build_algebra(BuiltinAlgebra.A_ISO, window)
    keep = [i for i, nm in enumerate(full.names) if not nm.startswith("r") or nm == "rho"]
    names = tuple(full.names[i] for i in keep)
    bidegrees = tuple(full.bidegrees[i] for i in keep)
    remap = {old: new for new, old in enumerate(keep)}
    rules: Dict[int, Polynomial] = {}
    frontier = set()
    for old_gi in range(len(full.names)):
        if old_gi not in remap:
            continue
        if old_gi in full.frontier and full.names[old_gi].startswith("tau"):
            frontier.add(remap[old_gi])
        if old_gi in full.rules:
            new_rhs = set()
            for m in full.rules[old_gi]:
                if any(e and i not in remap for i, e in enumerate(m)):
                    continue  # monomial contains an r_i: dies in the quotient
                new_m = [0] * len(names)
                for i, e in enumerate(m):
                    if e:
                        new_m[remap[i]] = e
                new_rhs.add(tuple(new_m))
            rules[remap[old_gi]] = frozenset(new_rhs)
    return PresentedAlgebra(names, bidegrees, rules, frozenset(frontier), window)


def pure_quotient_dims(kind: BuiltinAlgebra, window: int = 20) -> Chart:
    """Bigraded dimensions of the quotient by (r_i : i >= 0)."""
    quotient = pure_quotient_algebra(kind, window)
    chart = Chart(("p", "q"))
    for (p, q) in window_bidegrees(window):
        d = hilbert_dim(quotient, p, q)
        if d:
            chart.set((p, q), d)
    return chart


def _sample_monomial(alg: PresentedAlgebra, rng: random.Random) -> Monomial:
    # Keep the 2-adic weight sum(e_i 2^i) of the relation generators below
    # 2^(imax+1): a rewrite can only produce index j with 2^j <= that
    # weight, so rewriting never leaves the truncation.
    index_of = {}
    for gi, nm in enumerate(alg.names):
        if nm[0] in "rt" and nm != "rho":
            index_of[gi] = int(nm.lstrip("rtau") or 0)
    limit = max((1 << (i + 1) for i in index_of.values()), default=1)
    while True:
        exps = [0] * len(alg.names)
        exps[0] = rng.randrange(0, 3)
        for gi in range(1, len(alg.names)):
            if gi in index_of:
                exps[gi] = rng.randrange(0, 4)
            elif rng.random() < 0.3:
                exps[gi] = rng.randrange(0, 3)
        weight = sum(exps[gi] << index_of[gi] for gi in index_of)
        if weight < limit:
            return tuple(exps)


def confluence_report(window: int = 20, samples: int = 1000, seed: int = 0) -> Report:
    """Randomized-order rewriting reaches one normal form per input."""
    report = Report("confluence")
    rng = random.Random(seed)
    for kind in BuiltinAlgebra:
        alg = build_algebra(kind, window)
        bad = None
        for _ in range(samples):
            mono = _sample_monomial(alg, rng)
            poly: Polynomial = frozenset({mono})
            baseline = normal_form(alg, poly)
            for _trial in range(3):
                shuffled = normal_form(alg, poly, rng=random.Random(rng.randrange(1 << 30)))
                if shuffled != baseline:
                    bad = mono
                    break
            if bad:
                break
        report.check(
            f"{kind.value}: {samples} random monomials, randomized rewrite order",
            bad is None,
            "" if bad is None else f"diverged on {bad}",
        )
    return report


def presentations_suite(window: int = 20, samples: int = 1000, seed: int = 0) -> Report:
    """The full presentation verification suite."""
    report = Report("presentations")
    free = verify_free_basis_over_mbp(window)
    report.checks.extend(free.checks)
    tau = tau_image_check(window)
    report.checks.extend(tau.checks)

    pure = pure_quotient_dims(BuiltinAlgebra.HZ_ISO, window)
    expected = Chart(("p", "q"))
    for n in range(window + 1):
        if abs(-n) + abs(-n) <= window:
            expected.set((-n, -n), 1)
    report.check(
        "quotient of HZ_ISO by (r_i) has the F2[rho] chart",
        pure.dims_equal(expected),
        "",
    )

    a_iso = build_algebra(BuiltinAlgebra.A_ISO, window)
    hz_iso = build_algebra(BuiltinAlgebra.HZ_ISO, window)
    retract_ok = True
    for (p, q) in window_bidegrees(window):
        r_names = [nm for nm in a_iso.names if nm.startswith("r") and nm != "rho"]
        if hilbert_dim(a_iso, p, q, restrict_to=r_names) != hilbert_dim(hz_iso, p, q):
            retract_ok = False
            break
    report.check("A_ISO restricted to {rho, r_i} matches HZ_ISO", retract_ok, "")

    confl = confluence_report(window, samples, seed)
    report.checks.extend(confl.checks)
    return report


__all__ = [
    "BuiltinAlgebra",
    "Monomial",
    "Polynomial",
    "PresentedAlgebra",
    "TruncationError",
    "WindowError",
    "build_algebra",
    "confluence_report",
    "hilbert_basis",
    "hilbert_dim",
    "normal_form",
    "presentations_suite",
    "pure_quotient_algebra",
    "pure_quotient_dims",
    "rewrite_bound",
    "tau_image_check",
    "verify_free_basis_over_mbp",
    "window_bidegrees",
]
