"""Bigraded F2[rho]-module charts for the isotropic sphere.

The assembly recipe is the standard one-parameter-deformation bookkeeping:
an Adams E2 class untouched by differentials contributes a free rho-tower
based at its regraded position (p, q) = (2t - s, t); a differential pair
d_r(x) = y contributes a tower of length r - 1 based at y's position and
nothing for x.  The recipe itself is a design decision, so both fiber
checks (mod rho = Ext chart, inverted rho = survivor counts per stem) run
after every assembly rather than being assumed.

Differential records are external literature input, never computed here.
File format: one record "r <source-label> <target-label>" per line with
'#' comments; labels refer to the Ext chart's generator labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .charts import Chart
from .reporting import Report


class DifferentialFormatError(ValueError):
    """Malformed differential record; message carries the line number."""


class MatchingError(ValueError):
    """Differential data violates the matching invariants."""


@dataclass(frozen=True)
class Differential:
    r: int
    source: str
    target: str


@dataclass
class AdamsData:
    e2: Chart  # (s, t) chart with generator labels
    differentials: Tuple[Differential, ...]

    def __post_init__(self):
        if self.e2.gradings != ("s", "t"):
            raise ValueError("E2 chart must be graded by (s, t)")
        positions: Dict[str, Tuple[int, int]] = {}
        for (s, t), dim, labels in self.e2.items():
            if len(labels) != dim:
                raise MatchingError(
                    f"chart entry at {(s, t)} lacks labels for its {dim} classes"
                )
            for lab in labels:
                if lab in positions:
                    raise MatchingError(f"duplicate generator label {lab!r}")
                positions[lab] = (s, t)
        self._positions = positions
        used_as_source: Dict[str, Differential] = {}
        used_as_target: Dict[str, Differential] = {}
        for d in self.differentials:
            if d.r < 2:
                raise MatchingError(f"differential length r={d.r} < 2 ({d.source})")
            for lab in (d.source, d.target):
                if lab not in positions:
                    raise MatchingError(f"unknown generator id {lab!r}")
            s, t = positions[d.source]
            expected = (s + d.r, t + d.r - 1)
            if positions[d.target] != expected:
                raise MatchingError(
                    f"d_{d.r}({d.source}) must land in {expected}, "
                    f"but {d.target} sits at {positions[d.target]}"
                )
            if d.source in used_as_source or d.source in used_as_target:
                raise MatchingError(f"generator {d.source} used twice")
            if d.target in used_as_target or d.target in used_as_source:
                raise MatchingError(f"generator {d.target} used twice")
            used_as_source[d.source] = d
            used_as_target[d.target] = d
        self._sources = used_as_source
        self._targets = used_as_target

    def position(self, label: str) -> Tuple[int, int]:
        return self._positions[label]

    def survivors(self) -> List[str]:
        out = []
        for (_s, _t), _dim, labels in self.e2.items():
            for lab in labels:
                if lab not in self._sources and lab not in self._targets:
                    out.append(lab)
        return out


def parse_differentials(text: str) -> Tuple[Differential, ...]:
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        cells = body.split()
        if len(cells) != 3:
            raise DifferentialFormatError(
                f"line {lineno}: expected 'r source target', got {line.strip()!r}"
            )
        try:
            r = int(cells[0])
        except ValueError:
            raise DifferentialFormatError(f"line {lineno}: bad differential index {cells[0]!r}") from None
        records.append(Differential(r, cells[1], cells[2]))
    return tuple(records)


def format_differentials(diffs: Sequence[Differential]) -> str:
    return "\n".join(f"{d.r} {d.source} {d.target}" for d in diffs) + "\n"


@dataclass(frozen=True)
class Tower:
    """Cyclic summand F2[rho]/(rho^k) generated in bidegree (p, q); the
    rho action moves (p, q) -> (p - 1, q - 1).  length None means free."""

    p: int
    q: int
    length: Optional[int]
    label: str = ""

    def covers(self, p: int, q: int) -> bool:
        j = self.q - q
        if j < 0 or self.p - j != p:
            return False
        return self.length is None or j < self.length


@dataclass
class RhoModule:
    towers: List[Tower] = field(default_factory=list)

    def dimension_at(self, p: int, q: int) -> int:
        return sum(1 for tw in self.towers if tw.covers(p, q))

    def coker_rho_dims(self) -> Dict[Tuple[int, int], int]:
        """rho-indecomposables: one class per tower, at its base."""
        out: Dict[Tuple[int, int], int] = {}
        for tw in self.towers:
            out[(tw.p, tw.q)] = out.get((tw.p, tw.q), 0) + 1
        return out

    def ker_rho_dims(self) -> Dict[Tuple[int, int], int]:
        """rho-torsion tops: finite towers contribute at their last class."""
        out: Dict[Tuple[int, int], int] = {}
        for tw in self.towers:
            if tw.length is None:
                continue
            key = (tw.p - tw.length + 1, tw.q - tw.length + 1)
            out[key] = out.get(key, 0) + 1
        return out

    def mod_rho_chart(self) -> Chart:
        chart = Chart(("p", "q"))
        for (p, q), dim in sorted(self.coker_rho_dims().items()):
            chart.set((p, q), dim)
        return chart

    def infinite_towers_by_stem(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for tw in self.towers:
            if tw.length is None:
                out[tw.p - tw.q] = out.get(tw.p - tw.q, 0) + 1
        return out

    def to_chart(self) -> Chart:
        """Tower dump: key (p, q, length) with length -1 for free towers."""
        chart = Chart(("p", "q", "k"))
        grouped: Dict[Tuple[int, int, int], List[str]] = {}
        for tw in self.towers:
            k = -1 if tw.length is None else tw.length
            grouped.setdefault((tw.p, tw.q, k), []).append(tw.label)
        for key, labels in sorted(grouped.items()):
            chart.set(key, len(labels), sorted(labels))
        return chart


def assemble(data: AdamsData) -> RhoModule:
    """Run the deformation recipe on validated Adams data.

    Output is independent of the input ordering of the differential
    records: towers are rebuilt from the chart traversal order.
    """
    module = RhoModule()
    by_target = {d.target: d for d in data.differentials}
    sources = set(d.source for d in data.differentials)
    for (s, t), _dim, labels in data.e2.items():
        for lab in labels:
            if lab in sources:
                continue
            base = (2 * t - s, t)
            if lab in by_target:
                length: Optional[int] = by_target[lab].r - 1
            else:
                length = None
            assert base[0] <= 2 * base[1], "tower base in positive Chow-Novikov degree"
            module.towers.append(Tower(base[0], base[1], length, lab))
    return module


def special_fiber_check(module: RhoModule, ext_pq: Chart) -> Report:
    """Mod-rho ledger: at every bidegree the cofiber chart must equal
    coker(rho) there plus ker(rho) one weight up, both read off the towers."""
    if ext_pq.gradings != ("p", "q"):
        raise ValueError("expected the regraded (p, q) Ext chart")
    report = Report("special-fiber")
    coker = module.coker_rho_dims()
    ker = module.ker_rho_dims()
    ledger: Dict[Tuple[int, int], int] = dict(coker)
    for (p, q), dim in ker.items():
        key = (p, q - 1)
        ledger[key] = ledger.get(key, 0) + dim
    support = sorted(set(ledger) | set(ext_pq.keys()))
    first_bad = None
    for key in support:
        want = ext_pq.dim(key)
        got = ledger.get(key, 0)
        if want != got:
            first_bad = (key, want, got)
            break
    report.check(
        "coker(rho) + ker(rho) ledger equals the cofiber chart at every bidegree",
        first_bad is None,
        "" if first_bad is None else
        f"first mismatch at {first_bad[0]}: chart {first_bad[1]}, ledger {first_bad[2]}",
    )
    return report


def generic_fiber_check(module: RhoModule, data: AdamsData) -> Report:
    """Inverted-rho side: free towers per stem must match E-infinity
    survivor counts, and dimensions must be constant along rho lines in
    the region p >= 2q."""
    report = Report("generic-fiber")
    survivors: Dict[int, int] = {}
    for lab in data.survivors():
        s, t = data.position(lab)
        survivors[t - s] = survivors.get(t - s, 0) + 1
    towers = module.infinite_towers_by_stem()
    stems = sorted(
        set(survivors) | set(towers) | {tw.p - tw.q for tw in module.towers}
    )
    bad = [
        (k, survivors.get(k, 0), towers.get(k, 0))
        for k in stems
        if survivors.get(k, 0) != towers.get(k, 0)
    ]
    report.check(
        "free tower count per stem equals survivor count",
        not bad,
        "" if not bad else f"stem mismatches (stem, survivors, towers): {bad[:5]}",
    )

    span = max(
        (tw.length for tw in module.towers if tw.length is not None), default=0
    )
    depth = span + 3
    bad_line = None
    for k in stems:
        expected = towers.get(k, 0)
        # the region p >= 2q on stem k is q <= k; sample downwards from
        # the boundary far enough to cross every finite tower
        for q in range(k, k - depth - 1, -1):
            got = module.dimension_at(k + q, q)
            if got != expected:
                bad_line = (k, (k + q, q), expected, got)
                break
        if bad_line:
            break
    report.check(
        "dimensions constant along rho lines for p >= 2q",
        bad_line is None,
        "" if bad_line is None else
        f"stem {bad_line[0]} at {bad_line[1]}: expected {bad_line[2]}, got {bad_line[3]}",
    )
    return report


def smash_chart_closed_form(crho: Chart, n: int) -> Chart:
    """Chart of the n-fold smash power via the binomial splitting: the
    i-th weight shift appears with multiplicity C(n-1, i)."""
    if crho.gradings != ("p", "q"):
        raise ValueError("expected a (p, q) chart")
    if n < 1:
        raise ValueError("n must be >= 1")
    out = Chart(("p", "q"))
    support = set()
    for (p, q) in crho.keys():
        for i in range(n):
            support.add((p, q - i))
    for (p, q) in sorted(support):
        dim = sum(comb(n - 1, i) * crho.dim((p, q + i)) for i in range(n))
        if dim:
            out.set((p, q), dim)
    return out


def smash_chart_iterative(crho: Chart, n: int) -> Chart:
    """Same chart via n - 1 applications of the two-fold splitting
    X ^ Crho = X + X shifted one weight down."""
    if n < 1:
        raise ValueError("n must be >= 1")
    current = Chart(("p", "q"))
    for key, dim, _ in crho.items():
        current.set(key, dim)
    for _ in range(n - 1):
        nxt = Chart(("p", "q"))
        support = set()
        for (p, q) in current.keys():
            support.add((p, q))
            support.add((p, q - 1))
        for (p, q) in sorted(support):
            dim = current.dim((p, q)) + current.dim((p, q + 1))
            if dim:
                nxt.set((p, q), dim)
        current = nxt
    return current


def smash_rank_check(crho: Chart, n: int) -> Report:
    report = Report("smash")
    closed = smash_chart_closed_form(crho, n)
    iterative = smash_chart_iterative(crho, n)
    report.check(
        f"iterative {n}-fold smash chart equals binomial closed form",
        iterative.dims_equal(closed),
        "",
    )
    if n == 1:
        report.check("n=1 is the identity", closed.dims_equal(crho), "")
    return report


__all__ = [
    "AdamsData",
    "Differential",
    "DifferentialFormatError",
    "MatchingError",
    "RhoModule",
    "Tower",
    "assemble",
    "format_differentials",
    "generic_fiber_check",
    "parse_differentials",
    "smash_chart_closed_form",
    "smash_chart_iterative",
    "smash_rank_check",
    "special_fiber_check",
]
