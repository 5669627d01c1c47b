"""Reduced cobar complex of the dual Steenrod algebra.

An independent route to the same Ext groups as the minimal resolution:
C^s in internal degree t is spanned by words of s positive-degree dual
monomials, the differential inserts the reduced coproduct in every slot,
and Ext^{s,t} is the cohomology.  Slower than the resolution but with no
shared code on the hot path, which is what makes it a usable oracle.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .. import steenrod
from ..charts import Chart
from ..f2linalg import _rref_bits

Word = Tuple[steenrod.Exponents, ...]


class CobarBudgetExceeded(RuntimeError):
    pass


@lru_cache(maxsize=None)
def _words(s: int, t: int) -> Tuple[Word, ...]:
    """Basis of the s-fold tensor of the augmentation coideal in degree t,
    in canonical (per-slot basis order) enumeration."""
    if s == 0:
        return ((),) if t == 0 else ()
    out: List[Word] = []
    for d in range(1, t - (s - 1) + 1):
        for head in steenrod.basis_in_degree(d):
            for tail in _words(s - 1, t - d):
                out.append((head,) + tail)
    return tuple(out)


def _diff_rank(s: int, t: int) -> int:
    """Rank of the cobar differential C^s_t -> C^{s+1}_t."""
    domain = _words(s, t)
    if not domain:
        return 0
    codomain_index: Dict[Word, int] = {w: i for i, w in enumerate(_words(s + 1, t))}
    rows = []
    for word in domain:
        acc = 0
        for i, letter in enumerate(word):
            for (a, b) in steenrod.reduced_coproduct(letter):
                target = word[:i] + (a, b) + word[i + 1 :]
                acc ^= 1 << codomain_index[target]
        rows.append(acc)
    reduced, _ = _rref_bits(rows, len(codomain_index))
    return len(reduced)


def cobar_ext(max_s: int, max_t: int, budget_dim: Optional[int] = 200_000) -> Chart:
    """Ext chart over (s, t) computed as reduced-cobar cohomology."""
    chart = Chart(("s", "t"))
    chart.set((0, 0), 1)
    if budget_dim is not None:
        total = sum(len(_words(s, t)) for s in range(1, max_s + 2) for t in range(max_t + 1))
        if total > budget_dim:
            raise CobarBudgetExceeded(
                f"cobar complex would have {total} basis words (budget {budget_dim})"
            )
    for s in range(1, max_s + 1):
        for t in range(1, max_t + 1):
            dim = len(_words(s, t))
            if dim == 0:
                continue
            kernel = dim - _diff_rank(s, t)
            image = _diff_rank(s - 1, t) if s > 1 else 0
            ext = kernel - image
            if ext:
                chart.set((s, t), ext)
    return chart


__all__ = ["CobarBudgetExceeded", "cobar_ext"]
