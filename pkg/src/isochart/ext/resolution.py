"""Minimal free resolution of F2 over the mod-2 Steenrod algebra.

The resolution is driven degree by degree: for each internal degree t the
stages s = 1, 2, ... are processed in order, the differential matrix on
the span of existing generators is eliminated once, and new generators are
adjoined to complete its image to the kernel coming from the previous
stage.  Generator counts at (s, t) are exactly the Ext dimensions because
no differential entry ever has a degree-zero coefficient.

All orderings (generator discovery, Milnor monomial order, echelon
reduction) are canonical, so charts and checkpoints are reproducible
bit-for-bit for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .. import steenrod
from ..charts import Chart
from ..f2linalg import _rref_bits

Exponents = Tuple[int, ...]
# d(generator) as a sorted tuple of (target index, Milnor exponents) terms
DiffTerms = Tuple[Tuple[int, Exponents], ...]

CHECKPOINT_HEADER = "ISOCHART-RES v1"


class CheckpointError(ValueError):
    """Unreadable or incompatible checkpoint data."""


class BudgetExceeded(RuntimeError):
    """Raised when the configured cell budget runs out; the resolution
    stays valid at the last completed degree."""

    def __init__(self, resolution: "Resolution"):
        super().__init__(
            f"budget exhausted at frontier (max_s={resolution.max_s}, "
            f"t_done={resolution.t_done})"
        )
        self.resolution = resolution


@lru_cache(maxsize=None)
def _basis_index(d: int) -> Dict[Exponents, int]:
    return {m: i for i, m in enumerate(steenrod.basis_in_degree(d))}


class Resolution:
    def __init__(self, max_s: int):
        if max_s < 0:
            raise ValueError("max_s must be non-negative")
        self.max_s = max_s
        self.t_done = 0
        # gen_t[s][i] = internal degree of the i-th stage-s generator
        self.gen_t: List[List[int]] = [[] for _ in range(max_s + 1)]
        self.diffs: List[List[DiffTerms]] = [[] for _ in range(max_s + 1)]
        self.gen_t[0].append(0)
        self.diffs[0].append(())  # augmentation, not stored as terms

    # -- module bookkeeping -------------------------------------------------

    def module_basis(self, s: int, t: int, strict: bool = False) -> List[Tuple[int, Exponents]]:
        """Basis of the degree-t part of the stage-s free module: pairs
        (generator, Milnor monomial).  With strict=True only generators of
        degree < t contribute (the augmentation-ideal multiples)."""
        out: List[Tuple[int, Exponents]] = []
        for g, tg in enumerate(self.gen_t[s]):
            d = t - tg
            if d < 0 or (strict and d == 0):
                continue
            for m in steenrod.basis_in_degree(d):
                out.append((g, m))
        return out

    def gens_at(self, s: int, t: int) -> List[int]:
        return [g for g, tg in enumerate(self.gen_t[s]) if tg == t]

    def label(self, s: int, t: int, k: int) -> str:
        if s == 1 and t > 0 and (t & (t - 1)) == 0:
            return f"h{t.bit_length() - 1}"
        return f"g{s}_{t}_{k}"

    def chart(self, max_t: Optional[int] = None) -> Chart:
        cap = self.t_done if max_t is None else min(max_t, self.t_done)
        chart = Chart(("s", "t"))
        for s in range(self.max_s + 1):
            by_t: Dict[int, int] = {}
            for tg in self.gen_t[s]:
                by_t[tg] = by_t.get(tg, 0) + 1
            for t, dim in by_t.items():
                if t <= cap:
                    chart.set((s, t), dim, [self.label(s, t, k) for k in range(dim)])
        return chart

    # -- the resolution loop ------------------------------------------------

    def extend(self, max_t: int, workers: int = 1, budget_cells: Optional[int] = None) -> "Resolution":
        cells_used = 0
        for t in range(self.t_done + 1, max_t + 1):
            if budget_cells is not None:
                cells_used += self.max_s
                if cells_used > budget_cells:
                    raise BudgetExceeded(self)
            self._do_degree(t, workers)
            self.t_done = t
        return self

    def _do_degree(self, t: int, workers: int) -> None:
        # stage 0: the kernel of the augmentation in degree t > 0 is the
        # whole degree-t part
        prev_basis = self.module_basis(0, t)
        kernel_prev = [1 << i for i in range(len(prev_basis))]

        for s in range(1, self.max_s + 1):
            basis_s = self.module_basis(s, t, strict=True)
            prev_index = {bm: i for i, bm in enumerate(prev_basis)}
            ncols = len(prev_basis)
            rows = self._differential_rows(s, basis_s, prev_index, workers)

            # one elimination with identity tags gives image and kernel
            width = ncols + len(rows)
            tagged = [rows[i] | (1 << (ncols + i)) for i in range(len(rows))]
            reduced, _ = _rref_bits(tagged, width)
            col_mask = (1 << ncols) - 1
            image_rows = [r & col_mask for r in reduced if r & col_mask]
            kernel_tags = [r >> ncols for r in reduced if not (r & col_mask)]
            kernel_tags, _ = _rref_bits(kernel_tags, len(rows))

            # complete the image to the kernel from the previous stage
            elim = list(image_rows)
            new_vectors: List[int] = []
            for v in kernel_prev:
                v = _reduce_against(v, elim)
                if v:
                    _insert_rref(v, elim)
                    new_vectors.append(v)
            assert len(image_rows) + len(new_vectors) == len(kernel_prev), (
                "exactness ledger failed at "
                f"(s={s}, t={t}): rank {len(image_rows)} + new {len(new_vectors)}"
                f" != nullity {len(kernel_prev)}"
            )
            for v in new_vectors:
                terms = _decode(v, prev_basis)
                assert terms and all(m != () for _, m in terms), "minimality violated"
                self.gen_t[s].append(t)
                self.diffs[s].append(terms)

            prev_basis = basis_s
            kernel_prev = kernel_tags

    def _differential_rows(
        self,
        s: int,
        basis_s: Sequence[Tuple[int, Exponents]],
        prev_index: Dict[Tuple[int, Exponents], int],
        workers: int,
    ) -> List[int]:
        def row_for(bm: Tuple[int, Exponents]) -> int:
            g, m = bm
            acc = 0
            for tgt, c in self.diffs[s][g]:
                for term in steenrod.milnor_product(m, c):
                    acc ^= 1 << prev_index[(tgt, term)]
            return acc

        if workers <= 1 or len(basis_s) < 64:
            return [row_for(bm) for bm in basis_s]
        chunk = (len(basis_s) + workers - 1) // workers
        pieces = [basis_s[i : i + chunk] for i in range(0, len(basis_s), chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda piece: [row_for(bm) for bm in piece], pieces))
        return [row for part in parts for row in part]

    # -- checkpointing ------------------------------------------------------

    def to_checkpoint(self) -> str:
        lines = [CHECKPOINT_HEADER, f"max_s {self.max_s}", f"t_done {self.t_done}"]
        for s in range(self.max_s + 1):
            lines.append(f"stage {s} {len(self.gen_t[s])}")
            for i, tg in enumerate(self.gen_t[s]):
                lines.append(f"g {tg}")
                if s >= 1:
                    terms = " ".join(
                        f"{tgt}:{','.join(str(e) for e in exps)}"
                        for tgt, exps in self.diffs[s][i]
                    )
                    lines.append(f"d {terms}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_checkpoint(cls, text: str) -> "Resolution":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != CHECKPOINT_HEADER:
            raise CheckpointError("bad or missing checkpoint header")
        try:
            if not lines[1].startswith("max_s ") or not lines[2].startswith("t_done "):
                raise CheckpointError("missing max_s / t_done")
            max_s = int(lines[1].split()[1])
            t_done = int(lines[2].split()[1])
            res = cls(max_s)
            res.gen_t = [[] for _ in range(max_s + 1)]
            res.diffs = [[] for _ in range(max_s + 1)]
            pos = 3
            for s in range(max_s + 1):
                head = lines[pos].split()
                if head[0] != "stage" or int(head[1]) != s:
                    raise CheckpointError(f"expected stage {s}")
                ngens = int(head[2])
                pos += 1
                for _ in range(ngens):
                    gl = lines[pos].split()
                    if gl[0] != "g":
                        raise CheckpointError("expected generator line")
                    res.gen_t[s].append(int(gl[1]))
                    pos += 1
                    if s == 0:
                        res.diffs[s].append(())
                        continue
                    if not lines[pos].startswith("d"):
                        raise CheckpointError("expected differential line")
                    terms = []
                    for cell in lines[pos].split()[1:]:
                        tgt, _, exps = cell.partition(":")
                        e = tuple(int(x) for x in exps.split(",")) if exps else ()
                        terms.append((int(tgt), e))
                    res.diffs[s].append(tuple(terms))
                    pos += 1
            res.t_done = t_done
        except (IndexError, ValueError) as exc:
            raise CheckpointError(f"truncated or corrupt checkpoint: {exc}") from None
        return res


def _reduce_against(v: int, rref_rows: List[int]) -> int:
    for row in rref_rows:
        if v & (row & -row):
            v ^= row
    return v


def _insert_rref(v: int, rref_rows: List[int]) -> None:
    """Insert a (reduced) vector and restore reduced echelon form."""
    low = v & -v
    for i, row in enumerate(rref_rows):
        if row & low:
            rref_rows[i] ^= v
    rref_rows.append(v)
    rref_rows.sort(key=lambda r: r & -r)


def _decode(v: int, basis: Sequence[Tuple[int, Exponents]]) -> DiffTerms:
    terms = []
    while v:
        low = v & -v
        terms.append(basis[low.bit_length() - 1])
        v ^= low
    return tuple(sorted(terms))


def minimal_resolution(
    max_s: int,
    max_t: int,
    workers: int = 1,
    budget_cells: Optional[int] = None,
    resume: Optional[Resolution] = None,
) -> Resolution:
    """Resolution of F2 complete for all s <= max_s, t <= max_t."""
    if max_t < 0:
        raise ValueError("max_t must be non-negative")
    res = resume if resume is not None else Resolution(max_s)
    if resume is not None and resume.max_s != max_s:
        raise CheckpointError(
            f"checkpoint was computed with max_s={resume.max_s}, requested {max_s}"
        )
    return res.extend(max_t, workers=workers, budget_cells=budget_cells)


__all__ = [
    "BudgetExceeded",
    "CHECKPOINT_HEADER",
    "CheckpointError",
    "Resolution",
    "minimal_resolution",
]
