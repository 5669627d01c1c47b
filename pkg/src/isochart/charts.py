"""Finitely supported charts: bidegree (or tridegree) -> dimension + labels.

Every engine in the package emits its results through this type, and the
TSV serialization below is the one external chart format: a header line
declaring the grading, then one sorted row per supported key.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Sequence, Tuple

Key = Tuple[int, ...]

FORMAT_HEADER = "# isochart chart v1"


class ChartFormatError(ValueError):
    """Malformed chart file."""


@dataclass
class Chart:
    gradings: Tuple[str, ...]
    entries: Dict[Key, Tuple[int, Tuple[str, ...]]] = field(default_factory=dict)

    def dim(self, key: Sequence[int]) -> int:
        entry = self.entries.get(tuple(key))
        return entry[0] if entry else 0

    def labels(self, key: Sequence[int]) -> Tuple[str, ...]:
        entry = self.entries.get(tuple(key))
        return entry[1] if entry else ()

    def set(self, key: Sequence[int], dim: int, labels: Sequence[str] = ()) -> None:
        key = tuple(key)
        if len(key) != len(self.gradings):
            raise ValueError("key arity does not match grading")
        if dim < 0:
            raise ValueError("negative dimension")
        if dim == 0:
            self.entries.pop(key, None)
            return
        labels = tuple(labels)
        if labels and len(labels) != dim:
            raise ValueError("label count must match dimension")
        self.entries[key] = (dim, labels)

    def add(self, key: Sequence[int], dim: int = 1, labels: Sequence[str] = ()) -> None:
        key = tuple(key)
        old_dim, old_labels = self.entries.get(key, (0, ()))
        self.set(key, old_dim + dim, tuple(old_labels) + tuple(labels))

    def items(self) -> Iterator[Tuple[Key, int, Tuple[str, ...]]]:
        for key in sorted(self.entries):
            dim, labels = self.entries[key]
            yield key, dim, labels

    def keys(self) -> List[Key]:
        return sorted(self.entries)

    def total_dim(self) -> int:
        return sum(dim for dim, _ in self.entries.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chart):
            return NotImplemented
        return self.gradings == other.gradings and self.entries == other.entries

    def dims_equal(self, other: "Chart") -> bool:
        """Dimension-by-dimension equality, ignoring labels."""
        mine = {k: d for k, (d, _) in self.entries.items()}
        theirs = {k: d for k, (d, _) in other.entries.items()}
        return mine == theirs

    def to_tsv(self) -> str:
        lines = [FORMAT_HEADER, "# grading: " + "\t".join(self.gradings)]
        for key, dim, labels in self.items():
            cells = [str(k) for k in key] + [str(dim), ",".join(labels)]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> "Chart":
        lines = text.splitlines()
        if not lines or lines[0].strip() != FORMAT_HEADER:
            raise ChartFormatError("missing chart header")
        if len(lines) < 2 or not lines[1].startswith("# grading: "):
            raise ChartFormatError("missing grading declaration")
        gradings = tuple(lines[1][len("# grading: "):].split("\t"))
        chart = cls(gradings)
        for lineno, line in enumerate(lines[2:], start=3):
            if not line.strip() or line.startswith("#"):
                continue
            cells = line.split("\t")
            if len(cells) != len(gradings) + 2:
                raise ChartFormatError(f"line {lineno}: expected {len(gradings) + 2} columns")
            try:
                key = tuple(int(c) for c in cells[: len(gradings)])
                dim = int(cells[len(gradings)])
            except ValueError as exc:
                raise ChartFormatError(f"line {lineno}: {exc}") from None
            labels = tuple(cells[-1].split(",")) if cells[-1] else ()
            chart.set(key, dim, labels)
        return chart


__all__ = ["Chart", "ChartFormatError", "FORMAT_HEADER", "Key"]
