"""Regradings between Ext charts and the isotropic homotopy charts.

The bigraded homotopy of the isotropic cofiber of rho matches Ext via
(s, t) |-> (p, q) = (2t - s, t); over the evenly graded coefficient Hopf
algebra the same groups appear in tridegree (s, 2u, u) and vanish off the
diagonal.  Both moves are bijective relabelings, so total dimensions are
preserved and checked.
"""

from __future__ import annotations

from ..charts import Chart
from ..reporting import Report


def crho_chart(ext: Chart) -> Chart:
    """Relabel an (s, t) Ext chart as the (p, q) homotopy chart of the
    cofiber of rho: (p, q) = (2t - s, t)."""
    if ext.gradings != ("s", "t"):
        raise ValueError(f"expected an (s, t) chart, got {ext.gradings}")
    out = Chart(("p", "q"))
    for (s, t), dim, labels in ext.items():
        out.set((2 * t - s, t), dim, labels)
    assert out.total_dim() == ext.total_dim()
    return out


def trigraded_ext_G(ext: Chart) -> Chart:
    """Place an (s, u) chart over the dual Steenrod algebra on the t = 2u
    diagonal of the trigraded chart over the evenly regraded Hopf algebra."""
    if ext.gradings != ("s", "t"):
        raise ValueError(f"expected an (s, t) chart, got {ext.gradings}")
    out = Chart(("s", "t", "u"))
    for (s, u), dim, labels in ext.items():
        out.set((s, 2 * u, u), dim, labels)
    assert out.total_dim() == ext.total_dim()
    return out


def vanishing_check(chart: Chart) -> Report:
    """Shape constraints on the regraded chart: support in q >= 0 and
    Chow-Novikov degree p - 2q <= 0, with a single class at the origin."""
    if chart.gradings != ("p", "q"):
        raise ValueError(f"expected a (p, q) chart, got {chart.gradings}")
    report = Report("vanishing")
    bad_q = [(p, q) for (p, q) in chart.keys() if q < 0]
    report.check(
        "no support in negative weight",
        not bad_q,
        "" if not bad_q else f"violations at {bad_q[:5]}",
    )
    bad_cn = [(p, q) for (p, q) in chart.keys() if p > 2 * q]
    report.check(
        "no support in positive Chow-Novikov degree",
        not bad_cn,
        "" if not bad_cn else f"violations at {bad_cn[:5]}",
    )
    zero_line = [(p, q) for (p, q) in chart.keys() if q == 0]
    report.check(
        "weight zero reduced to the origin",
        zero_line == [(0, 0)],
        f"weight-0 entries: {zero_line}",
    )
    report.check(
        "dimension 1 at the origin",
        chart.dim((0, 0)) == 1,
        f"dim(0,0) = {chart.dim((0, 0))}",
    )
    return report


__all__ = ["crho_chart", "trigraded_ext_G", "vanishing_check"]
