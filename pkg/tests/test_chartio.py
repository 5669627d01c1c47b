import pytest

from isochart.charts import Chart, ChartFormatError


def test_round_trip_with_labels():
    chart = Chart(("s", "t"))
    chart.set((1, 2), 1, ["h1"])
    chart.set((0, 0), 2, ["a", "b"])
    parsed = Chart.from_tsv(chart.to_tsv())
    assert parsed == chart


def test_rows_sorted():
    chart = Chart(("p", "q"))
    chart.set((3, 1), 1)
    chart.set((-1, -1), 1)
    chart.set((0, 5), 1)
    lines = chart.to_tsv().splitlines()[2:]
    keys = [tuple(int(x) for x in ln.split("\t")[:2]) for ln in lines]
    assert keys == sorted(keys)


def test_tridegree_round_trip():
    chart = Chart(("s", "t", "u"))
    chart.set((1, 4, 2), 3, ["x", "y", "z"])
    assert Chart.from_tsv(chart.to_tsv()) == chart


def test_zero_dimension_removes_entry():
    chart = Chart(("s", "t"))
    chart.set((1, 1), 1)
    chart.set((1, 1), 0)
    assert chart.entries == {}


def test_label_count_must_match_dim():
    chart = Chart(("s", "t"))
    with pytest.raises(ValueError):
        chart.set((0, 0), 2, ["only-one"])


def test_missing_header():
    with pytest.raises(ChartFormatError):
        Chart.from_tsv("0\t0\t1\t\n")


def test_missing_grading():
    with pytest.raises(ChartFormatError):
        Chart.from_tsv("# isochart chart v1\n0\t0\t1\t\n")


def test_bad_column_count_reports_line():
    text = "# isochart chart v1\n# grading: s\tt\n0\t0\t1\n"
    with pytest.raises(ChartFormatError, match="line 3"):
        Chart.from_tsv(text)


def test_comments_and_blank_lines_skipped():
    text = (
        "# isochart chart v1\n# grading: s\tt\n"
        "# a provenance note\n\n0\t0\t1\tu\n"
    )
    chart = Chart.from_tsv(text)
    assert chart.dim((0, 0)) == 1


def test_dims_equal_ignores_labels():
    a = Chart(("s", "t"))
    a.set((0, 0), 1, ["x"])
    b = Chart(("s", "t"))
    b.set((0, 0), 1, ["y"])
    assert a.dims_equal(b)
    assert a != b
