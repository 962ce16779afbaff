from fractions import Fraction

import pytest

from gvdt.errors import ParseError
from gvdt.formats import (format_dt, format_gv, format_gw, format_rational, format_series,
                          parse_dt, parse_gv, parse_gw, parse_series)
from gvdt.invariants import DTSeries, GVTable, GWTable, gv_to_dt_reduced
from gvdt.series import RANK1, Basis, MultiSeries, QLaurent

SERIES = """\
rank 1
weights 1
tmax 2
qwindow -1 3
kind reduced
prec beta=[2] 1
beta=[0] q^0 coeff=1/1
beta=[1] q^-1 coeff=3/1
beta=[1] q^2 coeff=-1/2
beta=[2] q^1 coeff=5/1
"""


def test_rational_format():
    assert format_rational(3) == "3/1"
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(3, always_fraction=False) == "3"


def test_series_roundtrip_exact_text():
    z = parse_dt(SERIES)
    assert z.reduced
    assert z.series.precision(2) == 1 and z.series.precision(1) == 3
    assert z.series[(1, 2)] == Fraction(-1, 2)
    assert format_dt(z) == SERIES


def test_series_sorted_by_degree_class_exponent():
    basis = Basis((1, 1))
    s = MultiSeries(basis, 2, (0, 2), {((1, 0), 2): 1, ((0, 1), 0): 1, ((1, 0), 1): 1,
                                        ((0, 0), 0): 1})
    lines = [l for l in format_series(s).splitlines() if l.startswith("beta")]
    assert lines == ["beta=[0,0] q^0 coeff=1/1", "beta=[0,1] q^0 coeff=1/1",
                     "beta=[1,0] q^1 coeff=1/1", "beta=[1,0] q^2 coeff=1/1"]
    assert parse_series(format_series(s)) == s


def test_full_kind():
    z = DTSeries(MultiSeries.one(RANK1, 1, (0, 2)), reduced=False)
    assert "kind full" in format_dt(z)
    assert not parse_dt(format_dt(z)).reduced


def test_dt_roundtrip_random_table():
    table = GVTable({(1, 0): 2, (2, 2): -3, (3, 1): 7})
    z = gv_to_dt_reduced(table, tmax=3)
    assert parse_dt(format_dt(z)).series == z.series


def test_comments_and_blank_lines():
    text = "# header\nrank 1\n\nweights 1  # degree\nbeta=[1] g=0 n=3 # lines\n"
    assert parse_gv(text) == GVTable({(1, 0): 3})


@pytest.mark.parametrize("text, lineno", [
    ("rank 1\nweights 1\nbeta=[1] g=0 n=x\n", 3),
    ("rank 1\nweights 1\nbeta=[1,2] g=0 n=1\n", 3),
    ("rank 1\nweights 1\nbeta=[1] g=0 n=1\nbeta=[1] g=0 n=2\n", 4),
    ("rank 1\nweights 1\nbeta=[0] g=0 n=1\n", 3),
    ("rank 1\nweights 1\nhello\n", 3),
    ("rank 2\nweights 1\n", 2),
    ("rank 1\nweights 1\nbeta=[1] g=0 N=1/2\n", 3),
])
def test_gv_parse_errors_carry_line(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_gv(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


@pytest.mark.parametrize("text", [
    "rank 1\nweights 1\ntmax 1\nbeta=[0] q^0 coeff=1/1\n",
    "rank 1\nweights 1\ntmax 1\nqwindow 0 2\nbeta=[1] q^3 coeff=1/1\n",
    "rank 1\nweights 1\ntmax 1\nqwindow 0 2\nbeta=[2] q^0 coeff=1/1\n",
    "rank 1\nweights 1\ntmax 1\nqwindow 0 2\nkind half\n",
    "rank 1\nweights 1\ntmax 1\nqwindow 0 2\nprec beta=[1] 0\nbeta=[1] q^1 coeff=1/1\n",
    "rank 1\nweights 1\ntmax 1\nqwindow 0 2\nbeta=[1] q^1 coeff=1/0\n",
])
def test_series_parse_errors(text):
    with pytest.raises(ParseError):
        parse_dt(text)


def test_gv_and_gw_formats():
    gv = GVTable({(2, 0): -6, (1, 0): 3, (1, 1): Fraction(1, 2)})
    text = format_gv(gv)
    assert text == "rank 1\nweights 1\nbeta=[1] g=0 n=3\nbeta=[1] g=1 n=1/2\nbeta=[2] g=0 n=-6\n"
    assert parse_gv(text) == gv
    gw = GWTable({(1, 0): 1, (1, 1): Fraction(1, 12), (2, 1): 0})
    text = format_gw(gw)
    assert "beta=[2] g=1 N=0/1" in text and "beta=[1] g=1 N=1/12" in text
    assert parse_gw(text) == gw


def test_rank_two_weights():
    text = "rank 2\nweights 1,3\nbeta=[1,1] g=2 n=-4\n"
    t = parse_gv(text)
    assert t.basis == Basis((1, 3)) and t.max_degree == 4
    assert format_gv(t) == text
