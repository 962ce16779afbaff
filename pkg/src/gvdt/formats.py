"""Line-oriented text formats for series and invariant tables.

Series::

    rank 1
    weights 1
    tmax 6
    qwindow -3 8
    kind reduced
    prec beta=[4] 5
    beta=[0] q^0 coeff=1/1
    beta=[1] q^1 coeff=3/1

``prec`` lines record classes known to a lower power than the window ceiling;
``kind`` is present only for DT series.  Monomial lines are sorted by
(degree, lexicographic class, q-exponent).

Tables::

    rank 1
    weights 1
    beta=[1] g=0 n=3          (GV)
    beta=[1] g=0 N=1/1        (GW)

Blank lines and ``#`` comments are ignored everywhere.
"""

import re
from fractions import Fraction

from .errors import ParseError
from .invariants import DTSeries, GVTable, GWTable
from .series import Basis, MultiSeries, QLaurent, rational

__all__ = ["format_rational", "format_series", "parse_series", "format_dt",
           "parse_dt", "format_gv", "parse_gv", "format_gw", "parse_gw"]

_BETA = r"beta=\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]"
_MONO = re.compile(_BETA + r"\s+q\^(-?\d+)\s+coeff=(\S+)$")
_PREC = re.compile(r"prec\s+" + _BETA + r"\s+(-?\d+)$")
_ENTRY = re.compile(_BETA + r"\s+g=(\d+)\s+([nN])=(\S+)$")


def format_rational(x, always_fraction=True):
    x = Fraction(x)
    if not always_fraction and x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _beta(beta):
    return "beta=[" + ",".join(str(b) for b in beta) + "]"


def _header(basis):
    return [f"rank {basis.rank}", "weights " + ",".join(str(w) for w in basis.weights)]


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _rational(token, lineno):
    try:
        return rational(Fraction(token))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {token!r}", lineno) from None


def _parse_header(key, rest, state, lineno):
    try:
        if key == "rank":
            state["rank"] = int(rest)
        elif key == "weights":
            state["weights"] = tuple(int(w) for w in rest.replace(",", " ").split())
        elif key == "tmax":
            state["tmax"] = int(rest)
        elif key == "qwindow":
            lo, hi = (int(x) for x in rest.split())
            state["qwindow"] = (lo, hi)
        elif key == "kind":
            if rest not in ("reduced", "full"):
                raise ValueError(rest)
            state["kind"] = rest
        else:
            return False
    except ValueError:
        raise ParseError(f"bad value for {key!r}: {rest!r}", lineno) from None
    return True


def _basis(state, lineno):
    rank = state.get("rank")
    weights = state.get("weights") or ((1,) * rank if rank else None)
    if weights is None:
        raise ParseError("missing 'rank' header", lineno)
    if rank is not None and len(weights) != rank:
        raise ParseError(f"rank {rank} does not match {len(weights)} weights", lineno)
    try:
        return Basis(weights)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def _class(basis, text, lineno):
    try:
        return basis.check(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


# -- series -------------------------------------------------------------------

def format_series(s, kind=None):
    lines = _header(s.basis) + [f"tmax {s.tmax}", f"qwindow {s.qmin} {s.qmax}"]
    if kind is not None:
        lines.append(f"kind {kind}")
    for beta in s.classes():
        if s.precision(beta) < s.qmax:
            lines.append(f"prec {_beta(beta)} {s.precision(beta)}")
    for beta in s.classes():
        for k, c in s.coefficient(beta).items():
            lines.append(f"{_beta(beta)} q^{k} coeff={format_rational(c)}")
    return "\n".join(lines) + "\n"


def _parse_series(text):
    state, terms, prec = {}, {}, {}
    last = 0
    for lineno, line in _lines(text):
        last = lineno
        m = _MONO.match(line)
        if m:
            terms[(m.group(1), int(m.group(2)), lineno)] = _rational(m.group(3), lineno)
            continue
        m = _PREC.match(line)
        if m:
            prec[(m.group(1), lineno)] = int(m.group(2))
            continue
        key, _, rest = line.partition(" ")
        if not _parse_header(key, rest.strip(), state, lineno):
            raise ParseError(f"unrecognised line {line!r}", lineno)
    basis = _basis(state, last)
    if "qwindow" not in state:
        raise ParseError("missing 'qwindow' header", last)
    qmin, qmax = state["qwindow"]
    grouped = {}
    for (b, k, lineno), c in terms.items():
        beta = _class(basis, b, lineno)
        if k < qmin or k > qmax:
            raise ParseError(f"q^{k} outside qwindow [{qmin}, {qmax}]", lineno)
        grouped.setdefault(beta, {})[k] = (c, lineno)
    tmax = state.get("tmax", max((basis.degree(b) for b in grouped), default=0))
    precs = {_class(basis, b, lineno): p for (b, lineno), p in prec.items()}
    classes = {}
    for beta in basis.classes(tmax):
        p = min(precs.get(beta, qmax), qmax)
        c = {}
        for k, (v, lineno) in grouped.get(beta, {}).items():
            if k > p:
                raise ParseError(f"q^{k} t^{list(beta)} lies above its precision q^{p}", lineno)
            c[k] = v
        classes[beta] = QLaurent(c, qmin, p)
    for beta in grouped:
        if basis.degree(beta) > tmax:
            raise ParseError(f"class {list(beta)} exceeds tmax {tmax}", last)
    return MultiSeries.from_classes(basis, tmax, (qmin, qmax), classes), state.get("kind")


def parse_series(text):
    return _parse_series(text)[0]


def format_dt(z):
    return format_series(z.series, "reduced" if z.reduced else "full")


def parse_dt(text):
    s, kind = _parse_series(text)
    return DTSeries(s, reduced=(kind != "full"))


# -- tables -------------------------------------------------------------------

def _format_table(table, key):
    lines = _header(table.basis)
    for (beta, g), v in table.items():
        lines.append(f"{_beta(beta)} g={g} {key}={format_rational(v, key == 'N')}")
    return "\n".join(lines) + "\n"


def format_gv(table):
    return _format_table(table, "n")


def format_gw(table):
    return _format_table(table, "N")


def _parse_table(text, key, cls):
    state, raw = {}, []
    last = 0
    for lineno, line in _lines(text):
        last = lineno
        m = _ENTRY.match(line)
        if m:
            if m.group(3) != key:
                raise ParseError(f"expected {key}= entries, found {m.group(3)}=", lineno)
            raw.append((m.group(1), int(m.group(2)), _rational(m.group(4), lineno), lineno))
            continue
        k, _, rest = line.partition(" ")
        if k in ("tmax", "qwindow", "kind") or not _parse_header(k, rest.strip(), state, lineno):
            raise ParseError(f"unrecognised line {line!r}", lineno)
    basis = _basis(state, last)
    entries = {}
    for b, g, v, lineno in raw:
        beta = _class(basis, b, lineno)
        if beta == basis.zero:
            raise ParseError("tables have no beta = 0 entries", lineno)
        if (beta, g) in entries:
            raise ParseError(f"duplicate entry for beta={list(beta)} g={g}", lineno)
        entries[(beta, g)] = v
    return cls(entries, basis)


def parse_gv(text):
    return _parse_table(text, "n", GVTable)


def parse_gw(text):
    return _parse_table(text, "N", GWTable)
