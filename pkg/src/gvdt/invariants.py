"""Gopakumar-Vafa, Gromov-Witten and Donaldson-Thomas generating functions.

Conventions.  ``q = -e^{i lambda}``, so that ``(2 sin(m lambda/2))^2`` equals
``2 - (-q)^m - (-q)^{-m}``; everything below is exact rational arithmetic in
``q`` and ``t^beta``.  A reduced DT series has beta = 0 coefficient 1, and the
full series is the reduced one times ``M(-q)^{chern_degree}``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

from .errors import (InconsistentSeriesError, IntegralityError,
                     MissingEntryError, WindowError)
from .partitions import mcmahon_log
from .series import (RANK1, MultiSeries, QLaurent, _unit_power, binomial,
                     rational, series_exp, series_log)

__all__ = [
    "GVTable", "GWTable", "ThreefoldData", "DTSeries",
    "z0_partition_function", "genus_factor", "gv_to_dt_reduced",
    "cover_term", "free_energy", "dt_from_free_energy", "dt_free_energy",
    "dt_reduced_to_gv", "sin_power_coefficients", "gv_to_gw", "gw_to_gv",
    "dt_full", "dt_reduce", "default_window",
]


# ---------------------------------------------------------------------------
# tables

class _Table:
    keep_zeros = False

    def __init__(self, entries=None, basis=RANK1):
        self.basis = basis
        e = {}
        for (beta, g), v in (entries or {}).items():
            beta = basis.check(beta)
            if beta == basis.zero:
                raise ValueError("tables have no beta = 0 entries")
            if not isinstance(g, int) or g < 0:
                raise ValueError(f"genus must be a non-negative integer, got {g!r}")
            v = rational(v)
            key = (beta, g)
            v = e.get(key, 0) + v
            e[key] = v
        if not self.keep_zeros:
            e = {k: v for k, v in e.items() if v}
        self._e = dict(sorted(e.items(), key=lambda kv: (basis.sort_key(kv[0][0]), kv[0][1])))

    def __getitem__(self, key):
        beta, g = key
        return self._e.get((self.basis.check(beta), g), 0)

    def __contains__(self, key):
        beta, g = key
        return (self.basis.check(beta), g) in self._e

    def __iter__(self):
        return iter(self._e)

    def __len__(self):
        return len(self._e)

    def items(self):
        return self._e.items()

    def classes(self):
        return sorted({b for b, _ in self._e}, key=self.basis.sort_key)

    def genera(self, beta):
        beta = self.basis.check(beta)
        return {g: v for (b, g), v in self._e.items() if b == beta}

    @property
    def max_genus(self):
        return max((g for _, g in self._e), default=0)

    @property
    def max_degree(self):
        return max((self.basis.degree(b) for b, _ in self._e), default=0)

    def restrict(self, tmax):
        return type(self)({k: v for k, v in self._e.items()
                           if self.basis.degree(k[0]) <= tmax}, self.basis)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.basis == other.basis and self._e == other._e

    def __repr__(self):
        body = ", ".join(f"({list(b)}, g={g}): {v}" for (b, g), v in self._e.items())
        return f"{type(self).__name__}({{{body}}})"


class GVTable(_Table):
    """Gopakumar-Vafa invariants ``n^g_beta``; zero entries are not stored.

    Values are integers for genuine GV data; a table solved from GW input may
    hold fractions, which ``integrality_report`` lists.
    """

    def gmax(self, beta):
        gs = [g for g, v in self.genera(beta).items() if v]
        return max(gs) if gs else None

    @property
    def is_integral(self):
        return all(isinstance(v, int) for v in self._e.values())

    def integrality_report(self):
        return [(b, g, v, isinstance(v, int)) for (b, g), v in self._e.items()]


class GWTable(_Table):
    """Gromov-Witten invariants ``N^g_beta`` (rational; zeros are kept)."""

    keep_zeros = True


@dataclass(frozen=True)
class ThreefoldData:
    euler: int
    chern_degree: int = None

    def __post_init__(self):
        if self.chern_degree is None:
            object.__setattr__(self, "chern_degree", self.euler)


@dataclass(frozen=True)
class DTSeries:
    series: MultiSeries
    reduced: bool = True

    def coefficient(self, beta):
        return self.series.coefficient(beta)

    def __getitem__(self, key):
        return self.series[key]


# ---------------------------------------------------------------------------
# dimension zero

def z0_partition_function(x, order):
    """M(-q)^chern_degree to q^order, via exp(chern_degree * log M(-q))."""
    if order < 1:
        raise ValueError("order must be positive")
    return (mcmahon_log(order, -1) * x.chern_degree).exp()


# ---------------------------------------------------------------------------
# GV -> DT, product form

def _max_genus_shift(gv):
    return max(0, gv.max_genus - 1)


def default_window(gv, tmax):
    """A q-window wide enough to build and invert the DT series of ``gv``."""
    v = _max_genus_shift(gv)
    return (-v * tmax, 2 + v * tmax)


def _binomial_monomial(beta, a, c, e, basis, tmax, qwindow):
    """(1 + c q^a t^beta)^e, exact in q, truncated at total degree tmax."""
    qmin, qmax = qwindow
    d = basis.degree(beta)
    terms = {}
    for i in range(tmax // d + 1):
        k = a * i
        coeff = binomial(e, i) * rational(Fraction(c) ** i)
        if not coeff or k > qmax:
            continue
        if k < qmin:
            raise WindowError(f"window too narrow: (q^{a} t^{list(beta)})^{i} needs "
                              f"qmin <= {k}, have {qmin}")
        terms[(tuple(i * b for b in beta), k)] = coeff
    return MultiSeries(basis, tmax, qwindow, terms)


def genus_factor(beta, g, n, qwindow, tmax, basis=RANK1):
    """The (beta, g) factor of the GV product formula for the reduced DT series.

    g = 0:  prod_{j>=1} (1 + (-1)^(j+1) q^j t^beta)^(j n), cut at j = qmax
    g >= 1: prod_{k=0}^{2g-2} (1 + (-1)^(g-k) q^(g-1-k) t^beta)^((-1)^(k+g) n C(2g-2,k))
    """
    beta = basis.check(beta)
    if beta == basis.zero:
        raise ValueError("genus factors live at nonzero classes")
    qmin, qmax = qwindow
    out = MultiSeries.one(basis, tmax, qwindow)
    if not n or basis.degree(beta) > tmax:
        return out
    if g == 0:
        factors = [(j, (-1) ** (j + 1), j * n) for j in range(1, qmax + 1)]
    else:
        if qmin > 1 - g:
            raise WindowError(f"window too narrow for genus {g}: need qmin <= {1 - g}")
        factors = [(g - 1 - k, (-1) ** (g - k), (-1) ** (k + g) * n * binomial(2 * g - 2, k))
                   for k in range(2 * g - 1)]
    for a, c, e in factors:
        out = out * _binomial_monomial(beta, a, c, e, basis, tmax, qwindow)
    return out


def _guarded(build, qwindow, slack):
    # build at a raised ceiling until every class is known to the requested qmax
    qmin, qmax = qwindow
    extra = slack
    while True:
        s = build((qmin, qmax + extra))
        if s.known_qmax >= qmax:
            return s.truncate(qmax)
        extra += qmax - s.known_qmax


def _resolve(gv, qwindow, tmax):
    tmax = gv.max_degree if tmax is None else tmax
    qwindow = default_window(gv, tmax) if qwindow is None else tuple(qwindow)
    if qwindow[0] > qwindow[1]:
        raise ValueError(f"empty q-window {qwindow}")
    return qwindow, tmax


def gv_to_dt_reduced(gv, qwindow=None, tmax=None):
    """Reduced DT series as the product of all genus factors of ``gv``.

    Every coefficient of the result in ``[qmin, qmax]`` and total degree
    ``<= tmax`` is exact.
    """
    qwindow, tmax = _resolve(gv, qwindow, tmax)
    basis = gv.basis

    def build(win):
        z = MultiSeries.one(basis, tmax, win)
        for (beta, g), n in gv.items():
            z = z * genus_factor(beta, g, n, win, tmax, basis)
        return z

    return DTSeries(_guarded(build, qwindow, _max_genus_shift(gv) * tmax), reduced=True)


# ---------------------------------------------------------------------------
# GV -> DT, exponential form

def cover_term(g, m, qmin, qmax):
    """(1/m) (2 sin(m lambda/2))^(2g-2) written in q, exact on [qmin, qmax].

    With Q = (-1)^(m+1) q^m the bracket is 2 + Q + 1/Q, so genus g >= 1 gives
    Q^(1-g) (1+Q)^(2g-2) / m and genus 0 gives Q/(1+Q)^2 / m.
    """
    sign = (-1) ** (m + 1)
    c = {}
    if g >= 1:
        for k in range(2 * g - 1):
            e = k - (g - 1)
            c[m * e] = Fraction(binomial(2 * g - 2, k) * sign ** (e % 2), m)
    else:
        k = 1
        while m * k <= qmax:
            c[m * k] = Fraction((-1) ** (k + 1) * k * sign ** (k % 2), m)
            k += 1
    lo = min(c, default=0)
    if lo < qmin:
        raise WindowError(f"window too narrow for genus {g} covers of degree {m}: "
                          f"need qmin <= {lo}")
    return QLaurent(c, qmin, qmax)


def _divisors(beta):
    d = 0
    for b in beta:
        d = gcd(d, b)
    return [m for m in range(1, d + 1) if d % m == 0]


def free_energy(gv, qwindow, tmax):
    """F'(q) = sum over (beta, g, m) of n^g_beta cover_term(g, m) t^(m beta)."""
    basis = gv.basis
    qmin, qmax = qwindow
    classes = {}
    for (beta, g), n in gv.items():
        d = basis.degree(beta)
        m = 1
        while m * d <= tmax:
            gamma = tuple(m * b for b in beta)
            term = cover_term(g, m, qmin, qmax) * n
            classes[gamma] = classes[gamma] + term if gamma in classes else term
            m += 1
    return MultiSeries.from_classes(basis, tmax, qwindow, classes)


def dt_from_free_energy(gv, qwindow=None, tmax=None):
    """Reduced DT series as exp(F'), the second derivation route."""
    qwindow, tmax = _resolve(gv, qwindow, tmax)
    return DTSeries(_guarded(lambda win: series_exp(free_energy(gv, win, tmax)),
                             qwindow, _max_genus_shift(gv) * tmax), reduced=True)


def dt_free_energy(z):
    """log of a reduced DT series."""
    if not z.reduced:
        raise ValueError("dt_free_energy needs a reduced DT series")
    return series_log(z.series)


# ---------------------------------------------------------------------------
# DT -> GV

def dt_reduced_to_gv(z, strict=True):
    """Recover the GV table whose product formula reproduces ``z``.

    Classes are solved in increasing degree.  After removing multiple covers
    of solved classes from log z, the negative q-powers fix genera >= 2 from
    the top down, q^0 fixes genus 1, q^1 fixes genus 0, and whatever remains
    in the known window must vanish.
    """
    if not z.reduced:
        raise ValueError("dt_reduced_to_gv needs a reduced DT series")
    f = series_log(z.series)
    basis = f.basis
    solved = {}
    for beta in basis.classes(f.tmax):
        if beta == basis.zero:
            continue
        r = f.coefficient(beta)
        for m in _divisors(beta)[1:]:
            alpha = tuple(b // m for b in beta)
            for g, n in solved.get(alpha, {}).items():
                r = r - cover_term(g, m, r.qmin, r.qmax) * n
        if r.qmax < 2:
            raise WindowError(f"class {list(beta)} is known only up to q^{r.qmax}; "
                              f"inversion needs q^2 (widen the q-window)")
        found = {}
        while r.valuation() is not None and r.valuation() < 0:
            g = 1 - r.valuation()
            found[g] = r[r.valuation()]
            r = r - cover_term(g, 1, r.qmin, r.qmax) * found[g]
        found[1] = r[0]
        r = r - found[1]
        found[0] = r[1]
        r = r - cover_term(0, 1, r.qmin, r.qmax) * found[0]
        if not r.is_zero():
            raise InconsistentSeriesError(
                f"class {list(beta)}: residual {r!r} is not in the span of the genus basis")
        found = {g: v for g, v in found.items() if v}
        if strict:
            for g, v in sorted(found.items()):
                if not isinstance(v, int):
                    raise IntegralityError(beta, g, v)
        if found:
            solved[beta] = found
    return GVTable({(b, g): v for b, gs in solved.items() for g, v in gs.items()}, basis)


# ---------------------------------------------------------------------------
# GV <-> GW

def sin_power_coefficients(e, jmax):
    """c_j with (2 sin(x/2))^e = x^e * sum_j c_j x^(2j), for j <= jmax."""
    s = [Fraction((-1) ** k, 4 ** k * factorial(2 * k + 1)) for k in range(jmax + 1)]
    return _unit_power(s, e)


def _lambda_table(jmax):
    # coefficient rows for genus g = 0..jmax
    return {g: sin_power_coefficients(2 * g - 2, jmax - g) for g in range(jmax + 1)}


def gv_to_gw(gv, jmax, tmax=None):
    """N^h_gamma = sum_{m | gamma} sum_{g <= h} n^g_{gamma/m} c^(g)_{h-g} m^(2h-3).

    The result holds every (gamma, h) with gamma != 0 of degree <= tmax and
    h <= jmax, zeros included.
    """
    if jmax < 0:
        raise ValueError("jmax must be non-negative")
    basis = gv.basis
    tmax = gv.max_degree if tmax is None else tmax
    coeff = _lambda_table(jmax)
    out = {(b, h): Fraction(0) for b in basis.classes(tmax) if b != basis.zero
           for h in range(jmax + 1)}
    for (beta, g), n in gv.items():
        if g > jmax:
            continue
        d = basis.degree(beta)
        m = 1
        while m * d <= tmax:
            gamma = tuple(m * b for b in beta)
            for h in range(g, jmax + 1):
                out[(gamma, h)] += n * coeff[g][h - g] * Fraction(m) ** (2 * h - 3)
            m += 1
    return GWTable(out, basis)


def gw_to_gv(gw, gmax=None):
    """Triangular inversion of ``gv_to_gw``; entries may come out fractional."""
    basis = gw.basis
    gmax = gw.max_genus if gmax is None else gmax
    coeff = _lambda_table(gmax)
    todo = sorted(((b, h) for b, h in gw if h <= gmax),
                  key=lambda k: (basis.sort_key(k[0]), k[1]))
    n = {}
    for gamma, h in todo:
        value = Fraction(gw[(gamma, h)])
        for m in _divisors(gamma):
            alpha = tuple(b // m for b in gamma)
            for g in range(h + 1):
                if m == 1 and g == h:
                    continue
                if (alpha, g) not in gw:
                    raise MissingEntryError(
                        f"N^{h}_{list(gamma)} needs N^{g}_{list(alpha)}, which is missing")
                value -= n[(alpha, g)] * coeff[g][h - g] * Fraction(m) ** (2 * h - 3)
        n[(gamma, h)] = value
    return GVTable(n, basis)


# ---------------------------------------------------------------------------

def dt_full(z, x):
    """Full DT series: the reduced series times M(-q)^chern_degree."""
    if not z.reduced:
        raise ValueError("dt_full needs a reduced DT series")
    s = z.series
    if x.chern_degree == 0:
        return DTSeries(s, reduced=False)
    # M(-q)^c is exact to any order; take enough that no class loses precision
    order = max(1, s.qmax - min(s.qmin, 0))
    z0 = z0_partition_function(x, order)
    zero = MultiSeries.from_classes(s.basis, s.tmax, (s.qmin, order),
                                    {s.basis.zero: z0})
    return DTSeries((s * zero).truncate(s.qmax), reduced=False)


def dt_reduce(z, x):
    """Inverse of ``dt_full``: divide a full series by M(-q)^chern_degree."""
    if z.reduced:
        raise ValueError("dt_reduce needs a full DT series")
    inverse = ThreefoldData(x.euler, -x.chern_degree)
    return DTSeries(dt_full(DTSeries(z.series), inverse).series, reduced=True)
