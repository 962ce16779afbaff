"""Exact truncated series.

Two layers:

``QLaurent``
    a Laurent series in ``q`` with rational coefficients, known exactly on a
    window ``[qmin, qmax]``.  Nothing lives below ``qmin`` (an operation that
    would put a nonzero term there raises :class:`WindowError`), and every
    coefficient above ``qmax`` is unknown.

``MultiSeries``
    a series in curve-class monomials ``t^beta`` truncated at total degree
    ``tmax``, whose coefficients are ``QLaurent`` series sharing one floor
    ``qmin`` and one nominal ceiling ``qmax``.  Each class additionally carries
    its own precision, which may drop below ``qmax`` when factors with negative
    q-powers are multiplied; products never report a coefficient that depends
    on a dropped term.

Coefficients are stored as ``int`` when integral and ``fractions.Fraction``
otherwise, so integer-valued computations stay on the fast path.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from math import factorial

from .errors import WindowError

__all__ = [
    "Basis", "RANK1", "QLaurent", "MultiSeries", "rational", "binomial",
    "series_mul", "series_exp", "series_log", "binom_power", "cover_substitute",
]


def rational(x):
    """Canonical exact rational: ``int`` if integral, else a reduced Fraction."""
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return rational(Fraction(x.strip()))
    raise TypeError(f"not an exact rational: {x!r}")


def binomial(e, i):
    """Generalized binomial coefficient C(e, i) for rational e and integer i >= 0."""
    if i < 0:
        return 0
    if isinstance(e, int) and e >= 0:
        if i > e:
            return 0
        return factorial(e) // (factorial(i) * factorial(e - i))
    num = Fraction(1)
    for j in range(i):
        num *= e - j
    return rational(num / factorial(i))


def _norm(coeffs):
    return {k: rational(c) for k, c in coeffs.items() if c}


# ---------------------------------------------------------------------------
# curve classes

@dataclass(frozen=True)
class Basis:
    """A basis of curve classes with positive integer degree weights.

    Classes are plain tuples of non-negative ints of length ``rank``; the
    degree of ``beta`` is ``sum(w * b for w, b in zip(weights, beta))``.
    """

    weights: tuple = (1,)

    def __post_init__(self):
        w = tuple(self.weights)
        if not w or any(not isinstance(x, int) or x <= 0 for x in w):
            raise ValueError(f"weights must be positive integers, got {w}")
        object.__setattr__(self, "weights", w)

    @property
    def rank(self):
        return len(self.weights)

    @property
    def zero(self):
        return (0,) * self.rank

    def check(self, beta):
        """Coerce ``beta`` to a class tuple (an int is accepted in rank 1)."""
        if isinstance(beta, int) and not isinstance(beta, bool):
            beta = (beta,)
        beta = tuple(beta)
        if len(beta) != self.rank:
            raise ValueError(f"class {list(beta)} has rank {len(beta)}, expected {self.rank}")
        if any(not isinstance(b, int) or b < 0 for b in beta):
            raise ValueError(f"class {list(beta)} must have non-negative integer entries")
        return beta

    def degree(self, beta):
        return sum(w * b for w, b in zip(self.weights, beta))

    def sort_key(self, beta):
        return (self.degree(beta), beta)

    def classes(self, tmax):
        """All classes of degree <= tmax in (degree, lexicographic) order."""
        return _classes(self.weights, tmax)


RANK1 = Basis((1,))


@lru_cache(maxsize=None)
def _classes(weights, tmax):
    if tmax < 0:
        return ()
    ranges = [range(tmax // w + 1) for w in weights]
    out = [b for b in _cartesian(*ranges)
           if sum(w * x for w, x in zip(weights, b)) <= tmax]
    out.sort(key=lambda b: (sum(w * x for w, x in zip(weights, b)), b))
    return tuple(out)


@lru_cache(maxsize=None)
def _splits(weights, tmax):
    """For each class gamma, every ordered pair (alpha, gamma - alpha)."""
    out = []
    for gamma in _classes(weights, tmax):
        pairs = []
        for alpha in _cartesian(*[range(g + 1) for g in gamma]):
            pairs.append((alpha, tuple(g - a for g, a in zip(gamma, alpha))))
        out.append((gamma, tuple(pairs)))
    return tuple(out)


# ---------------------------------------------------------------------------
# one variable

class QLaurent:
    """Truncated Laurent series in q with exact rational coefficients."""

    __slots__ = ("qmin", "qmax", "_c")

    def __init__(self, coeffs=None, qmin=0, qmax=0):
        c = {}
        for k, v in (coeffs or {}).items():
            v = rational(v)
            if not v or k > qmax:
                continue
            if k < qmin:
                raise WindowError(f"term q^{k} lies below the window floor q^{qmin}")
            c[k] = v
        self.qmin = qmin
        self.qmax = qmax
        self._c = c

    @classmethod
    def _make(cls, c, qmin, qmax):
        obj = cls.__new__(cls)
        obj.qmin = qmin
        obj.qmax = qmax
        obj._c = c
        return obj

    @classmethod
    def zero(cls, qmin=0, qmax=0):
        return cls._make({}, qmin, qmax)

    @classmethod
    def one(cls, qmin=0, qmax=0):
        return cls({0: 1}, qmin, qmax)

    # -- inspection --------------------------------------------------------

    @property
    def window(self):
        return (self.qmin, self.qmax)

    def __getitem__(self, k):
        if k > self.qmax:
            raise WindowError(f"coefficient of q^{k} is outside the known window "
                              f"[{self.qmin}, {self.qmax}]")
        return self._c.get(k, 0)

    def items(self):
        return sorted(self._c.items())

    def as_dict(self):
        return dict(self._c)

    def is_zero(self):
        return not self._c

    def valuation(self):
        """Lowest exponent with a nonzero coefficient, or None for zero."""
        return min(self._c) if self._c else None

    def _val(self):
        # lower bound on the true valuation, counting the unknown tail
        return min(self._c) if self._c else self.qmax + 1

    def coefficients(self, lo=None, hi=None):
        lo = self.qmin if lo is None else lo
        hi = self.qmax if hi is None else hi
        return [self[k] for k in range(lo, hi + 1)]

    def __eq__(self, other):
        if not isinstance(other, QLaurent):
            return NotImplemented
        return (self.qmin, self.qmax, self._c) == (other.qmin, other.qmax, other._c)

    def __hash__(self):
        return hash((self.qmin, self.qmax, tuple(self.items())))

    def __repr__(self):
        parts = []
        for k, c in self.items():
            if k == 0:
                parts.append(str(c))
            else:
                mono = "q" if k == 1 else f"q^{k}"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        body = " + ".join(parts) if parts else "0"
        return f"{body.replace('+ -', '- ')} + O(q^{self.qmax + 1})"

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QLaurent):
            return other
        v = rational(other)
        # scalars are exact constants
        return QLaurent({0: v}, min(0, self.qmin), max(self.qmax, 0))

    def __add__(self, other):
        other = self._coerce(other)
        qmax = min(self.qmax, other.qmax)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        c = {k: v for k, v in _norm(c).items() if k <= qmax}
        return QLaurent._make(c, min(self.qmin, other.qmin), qmax)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent._make({k: -v for k, v in self._c.items()}, self.qmin, self.qmax)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, s):
        s = rational(s)
        if not s:
            return QLaurent.zero(self.qmin, self.qmax)
        return QLaurent._make({k: rational(v * s) for k, v in self._c.items()},
                              self.qmin, self.qmax)

    def __mul__(self, other):
        if not isinstance(other, QLaurent):
            return self.scale(other)
        qmin = min(self.qmin, other.qmin)
        prec = min(self.qmax, other.qmax,
                   self.qmax + other._val(), other.qmax + self._val())
        return QLaurent._make(_convolve(self.items(), other.items(), prec, qmin, {}),
                              qmin, prec)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, QLaurent):
            return self * other ** -1
        return self.scale(Fraction(1) / rational(other))

    def __pow__(self, e):
        if not isinstance(e, int):
            raise TypeError("only integer powers of a Laurent series are supported")
        if e == 0:
            return QLaurent.one(self.qmin, self.qmax)
        if not self._c:
            if e < 0:
                raise ZeroDivisionError("zero (to known precision) has no inverse")
            return QLaurent.zero(self.qmin, min(self.qmax, self.qmax * e + e - 1))
        v = min(self._c)
        lead = self._c[v]
        # (lead q^v (1 + u))^e with u a power series known to qmax - v
        rel = self.qmax - v
        u = {k - v: rational(Fraction(c) / lead) for k, c in self._c.items()}
        p = _unit_power([u.get(k, 0) for k in range(rel + 1)], e)
        shift = v * e
        scale = rational(Fraction(lead) ** e)
        qmin = min(self.qmin, shift)
        c = {k + shift: rational(x * scale) for k, x in enumerate(p) if x}
        return QLaurent._make(c, qmin, rel + shift)

    def truncate(self, qmax):
        qmax = min(qmax, self.qmax)
        return QLaurent._make({k: v for k, v in self._c.items() if k <= qmax},
                              self.qmin, qmax)

    def negate_q(self):
        """Substitute q -> -q."""
        return QLaurent._make({k: (-v if k % 2 else v) for k, v in self._c.items()},
                              self.qmin, self.qmax)

    def substitute(self, m, sign=1):
        """Substitute q -> sign * q^m for a positive integer m."""
        if m < 1:
            raise ValueError("substitution power must be positive")
        c = {m * k: (-v if sign < 0 and k % 2 else v) for k, v in self._c.items()}
        return QLaurent._make(c, min(self.qmin, m * self.qmin), m * (self.qmax + 1) - 1)

    def exp(self):
        """exp of a power series with zero constant term."""
        if self._c and min(self._c) < 1:
            raise ValueError("exp needs a series with positive valuation")
        n = self.qmax
        lc = [self._c.get(k, 0) for k in range(n + 1)]
        e = [Fraction(0)] * (n + 1) if n >= 0 else []
        if n >= 0:
            e[0] = Fraction(1)
        for m in range(1, n + 1):
            s = sum(k * lc[k] * e[m - k] for k in range(1, m + 1) if lc[k])
            e[m] = Fraction(s) / m
        return QLaurent._make(_norm(dict(enumerate(e))), min(self.qmin, 0), n)

    def log(self):
        """log of a power series with constant term 1."""
        if self._c.get(0) != 1 or min(self._c) < 0:
            raise ValueError("log needs a power series with constant term 1")
        n = self.qmax
        a = [self._c.get(k, 0) for k in range(n + 1)]
        lg = [Fraction(0)] * (n + 1)
        for m in range(1, n + 1):
            s = m * a[m] - sum(k * lg[k] * a[m - k] for k in range(1, m))
            lg[m] = Fraction(s) / m
        return QLaurent._make(_norm(dict(enumerate(lg))), min(self.qmin, 0), n)


def _unit_power(a, e):
    """(a[0] + a[1] q + ...)^e for a[0] == 1, rational e, same length."""
    n = len(a)
    if n == 0:
        return []
    p = [Fraction(0)] * n
    p[0] = Fraction(1)
    for k in range(1, n):
        s = sum(((e + 1) * i - k) * a[i] * p[k - i] for i in range(1, k + 1) if a[i])
        p[k] = Fraction(s) / k
    return [rational(x) for x in p]


def _convolve(xs, ys, prec, qmin, acc):
    """Add the product of two sorted term lists into ``acc`` up to ``prec``."""
    for i, cx in xs:
        for j, cy in ys:
            k = i + j
            if k > prec:
                break
            acc[k] = acc.get(k, 0) + cx * cy
    out = _norm(acc)
    if out and min(out) < qmin:
        raise WindowError(f"product has a term q^{min(out)} below the window floor q^{qmin}")
    return out


# ---------------------------------------------------------------------------
# several variables

class MultiSeries:
    """Series in t^beta (total degree <= tmax) with QLaurent coefficients.

    ``terms`` maps ``(beta, k)`` to the coefficient of ``q^k t^beta``; in rank
    1 a bare int is accepted for ``beta``.
    """

    __slots__ = ("basis", "tmax", "qmin", "qmax", "_cls")

    def __init__(self, basis=RANK1, tmax=0, qwindow=(0, 0), terms=None):
        qmin, qmax = qwindow
        grouped = {}
        for (beta, k), v in (terms or {}).items():
            beta = basis.check(beta)
            if basis.degree(beta) > tmax:
                continue
            grouped.setdefault(beta, {})[k] = grouped.get(beta, {}).get(k, 0) + rational(v)
        cls = {beta: QLaurent(grouped.get(beta), qmin, qmax)
               for beta in basis.classes(tmax)}
        self._init(basis, tmax, qmin, qmax, cls)

    def _init(self, basis, tmax, qmin, qmax, cls):
        self.basis = basis
        self.tmax = tmax
        self.qmin = qmin
        self.qmax = qmax
        self._cls = cls

    @classmethod
    def _make(cls, basis, tmax, qmin, qmax, classes):
        obj = cls.__new__(cls)
        full = {}
        for beta in basis.classes(tmax):
            q = classes.get(beta)
            full[beta] = q if q is not None else QLaurent.zero(qmin, qmax)
        obj._init(basis, tmax, qmin, qmax, full)
        return obj

    @classmethod
    def from_classes(cls, basis, tmax, qwindow, classes):
        """Build from ``{beta: QLaurent}``; class precisions are kept (capped at qmax)."""
        qmin, qmax = qwindow
        out = {}
        for beta, ql in classes.items():
            beta = basis.check(beta)
            if basis.degree(beta) <= tmax:
                out[beta] = QLaurent(ql.as_dict(), qmin, min(qmax, ql.qmax))
        return cls._make(basis, tmax, qmin, qmax, out)

    @classmethod
    def one(cls, basis=RANK1, tmax=0, qwindow=(0, 0)):
        return cls(basis, tmax, qwindow, {(basis.zero, 0): 1})

    @classmethod
    def monomial(cls, beta, k, coeff=1, basis=RANK1, tmax=0, qwindow=(0, 0)):
        return cls(basis, tmax, qwindow, {(beta, k): coeff})

    # -- inspection --------------------------------------------------------

    @property
    def rank(self):
        return self.basis.rank

    @property
    def qwindow(self):
        return (self.qmin, self.qmax)

    @property
    def known_qmax(self):
        """Largest exponent known in every class."""
        return min(q.qmax for q in self._cls.values())

    def classes(self):
        return tuple(self._cls)

    def coefficient(self, beta):
        return self._cls[self.basis.check(beta)]

    def precision(self, beta):
        return self.coefficient(beta).qmax

    def __getitem__(self, key):
        beta, k = key
        return self.coefficient(beta)[k]

    def terms(self):
        """Canonical dict ``{(beta, k): coeff}`` of the nonzero known terms."""
        return {(beta, k): v for beta, q in self._cls.items() for k, v in q.items()}

    def is_zero(self):
        return all(q.is_zero() for q in self._cls.values())

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return ((self.basis, self.tmax, self.qmin, self.qmax, self._cls)
                == (other.basis, other.tmax, other.qmin, other.qmax, other._cls))

    def __repr__(self):
        body = ", ".join(f"{list(b)}: {q!r}" for b, q in self._cls.items() if not q.is_zero())
        return f"MultiSeries(tmax={self.tmax}, qwindow={self.qwindow}, {{{body}}})"

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.basis != other.basis:
            raise ValueError(f"rank/weight mismatch: {self.basis.weights} vs {other.basis.weights}")

    def __add__(self, other):
        if not isinstance(other, MultiSeries):
            other = MultiSeries(self.basis, self.tmax, self.qwindow,
                                {(self.basis.zero, 0): rational(other)})
        self._check(other)
        tmax = min(self.tmax, other.tmax)
        out = {b: self._cls[b] + other._cls[b] for b in self.basis.classes(tmax)}
        return MultiSeries._make(self.basis, tmax, min(self.qmin, other.qmin),
                                 min(self.qmax, other.qmax), out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, MultiSeries):
            return self + (-rational(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        s = rational(s)
        return MultiSeries._make(self.basis, self.tmax, self.qmin, self.qmax,
                                 {b: q.scale(s) for b, q in self._cls.items()})

    def __mul__(self, other):
        if isinstance(other, MultiSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def truncate(self, qmax=None, tmax=None):
        """Restrict to a smaller nominal window and/or total degree."""
        qmax = self.qmax if qmax is None else min(qmax, self.qmax)
        tmax = self.tmax if tmax is None else min(tmax, self.tmax)
        out = {b: self._cls[b].truncate(qmax) for b in self.basis.classes(tmax)}
        return MultiSeries._make(self.basis, tmax, self.qmin, qmax, out)

    def with_floor(self, qmin):
        """Lower the window floor (raising it would lose terms)."""
        if qmin > self.qmin:
            raise ValueError("the floor can only be lowered")
        out = {b: QLaurent._make(dict(q._c), qmin, q.qmax) for b, q in self._cls.items()}
        return MultiSeries._make(self.basis, self.tmax, qmin, self.qmax, out)

    def negate_q(self):
        """Substitute q -> -q."""
        return MultiSeries._make(self.basis, self.tmax, self.qmin, self.qmax,
                                 {b: q.negate_q() for b, q in self._cls.items()})

    def drop_constant(self):
        """The series minus its beta = 0 coefficient (treated as exact)."""
        out = dict(self._cls)
        out[self.basis.zero] = QLaurent.zero(self.qmin, self.qmax)
        return MultiSeries._make(self.basis, self.tmax, self.qmin, self.qmax, out)


def _mul(a, b, no_constant=False):
    """Product with per-class precision tracking.

    With ``no_constant`` both operands are taken to have an exactly zero
    beta = 0 coefficient, so pairs involving it are skipped altogether.
    """
    a._check(b)
    basis = a.basis
    tmax = min(a.tmax, b.tmax)
    qmin = min(a.qmin, b.qmin)
    qmax = min(a.qmax, b.qmax)
    zero = basis.zero
    acls, bcls = a._cls, b._cls
    out = {}
    for gamma, pairs in _splits(basis.weights, tmax):
        prec = qmax
        live = []
        for alpha, rest in pairs:
            if no_constant and (alpha == zero or rest == zero):
                continue
            x, y = acls[alpha], bcls[rest]
            p = min(x.qmax + y._val(), y.qmax + x._val())
            if p < prec:
                prec = p
            if x._c and y._c:
                live.append((x, y))
        acc = {}
        for x, y in live:
            for i, cx in x.items():
                for j, cy in y.items():
                    k = i + j
                    if k > prec:
                        break
                    acc[k] = acc.get(k, 0) + cx * cy
        c = _norm(acc)
        if c and min(c) < qmin:
            raise WindowError(f"product has a term q^{min(c)} t^{list(gamma)} "
                              f"below the window floor q^{qmin}")
        out[gamma] = QLaurent._make(c, qmin, prec)
    return MultiSeries._make(basis, tmax, qmin, qmax, out)


def series_mul(a, b):
    """Exact product of two truncated series."""
    return _mul(a, b)


def _require_no_constant(f, what):
    c = f._cls[f.basis.zero]
    if not c.is_zero():
        raise ValueError(f"{what} needs a series without a beta = 0 term, got {c!r}")


def _power_sum(u, coeffs):
    """sum_k coeffs[k] * u^k with u's beta = 0 part taken as exactly zero."""
    basis = u.basis
    zero = basis.zero
    total = MultiSeries.one(basis, u.tmax, u.qwindow).scale(coeffs[0]) if coeffs[0] else \
        MultiSeries(basis, u.tmax, u.qwindow)
    u = u.drop_constant()
    p = None
    for k in range(1, len(coeffs)):
        p = u if p is None else _mul(p, u, no_constant=True)
        if coeffs[k]:
            term = p.scale(coeffs[k])
            out = {b: (total._cls[b] + term._cls[b]) if b != zero else total._cls[b]
                   for b in basis.classes(u.tmax)}
            total = MultiSeries._make(basis, u.tmax, total.qmin, total.qmax, out)
    return total


def _max_power(f):
    return f.tmax // min(f.basis.weights)


def series_exp(f):
    """exp(f) for f without beta = 0 term, truncated in both directions."""
    _require_no_constant(f, "exp")
    n = _max_power(f)
    return _power_sum(f, [Fraction(1, factorial(k)) for k in range(n + 1)])


def series_log(z):
    """log(z) for z whose beta = 0 coefficient is exactly 1."""
    c = z._cls[z.basis.zero]
    if c.as_dict() != {0: 1}:
        raise ValueError(f"log needs a beta = 0 coefficient equal to 1, got {c!r}")
    n = _max_power(z)
    coeffs = [0] + [Fraction((-1) ** (k + 1), k) for k in range(1, n + 1)]
    return _power_sum(z.drop_constant(), coeffs)


def binom_power(u, k):
    """(1 + u)^k by the generalized binomial series; u has no beta = 0 term."""
    _require_no_constant(u, "binom_power")
    n = _max_power(u)
    return _power_sum(u, [binomial(k, i) for i in range(n + 1)])


def cover_substitute(f, m, sign=1):
    """Ring map q^a t^beta -> (sign q^m)^a t^(m beta).

    Images of total degree above ``tmax`` are dropped; the floor is lowered to
    ``min(qmin, m*qmin)`` so no image can fall below it.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError("cover degree must be a positive integer")
    basis = f.basis
    qmin = min(f.qmin, m * f.qmin)
    out = {}
    for beta, q in f._cls.items():
        if basis.degree(beta) * m > f.tmax:
            continue
        img = q.substitute(m, sign).truncate(f.qmax)
        out[tuple(m * b for b in beta)] = QLaurent._make(img._c, qmin, img.qmax)
    return MultiSeries._make(basis, f.tmax, qmin, f.qmax,
                             {b: out.get(b, QLaurent.zero(qmin, f.qmax))
                              for b in basis.classes(f.tmax)})
