"""Euler-characteristic formulas: KKV, its DT-side contribution, and Hilbert
schemes of at most three points on a threefold."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import GVDTError
from .partitions import mcmahon_series
from .series import RANK1, MultiSeries, rational

__all__ = ["KKVInput", "kkv_coefficient", "kkv_invariant", "kkv_dt_contribution", "euler_blowup",
           "euler_hilb_points", "check_dim_zero_coeff"]


@dataclass(frozen=True)
class KKVInput:
    """Arithmetic genus g, defect delta, dim M and e(C^[0]), ..., e(C^[delta]).

    ``dims`` gives dim C^[n]; by default dim M + n.
    """

    g: int
    delta: int
    dim_m: int
    eulers: tuple
    dims: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "eulers", tuple(self.eulers))
        if any(not isinstance(e, int) or isinstance(e, bool) for e in self.eulers):
            raise GVDTError(f"Euler characteristics must be integers, got {self.eulers}")
        if not 0 <= self.delta <= self.g:
            raise GVDTError(f"need 0 <= delta <= g, got delta={self.delta}, g={self.g}")
        if len(self.eulers) != self.delta + 1:
            raise GVDTError(f"expected {self.delta + 1} Euler characteristics, "
                            f"got {len(self.eulers)}")
        dims = self.dims
        if dims is None:
            dims = tuple(self.dim_m + n for n in range(self.delta + 1))
        dims = tuple(dims)
        if len(dims) != self.delta + 1:
            raise GVDTError(f"expected {self.delta + 1} dimensions, got {len(dims)}")
        object.__setattr__(self, "dims", dims)


def kkv_coefficient(g, delta, i):
    """Weight of e(C^[delta-i]) in the KKV sum (i >= 0).

    The weights turn out to be integers for all integer g and delta, so the
    integrality check in ``kkv_invariant`` is a guard, not a filter.
    """
    a = 2 * g - 2 * delta
    if i == 0:
        return 1
    if i == 1:
        return a
    falling = 1
    for j in range(i - 1):
        falling *= a + i - 3 - j
    return rational(Fraction((a + 2 * i - 2) * falling, factorial(i)))


def kkv_invariant(inp):
    """n^(g-delta)_beta from the Euler characteristics of relative Hilbert schemes."""
    total = sum(kkv_coefficient(inp.g, inp.delta, i) * inp.eulers[inp.delta - i]
                for i in range(inp.delta + 1))
    total = Fraction(total) * (-1) ** (inp.dim_m + inp.delta)
    if total.denominator != 1:
        raise GVDTError(f"KKV sum is not an integer ({total}); inconsistent input")
    return total.numerator


def kkv_dt_contribution(inp, beta=(1,), basis=RANK1):
    """sum_{n<=delta} (-1)^dim C^[n] e(C^[n]) q^(n+1-g) t^beta, for delta <= 1.

    Terms from q^(delta+2-g) on are unknown, so that is where the window ends.
    """
    if inp.delta > 1:
        raise GVDTError("the DT contribution is only established for delta <= 1")
    beta = basis.check(beta)
    lo = 1 - inp.g
    terms = {(beta, n + lo): (-1) ** inp.dims[n] * inp.eulers[n]
             for n in range(inp.delta + 1)}
    return MultiSeries(basis, basis.degree(beta), (lo, inp.delta + lo), terms)


def euler_blowup(e_m, e_x, e_c):
    """e(Bl_C(M x X)): replace C by a P^1-bundle over it."""
    return e_m * e_x - e_c + 2 * e_c


def euler_hilb_points(n, e_x):
    """e(Hilb^n X) for n <= 3 by stratifying the blown-up symmetric product."""
    if n == 1:
        return e_x
    if n == 2:
        # Sym^2 X minus the diagonal, plus a P^2-bundle over the diagonal
        return (e_x * e_x - e_x) // 2 + 3 * e_x
    if n == 3:
        distinct = Fraction(e_x ** 3 - 3 * e_x ** 2 + 2 * e_x, 6)
        return int(distinct) + 3 * (e_x ** 2 - e_x) + 6 * e_x
    raise GVDTError(f"no closed form for n = {n}: Hilb^n of a threefold is singular for n >= 4")


def check_dim_zero_coeff(n, e_x, order=None):
    """Is (-1)^n e(Hilb^n X) the q^n coefficient of M(-q)^e(X)?"""
    order = max(n, order or n)
    z0 = mcmahon_series(order, -1) ** e_x if e_x else None
    coeff = z0[n] if z0 is not None else (1 if n == 0 else 0)
    return (-1) ** n * euler_hilb_points(n, e_x) == coeff
