import random
from fractions import Fraction

import pytest
import sympy

from gvdt.checks import random_gv_table
from gvdt.errors import (InconsistentSeriesError, IntegralityError, MissingEntryError,
                         WindowError)
from gvdt.invariants import (DTSeries, GVTable, GWTable, ThreefoldData, cover_term,
                             default_window, dt_free_energy, dt_from_free_energy, dt_full,
                             dt_reduce, dt_reduced_to_gv, genus_factor, gv_to_dt_reduced,
                             gv_to_gw, gw_to_gv, sin_power_coefficients,
                             z0_partition_function)
from gvdt.partitions import partition_count_oracle
from gvdt.series import RANK1, Basis, MultiSeries, QLaurent


def gv(entries, basis=RANK1):
    return GVTable(entries, basis)


# -- tables ----------------------------------------------------------------

def test_gv_table_canonical():
    t = gv({(2, 0): 5, (1, 1): 0, (1, 0): 3})
    assert list(t) == [((1,), 0), ((2,), 0)]
    assert t.gmax(1) == 0 and t.gmax(3) is None
    assert t.is_integral
    with pytest.raises(ValueError):
        gv({(0, 0): 1})
    with pytest.raises(ValueError):
        gv({(1, -1): 1})


# -- dimension zero --------------------------------------------------------

def test_z0_examples():
    assert z0_partition_function(ThreefoldData(0), 5).as_dict() == {0: 1}
    assert z0_partition_function(ThreefoldData(1), 3).as_dict() == {0: 1, 1: -1, 2: 3, 3: -6}
    assert z0_partition_function(ThreefoldData(2), 3).as_dict() == {0: 1, 1: -2, 2: 7, 3: -18}


def test_z0_uses_chern_degree():
    x = ThreefoldData(euler=5, chern_degree=1)
    assert z0_partition_function(x, 3).as_dict() == {0: 1, 1: -1, 2: 3, 3: -6}


# -- genus factors ---------------------------------------------------------

def test_genus_factor_elliptic():
    f = genus_factor(1, 1, 1, (0, 2), 5)
    assert f.terms() == {((k,), 0): 1 for k in range(6)}


def test_genus_factor_local_p1():
    f = genus_factor(1, 0, 1, (0, 4), 1)
    assert f.coefficient(1) == QLaurent({1: 1, 2: -2, 3: 3, 4: -4}, 0, 4)


def test_genus_factor_genus_two():
    f = genus_factor(1, 2, 1, (-1, 3), 1)
    assert f.coefficient(1).as_dict() == {-1: 1, 0: 2, 1: 1}


def test_genus_factor_window_error():
    with pytest.raises(WindowError):
        genus_factor(1, 3, 1, (-1, 4), 2)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_genus_factor_matches_sympy(g):
    # the t^1 coefficient of prod (1 + c q^a t)^e is sum e c q^a; it must be
    # the m = 1 genus-g cover term (2 + q + 1/q)^(g-1)
    q = sympy.symbols("q")
    one = sympy.Integer(-1)
    linear = sum(one ** (k + g) * sympy.binomial(2 * g - 2, k) * one ** (g - k)
                 * q ** (g - 1 - k) for k in range(2 * g - 1))
    f = genus_factor(1, g, 1, (1 - g, g + 2), 1).coefficient(1)
    got = sum(c * q ** k for k, c in f.items())
    assert sympy.expand(linear - got) == 0
    assert sympy.expand(got - (2 + q + 1 / q) ** (g - 1)) == 0


# -- GV -> DT --------------------------------------------------------------

def test_empty_table_gives_one():
    z = gv_to_dt_reduced(gv({}), (0, 3), 3)
    assert z.series == MultiSeries.one(RANK1, 3, (0, 3)) and z.reduced


def test_elliptic_partitions():
    table = gv({(k, 1): 1 for k in range(1, 11)})
    z = gv_to_dt_reduced(table, tmax=10).series
    assert z.terms() == {((k,), 0): partition_count_oracle(k) for k in range(11)}


def test_local_p2_subtable_correction():
    z = gv_to_dt_reduced(gv({(1, 0): 3, (3, 1): -10}), (-3, 8), 4).series
    assert z[(4, 1)] == -30


def test_local_p2_table_rows():
    # single-class factors of the local P^2 data
    assert genus_factor(1, 0, 3, (0, 1), 1).coefficient(1).as_dict() == {1: 3}
    assert genus_factor(2, 0, -6, (0, 1), 2).coefficient(2).as_dict() == {1: -6}
    assert genus_factor(3, 1, -10, (0, 1), 3).coefficient(3).as_dict() == {0: -10}


def test_leading_coefficient_law():
    # beta = 3 is primitive in the support, nothing smaller reaches t^3
    for g, top, below in [(1, 4, 0), (2, -3, 5), (3, 2, -7)]:
        table = gv({(3, g): top, (3, g - 1): below})
        z = gv_to_dt_reduced(table, (-10, 4), 3).series
        assert z[(3, 1 - g)] == top
        assert z[(3, 2 - g)] == below + (2 * g - 2) * top


def test_dt_coefficients_are_integers():
    rng = random.Random(7)
    for _ in range(20):
        z = gv_to_dt_reduced(random_gv_table(rng), tmax=4).series
        assert all(isinstance(v, int) for v in z.terms().values())


def test_window_wide_enough_for_genus():
    table = gv({(1, 3): 1})
    with pytest.raises(WindowError):
        gv_to_dt_reduced(table, (-1, 4), 2)
    lo, hi = default_window(table, 2)
    assert lo <= -2 and hi >= 2


# -- free energy -----------------------------------------------------------

def test_cover_term_sympy():
    # (1/m)(2 sin(m l/2))^2 at q = -e^{il} is (1/m)(2 - (-q)^m - (-q)^-m)
    q = sympy.symbols("q")
    for m in (1, 2, 3, 4):
        for g in (1, 2, 3):
            expected = sympy.expand((2 - (-q) ** m - (-q) ** (-m)) ** (g - 1) / m)
            got = cover_term(g, m, -12, 12)
            assert sympy.expand(expected - sum(c * q ** k for k, c in got.items())) == 0


def test_cover_term_genus_zero_sympy():
    q = sympy.symbols("q")
    for m in (1, 2, 3):
        qm = -(-q) ** m
        series = sympy.series(qm / (1 + qm) ** 2 / m, q, 0, 13).removeO()
        got = cover_term(0, m, 0, 12)
        assert sympy.expand(series - sum(c * q ** k for k, c in got.items())) == 0


def test_dt_free_energy_examples():
    assert dt_free_energy(gv_to_dt_reduced(gv({}), (0, 3), 3)).is_zero()
    f = dt_free_energy(gv_to_dt_reduced(gv({(1, 1): 1}), (0, 2), 4))
    assert f.terms() == {((m,), 0): Fraction(1, m) for m in range(1, 5)}
    f = dt_free_energy(gv_to_dt_reduced(gv({(1, 0): 1}), (0, 4), 1))
    assert f.coefficient(1).as_dict() == {1: 1, 2: -2, 3: 3, 4: -4}


def test_derivation_chains_agree():
    rng = random.Random(11)
    for _ in range(10):
        table = random_gv_table(rng)
        assert gv_to_dt_reduced(table, tmax=4) == dt_from_free_energy(table, tmax=4)


def test_even_cover_sign():
    # log of the genus-0 product at t^2 is -q^2/2 - q^4 - ... (m = 2 cover)
    table = gv({(1, 0): 1})
    f = dt_free_energy(gv_to_dt_reduced(table, (0, 6), 2))
    assert f.coefficient(2).as_dict() == {2: Fraction(-1, 2), 4: -1, 6: Fraction(-3, 2)}


# -- DT -> GV --------------------------------------------------------------

def test_dt_to_gv_examples():
    assert dt_reduced_to_gv(gv_to_dt_reduced(gv({}), (0, 3), 3)) == gv({})
    z = MultiSeries(RANK1, 10, (0, 3), {(k, 0): partition_count_oracle(k) for k in range(11)})
    assert dt_reduced_to_gv(DTSeries(z)) == gv({(k, 1): 1 for k in range(1, 11)})


def test_dt_to_gv_rank_two_roundtrip():
    basis = Basis((1, 1))
    table = gv({((1, 0), 0): 2, ((0, 1), 1): -1, ((1, 1), 2): 3, ((2, 0), 0): -4}, basis)
    z = gv_to_dt_reduced(table, tmax=3)
    assert dt_reduced_to_gv(z) == table


def test_dt_to_gv_needs_q2():
    z = gv_to_dt_reduced(gv({(1, 0): 1}), (0, 1), 1)
    with pytest.raises(WindowError):
        dt_reduced_to_gv(z)


def test_dt_to_gv_inconsistent():
    z = MultiSeries(RANK1, 1, (0, 3), {(0, 0): 1, (1, 1): 1, (1, 2): 5})
    with pytest.raises(InconsistentSeriesError):
        dt_reduced_to_gv(DTSeries(z))


def test_dt_to_gv_integrality():
    z = MultiSeries(RANK1, 1, (0, 3), {(0, 0): 1, (1, 0): Fraction(1, 2)})
    with pytest.raises(IntegralityError) as info:
        dt_reduced_to_gv(DTSeries(z))
    assert info.value.value == Fraction(1, 2) and info.value.genus == 1
    assert dt_reduced_to_gv(DTSeries(z), strict=False)[(1, 1)] == Fraction(1, 2)


def test_dt_to_gv_rejects_full():
    with pytest.raises(ValueError):
        dt_reduced_to_gv(DTSeries(MultiSeries.one(RANK1, 1, (0, 2)), reduced=False))


def test_roundtrip_random():
    rng = random.Random(3)
    for _ in range(30):
        table = random_gv_table(rng)
        assert dt_reduced_to_gv(gv_to_dt_reduced(table, tmax=4)) == table


# -- GV <-> GW -------------------------------------------------------------

def test_sin_power_coefficients_sympy():
    x = sympy.symbols("x")
    for e in (-4, -2, 0, 2, 4):
        expr = (2 * sympy.sin(x / 2) / x) ** e
        taylor = sympy.series(expr, x, 0, 12).removeO()
        got = sin_power_coefficients(e, 5)
        for j in range(6):
            assert Fraction(str(taylor.coeff(x, 2 * j))) == got[j]


def test_gv_to_gw_examples():
    gw = gv_to_gw(gv({(1, 0): 1}), 1, 3)
    assert [gw[(d, 0)] for d in (1, 2, 3)] == [1, Fraction(1, 8), Fraction(1, 27)]
    assert gw[(1, 1)] == Fraction(1, 12)
    gw = gv_to_gw(gv({(k, 1): 1 for k in range(1, 5)}), 1)
    assert gw[(4, 1)] == Fraction(7, 4)


def test_gw_to_gv_examples():
    gw = GWTable({(d, 0): Fraction(1, d ** 3) for d in (1, 2, 3)})
    assert gw_to_gv(gw) == gv({(1, 0): 1})
    assert gw_to_gv(GWTable({})) == gv({})


def test_gw_to_gv_reports_fractions():
    t = gw_to_gv(GWTable({(1, 0): Fraction(1, 2)}))
    assert not t.is_integral
    assert t.integrality_report() == [((1,), 0, Fraction(1, 2), False)]


def test_gw_to_gv_missing_entry():
    with pytest.raises(MissingEntryError):
        gw_to_gv(GWTable({(2, 0): 1}))
    with pytest.raises(MissingEntryError):
        gw_to_gv(GWTable({(1, 1): 1}))


def test_gw_roundtrip_random():
    rng = random.Random(5)
    for _ in range(30):
        table = random_gv_table(rng, max_genus=2)
        assert gw_to_gv(gv_to_gw(table, 2, 4), 2) == table


def test_genus_zero_multiple_cover_law():
    basis = Basis((1, 2))
    gw = gv_to_gw(gv({((1, 1), 0): 5}, basis), 0, 18)
    assert all(gw[((d, d), 0)] == Fraction(5, d ** 3) for d in range(1, 7))


# -- full series -----------------------------------------------------------

def test_dt_full_examples():
    one = DTSeries(MultiSeries.one(RANK1, 2, (0, 3)))
    full = dt_full(one, ThreefoldData(1))
    assert not full.reduced
    assert full.coefficient(0).as_dict() == {0: 1, 1: -1, 2: 3, 3: -6}
    z = gv_to_dt_reduced(gv({(k, 1): 1 for k in range(1, 6)}), (0, 2), 5)
    assert dt_full(z, ThreefoldData(0)).series == z.series


def test_dt_reduce_inverts_full():
    z = gv_to_dt_reduced(gv({(1, 0): 3, (2, 1): -2}), (-2, 6), 3)
    x = ThreefoldData(-4)
    back = dt_reduce(dt_full(z, x), x)
    assert back.reduced and back.series == z.series
