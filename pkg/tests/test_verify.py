from fractions import Fraction

import numpy as np
import pytest

from nalattice.entropy import entropy_vector
from nalattice.field import FieldDescriptor
from nalattice.lattice import Lattice, diagonal_lattice
from nalattice.tropical import TropicalPolynomial, box_points, phi_eval
from nalattice.verify import (BudgetError, VerifyError, brute_force_index, brute_force_index_table,
                              empirical_tail_report, membership_frequency, sample_valuations,
                              informative_cells, uniform_integral_samples)

from conftest import example_2d, example_3d


def test_samples_reproducible():
    a = uniform_integral_samples(3, 20, 1000, 2, seed=5)
    b = uniform_integral_samples(3, 20, 1000, 2, seed=5)
    c = uniform_integral_samples(3, 20, 1000, 2, seed=6)
    assert (a == b).all() and not (a == c).all()
    # a prefix of a longer run is the same draw
    assert (uniform_integral_samples(3, 20, 70000, 2, seed=5)[:1000] == a).all()


def test_samples_wide_modulus():
    x = uniform_integral_samples(5, 40, 100, 2, seed=1)
    assert x.dtype == object and all(0 <= int(v) < 5**40 for v in x.ravel())


def test_seed_required():
    with pytest.raises(VerifyError):
        sample_valuations(example_2d(3), 10)


def test_puiseux_rejected():
    with pytest.raises(VerifyError):
        sample_valuations(example_3d(FieldDescriptor.puiseux()), 10, seed=1)


def test_valuations_lie_above_lower_envelope():
    L = example_2d(3)
    batch = sample_valuations(L, 5000, seed=2)
    assert batch.censored == 0 and batch.usable
    assert (batch.valuations >= np.array([0, 1])).all()


def test_small_tail_report():
    L = example_2d(3)
    T = TropicalPolynomial(entropy_vector(L), 3)
    batch = sample_valuations(L, 20000, seed=3)
    rows = empirical_tail_report(batch, T, (0, 0), (2, 3))
    cells = informative_cells(rows)
    assert cells and all(abs(r.z) <= 4 for r in cells)
    assert rows[0].exact == 1 and rows[0].count == 20000


def test_censoring_triggers():
    L = example_2d(3)
    batch = sample_valuations(L, 2000, precision=12, seed=1, guard=11)
    assert not batch.usable
    with pytest.raises(VerifyError):
        empirical_tail_report(batch, TropicalPolynomial(entropy_vector(L), 3), (0, 0), (1, 1))


def test_brute_force_example():
    L = example_2d(2)
    T = TropicalPolynomial(entropy_vector(L), 2)
    vs = list(box_points((0, 0), (3, 3)))
    table = brute_force_index_table(L, vs, 4)
    assert table == [2 ** phi_eval(T, v) for v in vs]
    assert brute_force_index(example_2d(3), (1, 1), 3) == 3


def test_brute_force_negative_lower_envelope():
    K = FieldDescriptor.padic(2)
    L = Lattice(K, [[Fraction(1, 2), 0], [1, 2]])
    T = TropicalPolynomial(entropy_vector(L), 2)
    for v in box_points((0, 0), (2, 2)):
        assert brute_force_index(L, v, 4) == 2 ** phi_eval(T, v)


def test_brute_force_budget_and_validation():
    with pytest.raises(BudgetError):
        brute_force_index(example_2d(5), (1, 1), 10)
    with pytest.raises(VerifyError):
        brute_force_index(example_2d(2), (-1, 0), 3)
    with pytest.raises(VerifyError):
        brute_force_index(example_2d(2), (5, 0), 3)


def test_membership_frequency_diagonal():
    K = FieldDescriptor.padic(2)
    hits, n = membership_frequency(diagonal_lattice(K, (2, 1)), 40000, seed=11)
    # measure 2^-3 with standard error sqrt(p(1-p)/n)
    assert abs(hits / n - 1 / 8) <= 4 * (1 / 8 * 7 / 8 / n) ** 0.5
    with pytest.raises(VerifyError):
        membership_frequency(diagonal_lattice(K, (-1, 0)), 10, seed=1)
