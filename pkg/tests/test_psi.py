import random
from fractions import Fraction

import pytest

from helpers import A1, spec, random_spec
from loopmod.cyclotomic import CycScalar
from loopmod.errors import InputError, SupportNotSubgroupError, TrivialModuleError
from loopmod.lattice import from_generators
from loopmod.psi import (
    Evaluator,
    PsiSpec,
    SupportLattice,
    box_scan_order,
    eval_functional,
    support_lattice,
    verify_support,
)


def _two_point(w1, w2, a1, a2):
    return spec(A1, (2,), {(1,): w1, (2,): w2}, [(a1, a2)])


def test_eval_functional_examples():
    s = _two_point((1,), (1,), 1, -1)
    assert all(v.is_zero() for v in eval_functional(s, (1,)))
    v2 = eval_functional(s, (2,))
    assert not v2[0].is_zero()
    assert v2[0].coeffs[0] == 2
    v0 = eval_functional(s, (0,))
    assert v0[0].coeffs[0] == 2  # Σ λ_I


def test_support_even_lattice():
    s = _two_point((1,), (1,), 1, -1)
    sup = support_lattice(s)
    assert sup.lattice.rows == ((2,),)
    assert sup.periods == (2,)
    assert sup.index == 2


def test_support_full_when_weights_differ():
    s = _two_point((1,), (2,), 1, -1)
    sup = support_lattice(s)
    assert sup.lattice.rows == ((1,),)
    assert sup.index == 1


def test_trivial_module():
    s = spec(A1, (1,), {(1,): (0,)}, [(1,)])
    with pytest.raises(TrivialModuleError):
        support_lattice(s)


def test_validation_errors():
    with pytest.raises(InputError):
        _two_point((1,), (1,), 1, 1)  # repeated evaluation point
    with pytest.raises(InputError):
        spec(A1, (2,), {(1,): (1,)}, [(1, 2)])  # incomplete table
    with pytest.raises(InputError):
        spec(A1, (1,), {(1,): (-1,)}, [(1,)])  # non-dominant
    with pytest.raises(InputError):
        PsiSpec(
            algebra=A1,
            n=1,
            dims=(2,),
            weights={(1,): (1,), (2,): (1,)},
            evals=((CycScalar(1, 0, 2), CycScalar(1, 1, 4)),),
        )  # mismatched orders


def test_support_subgroup_closure_by_evaluation():
    # Whenever support_lattice returns (rather than flagging a cancellation),
    # the nonvanishing set behaves as a subgroup on a small window.
    rng = random.Random(123)
    returned = 0
    flagged = 0
    for _ in range(30):
        s = random_spec(rng)
        try:
            sup = support_lattice(s)
        except TrivialModuleError:
            continue
        except SupportNotSubgroupError:
            flagged += 1
            continue
        returned += 1
        ev = Evaluator(s)
        members = [m for m in box_scan_order(s.n, 2) if ev.is_nonzero(m)]
        for a in members[:6]:
            for b in members[:6]:
                total = tuple(x + y for x, y in zip(a, b))
                assert ev.is_nonzero(total)
            assert ev.is_nonzero(tuple(-x for x in a))
        # and the lattice matches evaluation on the small box
        for m in box_scan_order(s.n, 2):
            assert sup.lattice.contains(m) == ev.is_nonzero(m)
    assert returned >= 15


def test_isolated_cancellation_is_flagged():
    # λ=((1),(2)) with a=(2,−1): the functional vanishes exactly at m=1
    # (2 − 2 = 0), so the nonvanishing set Z∖{1} is not a subgroup; the
    # algebra image is all of A and no lattice can represent the scan.
    s = _two_point((1,), (2,), 2, -1)
    with pytest.raises(SupportNotSubgroupError):
        support_lattice(s)


def test_support_is_always_full_rank():
    rng = random.Random(5)
    for _ in range(40):
        s = random_spec(rng)
        try:
            sup = support_lattice(s)
        except (TrivialModuleError, SupportNotSubgroupError):
            continue
        assert sup.lattice.full_rank
        assert sup.index % 1 == 0
        n_total = s.table_size
        assert n_total % sup.index == 0


def test_axis_scaling_leaves_support_unchanged():
    rng = random.Random(17)
    for _ in range(15):
        s = random_spec(rng)
        order = s.field_order
        factors = [CycScalar(2, 0, order), CycScalar(1, order // 2, order) if order % 2 == 0 else CycScalar(3, 0, order)]
        scaled_evals = tuple(
            tuple(factors[i % len(factors)] * a for a in axis)
            for i, axis in enumerate(s.evals)
        )
        scaled = PsiSpec(
            algebra=s.algebra,
            n=s.n,
            dims=s.dims,
            weights=dict(s.weights),
            evals=scaled_evals,
            rho=s.rho,
        )
        try:
            sup1 = support_lattice(s)
        except (TrivialModuleError, SupportNotSubgroupError):
            continue
        sup2 = support_lattice(scaled)
        assert sup1.lattice.rows == sup2.lattice.rows


def test_rho_plays_no_role_in_support():
    s1 = _two_point((1,), (1,), 1, -1)
    s2 = spec(A1, (2,), {(1,): (1,), (2,): (1,)}, [(1, -1)], rho=(Fraction(7, 2),))
    assert support_lattice(s1).lattice.rows == support_lattice(s2).lattice.rows


def test_verify_support_examples():
    s = _two_point((1,), (1,), 1, -1)
    sup = support_lattice(s)
    assert verify_support(s, sup, 4)
    corrupt = SupportLattice(lattice=from_generators([(1,)]), periods=(1,), index=1)
    res = verify_support(s, corrupt, 4)
    assert not res
    assert res.counterexample == (1,)
    assert verify_support(s, sup, 0)


def test_box_scan_order_is_by_max_norm():
    order = box_scan_order(1, 2)
    assert order == [(0,), (1,), (-1,), (2,), (-2,)]
