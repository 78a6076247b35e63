"""Shared builders for the test suite: quick scalars, random spec generators,
and canonical block-form constructions with a prescribed support."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import lcm

from loopmod.cyclotomic import CycScalar
from loopmod.lattice import Lattice
from loopmod.liealg import build_algebra, build_aut, node_orbits
from loopmod.psi import PsiSpec, table_indices
from loopmod.twisted import TwistedSpec

A1 = build_algebra("A", 1)
A2 = build_algebra("A", 2)
D4 = build_algebra("D", 4)
A2_FLIP = build_aut(A2, (1, 0))
D4_TRIALITY = build_aut(D4, (2, 1, 3, 0))


def sc(q, e: int = 0, order: int = 1) -> CycScalar:
    return CycScalar(Fraction(q), e, order)


def spec(algebra, dims, weights, evals, rho=None) -> PsiSpec:
    """Build a PsiSpec from plain data; evals entries may be rationals,
    (q, e) pairs, or CycScalar; all are lifted to one common order."""
    order = 1
    flat = []
    for axis in evals:
        row = []
        for a in axis:
            if isinstance(a, CycScalar):
                row.append(a)
                order = lcm(order, a.order)
            elif isinstance(a, tuple):
                q, e, o = a
                row.append(CycScalar(Fraction(q), e, o))
                order = lcm(order, o)
            else:
                row.append(CycScalar(Fraction(a), 0, 1))
        flat.append(row)
    lifted = tuple(
        tuple(a.with_order(order) for a in row) for row in flat
    )
    dims = tuple(dims)
    table = {tuple(idx): tuple(w) for idx, w in weights.items()}
    rho_t = tuple(Fraction(x) for x in rho) if rho is not None else None
    return PsiSpec(
        algebra=algebra,
        n=len(dims),
        dims=dims,
        weights=table,
        evals=lifted,
        rho=rho_t if rho_t is not None else (Fraction(0),) * len(dims),
    )


# A pool of exactly representable scalars: ±1, ±2, ±3 and ζ₃/ζ₄ multiples.
def scalar_pool(order: int = 12):
    pool = []
    for q in (1, -1, 2, -2, 3, -3, Fraction(1, 2)):
        pool.append(CycScalar(q, 0, order))
    for q in (1, 2):
        pool.append(CycScalar(q, order // 3, order))   # q·ζ₃
        pool.append(CycScalar(q, order // 4, order))   # q·ζ₄
        pool.append(CycScalar(q, 2 * order // 3, order))
    return pool


def random_spec(rng: random.Random, twisted_ok: bool = False) -> PsiSpec:
    """Random valid spec: n ≤ 3, Nᵢ ≤ 4, algebras A₁/A₂, coords ≤ 3."""
    n = rng.choices((1, 2, 3), weights=(5, 4, 2))[0]
    algebra = rng.choice((A1, A2))
    if n == 3:
        dims = tuple(rng.choice((1, 2)) for _ in range(n))
    else:
        dims = tuple(rng.randint(1, 4) for _ in range(n))
    pool = scalar_pool()
    evals = []
    for d in dims:
        evals.append(tuple(rng.sample(pool, d)))
    weights = {}
    indices = table_indices(dims)
    # Arrange some repetition so nontrivial supports appear.
    values = []
    while not any(any(w) for w in values):
        distinct = [
            tuple(rng.randint(0, 3) for _ in range(algebra.rank))
            for _ in range(max(1, len(indices) // 2))
        ]
        values = [rng.choice(distinct) for _ in indices]
    for I, w in zip(indices, values):
        weights[I] = w
    return PsiSpec(
        algebra=algebra,
        n=n,
        dims=dims,
        weights=weights,
        evals=tuple(evals),
        rho=(Fraction(0),) * n,
    )


def orthogonal_block_spec(rng: random.Random, algebra=A1):
    """Canonical block form with Γ = ⊕ rᵢZeᵢ: per axis, complete ε-orbits on
    positive rational bases; one distinct weight per block combination.
    Returns (spec, expected periods, expected index p)."""
    n = rng.choice((1, 2))
    periods = tuple(rng.choice((1, 2, 3)) for _ in range(n))
    blocks = tuple(rng.choice((1, 2)) for _ in range(n))
    dims = tuple(r * b for r, b in zip(periods, blocks))
    order = lcm(1, *periods)
    bases = ((1, 2, 3), (2, 3, 5))
    evals = []
    for i in range(n):
        r = periods[i]
        axis = []
        for ell in range(blocks[i]):
            c = Fraction(bases[i][ell])
            for t in range(r):
                axis.append(CycScalar(c, t * (order // r), order))
        evals.append(tuple(axis))
    indices = table_indices(dims)
    p = 1
    for r in periods:
        p *= r
    # Block combination of an index: which orbit each axis coordinate sits in.
    def block_of(I):
        return tuple((I[i] - 1) // periods[i] for i in range(n))

    combos = sorted({block_of(I) for I in indices})
    wt = {combo: (2 + k,) + (0,) * (algebra.rank - 1) for k, combo in enumerate(combos)}
    weights = {I: wt[block_of(I)] for I in indices}
    spec_ = PsiSpec(
        algebra=algebra,
        n=n,
        dims=dims,
        weights=weights,
        evals=tuple(evals),
        rho=(Fraction(0),) * n,
    )
    return spec_, periods, p


def skew_block_spec(rng: random.Random, algebra=A1):
    """Canonical block form with a non-orthogonal target support: one block
    per axis (a_{ij} = εᵢ^j) and weights constant on annihilator cosets with
    geometric (power-of-two) values, which keeps every character sum nonzero.
    Returns (spec, target lattice)."""
    n = 2
    r = tuple(rng.choice((2, 3, 4)) for _ in range(n))
    extra = tuple(rng.randrange(r[i]) for i in range(n))
    target = Lattice.from_generators([(r[0], 0), (0, r[1]), extra], n=2)
    # The extra generator may have shortened an axis; use the true periods.
    r = tuple(target.axis_period(i, r[i]) for i in range(n))
    order = lcm(*r)
    evals = []
    for i in range(n):
        evals.append(
            tuple(CycScalar(1, (j * (order // r[i])) % order, order) for j in range(r[i]))
        )
    group = list(itertools.product(range(r[0]), range(r[1])))
    # Annihilator of S = target/(⊕rᵢZeᵢ) under φ·m = Σ φᵢmᵢ/rᵢ mod 1.
    s_image = [m for m in group if target.contains(m)]
    annihilator = [
        phi
        for phi in group
        if all(
            (phi[0] * m[0] * r[1] + phi[1] * m[1] * r[0]) % (r[0] * r[1]) == 0
            for m in s_image
        )
    ]
    ann_set = set(annihilator)
    cosets: list[set] = []
    for phi in group:
        hit = None
        for c in cosets:
            rep = next(iter(c))
            d = ((phi[0] - rep[0]) % r[0], (phi[1] - rep[1]) % r[1])
            if d in ann_set:
                hit = c
                break
        if hit is None:
            cosets.append({phi})
        else:
            hit.add(phi)
    coset_of = {}
    for k, c in enumerate(cosets):
        for phi in c:
            coset_of[phi] = k
    weights = {}
    for I in table_indices(r):
        phi = (I[0] - 1, I[1] - 1)
        weights[I] = (2 ** coset_of[phi],) + (0,) * (algebra.rank - 1)
    spec_ = PsiSpec(
        algebra=algebra,
        n=n,
        dims=r,
        weights=weights,
        evals=tuple(evals),
        rho=(Fraction(0), Fraction(0)),
    )
    return spec_, target


def transformed_spec(rng: random.Random, base: PsiSpec, shift_support=None):
    """Axis permutations, per-axis scalings and a support shift of rho."""
    order = lcm(base.field_order, 12)
    base = base.with_field_order(order)
    scalings = []
    perms = []
    for i in range(base.n):
        scalings.append(rng.choice(scalar_pool(order)).with_order(order))
        perm = list(range(base.dims[i]))
        rng.shuffle(perm)
        perms.append(tuple(perm))
    evals = []
    for i in range(base.n):
        evals.append(
            tuple(scalings[i] * base.evals[i][perms[i][j]] for j in range(base.dims[i]))
        )
    weights = {}
    for I in table_indices(base.dims):
        J = tuple(perms[i][I[i] - 1] + 1 for i in range(base.n))
        weights[I] = base.weights[J]
    rho = list(base.rho)
    if shift_support is not None:
        gens = shift_support.lattice.generators_original()
        g = rng.choice(gens)
        sign = rng.choice((1, -1))
        rho = [x + sign * y for x, y in zip(rho, g)]
    return PsiSpec(
        algebra=base.algebra,
        n=base.n,
        dims=base.dims,
        weights=weights,
        evals=tuple(evals),
        rho=tuple(rho),
    ), perms, scalings


def random_twisted_spec(rng: random.Random, algebra, aut) -> TwistedSpec:
    """Random twisted spec with image_equality guaranteed."""
    k = aut.order
    n = rng.choice((1, 2))
    dims = tuple(rng.randint(1, 3) if i == 0 else rng.randint(1, 2) for i in range(n))
    order = lcm(12, k)
    pool = scalar_pool(order)
    while True:
        axis1 = tuple(rng.sample(pool, dims[0]))
        powers = [a ** k for a in axis1]
        if len(set(powers)) == len(powers):
            break
    evals = [axis1]
    for i in range(1, n):
        evals.append(tuple(rng.sample(pool, dims[i])))
    d = algebra.rank
    indices = table_indices(dims)
    weights = {}
    symmetric_run = rng.random() < 0.5
    orbits = node_orbits(aut)
    while True:
        for I in indices:
            if symmetric_run:
                # constant on each node orbit, hence fixed by the twist
                w = [0] * d
                for orbit in orbits:
                    val = rng.randint(0, 2)
                    for node in orbit:
                        w[node] = val
                weights[I] = tuple(w)
            else:
                weights[I] = tuple(rng.randint(0, 2) for _ in range(d))
        if any(any(w) for w in weights.values()):
            break
    base = PsiSpec(
        algebra=algebra,
        n=n,
        dims=dims,
        weights=weights,
        evals=tuple(evals),
        rho=(Fraction(0),) * n,
    )
    return TwistedSpec(base=base, aut=aut)
