"""Block structure of classified evaluation data and the isomorphism decision.

For a support with axis periods ``rᵢ``, the evaluation scalars of axis ``i``
fall into complete orbits of size ``rᵢ`` under multiplication by a primitive
``rᵢ``-th root of unity: scalars sharing an ``rᵢ``-th power form one block,
and a block with exactly ``rᵢ`` distinct members is automatically the full
solution set of ``x^{rᵢ} = c^{rᵢ}``.  Any deviation is a structure violation.

``classify`` combines support, blocks and the partition of the weight table
into equality classes (each class size must be a multiple of the index ``p``);
``decide_iso`` searches for a witness (per-axis permutations τᵢ, per-axis
scalings 𝔰ᵢ, and a grading shift in Γ) relating two classified descriptors.

The permutation search uses per-axis value distinctness: fixing the partner
``a_{i,j₀}`` of the first scalar ``b_{i,1}`` determines the scaling
``𝔰ᵢ = b_{i,1}/a_{i,j₀}`` and with it at most one value bijection, so each
axis contributes at most ``Nᵢ`` candidates.  Candidate tuples are tried in
lexicographic order of the ``j₀`` choices and the first full witness wins.
A witness relates the tables by ``ξ_I = λ_{τ(I)}`` and the scalars by
``b_{i,j} = 𝔰ᵢ · a_{i,τᵢ(j)}`` (indices of the second spec map through τ to
the first), and requires ``ς − ϱ ∈ Γ``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cyclotomic import CycScalar, multiplicative_order
from .errors import StructureViolationError
from .liealg import Weight
from .psi import PsiSpec, SupportLattice, common_field_order, support_lattice, table_indices

Index = tuple[int, ...]


def scalar_sort_key(a: CycScalar):
    """Deterministic total order on canonical scalars, positives first."""
    return (a.e, abs(a.q), 0 if a.q > 0 else 1)


@dataclass(frozen=True)
class AxisBlocks:
    axis: int                       # 0-based
    period: int                     # rᵢ
    block_count: int                # ℓᵢ = Nᵢ / rᵢ
    bases: tuple[CycScalar, ...]    # c_{iℓ}, one per block, sorted
    epsilon: CycScalar              # primitive rᵢ-th root of unity used
    assignment: tuple[tuple[int, int], ...]  # per j (0-based): (block, phase)


@dataclass(frozen=True)
class BlockStructure:
    axes: tuple[AxisBlocks, ...]


def detect_blocks(spec: PsiSpec, support: SupportLattice) -> BlockStructure:
    """Group each axis into complete ε-orbits of size rᵢ."""
    axes = []
    one = CycScalar.one(spec.field_order)
    for i in range(spec.n):
        r = support.periods[i]
        values = spec.evals[i]
        n_i = spec.dims[i]
        if n_i % r:
            raise StructureViolationError(
                "axis period does not divide the axis size",
                axis=i + 1,
                period=r,
                size=n_i,
            )
        groups: dict[CycScalar, list[int]] = {}
        for j, a in enumerate(values):
            groups.setdefault(a ** r, []).append(j)
        for power, members in groups.items():
            if len(members) != r:
                raise StructureViolationError(
                    "scalars sharing an r-th power do not form a complete orbit",
                    axis=i + 1,
                    period=r,
                    group=[j + 1 for j in members],
                )
        ordered = sorted(
            groups.values(), key=lambda g: scalar_sort_key(min((values[j] for j in g), key=scalar_sort_key))
        )
        bases = tuple(min((values[j] for j in g), key=scalar_sort_key) for g in ordered)
        if r == 1:
            eps = one
        else:
            ratios = [values[j] / bases[0] for j in ordered[0]]
            primitive = [x for x in ratios if multiplicative_order(x, r) == r]
            eps = min(primitive, key=scalar_sort_key)
        assignment: list[tuple[int, int]] = [(-1, -1)] * n_i
        for ell, g in enumerate(ordered):
            table = {eps ** p * bases[ell]: p for p in range(r)}
            for j in g:
                assignment[j] = (ell, table[values[j]])
        axes.append(
            AxisBlocks(
                axis=i,
                period=r,
                block_count=n_i // r,
                bases=bases,
                epsilon=eps,
                assignment=tuple(assignment),
            )
        )
    return BlockStructure(axes=tuple(axes))


@dataclass(frozen=True)
class ModuleDescriptor:
    spec: PsiSpec
    support: SupportLattice
    blocks: BlockStructure
    p: int
    classes: tuple[tuple[Weight, int], ...]      # (weight value, class size)
    realization: tuple[tuple[Weight, int], ...]  # (weight value, size // p)

    @property
    def realization_statement(self) -> str:
        factors = " ⊗ ".join(
            "V(" + ",".join(str(x) for x in w) + ")" + (f"^{c}" if c > 1 else "") for w, c in self.realization
        )
        return f"irreducible component of ({factors})^⊗{self.p} ⊗ A"


def weight_classes(spec: PsiSpec) -> tuple[tuple[Weight, int], ...]:
    counts: dict[Weight, int] = {}
    for I in table_indices(spec.dims):
        w = spec.weights[I]
        counts[w] = counts.get(w, 0) + 1
    return tuple(sorted(counts.items()))


def classify(spec: PsiSpec) -> ModuleDescriptor:
    support = support_lattice(spec)
    p = support.index
    blocks = detect_blocks(spec, support)
    classes = weight_classes(spec)
    for w, size in classes:
        if size % p:
            raise StructureViolationError(
                "weight class size is not a multiple of the support index",
                weight=w,
                size=size,
                index=p,
            )
    realization = tuple((w, size // p) for w, size in classes)
    return ModuleDescriptor(
        spec=spec,
        support=support,
        blocks=blocks,
        p=p,
        classes=classes,
        realization=realization,
    )


@dataclass(frozen=True)
class Witness:
    taus: tuple[tuple[int, ...], ...]      # per axis, 0-based: j ↦ τ(j)
    scalings: tuple[CycScalar, ...]        # 𝔰ᵢ per axis
    shift: tuple[int, ...]                 # m with ϱ + m = ς


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Witness | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def axis_candidates(
    a_values: tuple[CycScalar, ...], b_values: tuple[CycScalar, ...]
) -> list[tuple[CycScalar, tuple[int, ...]]]:
    """All (𝔰, τ) with b_j = 𝔰·a_{τ(j)}, ordered by the partner of b₁."""
    out = []
    lookup = {a: j for j, a in enumerate(a_values)}
    for j0 in range(len(a_values)):
        s = b_values[0] / a_values[j0]
        tau = []
        for b in b_values:
            j = lookup.get(b / s)
            if j is None:
                break
            tau.append(j)
        else:
            out.append((s, tuple(tau)))
    return out


def decide_iso(d1: ModuleDescriptor, d2: ModuleDescriptor) -> IsoResult:
    """Witness search over the classified descriptors, or the first failure."""
    s1, s2 = d1.spec, d2.spec
    if s1.n != s2.n or s1.dims != s2.dims:
        return IsoResult(False, reason="dimension-mismatch")
    if s1.algebra.cartan != s2.algebra.cartan:
        return IsoResult(False, reason="algebra-mismatch")
    order = common_field_order(s1, s2)
    s1 = s1.with_field_order(order)
    s2 = s2.with_field_order(order)

    per_axis = [axis_candidates(s1.evals[i], s2.evals[i]) for i in range(s1.n)]
    if any(not c for c in per_axis):
        return IsoResult(False, reason="no-scaling-permutation")

    indices = table_indices(s1.dims)
    weight_hit = False
    for combo in itertools.product(*per_axis):
        taus = tuple(tau for _, tau in combo)
        if all(
            s2.weights[I] == s1.weights[tuple(t[i - 1] + 1 for t, i in zip(taus, I))]
            for I in indices
        ):
            weight_hit = True
            break
    if not weight_hit:
        return IsoResult(False, reason="weight-mismatch")
    scalings = tuple(s for s, _ in combo)

    if not d1.support.lattice.same_subgroup(d2.support.lattice):
        return IsoResult(False, reason="support-mismatch")
    delta = [b - a for a, b in zip(s1.rho, s2.rho)]
    if any(x.denominator != 1 for x in delta):
        return IsoResult(False, reason="grading-shift")
    shift = tuple(int(x) for x in delta)
    if not d1.support.lattice.contains(shift):
        return IsoResult(False, reason="grading-shift")
    return IsoResult(True, witness=Witness(taus=taus, scalings=scalings, shift=shift))
