"""
Seeded builders for test complexes, sequences and equivalences.

Random complexes are sums of elementary pieces (a free generator, or a pair
x -> k*y) scrambled by unimodular changes of basis, so their homology is known
without computing it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from effpushout.chains import (
    Chain,
    ChainComplex,
    DirectSumComplex,
    Generator,
    canonicalize_chain,
)
from effpushout.cones import cone_contraction
from effpushout.homology import AbelianGroup
from effpushout.morphisms import GradedMorphism, zero_morphism
from effpushout.pipeline import EffectiveSES
from effpushout.reductions import (
    HomotopyEquivalence,
    Reduction,
    compose_reductions,
    direct_sum_reduction,
    identity_reduction,
)

Matrix = list[list[int]]


@dataclass
class KnownComplex:
    complex: ChainComplex
    homology: dict[int, AbelianGroup]


def _identity(size: int) -> Matrix:
    return [[int(i == j) for j in range(size)] for i in range(size)]


def _matmul(a: Matrix, b: Matrix, rows: int, inner: int, cols: int) -> Matrix:
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def unimodular(rng: random.Random, size: int, steps: int = 6) -> tuple[Matrix, Matrix]:
    """A random integer matrix U with det ±1, and its inverse."""
    u, inverse = _identity(size), _identity(size)
    if size < 2:
        return u, inverse
    for _ in range(steps):
        i, j = rng.sample(range(size), 2)
        c = rng.choice([-2, -1, 1, 2])
        # U <- (I + c e_ij) U, U^-1 <- U^-1 (I - c e_ij)
        for col in range(size):
            u[i][col] += c * u[j][col]
        for row in range(size):
            inverse[row][j] -= c * inverse[row][i]
    return u, inverse


def random_complex(
    rng: random.Random,
    *,
    degrees: range = range(0, 5),
    max_rank: int = 6,
    name: str = "K",
    scramble: bool = True,
) -> KnownComplex:
    """A complex on `degrees` with at most `max_rank` generators per degree."""
    lo, hi = degrees.start, degrees.stop - 1
    ranks = {n: 0 for n in degrees}
    free = {n: 0 for n in degrees}
    torsion: dict[int, list[int]] = {n: [] for n in degrees}
    # entries of the elementary differential: (degree of x, index of x, index of y, k)
    pairs: list[tuple[int, int, int, int]] = []
    for n in degrees:
        for _ in range(rng.randint(0, 3)):
            if ranks[n] >= max_rank:
                break
            if n > lo and ranks[n - 1] < max_rank and rng.random() < 0.6:
                k = rng.choice([1, 1, 2, 3, 4, 6])
                pairs.append((n, ranks[n], ranks[n - 1], k))
                ranks[n] += 1
                ranks[n - 1] += 1
                if k > 1:
                    torsion[n - 1].append(k)
            else:
                ranks[n] += 1
                free[n] += 1

    matrices = {n: [[0] * ranks[n] for _ in range(ranks[n - 1])] for n in degrees if n > lo}
    for n, x, y, k in pairs:
        matrices[n][y][x] = k
    bases = {n: unimodular(rng, ranks[n]) if scramble else (_identity(ranks[n]),) * 2
             for n in degrees}
    # D'_n = U_{n-1}^{-1} D_n U_n
    scrambled = {
        n: _matmul(
            _matmul(bases[n - 1][1], matrices[n], ranks[n - 1], ranks[n - 1], ranks[n]),
            bases[n][0], ranks[n - 1], ranks[n], ranks[n],
        )
        for n in matrices
    }
    gens = {n: [Generator(f"{name}{n}_{i}", n) for i in range(ranks[n])] for n in degrees}

    def differential(generator: Generator) -> Chain:
        n = generator.degree
        if n == lo:
            return Chain.zero(n - 1)
        j = gens[n].index(generator)
        return canonicalize_chain(
            [(scrambled[n][i][j], gens[n - 1][i]) for i in range(ranks[n - 1])],
            degree=n - 1,
        )

    complex_ = ChainComplex(gens, differential, name=name)
    homology = {
        n: AbelianGroup.from_invariants(free[n], torsion[n])
        for n in range(lo, hi + 1)
    }
    return KnownComplex(complex_, homology)


def direct_sum_group(first: AbelianGroup, second: AbelianGroup) -> AbelianGroup:
    return AbelianGroup.from_invariants(
        first.free_rank + second.free_rank, [*first.torsion, *second.torsion]
    )


def random_graded_map(
    rng: random.Random, source: ChainComplex, target: ChainComplex, name: str
) -> GradedMorphism:
    table = {
        g: canonicalize_chain(
            [(rng.randint(-2, 2), t) for t in target.basis(g.degree)], degree=g.degree
        )
        for g in source.generators()
    }
    return GradedMorphism(source, target, 0, table.__getitem__, name=name)


def split_ses(
    rng: random.Random, a: ChainComplex, c: ChainComplex
) -> EffectiveSES:
    """
    B = A ⊕ C with d(a, c) = (d a, d c + (dθ' - θ'd) a), sections
    σ(a) = (a, θa) and ρ(a, c) = c - θa for random graded θ, θ'.
    """
    theta = random_graded_map(rng, a, c, "theta")
    twist = random_graded_map(rng, a, c, "twist")
    degrees = set(a.degrees) | set(c.degrees)
    basis = {
        n: [Generator(("A", g), n) for g in a.basis(n)]
        + [Generator(("C", g), n) for g in c.basis(n)]
        for n in degrees
    }

    def lift_a(chain: Chain) -> Chain:
        return Chain(chain.degree, tuple((k, Generator(("A", g), g.degree)) for k, g in chain.terms))

    def lift_c(chain: Chain) -> Chain:
        return Chain(chain.degree, tuple((k, Generator(("C", g), g.degree)) for k, g in chain.terms))

    def d_b(generator: Generator) -> Chain:
        tag, inner = generator.label
        if tag == "C":
            return lift_c(c.d(inner))
        tw = c.boundary(twist.image(inner)) - twist(a.d(inner))
        return lift_a(a.d(inner)) + lift_c(tw)

    b = ChainComplex(basis, d_b, name="B")

    def i_rule(g: Generator) -> Chain:
        return lift_c(Chain.of(g))

    def j_rule(g: Generator) -> Chain:
        tag, inner = g.label
        return Chain.of(inner) if tag == "A" else Chain.zero(g.degree)

    def sigma_rule(g: Generator) -> Chain:
        return lift_a(Chain.of(g)) + lift_c(theta.image(g))

    def rho_rule(g: Generator) -> Chain:
        tag, inner = g.label
        if tag == "C":
            return Chain.of(inner)
        return -theta.image(inner)

    return EffectiveSES(
        a=a, b=b, c=c,
        i=GradedMorphism(c, b, 0, i_rule, chain_map=True, name="i"),
        j=GradedMorphism(b, a, 0, j_rule, chain_map=True, name="j"),
        sigma=GradedMorphism(a, b, 0, sigma_rule, name="sigma"),
        rho=GradedMorphism(b, c, 0, rho_rule, name="rho"),
        name="split",
    )


def unpad(padded: DirectSumComplex) -> Reduction:
    """C ⊕ 0 => C, an isomorphism."""
    if padded.right.size():
        raise ValueError(f"{padded.name} is not padded by a zero complex")
    return Reduction(
        padded, padded.left, padded.project_left, padded.inject_left,
        zero_morphism(padded, padded, 1), name=f"unpad[{padded.left.name}]",
    )


def padded_equivalence(complex_: ChainComplex, filler: ChainComplex) -> HomotopyEquivalence:
    """
    C <= C ⊕ Cone(id_K) => C ⊕ 0, both legs contracting the cone of K.
    """
    right = direct_sum_reduction(identity_reduction(complex_), cone_contraction(filler))
    left = compose_reductions(unpad(right.small), right)  # type: ignore[arg-type]
    return HomotopyEquivalence(left, right)
