"""
Graded morphisms between chain complexes.

A GradedMorphism of degree k sends generators of degree n to chains of
degree n+k. Being a chain map is a flag the caller asserts and
`verify_chain_map` can check, with the convention d∘φ = (-1)^k φ∘d.
"""

from __future__ import annotations

from collections.abc import Callable

from effpushout.chains import (
    Chain,
    ChainComplex,
    ComplexMismatchError,
    DegreeMismatchError,
    Generator,
    linear_combination,
)


class GradedMorphism:
    """
    A linear map `source -> target` raising degrees by `degree`.

    Args:
        source: complex the rule is defined on
        target: complex the images live in
        degree: k, so generators of degree n land in degree n+k
        rule: generator -> Chain of degree n+k over `target`
        chain_map: asserts d∘φ = (-1)^k φ∘d
        name: label used in reports
    """

    def __init__(
        self,
        source: ChainComplex,
        target: ChainComplex,
        degree: int,
        rule: Callable[[Generator], Chain],
        *,
        chain_map: bool = False,
        name: str = "",
    ):
        self.source = source
        self.target = target
        self.degree = degree
        self.is_chain_map = chain_map
        self.name = name or f"{source.name}->{target.name}"
        self._rule = rule
        self._cache: dict[Generator, Chain] = {}

    def __repr__(self) -> str:
        flag = ", chain map" if self.is_chain_map else ""
        return f"GradedMorphism({self.name}: degree {self.degree}{flag})"

    def image(self, generator: Generator) -> Chain:
        """Image of a single source generator."""
        cached = self._cache.get(generator)
        if cached is not None:
            return cached
        if not self.source.contains(generator):
            raise ComplexMismatchError(
                f"{generator!r} is not a generator of {self.source.name} ({self.name})"
            )
        expected = generator.degree + self.degree
        result = self._rule(generator)
        if not result.terms:
            result = Chain.zero(expected)
        elif result.degree != expected:
            raise DegreeMismatchError(
                f"{self.name}: image of {generator!r} has degree {result.degree}, "
                f"expected {expected}"
            )
        self._cache[generator] = result
        return result

    def __call__(self, chain: Chain) -> Chain:
        return apply_morphism(self, chain)

    def __add__(self, other: GradedMorphism) -> GradedMorphism:
        return add_morphisms(self, other)

    def __neg__(self) -> GradedMorphism:
        return scale_morphism(-1, self)

    def __sub__(self, other: GradedMorphism) -> GradedMorphism:
        return add_morphisms(self, scale_morphism(-1, other))


def apply_morphism(morphism: GradedMorphism, chain: Chain) -> Chain:
    """Linear extension of the morphism's rule to a chain."""
    return linear_combination(
        chain.degree + morphism.degree,
        ((c, morphism.image(g)) for c, g in chain.terms),
    )


def compose_morphisms(outer: GradedMorphism, inner: GradedMorphism) -> GradedMorphism:
    """`outer ∘ inner`; degrees add, chain-map flag survives only if both carry it."""
    if inner.target is not outer.source:
        raise ComplexMismatchError(
            f"Cannot compose {outer.name} after {inner.name}: "
            f"{inner.target.name} is not {outer.source.name}"
        )
    return GradedMorphism(
        inner.source,
        outer.target,
        inner.degree + outer.degree,
        lambda g: outer(inner.image(g)),
        chain_map=inner.is_chain_map and outer.is_chain_map,
        name=f"{outer.name}*{inner.name}",
    )


def compose(*morphisms: GradedMorphism) -> GradedMorphism:
    """Right-to-left composite of several morphisms."""
    result = morphisms[-1]
    for outer in reversed(morphisms[:-1]):
        result = compose_morphisms(outer, result)
    return result


def _check_parallel(first: GradedMorphism, second: GradedMorphism) -> None:
    if first.source is not second.source or first.target is not second.target:
        raise ComplexMismatchError(f"{first.name} and {second.name} are not parallel")
    if first.degree != second.degree:
        raise DegreeMismatchError(
            f"{first.name} has degree {first.degree}, {second.name} has {second.degree}"
        )


def add_morphisms(first: GradedMorphism, second: GradedMorphism) -> GradedMorphism:
    _check_parallel(first, second)
    return GradedMorphism(
        first.source,
        first.target,
        first.degree,
        lambda g: first.image(g) + second.image(g),
        chain_map=first.is_chain_map and second.is_chain_map,
        name=f"({first.name}+{second.name})",
    )


def scale_morphism(scalar: int, morphism: GradedMorphism) -> GradedMorphism:
    return GradedMorphism(
        morphism.source,
        morphism.target,
        morphism.degree,
        lambda g: scalar * morphism.image(g),
        chain_map=morphism.is_chain_map,
        name=morphism.name if scalar == 1 else f"{scalar}{morphism.name}",
    )


def zero_morphism(
    source: ChainComplex, target: ChainComplex, degree: int = 0
) -> GradedMorphism:
    return GradedMorphism(
        source, target, degree,
        lambda g: Chain.zero(g.degree + degree),
        chain_map=True, name="0",
    )


def identity_morphism(complex_: ChainComplex) -> GradedMorphism:
    return complex_.identity


def verify_chain_map(morphism: GradedMorphism) -> list[Generator]:
    """Source generators on which d∘φ and (-1)^k φ∘d differ."""
    sign = -1 if morphism.degree % 2 else 1
    witnesses = []
    for generator in morphism.source.generators():
        left = morphism.target.boundary(morphism.image(generator))
        right = morphism(morphism.source.d(generator))
        if (left - sign * right).terms:
            witnesses.append(generator)
    return witnesses


def morphisms_agree(first: GradedMorphism, second: GradedMorphism) -> list[Generator]:
    """Source generators on which two parallel morphisms differ."""
    _check_parallel(first, second)
    return [
        g for g in first.source.generators()
        if (first.image(g) - second.image(g)).terms
    ]
