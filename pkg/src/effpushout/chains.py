"""
Integer chain complexes.

Generators are opaque labels tagged with a degree, chains are canonical
integer combinations of generators, and a ChainComplex is a finite window of
degrees with an ordered basis in each degree and a differential given as a
rule on generators. Direct sums and suspensions are built here; cones live in
`effpushout.cones`.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from effpushout.morphisms import GradedMorphism


class ChainError(Exception):
    """Error in chain-level algebra."""
    pass


class DegreeMismatchError(ChainError):
    """Chains or generators of different degrees were combined."""
    pass


class ComplexMismatchError(ChainError):
    """A chain or morphism was used with a complex it does not belong to."""
    pass


class DegreeError(ChainError):
    """A morphism of the wrong degree was supplied."""
    pass


class NotEffectiveError(ChainError):
    """A complex without finite enumerable bases was used where one is required."""
    pass


def sort_key(obj: Any) -> tuple:
    """
    Total order over the labels used in this package.

    Integers sort before strings, strings before tuples, tuples before
    objects exposing their own `sort_key()`. Anything else falls back to repr.
    """
    if isinstance(obj, bool):
        return (0, int(obj))
    if isinstance(obj, int):
        return (0, obj)
    if isinstance(obj, str):
        return (1, obj)
    if isinstance(obj, tuple):
        return (2, tuple(sort_key(item) for item in obj))
    key = getattr(obj, "sort_key", None)
    if callable(key):
        return (3, key())
    return (4, repr(obj))


def label_name(label: Any) -> str:
    """Human-readable rendering of a label."""
    if isinstance(label, str):
        return label
    if isinstance(label, tuple):
        return "(" + ",".join(label_name(item) for item in label) + ")"
    name = getattr(label, "name", None)
    if isinstance(name, str):
        return name
    return repr(label)


@dataclass(frozen=True)
class Generator:
    """A basis element: `(complex, degree, label)` identifies it."""
    label: Hashable
    degree: int

    def sort_key(self) -> tuple:
        return (self.degree, sort_key(self.label))

    @property
    def name(self) -> str:
        return label_name(self.label)

    def __repr__(self) -> str:
        return f"<{self.name}|{self.degree}>"


@dataclass(frozen=True)
class Chain:
    """
    A finite integer combination of generators of one degree.

    Always in canonical form: no repeated generators, no zero coefficients,
    terms sorted by `sort_key`. Build chains with `canonicalize_chain`,
    `Chain.of` or `Chain.zero` rather than the constructor.
    """
    degree: int
    terms: tuple[tuple[int, Generator], ...] = ()

    @classmethod
    def zero(cls, degree: int) -> Chain:
        return cls(degree, ())

    @classmethod
    def of(cls, generator: Generator, coefficient: int = 1) -> Chain:
        if coefficient == 0:
            return cls(generator.degree, ())
        return cls(generator.degree, ((coefficient, generator),))

    def __iter__(self) -> Iterator[tuple[int, Generator]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, generator: Generator) -> int:
        for coefficient, term in self.terms:
            if term == generator:
                return coefficient
        return 0

    def generators(self) -> tuple[Generator, ...]:
        return tuple(term for _, term in self.terms)

    def __add__(self, other: Chain) -> Chain:
        if not isinstance(other, Chain):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            if other.degree != self.degree:
                raise DegreeMismatchError(
                    f"Cannot add chains of degrees {self.degree} and {other.degree}"
                )
            return other
        if other.degree != self.degree:
            raise DegreeMismatchError(
                f"Cannot add chains of degrees {self.degree} and {other.degree}"
            )
        return canonicalize_chain([*self.terms, *other.terms], degree=self.degree)

    def __neg__(self) -> Chain:
        return Chain(self.degree, tuple((-c, g) for c, g in self.terms))

    def __sub__(self, other: Chain) -> Chain:
        if not isinstance(other, Chain):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: int) -> Chain:
        if not isinstance(scalar, int):
            return NotImplemented
        if scalar == 0:
            return Chain.zero(self.degree)
        return Chain(self.degree, tuple((scalar * c, g) for c, g in self.terms))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for coefficient, generator in self.terms:
            sign = "-" if coefficient < 0 else "+"
            size = abs(coefficient)
            body = generator.name if size == 1 else f"{size}*{generator.name}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def canonicalize_chain(
    terms: Iterable[tuple[int, Generator]],
    degree: int | None = None,
) -> Chain:
    """
    Merge repeated generators, drop zero coefficients and sort.

    `degree` is required only to give an empty input a degree; when given it
    must agree with every generator.
    """
    merged: dict[Generator, int] = {}
    for coefficient, generator in terms:
        if degree is None:
            degree = generator.degree
        elif generator.degree != degree:
            raise DegreeMismatchError(
                f"Generator {generator!r} has degree {generator.degree}, expected {degree}"
            )
        merged[generator] = merged.get(generator, 0) + coefficient
    items = [(c, g) for g, c in merged.items() if c != 0]
    items.sort(key=lambda item: item[1].sort_key())
    return Chain(0 if degree is None else degree, tuple(items))


def linear_combination(degree: int, parts: Iterable[tuple[int, Chain]]) -> Chain:
    """Sum of `coefficient * chain` over `parts`, every chain of `degree`."""
    merged: dict[Generator, int] = {}
    for coefficient, chain in parts:
        if coefficient == 0 or not chain.terms:
            continue
        if chain.degree != degree:
            raise DegreeMismatchError(
                f"Chain of degree {chain.degree} in a combination of degree {degree}"
            )
        for c, generator in chain.terms:
            merged[generator] = merged.get(generator, 0) + coefficient * c
    items = [(c, g) for g, c in merged.items() if c != 0]
    items.sort(key=lambda item: item[1].sort_key())
    return Chain(degree, tuple(items))


class ChainComplex:
    """
    A chain complex of free abelian groups with a finite support window.

    Args:
        basis: degree -> ordered generators of that degree
        differential: rule sending a generator of degree n to a Chain of degree n-1
        name: label used in reports
        effective: False for complexes whose bases cannot be enumerated; such
            complexes are rejected wherever homology has to be computed directly
    """

    def __init__(
        self,
        basis: Mapping[int, Sequence[Generator]],
        differential: Callable[[Generator], Chain],
        *,
        name: str = "",
        effective: bool = True,
    ):
        self.name = name
        self.effective = effective
        self._basis: dict[int, tuple[Generator, ...]] = {}
        self._members: dict[int, frozenset[Generator]] = {}
        for degree in sorted(basis):
            generators = tuple(basis[degree])
            if not generators:
                continue
            for generator in generators:
                if generator.degree != degree:
                    raise DegreeMismatchError(
                        f"{name}: generator {generator!r} listed in degree {degree}"
                    )
            members = frozenset(generators)
            if len(members) != len(generators):
                raise ChainError(f"{name}: repeated generator in degree {degree}")
            self._basis[degree] = generators
            self._members[degree] = members
        if self._basis:
            self.lo = min(self._basis)
            self.hi = max(self._basis)
        else:
            self.lo, self.hi = 0, -1
        self._rule = differential
        self._d_cache: dict[Generator, Chain] = {}

    def __repr__(self) -> str:
        ranks = ", ".join(f"{n}:{self.rank(n)}" for n in self.degrees)
        return f"ChainComplex({self.name or '?'}; {ranks})"

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def basis(self, degree: int) -> tuple[Generator, ...]:
        return self._basis.get(degree, ())

    def rank(self, degree: int) -> int:
        return len(self._basis.get(degree, ()))

    def ranks(self) -> dict[int, int]:
        return {n: self.rank(n) for n in self.degrees}

    def size(self) -> int:
        return sum(len(gens) for gens in self._basis.values())

    def generators(self) -> Iterator[Generator]:
        for degree in self.degrees:
            yield from self.basis(degree)

    def contains(self, generator: Generator) -> bool:
        members = self._members.get(generator.degree)
        return members is not None and generator in members

    def d(self, generator: Generator) -> Chain:
        """Differential of a single generator."""
        cached = self._d_cache.get(generator)
        if cached is not None:
            return cached
        if not self.contains(generator):
            raise ComplexMismatchError(f"{generator!r} is not a generator of {self.name}")
        image = self._rule(generator)
        if image.terms and image.degree != generator.degree - 1:
            raise DegreeMismatchError(
                f"{self.name}: d{generator!r} has degree {image.degree}"
            )
        if not image.terms:
            image = Chain.zero(generator.degree - 1)
        self._d_cache[generator] = image
        return image

    def boundary(self, chain: Chain) -> Chain:
        """Differential of a chain."""
        return linear_combination(
            chain.degree - 1, ((c, self.d(g)) for c, g in chain.terms)
        )

    def check_differential(self) -> list[Generator]:
        """Generators on which d∘d does not vanish."""
        return [g for g in self.generators() if self.boundary(self.d(g)).terms]

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * self.rank(n) for n in self.degrees)

    @cached_property
    def differential(self) -> GradedMorphism:
        """The differential as a degree -1 chain map."""
        from effpushout.morphisms import GradedMorphism
        return GradedMorphism(
            self, self, -1, self.d, chain_map=True, name=f"d[{self.name}]"
        )

    @cached_property
    def identity(self) -> GradedMorphism:
        from effpushout.morphisms import GradedMorphism
        return GradedMorphism(
            self, self, 0, Chain.of, chain_map=True, name=f"id[{self.name}]"
        )


def zero_complex(name: str = "0") -> ChainComplex:
    return ChainComplex({}, lambda g: Chain.zero(g.degree - 1), name=name)


LEFT = "L"
RIGHT = "R"


class DirectSumComplex(ChainComplex):
    """
    `left ⊕ right`, generators tagged `(LEFT, g)` / `(RIGHT, g)`.

    In each degree the left summand's basis comes first, then the right's,
    each in its own order.
    """

    def __init__(self, left: ChainComplex, right: ChainComplex, *, name: str = ""):
        self.left = left
        self.right = right
        degrees = set(left.degrees) | set(right.degrees)
        basis = {
            n: [Generator((LEFT, g), n) for g in left.basis(n)]
            + [Generator((RIGHT, g), n) for g in right.basis(n)]
            for n in degrees
        }
        super().__init__(
            basis, self._differential, name=name or f"{left.name}+{right.name}"
        )

    def summand(self, generator: Generator) -> tuple[str, Generator]:
        tag, inner = generator.label  # type: ignore[misc]
        return tag, inner

    def embed(self, left: Chain | None, right: Chain | None, degree: int) -> Chain:
        """Assemble a chain of the sum from one chain of each summand."""
        terms: list[tuple[int, Generator]] = []
        if left is not None:
            terms.extend((c, Generator((LEFT, g), degree)) for c, g in left.terms)
        if right is not None:
            terms.extend((c, Generator((RIGHT, g), degree)) for c, g in right.terms)
        return canonicalize_chain(terms, degree=degree)

    def split(self, chain: Chain) -> tuple[Chain, Chain]:
        left: list[tuple[int, Generator]] = []
        right: list[tuple[int, Generator]] = []
        for c, g in chain.terms:
            tag, inner = self.summand(g)
            (left if tag == LEFT else right).append((c, inner))
        return (
            canonicalize_chain(left, degree=chain.degree),
            canonicalize_chain(right, degree=chain.degree),
        )

    def _differential(self, generator: Generator) -> Chain:
        tag, inner = self.summand(generator)
        n = generator.degree
        if tag == LEFT:
            return self.embed(self.left.d(inner), None, n - 1)
        return self.embed(None, self.right.d(inner), n - 1)

    @cached_property
    def inject_left(self) -> GradedMorphism:
        from effpushout.morphisms import GradedMorphism
        return GradedMorphism(
            self.left, self, 0,
            lambda g: Chain.of(Generator((LEFT, g), g.degree)),
            chain_map=True, name=f"in1[{self.name}]",
        )

    @cached_property
    def inject_right(self) -> GradedMorphism:
        from effpushout.morphisms import GradedMorphism
        return GradedMorphism(
            self.right, self, 0,
            lambda g: Chain.of(Generator((RIGHT, g), g.degree)),
            chain_map=True, name=f"in2[{self.name}]",
        )

    @cached_property
    def project_left(self) -> GradedMorphism:
        from effpushout.morphisms import GradedMorphism

        def rule(g: Generator) -> Chain:
            tag, inner = self.summand(g)
            return Chain.of(inner) if tag == LEFT else Chain.zero(g.degree)

        return GradedMorphism(self, self.left, 0, rule, chain_map=True,
                              name=f"pr1[{self.name}]")

    @cached_property
    def project_right(self) -> GradedMorphism:
        from effpushout.morphisms import GradedMorphism

        def rule(g: Generator) -> Chain:
            tag, inner = self.summand(g)
            return Chain.of(inner) if tag == RIGHT else Chain.zero(g.degree)

        return GradedMorphism(self, self.right, 0, rule, chain_map=True,
                              name=f"pr2[{self.name}]")


def direct_sum(left: ChainComplex, right: ChainComplex, *, name: str = "") -> DirectSumComplex:
    """`left ⊕ right` with componentwise differential."""
    return DirectSumComplex(left, right, name=name)


SHIFT_TAG = "s"


class SuspensionComplex(ChainComplex):
    """
    ΣC: a generator g of degree n becomes `(SHIFT_TAG, g)` in degree n+1,
    and the differential is the negated, shifted differential of C.
    """

    def __init__(self, base: ChainComplex, *, name: str = ""):
        self.base = base
        basis = {
            n + 1: [Generator((SHIFT_TAG, g), n + 1) for g in base.basis(n)]
            for n in base.degrees
        }
        super().__init__(basis, self._differential, name=name or f"S({base.name})")

    def lift(self, chain: Chain) -> Chain:
        """Shift a chain of the base up one degree."""
        return Chain(
            chain.degree + 1,
            tuple((c, Generator((SHIFT_TAG, g), g.degree + 1)) for c, g in chain.terms),
        )

    def lower(self, chain: Chain) -> Chain:
        """Inverse of `lift`."""
        return Chain(
            chain.degree - 1,
            tuple((c, g.label[1]) for c, g in chain.terms),  # type: ignore[index]
        )

    def _differential(self, generator: Generator) -> Chain:
        inner: Generator = generator.label[1]  # type: ignore[index]
        return -self.lift(self.base.d(inner))

    @cached_property
    def shift(self) -> GradedMorphism:
        """The degree +1 chain map C -> ΣC (d∘s = -s∘d)."""
        from effpushout.morphisms import GradedMorphism
        return GradedMorphism(
            self.base, self, 1, lambda g: self.lift(Chain.of(g)),
            chain_map=True, name=f"shift[{self.name}]",
        )

    @cached_property
    def unshift(self) -> GradedMorphism:
        """The degree -1 chain map ΣC -> C inverse to `shift`."""
        from effpushout.morphisms import GradedMorphism
        return GradedMorphism(
            self, self.base, -1, lambda g: self.lower(Chain.of(g)),
            chain_map=True, name=f"unshift[{self.name}]",
        )


def suspension(complex_: ChainComplex, *, name: str = "") -> SuspensionComplex:
    """ΣC, shifted up one degree with differential -d."""
    return SuspensionComplex(complex_, name=name)
