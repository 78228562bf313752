"""
Finite simplicial sets.

A simplicial set is stored through its nondegenerate simplices and, for each
of them, the list of its faces. Faces may be degenerate, so they are
SimplexWords: a nondegenerate base with a canonical degeneracy word
η_{i_k}...η_{i_1} (i_k > ... > i_1). Faces of degenerate simplices are
computed from the simplicial identities, never stored.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from effpushout.chains import (
    Chain,
    ChainComplex,
    Generator,
    canonicalize_chain,
    label_name,
    sort_key,
)
from effpushout.morphisms import GradedMorphism

logger = logging.getLogger(__name__)


class SimplicialError(Exception):
    """Error in simplicial-set construction or arithmetic."""
    pass


class FaceIndexError(SimplicialError):
    """Face or degeneracy index outside 0..dim."""
    pass


class InvalidSpaceError(SimplicialError):
    """Simplices and face tables do not form a simplicial set."""

    def __init__(self, message: str, report: SimplicialReport | None = None):
        self.report = report
        super().__init__(message)


class InvalidMorphismTableError(SimplicialError):
    """A simplex table does not define a simplicial morphism."""
    pass


class MissingSimplexError(SimplicialError):
    """A simplex was looked up by a name the space does not have."""
    pass


@dataclass(frozen=True)
class NondegSimplex:
    """A nondegenerate simplex, unique per (space, dim, label)."""
    label: Hashable
    dim: int

    def sort_key(self) -> tuple:
        return (self.dim, sort_key(self.label))

    @property
    def name(self) -> str:
        return label_name(self.label)

    def __repr__(self) -> str:
        return f"{self.name}[{self.dim}]"


@dataclass(frozen=True)
class SimplexWord:
    """η_{i_k}...η_{i_1} base, with `degeneracies` = (i_k, ..., i_1) strictly decreasing."""
    degeneracies: tuple[int, ...]
    base: NondegSimplex

    def __post_init__(self) -> None:
        indices = self.degeneracies
        if any(a <= b for a, b in zip(indices, indices[1:])):
            raise SimplicialError(f"Degeneracy word {indices} is not strictly decreasing")
        # the t-th applied degeneracy acts on a simplex of dimension base.dim + t - 1
        for t, index in enumerate(reversed(indices), start=1):
            if index < 0 or index > self.base.dim + t - 1:
                raise FaceIndexError(f"Degeneracy η_{index} out of range in {indices}")

    @classmethod
    def of(cls, base: NondegSimplex) -> SimplexWord:
        return cls((), base)

    @property
    def dim(self) -> int:
        return self.base.dim + len(self.degeneracies)

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degeneracies)

    def sort_key(self) -> tuple:
        return (self.dim, self.degeneracies, self.base.sort_key())

    @property
    def name(self) -> str:
        if not self.degeneracies:
            return self.base.name
        word = "".join(f"s{i}" for i in self.degeneracies)
        return f"{word}({self.base.name})"

    def __repr__(self) -> str:
        return f"{self.name}[{self.dim}]"


def apply_degeneracy(word: SimplexWord, index: int) -> SimplexWord:
    """η_index applied to `word`, rewritten with η_i η_j = η_{j+1} η_i (i <= j)."""
    if index < 0 or index > word.dim:
        raise FaceIndexError(f"η_{index} undefined on {word!r}")
    result: list[int] = []
    for position, j in enumerate(word.degeneracies):
        if index <= j:
            result.append(j + 1)
        else:
            result.append(index)
            result.extend(word.degeneracies[position:])
            break
    else:
        result.append(index)
    return SimplexWord(tuple(result), word.base)


def vertex_word(vertex: NondegSimplex, dim: int) -> SimplexWord:
    """The fully degenerate `dim`-simplex on a vertex."""
    return SimplexWord(tuple(range(dim - 1, -1, -1)), vertex)


def degenerate(word: SimplexWord, indices: Iterable[int]) -> SimplexWord:
    """Apply the degeneracies of a canonical word's index set, smallest first."""
    for index in sorted(indices):
        word = apply_degeneracy(word, index)
    return word


def canonical_face(space: SimplicialSet, index: int, word: SimplexWord) -> SimplexWord:
    """
    ∂_index of a possibly degenerate simplex, in canonical form.

    Peels the outermost degeneracy η_a off the word:
    ∂_i η_a = η_{a-1} ∂_i for i < a, the identity for i in {a, a+1},
    and η_a ∂_{i-1} for i > a+1.
    """
    if word.dim == 0 or not 0 <= index <= word.dim:
        raise FaceIndexError(f"∂_{index} undefined on {word!r}")
    if not word.degeneracies:
        return space.faces_of(word.base)[index]
    outer = word.degeneracies[0]
    rest = SimplexWord(word.degeneracies[1:], word.base)
    if index in (outer, outer + 1):
        return rest
    if index < outer:
        return apply_degeneracy(canonical_face(space, index, rest), outer - 1)
    return apply_degeneracy(canonical_face(space, index - 1, rest), outer)


@dataclass(frozen=True)
class FaceViolation:
    """A simplicial identity that fails on one simplex."""
    simplex: NondegSimplex
    equation: str
    left: SimplexWord
    right: SimplexWord

    def __str__(self) -> str:
        return f"{self.equation} fails on {self.simplex!r}: {self.left!r} != {self.right!r}"


@dataclass
class SimplicialReport:
    """Outcome of `verify_simplicial` or `SimplicialMorphism.verify`."""
    subject: str
    checked: int = 0
    violations: list[FaceViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return f"{self.subject}: ok ({self.checked} simplices)"
        return (
            f"{self.subject}: {len(self.violations)} violation(s); "
            f"first: {self.violations[0]}"
        )


class SimplicialSet:
    """
    A finite simplicial set.

    Args:
        simplices: nondegenerate simplices, in the order used for bases
        faces: simplex -> its faces ∂_0 .. ∂_dim as SimplexWords; vertices
            may be omitted
        name: label used in reports
        top: top dimension; defaults to the largest simplex dimension
    """

    def __init__(
        self,
        simplices: Iterable[NondegSimplex],
        faces: Mapping[NondegSimplex, Sequence[SimplexWord]],
        *,
        name: str = "",
        top: int | None = None,
    ):
        self.name = name
        self._simplices: dict[int, list[NondegSimplex]] = {}
        self._members: set[NondegSimplex] = set()
        for simplex in simplices:
            if simplex.dim < 0:
                raise InvalidSpaceError(f"{name}: negative dimension for {simplex!r}")
            if simplex in self._members:
                raise InvalidSpaceError(f"{name}: {simplex!r} listed twice")
            self._members.add(simplex)
            self._simplices.setdefault(simplex.dim, []).append(simplex)
        largest = max(self._simplices, default=-1)
        if top is not None and top < largest:
            raise InvalidSpaceError(f"{name}: top dimension {top} below {largest}")
        self.top = largest if top is None else top
        self._faces: dict[NondegSimplex, tuple[SimplexWord, ...]] = {}
        for simplex in self._members:
            self._faces[simplex] = self._checked_faces(simplex, faces.get(simplex, ()))
        self._by_name: dict[str, NondegSimplex] = {}
        for simplex in self.all_simplices():
            self._by_name.setdefault(simplex.name, simplex)

    def _checked_faces(
        self, simplex: NondegSimplex, faces: Sequence[SimplexWord]
    ) -> tuple[SimplexWord, ...]:
        expected = simplex.dim + 1 if simplex.dim else 0
        if len(faces) != expected:
            raise InvalidSpaceError(
                f"{self.name}: {simplex!r} has {len(faces)} faces, expected {expected}"
            )
        for face in faces:
            if face.dim != simplex.dim - 1:
                raise InvalidSpaceError(
                    f"{self.name}: face {face!r} of {simplex!r} has the wrong dimension"
                )
            if face.base not in self._members:
                raise InvalidSpaceError(
                    f"{self.name}: face {face!r} of {simplex!r} is not in the space"
                )
        return tuple(faces)

    def __repr__(self) -> str:
        counts = ", ".join(f"{n}:{self.count(n)}" for n in self.dimensions)
        return f"SimplicialSet({self.name or '?'}; {counts})"

    @property
    def dimensions(self) -> range:
        return range(0, self.top + 1)

    @property
    def is_empty(self) -> bool:
        return not self._members

    def simplices(self, dim: int) -> tuple[NondegSimplex, ...]:
        return tuple(self._simplices.get(dim, ()))

    def all_simplices(self) -> Iterator[NondegSimplex]:
        for dim in self.dimensions:
            yield from self._simplices.get(dim, ())

    def vertices(self) -> tuple[NondegSimplex, ...]:
        return self.simplices(0)

    def count(self, dim: int) -> int:
        return len(self._simplices.get(dim, ()))

    def counts(self) -> dict[int, int]:
        return {n: self.count(n) for n in self.dimensions}

    def contains(self, simplex: NondegSimplex) -> bool:
        return simplex in self._members

    def simplex(self, name: str) -> NondegSimplex:
        """Look a nondegenerate simplex up by its rendered name."""
        try:
            return self._by_name[name]
        except KeyError:
            raise MissingSimplexError(f"{self.name} has no simplex named {name!r}") from None

    def faces_of(self, simplex: NondegSimplex) -> tuple[SimplexWord, ...]:
        try:
            return self._faces[simplex]
        except KeyError:
            raise MissingSimplexError(f"{simplex!r} is not a simplex of {self.name}") from None

    def face(self, index: int, word: SimplexWord) -> SimplexWord:
        return canonical_face(self, index, word)

    def words(self, dim: int) -> Iterator[SimplexWord]:
        """Every simplex of dimension `dim`, degenerate ones included."""
        for k in range(0, min(dim, self.top) + 1):
            for base in self._simplices.get(k, ()):
                for indices in combinations(range(dim), dim - k):
                    yield SimplexWord(tuple(reversed(indices)), base)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * self.count(n) for n in self.dimensions)

    @cached_property
    def chain_complex(self) -> ChainComplex:
        return normalized_chain_complex(self)


def verify_simplicial(space: SimplicialSet) -> SimplicialReport:
    """Check ∂_i ∂_j = ∂_{j-1} ∂_i (i < j) on every simplex of dimension >= 2."""
    report = SimplicialReport(subject=space.name)
    for simplex in space.all_simplices():
        report.checked += 1
        if simplex.dim < 2:
            continue
        faces = space.faces_of(simplex)
        for j in range(1, simplex.dim + 1):
            for i in range(j):
                left = space.face(i, faces[j])
                right = space.face(j - 1, faces[i])
                if left != right:
                    report.violations.append(
                        FaceViolation(simplex, f"∂{i}∂{j} = ∂{j - 1}∂{i}", left, right)
                    )
    logger.debug("%s", report.summary())
    return report


def simplex_generator(simplex: NondegSimplex) -> Generator:
    return Generator(simplex, simplex.dim)


def normalized_chain_complex(space: SimplicialSet) -> ChainComplex:
    """
    C_*(X): nondegenerate n-simplices in degree n, d = Σ (-1)^i ∂_i with
    degenerate faces dropped.
    """
    report = verify_simplicial(space)
    if not report.ok:
        raise InvalidSpaceError(report.summary(), report)
    basis = {
        n: [simplex_generator(s) for s in space.simplices(n)] for n in space.dimensions
    }

    def differential(generator: Generator) -> Chain:
        simplex: NondegSimplex = generator.label  # type: ignore[assignment]
        terms = [
            ((-1) ** i, simplex_generator(face.base))
            for i, face in enumerate(space.faces_of(simplex))
            if not face.is_degenerate
        ]
        return canonicalize_chain(terms, degree=generator.degree - 1)

    return ChainComplex(basis, differential, name=f"C({space.name})")


class SimplicialMorphism:
    """
    A dimension-preserving map of simplicial sets given on nondegenerate
    simplices. With `check` the table is validated against face commutation
    and an InvalidMorphismTableError names the first failure.
    """

    def __init__(
        self,
        source: SimplicialSet,
        target: SimplicialSet,
        mapping: Mapping[NondegSimplex, SimplexWord],
        *,
        name: str = "",
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.name = name or f"{source.name}->{target.name}"
        self._mapping: dict[NondegSimplex, SimplexWord] = {}
        for simplex in source.all_simplices():
            if simplex not in mapping:
                raise InvalidMorphismTableError(f"{self.name}: no image for {simplex!r}")
            image = mapping[simplex]
            if image.dim != simplex.dim:
                raise InvalidMorphismTableError(
                    f"{self.name}: {simplex!r} sent to {image!r} of another dimension"
                )
            if not target.contains(image.base):
                raise InvalidMorphismTableError(
                    f"{self.name}: image {image!r} of {simplex!r} is not in {target.name}"
                )
            self._mapping[simplex] = image
        extra = [s for s in mapping if not source.contains(s)]
        if extra:
            raise InvalidMorphismTableError(
                f"{self.name}: {extra[0]!r} is not a simplex of {source.name}"
            )
        if check:
            report = self.verify()
            if not report.ok:
                raise InvalidMorphismTableError(report.summary())

    def __repr__(self) -> str:
        return f"SimplicialMorphism({self.name})"

    def image(self, simplex: NondegSimplex) -> SimplexWord:
        try:
            return self._mapping[simplex]
        except KeyError:
            raise MissingSimplexError(
                f"{simplex!r} is not a simplex of {self.source.name}"
            ) from None

    def __call__(self, word: SimplexWord) -> SimplexWord:
        return degenerate(self.image(word.base), word.degeneracies)

    def verify(self) -> SimplicialReport:
        """Check f(∂_i s) = ∂_i f(s) for every nondegenerate s and every i."""
        report = SimplicialReport(subject=self.name)
        for simplex in self.source.all_simplices():
            report.checked += 1
            image = self.image(simplex)
            for i, face in enumerate(self.source.faces_of(simplex)):
                left = self(face)
                right = self.target.face(i, image)
                if left != right:
                    report.violations.append(
                        FaceViolation(simplex, f"f∂{i} = ∂{i}f", left, right)
                    )
        return report

    def compose(self, inner: SimplicialMorphism) -> SimplicialMorphism:
        """`self ∘ inner`."""
        if inner.target is not self.source:
            raise InvalidMorphismTableError(
                f"Cannot compose {self.name} after {inner.name}"
            )
        return SimplicialMorphism(
            inner.source, self.target,
            {s: self(inner.image(s)) for s in inner.source.all_simplices()},
            name=f"{self.name}*{inner.name}", check=False,
        )

    @cached_property
    def chain_map(self) -> GradedMorphism:
        """Induced map of normalized complexes; degenerate images go to 0."""
        source, target = self.source.chain_complex, self.target.chain_complex

        def rule(generator: Generator) -> Chain:
            image = self.image(generator.label)  # type: ignore[arg-type]
            if image.is_degenerate:
                return Chain.zero(generator.degree)
            return Chain.of(simplex_generator(image.base))

        return GradedMorphism(source, target, 0, rule, chain_map=True,
                              name=f"C({self.name})")


def _collapse_index(index: int, collapsed: Sequence[int]) -> int:
    return index - sum(1 for k in collapsed if k < index)


class ProductSet(SimplicialSet):
    """
    X × Y. Nondegenerate n-simplices are pairs (u, v) of n-simplices of X and
    Y whose degeneracy index sets are disjoint; faces are taken coordinatewise
    and the common degeneracies factored back out.
    """

    def __init__(self, left: SimplicialSet, right: SimplicialSet, *, name: str = ""):
        self.left = left
        self.right = right
        self.name = name or f"{left.name}x{right.name}"
        top = -1 if left.is_empty or right.is_empty else left.top + right.top
        simplices: list[NondegSimplex] = []
        self._by_pair: dict[tuple[SimplexWord, SimplexWord], NondegSimplex] = {}
        for n in range(0, top + 1):
            for u in left.words(n):
                used = set(u.degeneracies)
                for v in right.words(n):
                    if used.isdisjoint(v.degeneracies):
                        simplex = NondegSimplex((u, v), n)
                        simplices.append(simplex)
                        self._by_pair[(u, v)] = simplex
        faces = {
            s: [self.pair(left.face(i, s.label[0]), right.face(i, s.label[1]))  # type: ignore[index]
                for i in range(s.dim + 1)]
            for s in simplices if s.dim > 0
        }
        super().__init__(simplices, faces, name=self.name, top=top)

    def pair(self, u: SimplexWord, v: SimplexWord) -> SimplexWord:
        """The simplex (u, v) of the product in canonical form."""
        if u.dim != v.dim:
            raise SimplicialError(f"Cannot pair {u!r} with {v!r}")
        common = sorted(set(u.degeneracies) & set(v.degeneracies))

        def reduced(word: SimplexWord) -> SimplexWord:
            return SimplexWord(
                tuple(_collapse_index(j, common) for j in word.degeneracies if j not in common),
                word.base,
            )

        key = (reduced(u), reduced(v)) if common else (u, v)
        try:
            base = self._by_pair[key]
        except KeyError:
            raise MissingSimplexError(f"({u!r}, {v!r}) is not in {self.name}") from None
        return SimplexWord(tuple(reversed(common)), base)

    @cached_property
    def pr1(self) -> SimplicialMorphism:
        return SimplicialMorphism(
            self, self.left, {s: s.label[0] for s in self.all_simplices()},  # type: ignore[index]
            name=f"pr1[{self.name}]",
        )

    @cached_property
    def pr2(self) -> SimplicialMorphism:
        return SimplicialMorphism(
            self, self.right, {s: s.label[1] for s in self.all_simplices()},  # type: ignore[index]
            name=f"pr2[{self.name}]",
        )


def cartesian_product(left: SimplicialSet, right: SimplicialSet, *, name: str = "") -> ProductSet:
    """X × Y with its two projections `pr1`, `pr2`."""
    product = ProductSet(left, right, name=name)
    logger.debug("%s: %s", product.name, product.counts())
    return product
