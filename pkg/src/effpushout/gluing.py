"""
The cylinder X × Δ[1] and the pushout (Y ⊔ X × Δ[1] ⊔ Z)/∼.
"""

from __future__ import annotations

import logging
from typing import NamedTuple

from effpushout.chains import Chain, ChainComplex, Generator, canonicalize_chain
from effpushout.simplicial import (
    InvalidMorphismTableError,
    NondegSimplex,
    ProductSet,
    SimplexWord,
    SimplicialError,
    SimplicialMorphism,
    SimplicialSet,
    cartesian_product,
    degenerate,
    simplex_generator,
    vertex_word,
)

logger = logging.getLogger(__name__)

Y_TAG = "Y"
Z_TAG = "Z"
CYLINDER_TAG = "C"

# union-find representatives prefer Y, then Z, then the cylinder
_TAG_RANK = {Y_TAG: 0, Z_TAG: 1, CYLINDER_TAG: 2}

Node = tuple[str, NondegSimplex]


class InvalidCoverError(SimplicialError):
    """End inclusions of a cylinder are not injective on nondegenerate simplices."""
    pass


class Cylinder(NamedTuple):
    space: ProductSet
    bottom: SimplicialMorphism
    top: SimplicialMorphism


class Pushout(NamedTuple):
    space: SimplicialSet
    incl_y: SimplicialMorphism
    incl_z: SimplicialMorphism
    incl_cyl: SimplicialMorphism


def _interval() -> SimplicialSet:
    ends = [NondegSimplex((0,), 0), NondegSimplex((1,), 0)]
    edge = NondegSimplex((0, 1), 1)
    return SimplicialSet(
        [*ends, edge], {edge: [SimplexWord.of(ends[1]), SimplexWord.of(ends[0])]}, name="I"
    )


def cylinder(space: SimplicialSet) -> Cylinder:
    """X × Δ[1] with the end inclusions x ↦ (x, 0) and x ↦ (x, 1)."""
    interval = _interval()
    product = cartesian_product(space, interval, name=f"{space.name}xI")
    start, end = interval.vertices()

    def end_inclusion(vertex: NondegSimplex, label: str) -> SimplicialMorphism:
        return SimplicialMorphism(
            space, product,
            {
                x: product.pair(SimplexWord.of(x), vertex_word(vertex, x.dim))
                for x in space.all_simplices()
            },
            name=f"{label}[{product.name}]",
        )

    return Cylinder(product, end_inclusion(start, "bottom"), end_inclusion(end, "top"))


def cover_simplices(
    cyl: SimplicialSet, bottom: SimplicialMorphism, top: SimplicialMorphism
) -> set[NondegSimplex]:
    """Nondegenerate simplices of the two covers; both maps must be injective."""
    covered: set[NondegSimplex] = set()
    for inclusion in (bottom, top):
        if inclusion.target is not cyl or inclusion.source is not bottom.source:
            raise InvalidCoverError(f"{inclusion.name} is not an end of {cyl.name}")
        for x in inclusion.source.all_simplices():
            image = inclusion.image(x)
            if image.is_degenerate or image.base in covered:
                raise InvalidCoverError(
                    f"{inclusion.name} is not injective on nondegenerate simplices at {x!r}"
                )
            covered.add(image.base)
    return covered


def remove_covers(
    cyl: SimplicialSet, bottom: SimplicialMorphism, top: SimplicialMorphism
) -> ChainComplex:
    """
    C_*(X × I) / (C_*(X × 0) + C_*(X × 1)).

    Generators are the cylinder's own generators off both covers; terms of the
    cylinder differential that land in a cover are dropped.
    """
    covered = cover_simplices(cyl, bottom, top)
    full = cyl.chain_complex
    basis = {
        n: [g for g in full.basis(n) if g.label not in covered] for n in full.degrees
    }

    def differential(generator: Generator) -> Chain:
        return canonicalize_chain(
            [(c, g) for c, g in full.d(generator) if g.label not in covered],
            degree=generator.degree - 1,
        )

    rc = ChainComplex(basis, differential, name="rc")
    logger.debug("rc of %s: %s", cyl.name, rc.ranks())
    return rc


class _Classes:
    """Union-find over tagged simplices; the root is the least node."""

    def __init__(self) -> None:
        self._parent: dict[Node, Node] = {}

    @staticmethod
    def key(node: Node) -> tuple:
        tag, simplex = node
        return (_TAG_RANK[tag], simplex.sort_key())

    def find(self, node: Node) -> Node:
        root = node
        while self._parent.get(root, root) != root:
            root = self._parent[root]
        while node != root:
            parent = self._parent[node]
            self._parent[node] = root
            node = parent
        return root

    def union(self, first: Node, second: Node) -> None:
        a, b = self.find(first), self.find(second)
        if a == b:
            return
        if self.key(b) < self.key(a):
            a, b = b, a
        self._parent[b] = a


def pushout_simplex(tag: str, simplex: NondegSimplex) -> NondegSimplex:
    """The simplex of the pushout represented by `simplex` of component `tag`."""
    return NondegSimplex((tag, simplex), simplex.dim)


def pushout_generator(tag: str, simplex: NondegSimplex) -> Generator:
    return simplex_generator(pushout_simplex(tag, simplex))


def pushout_space(
    f: SimplicialMorphism,
    g: SimplicialMorphism,
    *,
    cyl: Cylinder | None = None,
) -> Pushout:
    """
    (Y ⊔ X × Δ[1] ⊔ Z)/∼ with (x, 0) ∼ f(x) and (x, 1) ∼ g(x).

    Simplices are labelled `(tag, simplex)` with tag Y, Z or C. A cover
    simplex whose image is degenerate becomes that degenerate simplex of the
    pushout and drops out of the nondegenerate basis.
    """
    if f.source is not g.source:
        raise InvalidMorphismTableError(
            f"{f.name} and {g.name} do not share a source"
        )
    source, left, right = f.source, f.target, g.target
    cyl = cyl if cyl is not None else cylinder(source)
    if cyl.bottom.source is not source:
        raise InvalidCoverError(f"{cyl.space.name} is not the cylinder of {source.name}")
    cover_simplices(cyl.space, cyl.bottom, cyl.top)

    classes = _Classes()
    collapsed: dict[NondegSimplex, tuple[str, SimplexWord]] = {}
    for x in source.all_simplices():
        for end, glue, tag in ((cyl.bottom, f, Y_TAG), (cyl.top, g, Z_TAG)):
            cover = end.image(x).base
            image = glue.image(x)
            if image.is_degenerate:
                collapsed[cover] = (tag, image)
            else:
                classes.union((CYLINDER_TAG, cover), (tag, image.base))

    def resolve(tag: str, word: SimplexWord) -> SimplexWord:
        if tag == CYLINDER_TAG and word.base in collapsed:
            target_tag, image = collapsed[word.base]
            return degenerate(
                SimplexWord(image.degeneracies, pushout_simplex(target_tag, image.base)),
                word.degeneracies,
            )
        root_tag, root = classes.find((tag, word.base))
        return SimplexWord(word.degeneracies, pushout_simplex(root_tag, root))

    components = ((Y_TAG, left), (Z_TAG, right), (CYLINDER_TAG, cyl.space))
    simplices: list[NondegSimplex] = []
    faces: dict[NondegSimplex, list[SimplexWord]] = {}
    top = max(left.top, right.top, cyl.space.top)
    for n in range(0, top + 1):
        for tag, component in components:
            for simplex in component.simplices(n):
                if tag == CYLINDER_TAG and (
                    simplex in collapsed or classes.find((tag, simplex))[0] != tag
                ):
                    continue
                glued = pushout_simplex(tag, simplex)
                simplices.append(glued)
                faces[glued] = [resolve(tag, face) for face in component.faces_of(simplex)]

    space = SimplicialSet(simplices, faces, name=f"P({f.name},{g.name})", top=top)
    logger.debug("%s: %s", space.name, space.counts())

    def inclusion(tag: str, component: SimplicialSet, label: str) -> SimplicialMorphism:
        return SimplicialMorphism(
            component, space,
            {s: resolve(tag, SimplexWord.of(s)) for s in component.all_simplices()},
            name=f"{label}[{space.name}]",
        )

    return Pushout(
        space,
        inclusion(Y_TAG, left, "inY"),
        inclusion(Z_TAG, right, "inZ"),
        inclusion(CYLINDER_TAG, cyl.space, "inC"),
    )
