"""
Standard spaces and the constructions built as pushouts.

Builders for the point, spheres, circles and standard simplices, the maps
between them used as test fixtures, and the spans whose pushouts are the
wedge, join, suspension and cofiber.
"""

from __future__ import annotations

from itertools import combinations
from typing import Any

from effpushout.gluing import pushout_space
from effpushout.simplicial import (
    NondegSimplex,
    SimplexWord,
    SimplicialError,
    SimplicialMorphism,
    SimplicialSet,
    cartesian_product,
    vertex_word,
)

BASEPOINT = "*"

Span = tuple[SimplicialMorphism, SimplicialMorphism]


class UnknownSpaceError(SimplicialError):
    """A standard space kind or its parameters are not recognised."""
    pass


class DegenerateJoinError(SimplicialError):
    """A join was requested with an empty factor."""
    pass


def point(*, name: str = "point") -> SimplicialSet:
    return SimplicialSet([NondegSimplex(BASEPOINT, 0)], {}, name=name)


def empty_space(*, name: str = "empty") -> SimplicialSet:
    return SimplicialSet([], {}, name=name)


def circle(k: int, *, name: str = "") -> SimplicialSet:
    """k vertices v_i and k edges e_i with ∂0 e_i = v_{i+1 mod k}, ∂1 e_i = v_i."""
    if k < 1:
        raise UnknownSpaceError(f"circle needs k >= 1, got {k}")
    vertices = [NondegSimplex(f"v{i}", 0) for i in range(k)]
    edges = [NondegSimplex(f"e{i}", 1) for i in range(k)]
    faces = {
        edge: [SimplexWord.of(vertices[(i + 1) % k]), SimplexWord.of(vertices[i])]
        for i, edge in enumerate(edges)
    }
    return SimplicialSet([*vertices, *edges], faces, name=name or f"circle{k}")


def sphere(n: int, *, name: str = "") -> SimplicialSet:
    """
    Minimal model of S^n: the basepoint and one n-simplex whose faces are all
    the degenerate basepoint. S^0 is two points, S^1 is circle(1).
    """
    if n < 0:
        raise UnknownSpaceError(f"sphere needs n >= 0, got {n}")
    name = name or f"S{n}"
    base = NondegSimplex(BASEPOINT, 0)
    if n == 0:
        return SimplicialSet([base, NondegSimplex("s0", 0)], {}, name=name)
    if n == 1:
        return circle(1, name=name)
    cell = NondegSimplex(f"s{n}", n)
    flat = vertex_word(base, n - 1)
    return SimplicialSet([base, cell], {cell: [flat] * (n + 1)}, name=name)


def delta(n: int, *, name: str = "") -> SimplicialSet:
    """Δ[n]; simplices are labelled by their increasing vertex tuples."""
    if n < 0:
        raise UnknownSpaceError(f"delta needs n >= 0, got {n}")
    simplices = [
        NondegSimplex(vertices, len(vertices) - 1)
        for size in range(1, n + 2)
        for vertices in combinations(range(n + 1), size)
    ]
    faces = {
        s: [
            SimplexWord.of(NondegSimplex(s.label[:i] + s.label[i + 1:], s.dim - 1))  # type: ignore[index]
            for i in range(s.dim + 1)
        ]
        for s in simplices if s.dim > 0
    }
    return SimplicialSet(simplices, faces, name=name or f"delta{n}")


def identity_map(space: SimplicialSet) -> SimplicialMorphism:
    return SimplicialMorphism(
        space, space, {s: SimplexWord.of(s) for s in space.all_simplices()},
        name=f"id[{space.name}]", check=False,
    )


def constant_map(
    source: SimplicialSet,
    target: SimplicialSet,
    vertex: str | None = None,
    *,
    name: str = "",
) -> SimplicialMorphism:
    """Send every p-simplex to the fully degenerate p-simplex on one vertex."""
    if vertex is None:
        if not target.vertices():
            raise UnknownSpaceError(f"{target.name} has no vertex to map to")
        base = target.vertices()[0]
    else:
        base = target.simplex(vertex)
        if base.dim != 0:
            raise UnknownSpaceError(f"{vertex} is not a vertex of {target.name}")
    return SimplicialMorphism(
        source, target,
        {s: vertex_word(base, s.dim) for s in source.all_simplices()},
        name=name or f"const[{source.name}->{base.name}]",
    )


def degree_map(
    k: int,
    *,
    source: SimplicialSet | None = None,
    target: SimplicialSet | None = None,
) -> SimplicialMorphism:
    """circle(k) -> circle(1), every edge to the single edge."""
    source = source if source is not None else circle(k)
    target = target if target is not None else circle(1)
    vertex, edge = target.simplex("v0"), target.simplex("e0")
    mapping = {
        s: SimplexWord.of(vertex if s.dim == 0 else edge)
        for s in source.all_simplices()
    }
    return SimplicialMorphism(source, target, mapping, name=f"degree{k}")


def standard_space(kind: str, **params: Any) -> SimplicialSet | SimplicialMorphism:
    """Dispatch on `kind` in {point, sphere, circle, delta, degree_map}."""
    builders = {
        "point": lambda: point(**params),
        "sphere": lambda: sphere(params.pop("n"), **params),
        "circle": lambda: circle(params.pop("k"), **params),
        "delta": lambda: delta(params.pop("n"), **params),
        "degree_map": lambda: degree_map(params.pop("k"), **params),
    }
    builder = builders.get(kind)
    if builder is None:
        raise UnknownSpaceError(f"Unknown standard space {kind!r}")
    try:
        return builder()
    except (KeyError, TypeError) as e:
        raise UnknownSpaceError(f"Bad parameters for {kind}: {e}") from e


def _vertex(space: SimplicialSet, name: str | None) -> NondegSimplex:
    if name is None:
        if not space.vertices():
            raise UnknownSpaceError(f"{space.name} has no vertices")
        return space.vertices()[0]
    simplex = space.simplex(name)
    if simplex.dim != 0:
        raise UnknownSpaceError(f"{name} is not a vertex of {space.name}")
    return simplex


def wedge_span(
    left: SimplicialSet,
    right: SimplicialSet,
    left_base: str | None = None,
    right_base: str | None = None,
) -> Span:
    """point -> left, point -> right at the chosen base vertices."""
    source = point()
    star = source.vertices()[0]
    f = SimplicialMorphism(
        source, left, {star: SimplexWord.of(_vertex(left, left_base))}, name="base[left]"
    )
    g = SimplicialMorphism(
        source, right, {star: SimplexWord.of(_vertex(right, right_base))}, name="base[right]"
    )
    return f, g


def wedge(
    left: SimplicialSet,
    right: SimplicialSet,
    left_base: str | None = None,
    right_base: str | None = None,
) -> SimplicialSet:
    return pushout_space(*wedge_span(left, right, left_base, right_base)).space


def join_span(left: SimplicialSet, right: SimplicialSet) -> Span:
    """left <- left × right -> right along the projections."""
    if left.is_empty or right.is_empty:
        raise DegenerateJoinError(f"Cannot join {left.name} with {right.name}: empty factor")
    product = cartesian_product(left, right)
    return product.pr1, product.pr2


def join(left: SimplicialSet, right: SimplicialSet) -> SimplicialSet:
    return pushout_space(*join_span(left, right)).space


def suspension_span(space: SimplicialSet) -> Span:
    """point <- X -> point."""
    return (
        constant_map(space, point(name="north")),
        constant_map(space, point(name="south")),
    )


def suspension_space(space: SimplicialSet) -> SimplicialSet:
    return pushout_space(*suspension_span(space)).space


def cofiber_span(morphism: SimplicialMorphism) -> Span:
    """Y <- X -> point; the pushout is the mapping cone of `morphism`."""
    return morphism, constant_map(morphism.source, point())


def cofiber(morphism: SimplicialMorphism) -> SimplicialSet:
    return pushout_space(*cofiber_span(morphism)).space
