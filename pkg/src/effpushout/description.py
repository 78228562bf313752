"""
Space-description documents.

A document is a JSON object with two tables of named bindings:

    {
      "spaces": {
        "c": {"kind": "circle", "k": 1},
        "s3": {"kind": "join", "left": "c", "right": "c"}
      },
      "morphisms": {
        "d2": {"kind": "degree_map", "k": 2}
      }
    }

Bindings refer to each other by name; references must resolve and must not
form a cycle. `Document.model_json_schema()` is the formal grammar.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from effpushout.gluing import pushout_space
from effpushout.simplicial import (
    InvalidMorphismTableError,
    ProductSet,
    SimplexWord,
    SimplicialError,
    SimplicialMorphism,
    SimplicialSet,
    cartesian_product,
)
from effpushout.spaces import (
    Span,
    circle,
    cofiber_span,
    constant_map,
    degree_map,
    delta,
    identity_map,
    join_span,
    point,
    sphere,
    suspension_span,
    wedge_span,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"


class DescriptionError(Exception):
    """Error reading or resolving a description document."""
    pass


class DescriptionParseError(DescriptionError):
    """The document is not valid JSON or does not match the schema."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class UnknownBindingError(DescriptionError):
    """A binding refers to a name the document does not define."""
    pass


class BindingCycleError(DescriptionError):
    """Bindings refer to each other in a cycle."""
    pass


class _Binding(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PointSpec(_Binding):
    kind: Literal["point"]


class SphereSpec(_Binding):
    kind: Literal["sphere"]
    n: int = Field(ge=0, description="Dimension of the sphere")


class CircleSpec(_Binding):
    kind: Literal["circle"]
    k: int = Field(ge=1, description="Number of vertices and edges")


class DeltaSpec(_Binding):
    kind: Literal["delta"]
    n: int = Field(ge=0, description="Dimension of the standard simplex")


class ProductSpec(_Binding):
    kind: Literal["product"]
    left: str
    right: str


class WedgeSpec(_Binding):
    kind: Literal["wedge"]
    left: str
    right: str
    left_base: str | None = Field(default=None, description="Base vertex of left (default: first vertex)")
    right_base: str | None = Field(default=None, description="Base vertex of right (default: first vertex)")


class JoinSpec(_Binding):
    kind: Literal["join"]
    left: str
    right: str


class SuspensionSpec(_Binding):
    kind: Literal["suspension"]
    space: str


class CofiberSpec(_Binding):
    kind: Literal["cofiber"]
    morphism: str


class PushoutSpec(_Binding):
    kind: Literal["pushout"]
    f: str = Field(description="Morphism X -> Y")
    g: str = Field(description="Morphism X -> Z, same source as f")


SpaceSpec = Annotated[
    Union[
        PointSpec, SphereSpec, CircleSpec, DeltaSpec, ProductSpec,
        WedgeSpec, JoinSpec, SuspensionSpec, CofiberSpec, PushoutSpec,
    ],
    Field(discriminator="kind"),
]


class SimplexRef(_Binding):
    """A possibly degenerate simplex: degeneracies strictly decreasing."""
    simplex: str
    degeneracies: list[int] = Field(default_factory=list)


class TableSpec(_Binding):
    kind: Literal["table"]
    source: str
    target: str
    table: dict[str, str | SimplexRef] = Field(
        description="Every nondegenerate source simplex -> target simplex of the same dimension"
    )


class DegreeMapSpec(_Binding):
    kind: Literal["degree_map"]
    k: int = Field(ge=1)
    source: str | None = Field(default=None, description="A circle with k vertices")
    target: str | None = Field(default=None, description="A circle with one vertex")


class ConstantSpec(_Binding):
    kind: Literal["constant"]
    source: str
    target: str
    vertex: str | None = None


class IdentitySpec(_Binding):
    kind: Literal["identity"]
    space: str


class ProjectionSpec(_Binding):
    kind: Literal["projection"]
    product: str
    factor: Literal[1, 2]


MorphismSpec = Annotated[
    Union[TableSpec, DegreeMapSpec, ConstantSpec, IdentitySpec, ProjectionSpec],
    Field(discriminator="kind"),
]


class Document(BaseModel):
    """A description document."""
    model_config = ConfigDict(extra="forbid")

    schema_version: str = Field(default=SCHEMA_VERSION)
    spaces: dict[str, SpaceSpec] = Field(default_factory=dict)
    morphisms: dict[str, MorphismSpec] = Field(default_factory=dict)


def parse_description(text: str) -> Document:
    """Parse and validate a document; errors carry line and column when known."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DescriptionParseError(e.msg, e.lineno, e.colno) from e
    try:
        document = Document.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise DescriptionParseError(
            f"{location}: {first['msg']}" + (f" ({e.error_count()} errors)" if e.error_count() > 1 else "")
        ) from e
    if document.schema_version != SCHEMA_VERSION:
        raise DescriptionParseError(f"Unsupported schema version {document.schema_version!r}")
    clashes = sorted(set(document.spaces) & set(document.morphisms))
    if clashes:
        raise DescriptionParseError(f"Names bound twice: {', '.join(clashes)}")
    return document


def load_description(path: Path | str) -> Document:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise DescriptionError(f"Cannot read {path}: {e}") from e
    return parse_description(text)


def document_schema() -> dict:
    return Document.model_json_schema()


@dataclass(frozen=True, eq=False)
class ResolvedSpace:
    """A space, and the span it is the pushout of when it is one."""
    name: str
    space: SimplicialSet
    span: Span | None = None


class Resolver:
    """
    Builds the objects a document names, each at most once.

    Everything resolved so far stays in `spaces` and `morphisms` in resolution
    order, so after resolving one name they hold its dependency closure.
    """

    def __init__(self, document: Document):
        self.document = document
        self.spaces: dict[str, ResolvedSpace] = {}
        self.morphisms: dict[str, SimplicialMorphism] = {}
        self._stack: list[str] = []

    def _enter(self, name: str) -> None:
        if name in self._stack:
            cycle = " -> ".join([*self._stack[self._stack.index(name):], name])
            raise BindingCycleError(f"Binding cycle: {cycle}")
        self._stack.append(name)

    def resolve(self, name: str) -> ResolvedSpace:
        """Resolve a space binding."""
        if name in self.spaces:
            return self.spaces[name]
        spec = self.document.spaces.get(name)
        if spec is None:
            raise UnknownBindingError(f"No space named {name!r}")
        self._enter(name)
        try:
            resolved = self._build_space(name, spec)
        finally:
            self._stack.pop()
        self.spaces[name] = resolved
        logger.debug("resolved space %s: %s", name, resolved.space.counts())
        return resolved

    def space(self, name: str) -> SimplicialSet:
        return self.resolve(name).space

    def morphism(self, name: str) -> SimplicialMorphism:
        """Resolve a morphism binding."""
        if name in self.morphisms:
            return self.morphisms[name]
        spec = self.document.morphisms.get(name)
        if spec is None:
            raise UnknownBindingError(f"No morphism named {name!r}")
        self._enter(name)
        try:
            morphism = self._build_morphism(name, spec)
        finally:
            self._stack.pop()
        self.morphisms[name] = morphism
        return morphism

    def _build_space(self, name: str, spec: SpaceSpec) -> ResolvedSpace:
        span: Span | None = None
        if isinstance(spec, PointSpec):
            return ResolvedSpace(name, point(name=name))
        if isinstance(spec, SphereSpec):
            return ResolvedSpace(name, sphere(spec.n, name=name))
        if isinstance(spec, CircleSpec):
            return ResolvedSpace(name, circle(spec.k, name=name))
        if isinstance(spec, DeltaSpec):
            return ResolvedSpace(name, delta(spec.n, name=name))
        if isinstance(spec, ProductSpec):
            return ResolvedSpace(
                name, cartesian_product(self.space(spec.left), self.space(spec.right), name=name)
            )
        if isinstance(spec, WedgeSpec):
            span = wedge_span(
                self.space(spec.left), self.space(spec.right), spec.left_base, spec.right_base
            )
        elif isinstance(spec, JoinSpec):
            span = join_span(self.space(spec.left), self.space(spec.right))
        elif isinstance(spec, SuspensionSpec):
            span = suspension_span(self.space(spec.space))
        elif isinstance(spec, CofiberSpec):
            span = cofiber_span(self.morphism(spec.morphism))
        else:
            span = (self.morphism(spec.f), self.morphism(spec.g))
        return ResolvedSpace(name, pushout_space(*span).space, span)

    def _build_morphism(self, name: str, spec: MorphismSpec) -> SimplicialMorphism:
        if isinstance(spec, IdentitySpec):
            return identity_map(self.space(spec.space))
        if isinstance(spec, ConstantSpec):
            return constant_map(
                self.space(spec.source), self.space(spec.target), spec.vertex, name=name
            )
        if isinstance(spec, DegreeMapSpec):
            return degree_map(
                spec.k,
                source=self.space(spec.source) if spec.source else None,
                target=self.space(spec.target) if spec.target else None,
            )
        if isinstance(spec, ProjectionSpec):
            product = self.space(spec.product)
            if not isinstance(product, ProductSet):
                raise DescriptionError(f"{spec.product} is not a product space")
            return product.pr1 if spec.factor == 1 else product.pr2
        return self._table(name, spec)

    def _table(self, name: str, spec: TableSpec) -> SimplicialMorphism:
        source, target = self.space(spec.source), self.space(spec.target)
        mapping = {}
        for key, entry in spec.table.items():
            ref = SimplexRef(simplex=entry) if isinstance(entry, str) else entry
            try:
                word = SimplexWord(tuple(ref.degeneracies), target.simplex(ref.simplex))
            except SimplicialError as e:
                raise InvalidMorphismTableError(f"{name}: entry {key!r}: {e}") from e
            mapping[source.simplex(key)] = word
        return SimplicialMorphism(source, target, mapping, name=name)
