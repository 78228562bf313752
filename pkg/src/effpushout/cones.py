"""
Mapping cones.

Two conventions for the cone of a degree 0 map φ: A -> B.

    cone:   Cone(φ)_n  = A_{n-1} ⊕ B_n      d(a, b) = (-d a, φ a + d b)
    cone2:  Cone2(φ)_n = A_n ⊕ B_{n+1}      d(a, b) = (d a, -φ a - d b)

Cone2 is the degreewise desuspension of Cone, so H_n(Cone2) = H_{n+1}(Cone).
Both are ConeComplex instances; `desuspended` tells them apart.
"""

from __future__ import annotations

from effpushout.chains import (
    Chain,
    ChainComplex,
    ChainError,
    ComplexMismatchError,
    DegreeError,
    Generator,
    canonicalize_chain,
    zero_complex,
)
from effpushout.config import VerificationSettings
from effpushout.morphisms import (
    GradedMorphism,
    compose,
    verify_chain_map,
    zero_morphism,
)
from effpushout.reductions import (
    HomotopyEquivalence,
    Reduction,
    StructureError,
    build_hmeq_from_reductions,
)

SOURCE = "a"
TARGET = "b"


class InvalidMorphismError(ChainError):
    """A morphism that must be a chain map is not one."""
    pass


class ConeComplex(ChainComplex):
    """
    Cone of `morphism`, generators tagged `(SOURCE, a)` and `(TARGET, b)`.

    Source-part generators come first in every degree, then target-part ones.
    """

    def __init__(self, morphism: GradedMorphism, *, desuspended: bool, name: str = ""):
        if morphism.degree != 0:
            raise DegreeError(f"Cone of {morphism.name} needs degree 0, got {morphism.degree}")
        self.morphism = morphism
        self.desuspended = desuspended
        self.source_offset = 0 if desuspended else 1
        self.target_offset = -1 if desuspended else 0
        source, target = morphism.source, morphism.target
        basis: dict[int, list[Generator]] = {}
        for n in source.degrees:
            degree = n + self.source_offset
            basis.setdefault(degree, []).extend(
                Generator((SOURCE, a), degree) for a in source.basis(n)
            )
        for n in target.degrees:
            degree = n + self.target_offset
            basis.setdefault(degree, []).extend(
                Generator((TARGET, b), degree) for b in target.basis(n)
            )
        kind = "Cone2" if desuspended else "Cone"
        super().__init__(basis, self._differential, name=name or f"{kind}({morphism.name})")

    @property
    def source(self) -> ChainComplex:
        return self.morphism.source

    @property
    def target(self) -> ChainComplex:
        return self.morphism.target

    def embed(self, source: Chain | None, target: Chain | None, degree: int) -> Chain:
        """Assemble a chain of the cone in `degree` from its two parts."""
        terms: list[tuple[int, Generator]] = []
        if source is not None:
            terms.extend((c, Generator((SOURCE, a), degree)) for c, a in source.terms)
        if target is not None:
            terms.extend((c, Generator((TARGET, b), degree)) for c, b in target.terms)
        return canonicalize_chain(terms, degree=degree)

    def split(self, chain: Chain) -> tuple[Chain, Chain]:
        source: list[tuple[int, Generator]] = []
        target: list[tuple[int, Generator]] = []
        for c, g in chain.terms:
            tag, inner = g.label  # type: ignore[misc]
            (source if tag == SOURCE else target).append((c, inner))
        return (
            canonicalize_chain(source, degree=chain.degree - self.source_offset),
            canonicalize_chain(target, degree=chain.degree - self.target_offset),
        )

    def _differential(self, generator: Generator) -> Chain:
        tag, inner = generator.label  # type: ignore[misc]
        n = generator.degree
        sign = 1 if self.desuspended else -1
        if tag == SOURCE:
            return self.embed(
                sign * self.source.d(inner),
                -sign * self.morphism.image(inner),
                n - 1,
            )
        return self.embed(None, -sign * self.target.d(inner), n - 1)


def cone(morphism: GradedMorphism, *, name: str = "") -> ConeComplex:
    """Cone(φ)_n = A_{n-1} ⊕ B_n."""
    return ConeComplex(morphism, desuspended=False, name=name)


def cone2(morphism: GradedMorphism, *, name: str = "") -> ConeComplex:
    """Cone2(φ)_n = A_n ⊕ B_{n+1}, the desuspended cone."""
    return ConeComplex(morphism, desuspended=True, name=name)


def cone_contraction(complex_: ChainComplex, *, desuspended: bool = False) -> Reduction:
    """The reduction Cone(id_C) => 0 contracting the cone of the identity."""
    cone_ = ConeComplex(complex_.identity, desuspended=desuspended)
    zero = zero_complex()
    sign = -1 if desuspended else 1

    def contract(x: Generator) -> Chain:
        tag, inner = x.label  # type: ignore[misc]
        if tag == SOURCE:
            return Chain.zero(x.degree + 1)
        return cone_.embed(sign * Chain.of(inner), None, x.degree + 1)

    return Reduction(
        cone_, zero,
        zero_morphism(cone_, zero), zero_morphism(zero, cone_),
        GradedMorphism(cone_, cone_, 1, contract, name="contraction"),
        name=f"{cone_.name}=>0",
    )


def cone_reduction(
    big: ConeComplex,
    small: ConeComplex,
    source_rdct: Reduction,
    target_rdct: Reduction,
) -> Reduction:
    """
    Reduction between cones induced by reductions of their two ends.

    `big` is the cone of φ̂: Â -> B̂, `source_rdct` reduces Â onto A and
    `target_rdct` reduces B̂ onto B, and `small` is the cone of
    ψ = f_B∘φ̂∘g_A: A -> B, in the same convention as `big`. Then

        F(â, b̂) = (f_A â, f_B b̂ + f_B φ̂ h_A â)
        G(a, b) = (g_A a, g_B b - h_B φ̂ g_A a)
        H(â, b̂) = (±h_A â, ∓(h_B b̂ + h_B φ̂ h_A â))

    with the upper signs for the desuspended convention. When φ̂ = g_B φ f_A
    the correction terms vanish.
    """
    if big.desuspended != small.desuspended:
        raise StructureError("Cones of different conventions")
    phi = big.morphism
    ra, rb = source_rdct, target_rdct
    if ra.big is not phi.source or rb.big is not phi.target:
        raise StructureError(f"{ra.label}/{rb.label} do not start at the ends of {phi.name}")
    if ra.small is not small.source or rb.small is not small.target:
        raise StructureError(f"{ra.label}/{rb.label} do not end at the ends of {small.name}")
    sign_a, sign_b = (1, -1) if big.desuspended else (-1, 1)

    def f_rule(x: Generator) -> Chain:
        a, b = big.split(Chain.of(x))
        return small.embed(ra.f(a), rb.f(b) + rb.f(phi(ra.h(a))), x.degree)

    def g_rule(y: Generator) -> Chain:
        a, b = small.split(Chain.of(y))
        lifted = ra.g(a)
        return big.embed(lifted, rb.g(b) - rb.h(phi(lifted)), y.degree)

    def h_rule(x: Generator) -> Chain:
        a, b = big.split(Chain.of(x))
        ha = ra.h(a)
        return big.embed(
            sign_a * ha, sign_b * (rb.h(b) + rb.h(phi(ha))), x.degree + 1
        )

    return Reduction(
        big, small,
        GradedMorphism(big, small, 0, f_rule, chain_map=True),
        GradedMorphism(small, big, 0, g_rule, chain_map=True),
        GradedMorphism(big, big, 1, h_rule),
        name=f"{big.name}=>{small.name}",
    )


def cone_efhm(
    morphism: GradedMorphism,
    source_eq: HomotopyEquivalence,
    target_eq: HomotopyEquivalence,
    *,
    cone: ConeComplex | None = None,
    settings: VerificationSettings | None = None,
) -> HomotopyEquivalence:
    """
    Effective homology of the cone of a chain map φ: A -> B.

    From A <= Â => EA and B <= B̂ => EB builds

        Cone(φ) <= Cone(φ̂) => Cone(ψ)

    with φ̂ = lg_B∘φ∘lf_A and ψ = rf_B∘φ̂∘rg_A. `cone` is the cone the
    left side must be (and fixes the convention); by default Cone2(φ).
    """
    if not morphism.is_chain_map:
        raise InvalidMorphismError(f"{morphism.name} is not flagged as a chain map")
    witnesses = verify_chain_map(morphism)
    if witnesses:
        raise InvalidMorphismError(
            f"{morphism.name} does not commute with the differentials at {witnesses[0]!r}"
        )
    if source_eq.left is not morphism.source:
        raise ComplexMismatchError(
            f"Equivalence of {source_eq.left.name} given for source {morphism.source.name}"
        )
    if target_eq.left is not morphism.target:
        raise ComplexMismatchError(
            f"Equivalence of {target_eq.left.name} given for target {morphism.target.name}"
        )
    if cone is None:
        cone = cone2(morphism)
    elif cone.morphism is not morphism:
        raise ComplexMismatchError(f"{cone.name} is not a cone of {morphism.name}")

    lifted = compose(target_eq.lg, morphism, source_eq.lf)
    big = ConeComplex(lifted, desuspended=cone.desuspended,
                      name=f"{cone.name}^")
    effective = compose(target_eq.rf, lifted, source_eq.rg)
    right = ConeComplex(effective, desuspended=cone.desuspended,
                        name=f"E{cone.name}")
    lrdct = cone_reduction(big, cone, source_eq.lrdct, target_eq.lrdct)
    rrdct = cone_reduction(big, right, source_eq.rrdct, target_eq.rrdct)
    return build_hmeq_from_reductions(lrdct, rrdct, settings)

