"""
Effective homology of a pushout.

The pushout P of f: X -> Y, g: X -> Z sits in a short exact sequence

    0 -> C_*(Y) ⊕ C_*(Z) --i--> C_*(P) --j--> rc -> 0

where rc is the cylinder X × Δ[1] with both ends removed. The sequence splits
as graded groups through σ: rc -> C_*(P) and ρ: C_*(P) -> C_*(Y) ⊕ C_*(Z).
C_*(P) is then isomorphic to the desuspended cone of the connecting morphism
χ: rc -> Σ(C_*(Y) ⊕ C_*(Z)), and the effective homology of that cone is
transported back to C_*(P).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from effpushout.chains import (
    LEFT,
    Chain,
    ChainComplex,
    ChainError,
    DirectSumComplex,
    Generator,
    SuspensionComplex,
    direct_sum,
    suspension,
)
from effpushout.cones import SOURCE, ConeComplex, cone, cone2, cone_efhm
from effpushout.config import VerificationSettings, resolve_settings
from effpushout.gluing import (
    CYLINDER_TAG,
    Y_TAG,
    Z_TAG,
    cylinder,
    pushout_generator,
    pushout_space,
    remove_covers,
)
from effpushout.morphisms import (
    GradedMorphism,
    compose,
    morphisms_agree,
    verify_chain_map,
)
from effpushout.reductions import (
    HomotopyEquivalence,
    Reduction,
    build_hmeq_from_reductions,
    compose_reductions,
    direct_sum_equivalence,
    select_generators,
    suspension_equivalence,
    trivial_equivalence,
)
from effpushout.simplicial import SimplicialMorphism, SimplicialSet

logger = logging.getLogger(__name__)


class PipelineError(ChainError):
    """Error in the pushout construction."""
    pass


class InvalidSESError(PipelineError):
    """A short exact sequence fails one of its identities."""

    def __init__(self, report: SESReport):
        self.report = report
        super().__init__(report.summary())


class AssemblyError(PipelineError):
    """Intermediate objects do not fit together."""
    pass


@dataclass(frozen=True)
class SESViolation:
    equation: str
    generator: Generator
    residual: Chain

    def __str__(self) -> str:
        return f"{self.equation} fails at {self.generator!r}: residual {self.residual}"


@dataclass
class SESReport:
    """Outcome of `EffectiveSES.verify`."""
    name: str
    checked: int = 0
    violations: list[SESViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return f"{self.name}: ok ({self.checked} generators)"
        return (
            f"{self.name}: {len(self.violations)} violation(s); "
            f"first: {self.violations[0]}"
        )


@dataclass(frozen=True, eq=False)
class EffectiveSES:
    """
    0 -> C --i--> B --j--> A -> 0 with graded sections σ: A -> B, ρ: B -> C.

    i and j are chain maps; σ and ρ need not be. The identities are
    ρ∘i = id_C, i∘ρ + σ∘j = id_B and j∘σ = id_A.
    """
    a: ChainComplex
    b: ChainComplex
    c: ChainComplex
    i: GradedMorphism
    j: GradedMorphism
    sigma: GradedMorphism
    rho: GradedMorphism
    name: str = "ses"

    def __post_init__(self) -> None:
        for morphism, source, target, role in (
            (self.i, self.c, self.b, "i"),
            (self.j, self.b, self.a, "j"),
            (self.sigma, self.a, self.b, "sigma"),
            (self.rho, self.b, self.c, "rho"),
        ):
            if morphism.source is not source or morphism.target is not target:
                raise AssemblyError(
                    f"{role} must go {source.name} -> {target.name}, "
                    f"got {morphism.source.name} -> {morphism.target.name}"
                )
            if morphism.degree != 0:
                raise AssemblyError(f"{role} must have degree 0")
        if not (self.i.is_chain_map and self.j.is_chain_map):
            raise AssemblyError(f"{self.name}: i and j must be chain maps")

    def verify(self, settings: VerificationSettings | None = None) -> SESReport:
        """Check the three identities and that i, j commute with d. Never raises."""
        settings = resolve_settings(settings)
        report = SESReport(self.name)

        def record(equation: str, generator: Generator, residual: Chain) -> None:
            if residual.terms:
                report.violations.append(SESViolation(equation, generator, residual))

        for generator in select_generators(self.c, settings)[0]:
            report.checked += 1
            ig = self.i.image(generator)
            record("ρ∘i = id", generator, self.rho(ig) - Chain.of(generator))
            record("d∘i = i∘d", generator, self.b.boundary(ig) - self.i(self.c.d(generator)))
        for generator in select_generators(self.a, settings)[0]:
            report.checked += 1
            record("j∘σ = id", generator,
                   self.j(self.sigma.image(generator)) - Chain.of(generator))
        for generator in select_generators(self.b, settings)[0]:
            report.checked += 1
            jg = self.j.image(generator)
            split = self.i(self.rho.image(generator)) + self.sigma(jg)
            record("i∘ρ + σ∘j = id", generator, split - Chain.of(generator))
            record("d∘j = j∘d", generator, self.a.boundary(jg) - self.j(self.b.d(generator)))
        logger.debug("%s", report.summary())
        return report

    def check(self, settings: VerificationSettings | None = None) -> None:
        report = self.verify(settings)
        if not report.ok:
            raise InvalidSESError(report)


@dataclass(frozen=True, eq=False)
class PushoutSES:
    """The sequence of a pushout together with the spaces it came from."""
    ses: EffectiveSES
    space: SimplicialSet
    cylinder: SimplicialSet
    rc: ChainComplex
    ds: DirectSumComplex


def ses_from_pushout(f: SimplicialMorphism, g: SimplicialMorphism) -> PushoutSES:
    """rc <-> C_*(P) <-> C_*(Y) ⊕ C_*(Z) for the pushout of f and g."""
    cyl = cylinder(f.source)
    rc = remove_covers(*cyl)
    pushout = pushout_space(f, g, cyl=cyl)
    big = pushout.space.chain_complex
    ds = direct_sum(f.target.chain_complex, g.target.chain_complex, name="ds")

    def include(generator: Generator) -> Chain:
        tag, inner = ds.summand(generator)
        component = Y_TAG if tag == LEFT else Z_TAG
        return Chain.of(pushout_generator(component, inner.label))  # type: ignore[arg-type]

    def project(generator: Generator) -> Chain:
        tag, simplex = generator.label.label  # type: ignore[attr-defined]
        if tag != CYLINDER_TAG:
            return Chain.zero(generator.degree)
        return Chain.of(Generator(simplex, generator.degree))

    def lift(generator: Generator) -> Chain:
        return Chain.of(pushout_generator(CYLINDER_TAG, generator.label))  # type: ignore[arg-type]

    def retract(generator: Generator) -> Chain:
        tag, simplex = generator.label.label  # type: ignore[attr-defined]
        inner = Generator(simplex, generator.degree)
        if tag == Y_TAG:
            return ds.embed(Chain.of(inner), None, generator.degree)
        if tag == Z_TAG:
            return ds.embed(None, Chain.of(inner), generator.degree)
        return Chain.zero(generator.degree)

    ses = EffectiveSES(
        a=rc, b=big, c=ds,
        i=GradedMorphism(ds, big, 0, include, chain_map=True, name="i"),
        j=GradedMorphism(big, rc, 0, project, chain_map=True, name="j"),
        sigma=GradedMorphism(rc, big, 0, lift, name="sigma"),
        rho=GradedMorphism(big, ds, 0, retract, name="rho"),
        name=f"ses[{pushout.space.name}]",
    )
    logger.debug(
        "ses of %s: rc %s, P %s, ds %s",
        pushout.space.name, rc.ranks(), big.ranks(), ds.ranks(),
    )
    return PushoutSES(ses, pushout.space, cyl.space, rc, ds)


def connecting_morphism(
    ses: EffectiveSES,
    shift: GradedMorphism,
    settings: VerificationSettings | None = None,
) -> GradedMorphism:
    """
    χ(a) = shift(ρ(d σ(a))), a degree 0 chain map A -> ΣC.

    `shift` must be the shift of a suspension of `ses.c`.
    """
    target = shift.target
    if not isinstance(target, SuspensionComplex) or target.base is not ses.c or shift.degree != 1:
        raise AssemblyError(f"{shift.name} is not the shift of a suspension of {ses.c.name}")
    ses.check(settings)

    def rule(generator: Generator) -> Chain:
        return shift(ses.rho(ses.b.boundary(ses.sigma.image(generator))))

    chi = GradedMorphism(ses.a, target, 0, rule, chain_map=True, name="chi")
    witnesses = verify_chain_map(chi)
    if witnesses:
        raise AssemblyError(f"chi does not commute with d at {witnesses[0]!r}")
    return chi


def cone2_comparison(
    ses: EffectiveSES,
    chi: GradedMorphism,
    cone_: ConeComplex | None = None,
) -> tuple[GradedMorphism, GradedMorphism]:
    """
    Mutually inverse chain isomorphisms Cone2(χ) -> B and B -> Cone2(χ):

        fw(a, s x) = σ(a) - i(x)
        bw(b)      = (j(b), -s ρ(b))
    """
    cone_ = cone_ if cone_ is not None else cone2(chi)
    if cone_.morphism is not chi or not cone_.desuspended:
        raise AssemblyError(f"{cone_.name} is not the desuspended cone of {chi.name}")
    sds = chi.target
    if not isinstance(sds, SuspensionComplex):
        raise AssemblyError(f"{chi.name} does not land in a suspension")

    def forward(generator: Generator) -> Chain:
        tag, inner = generator.label  # type: ignore[misc]
        if tag == SOURCE:
            return ses.sigma.image(inner)
        return -ses.i(sds.lower(Chain.of(inner)))

    def backward(generator: Generator) -> Chain:
        return cone_.embed(
            ses.j.image(generator),
            -sds.lift(ses.rho.image(generator)),
            generator.degree,
        )

    fw = GradedMorphism(cone_, ses.b, 0, forward, chain_map=True, name="fw")
    bw = GradedMorphism(ses.b, cone_, 0, backward, chain_map=True, name="bw")
    for composite, identity in ((compose(fw, bw), ses.b.identity),
                                (compose(bw, fw), cone_.identity)):
        bad = morphisms_agree(composite, identity)
        if bad:
            raise AssemblyError(f"{composite.name} is not the identity at {bad[0]!r}")
    for morphism in (fw, bw):
        bad = verify_chain_map(morphism)
        if bad:
            raise AssemblyError(f"{morphism.name} does not commute with d at {bad[0]!r}")
    return fw, bw


def aibjc_rdct(ses: EffectiveSES, cone_: ConeComplex | None = None) -> Reduction:
    """
    Reduction Cone(i) => A, Cone(i)_n = C_{n-1} ⊕ B_n:

        f(c, b) = j(b)
        g(a)    = (-ρ d σ(a), σ(a))
        h(c, b) = (ρ(b), 0)
    """
    cone_ = cone_ if cone_ is not None else cone(ses.i)
    if cone_.morphism is not ses.i or cone_.desuspended:
        raise AssemblyError(f"{cone_.name} is not the cone of {ses.i.name}")

    def f_rule(generator: Generator) -> Chain:
        _, b = cone_.split(Chain.of(generator))
        return ses.j(b)

    def g_rule(generator: Generator) -> Chain:
        lifted = ses.sigma.image(generator)
        return cone_.embed(-ses.rho(ses.b.boundary(lifted)), lifted, generator.degree)

    def h_rule(generator: Generator) -> Chain:
        tag, inner = generator.label  # type: ignore[misc]
        if tag == SOURCE:
            return Chain.zero(generator.degree + 1)
        return cone_.embed(ses.rho.image(inner), None, generator.degree + 1)

    return Reduction(
        cone_, ses.a,
        GradedMorphism(cone_, ses.a, 0, f_rule, chain_map=True, name="f[aibjc]"),
        GradedMorphism(ses.a, cone_, 0, g_rule, chain_map=True, name="g[aibjc]"),
        GradedMorphism(cone_, cone_, 1, h_rule, name="h[aibjc]"),
        name=f"{cone_.name}=>{ses.a.name}",
    )


def ses1(
    ses: EffectiveSES,
    eq_b: HomotopyEquivalence,
    eq_c: HomotopyEquivalence,
    settings: VerificationSettings | None = None,
) -> HomotopyEquivalence:
    """Effective homology of A from those of B and C, through Cone(i) => A."""
    ses.check(settings)
    cone_i = cone(ses.i)
    cone_eq = cone_efhm(ses.i, eq_c, eq_b, cone=cone_i, settings=settings)
    final_lrdct = compose_reductions(aibjc_rdct(ses, cone_i), cone_eq.lrdct)
    logger.debug("ses1: %s, right %s", final_lrdct.label, cone_eq.right.ranks())
    return build_hmeq_from_reductions(final_lrdct, cone_eq.rrdct, settings)


@dataclass(frozen=True, eq=False)
class ConnectingAssembly:
    """Intermediates of the cone-of-χ route to the effective homology of B."""
    sds: SuspensionComplex
    chi: GradedMorphism
    cone: ConeComplex
    cone_equivalence: HomotopyEquivalence
    fw: GradedMorphism
    bw: GradedMorphism
    equivalence: HomotopyEquivalence


def assemble_via_connecting(
    ses: EffectiveSES,
    eq_a: HomotopyEquivalence,
    eq_c: HomotopyEquivalence,
    settings: VerificationSettings | None = None,
    *,
    sds: SuspensionComplex | None = None,
) -> ConnectingAssembly:
    """
    B ≅ Cone2(χ) <= Cone2(χ̂) => ECone2(χ).

    Steps: suspend C, build χ, its desuspended cone and the cone's effective
    homology, then pre/post-compose the left leg with the comparison maps.
    """
    if eq_a.left is not ses.a or eq_c.left is not ses.c:
        raise AssemblyError("Equivalences are not over the ends of the sequence")
    sds = sds if sds is not None else suspension(ses.c, name=f"S{ses.c.name}")
    if sds.base is not ses.c:
        raise AssemblyError(f"{sds.name} is not a suspension of {ses.c.name}")
    chi = connecting_morphism(ses, sds.shift, settings)
    logger.debug("chi: %s -> %s", ses.a.ranks(), sds.ranks())
    cone_ = cone2(chi)
    logger.debug("%s: %s", cone_.name, cone_.ranks())
    eq_sds = suspension_equivalence(eq_c, left=sds)
    cone_eq = cone_efhm(chi, eq_a, eq_sds, cone=cone_, settings=settings)
    logger.debug("cone equivalence: right %s", cone_eq.right.ranks())
    fw, bw = cone2_comparison(ses, chi, cone_)
    lrdct = Reduction(
        cone_eq.big, ses.b,
        compose(fw, cone_eq.lf),
        compose(cone_eq.lg, bw),
        cone_eq.lh,
        name=f"{cone_eq.big.name}=>{ses.b.name}",
    )
    equivalence = build_hmeq_from_reductions(lrdct, cone_eq.rrdct, settings)
    return ConnectingAssembly(sds, chi, cone_, cone_eq, fw, bw, equivalence)


def ses2(
    ses: EffectiveSES,
    eq_a: HomotopyEquivalence,
    eq_c: HomotopyEquivalence,
    settings: VerificationSettings | None = None,
) -> HomotopyEquivalence:
    """Effective homology of B from those of A and C."""
    return assemble_via_connecting(ses, eq_a, eq_c, settings).equivalence


@dataclass(frozen=True, eq=False)
class PushoutEfhm:
    """The pushout, its equivalence C_*(P) <= ... => ECone2(χ), and the pieces."""
    space: SimplicialSet
    equivalence: HomotopyEquivalence
    ses: EffectiveSES
    rc: ChainComplex
    ds: DirectSumComplex
    sds: SuspensionComplex
    chi: GradedMorphism
    cone: ConeComplex
    cylinder: SimplicialSet
    fw: GradedMorphism
    bw: GradedMorphism

    def intermediates(self) -> dict[str, ChainComplex]:
        return {
            "rc": self.rc,
            "ds": self.ds,
            "sds": self.sds,
            "cone2(chi)": self.cone,
            "C(P)": self.equivalence.left,
            "E(P)": self.equivalence.right,
        }


def _default_equivalence(
    complex_: ChainComplex, given: HomotopyEquivalence | None, role: str
) -> HomotopyEquivalence:
    if given is None:
        return trivial_equivalence(complex_)
    if given.left is not complex_:
        raise AssemblyError(f"Equivalence for {role} is over {given.left.name}, not {complex_.name}")
    return given


def pushout_efhm(
    f: SimplicialMorphism,
    g: SimplicialMorphism,
    eq_x: HomotopyEquivalence | None = None,
    eq_y: HomotopyEquivalence | None = None,
    eq_z: HomotopyEquivalence | None = None,
    settings: VerificationSettings | None = None,
) -> PushoutEfhm:
    """
    Effective homology of the pushout of f: X -> Y and g: X -> Z.

    Missing equivalences default to the trivial ones of the (finite) normalized
    complexes. `eq_x` is only checked to be over C_*(X); it does not enter the
    construction, which uses rc (finite whenever X is) as its own effective model.
    """
    settings = resolve_settings(settings)
    _default_equivalence(f.source.chain_complex, eq_x, "X")
    eq_y = _default_equivalence(f.target.chain_complex, eq_y, "Y")
    eq_z = _default_equivalence(g.target.chain_complex, eq_z, "Z")

    parts = ses_from_pushout(f, g)
    ses = parts.ses
    eq_rc = trivial_equivalence(parts.rc)
    eq_ds = direct_sum_equivalence(eq_y, eq_z, left=parts.ds)
    sds = suspension(parts.ds, name="sds")
    assembly = assemble_via_connecting(ses, eq_rc, eq_ds, settings, sds=sds)
    logger.debug(
        "%s: C(P) %s, E(P) %s",
        parts.space.name, assembly.equivalence.left.ranks(), assembly.equivalence.right.ranks(),
    )
    return PushoutEfhm(
        space=parts.space,
        equivalence=assembly.equivalence,
        ses=ses,
        rc=parts.rc,
        ds=parts.ds,
        sds=assembly.sds,
        chi=assembly.chi,
        cone=assembly.cone,
        cylinder=parts.cylinder,
        fw=assembly.fw,
        bw=assembly.bw,
    )
