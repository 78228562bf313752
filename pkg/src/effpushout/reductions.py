"""
Reductions and homotopy equivalences.

A Reduction (f, g, h) presents `small` as a strong deformation retract of
`big`:

    f∘g = id_small
    g∘f = id_big - (d∘h + h∘d)
    f∘h = 0,  h∘g = 0,  h∘h = 0

A HomotopyEquivalence is a pair of reductions out of one common big complex,
`left <= big => right`, with `right` effective. This is the carrier of
effective homology: homology of `left` is read off `right`.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable
from dataclasses import dataclass, field

from effpushout.chains import (
    LEFT,
    Chain,
    ChainComplex,
    ChainError,
    DirectSumComplex,
    Generator,
    NotEffectiveError,
    SuspensionComplex,
    direct_sum,
    suspension,
)
from effpushout.config import VerificationSettings, resolve_settings
from effpushout.morphisms import (
    GradedMorphism,
    compose_morphisms,
    zero_morphism,
)

logger = logging.getLogger(__name__)


class ReductionError(ChainError):
    """Error building a reduction or an equivalence."""
    pass


class StructureError(ReductionError):
    """Morphisms do not fit together into the requested structure."""
    pass


class InvalidReductionError(ReductionError):
    """A reduction failed one of its defining equations."""

    def __init__(self, report: ReductionReport):
        self.report = report
        super().__init__(report.summary())


@dataclass(frozen=True, eq=False)
class Reduction:
    """`big => small` via f: big -> small, g: small -> big, h: big -> big (degree +1)."""
    big: ChainComplex
    small: ChainComplex
    f: GradedMorphism
    g: GradedMorphism
    h: GradedMorphism
    name: str = ""

    def __post_init__(self) -> None:
        _expect(self.f, self.big, self.small, 0, "f")
        _expect(self.g, self.small, self.big, 0, "g")
        _expect(self.h, self.big, self.big, 1, "h")

    @property
    def label(self) -> str:
        return self.name or f"{self.big.name}=>{self.small.name}"


def _expect(
    morphism: GradedMorphism,
    source: ChainComplex,
    target: ChainComplex,
    degree: int,
    role: str,
) -> None:
    if morphism.source is not source or morphism.target is not target:
        raise StructureError(
            f"{role} must go {source.name} -> {target.name}, "
            f"got {morphism.source.name} -> {morphism.target.name}"
        )
    if morphism.degree != degree:
        raise StructureError(f"{role} must have degree {degree}, got {morphism.degree}")


@dataclass(frozen=True)
class Violation:
    """One failed equation at one generator."""
    equation: str
    generator: Generator
    residual: Chain

    def __str__(self) -> str:
        return f"{self.equation} fails at {self.generator!r}: residual {self.residual}"


@dataclass
class ReductionReport:
    """Outcome of `verify_reduction`."""
    reduction: str
    big_checked: int = 0
    small_checked: int = 0
    sampled: bool = False
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def equations_failed(self) -> list[str]:
        seen: list[str] = []
        for violation in self.violations:
            if violation.equation not in seen:
                seen.append(violation.equation)
        return seen

    def summary(self) -> str:
        if self.ok:
            how = "sampled" if self.sampled else "all"
            return (
                f"{self.reduction}: ok ({how}: {self.big_checked} big, "
                f"{self.small_checked} small generators)"
            )
        first = self.violations[0]
        return (
            f"{self.reduction}: {len(self.violations)} violation(s) of "
            f"{', '.join(self.equations_failed())}; first: {first}"
        )


def select_generators(
    complex_: ChainComplex, settings: VerificationSettings
) -> tuple[list[Generator], bool]:
    """Every generator, or a seeded sample above the exhaustive limit."""
    generators = list(complex_.generators())
    if len(generators) <= settings.exhaustive_limit:
        return generators, False
    rng = random.Random(settings.seed)
    picked = sorted(
        rng.sample(range(len(generators)), min(settings.sample_size, len(generators)))
    )
    return [generators[i] for i in picked], True


def verify_reduction(
    reduction: Reduction, settings: VerificationSettings | None = None
) -> ReductionReport:
    """
    Check the five reduction equations, and that f and g commute with the
    differentials, on every generator of both complexes (or a seeded sample
    of the larger ones). Never raises; failures are listed in the report.
    """
    settings = resolve_settings(settings)
    big, small = reduction.big, reduction.small
    f, g, h = reduction.f, reduction.g, reduction.h
    big_gens, big_sampled = select_generators(big, settings)
    small_gens, small_sampled = select_generators(small, settings)
    report = ReductionReport(
        reduction=reduction.label,
        big_checked=len(big_gens),
        small_checked=len(small_gens),
        sampled=big_sampled or small_sampled,
    )

    def record(equation: str, generator: Generator, residual: Chain) -> None:
        if residual.terms:
            report.violations.append(Violation(equation, generator, residual))

    for y in small_gens:
        unit = Chain.of(y)
        record("f∘g = id", y, f(g.image(y)) - unit)
        record("h∘g = 0", y, h(g.image(y)))
        record("d∘g = g∘d", y, big.boundary(g.image(y)) - g(small.d(y)))

    for x in big_gens:
        unit = Chain.of(x)
        hx = h.image(x)
        homotopy = big.boundary(hx) + h(big.d(x))
        record("g∘f = id - (dh + hd)", x, g(f.image(x)) - unit + homotopy)
        record("f∘h = 0", x, f(hx))
        record("h∘h = 0", x, h(hx))
        record("d∘f = f∘d", x, small.boundary(f.image(x)) - f(big.d(x)))

    logger.debug("%s", report.summary())
    return report


def identity_reduction(complex_: ChainComplex) -> Reduction:
    """C => C with f = g = id and h = 0."""
    return Reduction(
        complex_, complex_, complex_.identity, complex_.identity,
        zero_morphism(complex_, complex_, 1), name=f"id[{complex_.name}]",
    )


def compose_reductions(outer: Reduction, inner: Reduction) -> Reduction:
    """
    `inner: A => B` followed by `outer: B => C` gives A => C with
    f = f'∘f, g = g∘g', h = h + g∘h'∘f.
    """
    if inner.small is not outer.big:
        raise StructureError(
            f"Cannot compose {outer.label} after {inner.label}: "
            f"{inner.small.name} is not {outer.big.name}"
        )
    f = compose_morphisms(outer.f, inner.f)
    g = compose_morphisms(inner.g, outer.g)
    transported = compose_morphisms(inner.g, compose_morphisms(outer.h, inner.f))
    h = GradedMorphism(
        inner.big, inner.big, 1,
        lambda x: inner.h.image(x) + transported.image(x),
        name=f"h[{outer.label}*{inner.label}]",
    )
    return Reduction(inner.big, outer.small, f, g, h,
                     name=f"{outer.label}*{inner.label}")


def direct_sum_reduction(
    first: Reduction,
    second: Reduction,
    *,
    big: DirectSumComplex | None = None,
    small: DirectSumComplex | None = None,
) -> Reduction:
    """Componentwise reduction `big1 ⊕ big2 => small1 ⊕ small2`."""
    big = big if big is not None else direct_sum(first.big, second.big)
    small = small if small is not None else direct_sum(first.small, second.small)
    if big.left is not first.big or big.right is not second.big:
        raise StructureError(f"{big.name} is not {first.big.name}+{second.big.name}")
    if small.left is not first.small or small.right is not second.small:
        raise StructureError(f"{small.name} is not {first.small.name}+{second.small.name}")

    def componentwise(
        source: DirectSumComplex,
        target: DirectSumComplex,
        left: GradedMorphism,
        right: GradedMorphism,
    ):
        def rule(x: Generator) -> Chain:
            tag, inner = source.summand(x)
            n = x.degree + left.degree
            if tag == LEFT:
                return target.embed(left.image(inner), None, n)
            return target.embed(None, right.image(inner), n)
        return rule

    f = GradedMorphism(big, small, 0, componentwise(big, small, first.f, second.f),
                       chain_map=True)
    g = GradedMorphism(small, big, 0, componentwise(small, big, first.g, second.g),
                       chain_map=True)
    h = GradedMorphism(big, big, 1, componentwise(big, big, first.h, second.h))
    return Reduction(big, small, f, g, h, name=f"{first.label}+{second.label}")


def suspension_reduction(
    reduction: Reduction,
    *,
    big: SuspensionComplex | None = None,
    small: SuspensionComplex | None = None,
) -> Reduction:
    """Σbig => Σsmall with Σf, Σg and -Σh (the differential changes sign)."""
    big = big if big is not None else suspension(reduction.big)
    small = small if small is not None else suspension(reduction.small)
    if big.base is not reduction.big or small.base is not reduction.small:
        raise StructureError(f"{big.name}/{small.name} do not suspend {reduction.label}")

    def shifted(source: SuspensionComplex, target: SuspensionComplex,
                morphism: GradedMorphism, sign: int):
        def rule(x: Generator) -> Chain:
            inner = source.lower(Chain.of(x))
            return sign * target.lift(morphism(inner))
        return rule

    f = GradedMorphism(big, small, 0, shifted(big, small, reduction.f, 1), chain_map=True)
    g = GradedMorphism(small, big, 0, shifted(small, big, reduction.g, 1), chain_map=True)
    h = GradedMorphism(big, big, 1, shifted(big, big, reduction.h, -1))
    return Reduction(big, small, f, g, h, name=f"S({reduction.label})")


@dataclass(frozen=True, eq=False)
class HomotopyEquivalence:
    """`left <= big => right`: two reductions sharing their big complex."""
    lrdct: Reduction
    rrdct: Reduction

    def __post_init__(self) -> None:
        if self.lrdct.big is not self.rrdct.big:
            raise StructureError(
                f"Reductions start from different complexes: "
                f"{self.lrdct.big.name} and {self.rrdct.big.name}"
            )

    @property
    def big(self) -> ChainComplex:
        return self.lrdct.big

    @property
    def left(self) -> ChainComplex:
        return self.lrdct.small

    @property
    def right(self) -> ChainComplex:
        return self.rrdct.small

    @property
    def lf(self) -> GradedMorphism:
        return self.lrdct.f

    @property
    def lg(self) -> GradedMorphism:
        return self.lrdct.g

    @property
    def lh(self) -> GradedMorphism:
        return self.lrdct.h

    @property
    def rf(self) -> GradedMorphism:
        return self.rrdct.f

    @property
    def rg(self) -> GradedMorphism:
        return self.rrdct.g

    @property
    def rh(self) -> GradedMorphism:
        return self.rrdct.h

    def reports(self, settings: VerificationSettings | None = None) -> list[ReductionReport]:
        settings = resolve_settings(settings)
        return [verify_reduction(self.lrdct, settings), verify_reduction(self.rrdct, settings)]


def build_hmeq_from_reductions(
    lrdct: Reduction,
    rrdct: Reduction,
    settings: VerificationSettings | None = None,
) -> HomotopyEquivalence:
    """Pack two reductions, rejecting a non-effective right side or failing axioms."""
    equivalence = HomotopyEquivalence(lrdct, rrdct)
    if not rrdct.small.effective:
        raise NotEffectiveError(f"{rrdct.small.name} is not effective")
    _raise_on_failure(equivalence.reports(settings))
    return equivalence


def build_hmeq(
    lf: GradedMorphism,
    lg: GradedMorphism,
    lh: GradedMorphism,
    rf: GradedMorphism,
    rg: GradedMorphism,
    rh: GradedMorphism,
    settings: VerificationSettings | None = None,
) -> HomotopyEquivalence:
    """Assemble an equivalence from the six morphisms of its two legs."""
    lrdct = Reduction(lf.source, lf.target, lf, lg, lh)
    rrdct = Reduction(rf.source, rf.target, rf, rg, rh)
    return build_hmeq_from_reductions(lrdct, rrdct, settings)


def _raise_on_failure(reports: Iterable[ReductionReport]) -> None:
    for report in reports:
        if not report.ok:
            raise InvalidReductionError(report)


def trivial_equivalence(complex_: ChainComplex) -> HomotopyEquivalence:
    """C <= C => C; a finite complex is its own effective model."""
    if not complex_.effective:
        raise NotEffectiveError(f"{complex_.name} is not effective")
    leg = identity_reduction(complex_)
    return HomotopyEquivalence(leg, leg)


def direct_sum_equivalence(
    first: HomotopyEquivalence,
    second: HomotopyEquivalence,
    *,
    left: DirectSumComplex | None = None,
) -> HomotopyEquivalence:
    """Sum of two equivalences; `left` fixes the object used as the left complex."""
    big = direct_sum(first.big, second.big)
    lrdct = direct_sum_reduction(first.lrdct, second.lrdct, big=big, small=left)
    rrdct = direct_sum_reduction(first.rrdct, second.rrdct, big=big)
    return HomotopyEquivalence(lrdct, rrdct)


def suspension_equivalence(
    equivalence: HomotopyEquivalence,
    *,
    left: SuspensionComplex | None = None,
) -> HomotopyEquivalence:
    """Suspension of both legs; `left` fixes the object used as the left complex."""
    big = suspension(equivalence.big)
    lrdct = suspension_reduction(equivalence.lrdct, big=big, small=left)
    rrdct = suspension_reduction(equivalence.rrdct, big=big)
    return HomotopyEquivalence(lrdct, rrdct)
