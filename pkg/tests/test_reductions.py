from __future__ import annotations

import random

import pytest

from effpushout.chains import Chain, ChainComplex, NotEffectiveError, suspension
from effpushout.cones import cone_contraction
from effpushout.config import VerificationSettings
from effpushout.morphisms import GradedMorphism
from effpushout.reductions import (
    HomotopyEquivalence,
    InvalidReductionError,
    Reduction,
    StructureError,
    build_hmeq_from_reductions,
    compose_reductions,
    direct_sum_equivalence,
    direct_sum_reduction,
    identity_reduction,
    suspension_equivalence,
    suspension_reduction,
    trivial_equivalence,
    verify_reduction,
)
from factories import padded_equivalence, random_complex


def test_identity_reduction_is_valid(rng):
    complex_ = random_complex(rng).complex
    report = verify_reduction(identity_reduction(complex_))
    assert report.ok
    assert report.big_checked == complex_.size()
    assert not report.sampled


@pytest.mark.parametrize("desuspended", [False, True])
def test_cone_contraction_is_valid(rng, desuspended):
    complex_ = random_complex(rng).complex
    reduction = cone_contraction(complex_, desuspended=desuspended)
    assert reduction.big.size() == 2 * complex_.size()
    assert verify_reduction(reduction).ok


def test_sum_and_suspension_of_reductions(rng):
    first = cone_contraction(random_complex(rng, name="K").complex)
    second = identity_reduction(random_complex(rng, name="L").complex)
    assert verify_reduction(direct_sum_reduction(first, second)).ok
    assert verify_reduction(suspension_reduction(first)).ok


def test_padded_equivalence_legs_are_valid(rng):
    complex_ = random_complex(rng, name="C").complex
    filler = random_complex(rng, name="K").complex
    equivalence = padded_equivalence(complex_, filler)
    assert equivalence.left is complex_
    assert all(report.ok for report in equivalence.reports())


def test_compose_reductions_checks_the_middle(rng):
    first = identity_reduction(random_complex(rng).complex)
    second = identity_reduction(random_complex(rng).complex)
    with pytest.raises(StructureError):
        compose_reductions(first, second)


def test_equivalence_legs_must_share_big(rng):
    first = identity_reduction(random_complex(rng).complex)
    second = identity_reduction(random_complex(rng).complex)
    with pytest.raises(StructureError):
        HomotopyEquivalence(first, second)


def test_reduction_roles_are_checked(rng):
    complex_ = random_complex(rng).complex
    identity = complex_.identity
    with pytest.raises(StructureError):
        Reduction(complex_, complex_, identity, identity, identity)


def test_sum_and_suspension_of_equivalences(rng):
    first = padded_equivalence(random_complex(rng, name="A").complex,
                               random_complex(rng, name="K").complex)
    second = trivial_equivalence(random_complex(rng, name="B").complex)
    summed = direct_sum_equivalence(first, second)
    assert all(report.ok for report in summed.reports())
    shifted = suspension(first.left)
    suspended = suspension_equivalence(first, left=shifted)
    assert suspended.left is shifted
    assert all(report.ok for report in suspended.reports())


def test_trivial_equivalence_needs_an_effective_complex():
    lazy = ChainComplex({}, lambda g: Chain.zero(g.degree - 1), name="lazy", effective=False)
    with pytest.raises(NotEffectiveError):
        trivial_equivalence(lazy)


def test_large_complexes_are_sampled(rng):
    reduction = cone_contraction(random_complex(rng).complex)
    settings = VerificationSettings(exhaustive_limit=3, sample_size=2)
    report = verify_reduction(reduction, settings)
    assert report.ok
    assert report.sampled
    assert report.big_checked == 2


def _mutated(reduction: Reduction, rng: random.Random, kind: int) -> Reduction:
    """Break one of f, g, h at one generator in a way the checks must see."""
    big, small = reduction.big, reduction.small
    f, g, h = reduction.f, reduction.g, reduction.h
    if kind == 0:
        candidates = [
            (x, t) for x in big.generators() for t in small.basis(x.degree)
        ]
        where, extra = rng.choice(candidates)
        broken = GradedMorphism(
            big, small, 0,
            lambda x: f.image(x) + (Chain.of(extra) if x == where else Chain.zero(x.degree)),
        )
        return Reduction(big, small, broken, g, h)
    if kind == 1:
        where = rng.choice(list(small.generators()))
        broken = GradedMorphism(
            small, big, 0,
            lambda y: g.image(y) * (2 if y == where else 1),
        )
        return Reduction(big, small, f, broken, h)
    candidates = [
        (x, t) for x in big.generators() for t in big.basis(x.degree + 1)
        if big.d(t) or f.image(t)
    ]
    where, extra = rng.choice(candidates)
    broken = GradedMorphism(
        big, big, 1,
        lambda x: h.image(x) + (Chain.of(extra) if x == where else Chain.zero(x.degree + 1)),
    )
    return Reduction(big, small, f, g, broken)


@pytest.mark.parametrize("seed", range(50))
def test_mutations_are_detected(seed):
    rng = random.Random(seed)
    complex_ = random_complex(rng, degrees=range(0, 3), name="C").complex
    while complex_.size() == 0:
        complex_ = random_complex(rng, degrees=range(0, 3), name="C").complex
    filler = random_complex(rng, degrees=range(0, 3), name="K").complex
    while filler.size() == 0:
        filler = random_complex(rng, degrees=range(0, 3), name="K").complex
    equivalence = padded_equivalence(complex_, filler)
    valid = equivalence.lrdct
    assert verify_reduction(valid).ok

    broken = _mutated(valid, rng, seed % 3)
    report = verify_reduction(broken)
    assert not report.ok
    with pytest.raises(InvalidReductionError) as excinfo:
        build_hmeq_from_reductions(broken, equivalence.rrdct)
    assert excinfo.value.report.violations
