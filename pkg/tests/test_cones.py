from __future__ import annotations

import pytest

from effpushout.chains import Chain, ComplexMismatchError, DegreeError, Generator
from effpushout.cones import (
    SOURCE,
    TARGET,
    InvalidMorphismError,
    cone,
    cone2,
    cone_efhm,
)
from effpushout.homology import AbelianGroup, homology_effective, homology_via_equivalence
from effpushout.morphisms import GradedMorphism, verify_chain_map
from effpushout.reductions import trivial_equivalence
from effpushout.spaces import degree_map
from factories import padded_equivalence, random_complex

Z2 = AbelianGroup(0, (2,))


@pytest.fixture
def doubling():
    """The chain map of the degree 2 map of the circle."""
    return degree_map(2).chain_map


def test_cone_layout(doubling):
    cone_ = cone(doubling)
    assert cone_.ranks() == {0: 1, 1: 3, 2: 2}
    shifted = cone2(doubling)
    assert shifted.ranks() == {-1: 1, 0: 3, 1: 2}
    first = cone_.basis(1)[0]
    assert first.label[0] == SOURCE
    assert cone_.basis(1)[-1].label[0] == TARGET


def test_cone_differentials_square_to_zero(rng, doubling):
    assert cone(doubling).check_differential() == []
    assert cone2(doubling).check_differential() == []
    complex_ = random_complex(rng).complex
    assert cone(complex_.identity).check_differential() == []
    assert cone2(complex_.identity).check_differential() == []


def test_cone_differential_signs(doubling):
    cone_ = cone(doubling)
    edge = doubling.source.basis(1)[0]
    x = Generator((SOURCE, edge), 2)
    expected = cone_.embed(
        -doubling.source.d(edge), doubling.image(edge), 1
    )
    assert cone_.d(x) == expected

    shifted = cone2(doubling)
    y = Generator((SOURCE, edge), 1)
    assert shifted.d(y) == shifted.embed(
        doubling.source.d(edge), -doubling.image(edge), 0
    )


def test_cone_of_degree_two_map(doubling):
    assert homology_effective(cone(doubling), 1) == Z2
    assert homology_effective(cone(doubling), 0).is_trivial
    assert homology_effective(cone(doubling), 2).is_trivial
    assert homology_effective(cone2(doubling), 0) == Z2
    assert homology_effective(cone2(doubling), -1).is_trivial


def test_cone_needs_degree_zero(doubling):
    with pytest.raises(DegreeError):
        cone(doubling.target.differential)


def test_split_inverts_embed(doubling):
    cone_ = cone(doubling)
    edge = doubling.target.basis(1)[0]
    vertex = doubling.source.basis(0)[0]
    chain = cone_.embed(Chain.of(vertex, 3), Chain.of(edge, -1), 1)
    assert cone_.split(chain) == (Chain.of(vertex, 3), Chain.of(edge, -1))


@pytest.mark.parametrize("desuspended", [False, True])
def test_cone_efhm_with_trivial_equivalences(doubling, desuspended):
    cone_ = cone2(doubling) if desuspended else cone(doubling)
    equivalence = cone_efhm(
        doubling,
        trivial_equivalence(doubling.source),
        trivial_equivalence(doubling.target),
        cone=cone_,
    )
    assert equivalence.left is cone_
    degree = 0 if desuspended else 1
    assert homology_via_equivalence(equivalence, degree) == Z2
    assert all(report.ok for report in equivalence.reports())


def test_cone_efhm_defaults_to_cone2(doubling):
    equivalence = cone_efhm(
        doubling, trivial_equivalence(doubling.source), trivial_equivalence(doubling.target)
    )
    assert equivalence.left.desuspended


def test_cone_efhm_through_padded_equivalences(rng, doubling):
    source_eq = padded_equivalence(doubling.source, random_complex(rng, name="K").complex)
    target_eq = padded_equivalence(doubling.target, random_complex(rng, name="L").complex)
    equivalence = cone_efhm(doubling, source_eq, target_eq)
    assert all(report.ok for report in equivalence.reports())
    assert verify_chain_map(equivalence.lf) == []
    assert homology_via_equivalence(equivalence, 0) == Z2
    assert homology_via_equivalence(equivalence, 1).is_trivial


def test_cone_efhm_rejects_non_chain_maps(doubling):
    source, target = doubling.source, doubling.target
    unflagged = GradedMorphism(source, target, 0, doubling.image)
    eq_a, eq_b = trivial_equivalence(source), trivial_equivalence(target)
    with pytest.raises(InvalidMorphismError):
        cone_efhm(unflagged, eq_a, eq_b)
    broken = GradedMorphism(
        source, target, 0,
        lambda g: Chain.zero(0) if g == source.basis(0)[1] else doubling.image(g),
        chain_map=True,
    )
    with pytest.raises(InvalidMorphismError):
        cone_efhm(broken, eq_a, eq_b)


def test_cone_efhm_checks_equivalence_ends(doubling):
    with pytest.raises(ComplexMismatchError):
        cone_efhm(
            doubling,
            trivial_equivalence(doubling.target),
            trivial_equivalence(doubling.target),
        )
