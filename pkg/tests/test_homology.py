from __future__ import annotations

import random
from itertools import combinations, permutations
from math import gcd

import pytest

from effpushout.chains import Chain, ChainComplex, NotEffectiveError
from effpushout.homology import (
    AbelianGroup,
    IntMatrix,
    differential_matrix,
    homology_effective,
    homology_range,
    homology_via_equivalence,
    smith_normal_form,
)
from effpushout.reductions import trivial_equivalence
from factories import padded_equivalence, random_complex


def _det(rows: list[list[int]]) -> int:
    size = len(rows)
    total = 0
    for perm in permutations(range(size)):
        inversions = sum(
            1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j]
        )
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if not term:
                break
        total += term
    return total


def _minor_gcd(rows: list[list[int]], k: int) -> int:
    """gcd of all k x k minors."""
    result = 0
    for picked_rows in combinations(range(len(rows)), k):
        for picked_cols in combinations(range(len(rows[0])), k):
            result = gcd(result, _det([[rows[i][j] for j in picked_cols] for i in picked_rows]))
    return result


def _random_matrix(rng: random.Random, max_size: int) -> list[list[int]]:
    rows, cols = rng.randint(1, max_size), rng.randint(1, max_size)
    return [[rng.choice([0, 0, 1, -1, 2, -2, 3, 4, 6]) for _ in range(cols)] for _ in range(rows)]


@pytest.mark.parametrize(
    ("rows", "expected"),
    [
        ([[2, 4], [6, 8]], (2, 4)),
        ([[2, 0], [0, 3]], (1, 6)),
        ([[0, 0], [0, 0]], ()),
        ([[4]], (4,)),
        ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12)),
        ([[1, 2, 3]], (1,)),
    ],
)
def test_smith_normal_form_examples(rows, expected):
    assert smith_normal_form(IntMatrix.from_rows(rows)).diagonal == expected


def test_smith_normal_form_of_empty_matrix():
    assert smith_normal_form(IntMatrix(0, 3)).rank == 0
    assert smith_normal_form(IntMatrix(3, 0)).rank == 0


def test_smith_normal_form_leaves_input_alone():
    matrix = IntMatrix.from_rows([[2, 4], [6, 8]])
    smith_normal_form(matrix)
    assert matrix.entries == [[2, 4], [6, 8]]


def test_smith_normal_form_divisibility_on_random_matrices():
    rng = random.Random(7)
    for _ in range(200):
        rows = _random_matrix(rng, 8)
        diagonal = smith_normal_form(IntMatrix.from_rows(rows)).diagonal
        assert all(d > 0 for d in diagonal)
        assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]))


def test_smith_normal_form_matches_minor_gcds():
    rng = random.Random(11)
    for _ in range(40):
        rows = _random_matrix(rng, 6)
        diagonal = smith_normal_form(IntMatrix.from_rows(rows)).diagonal
        product = 1
        for k in range(1, min(len(rows), len(rows[0])) + 1):
            expected = _minor_gcd(rows, k)
            if k <= len(diagonal):
                product *= diagonal[k - 1]
                assert product == expected
            else:
                assert expected == 0


def test_matrix_shape_is_checked():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, [[1, 2]])


def test_abelian_group_normalizes():
    group = AbelianGroup.from_invariants(1, [2, 3, 0, 1, -4])
    assert group == AbelianGroup(2, (2, 12))
    assert group.components() == ["Z", "Z", "Z/2Z", "Z/12Z"]
    assert str(group) == "Z + Z + Z/2Z + Z/12Z"
    assert str(AbelianGroup()) == "0"
    assert AbelianGroup().is_trivial


@pytest.mark.parametrize("torsion", [(1,), (4, 2), (0,)])
def test_abelian_group_rejects_bad_torsion(torsion):
    with pytest.raises(ValueError):
        AbelianGroup(0, torsion)


def test_differential_matrix_columns_follow_basis(rng):
    complex_ = random_complex(rng).complex
    for n in complex_.degrees:
        matrix = differential_matrix(complex_, n)
        assert (matrix.rows, matrix.cols) == (complex_.rank(n - 1), complex_.rank(n))


def test_homology_of_known_complexes():
    rng = random.Random(3)
    for _ in range(30):
        known = random_complex(rng)
        for n, group in known.homology.items():
            assert homology_effective(known.complex, n) == group


def test_homology_outside_the_window_is_trivial(rng):
    complex_ = random_complex(rng).complex
    assert homology_effective(complex_, complex_.hi + 3).is_trivial
    assert homology_effective(complex_, -5).is_trivial


def test_homology_agrees_with_euler_characteristic(rng):
    complex_ = random_complex(rng).complex
    groups = homology_range(complex_, complex_.degrees)
    assert sum((-1) ** n * g.free_rank for n, g in groups.items()) == (
        complex_.euler_characteristic()
    )


def test_homology_via_equivalence_reads_the_right_side(rng):
    known = random_complex(rng, name="C")
    filler = random_complex(rng, name="K").complex
    for equivalence in (trivial_equivalence(known.complex),
                        padded_equivalence(known.complex, filler)):
        for n, group in known.homology.items():
            assert homology_via_equivalence(equivalence, n) == group


def test_homology_needs_an_effective_complex():
    lazy = ChainComplex({}, lambda g: Chain.zero(g.degree - 1), effective=False)
    with pytest.raises(NotEffectiveError):
        homology_effective(lazy, 0)
