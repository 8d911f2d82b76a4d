import itertools

import pytest

from delpezzo.curves import (
    ALL_MINUS_ONE_CLASSES,
    CurveKind,
    incidence_graph,
    is_irreducible,
    lattice_roots,
    minus_one_curves,
    minus_two_curves,
    negative_curves,
    ruling_classes,
    ruling_candidates,
)
from delpezzo.lattice import (
    CONFIGURATIONS,
    E,
    GENERAL,
    K,
    L,
    DivisorClass,
    from_curve_basis,
    get_configuration,
    intersect,
    to_curve_basis,
)

P = {name: get_configuration(name) for name in CONFIGURATIONS}


def classes(curve_tuple):
    return {c.cls for c in curve_tuple}


def test_general_has_no_minus_two_curves():
    assert minus_two_curves(GENERAL) == ()


def test_p1_minus_two_is_the_collinear_class():
    assert classes(minus_two_curves(P["P1"])) == {DivisorClass((1, -1, -1, -1, 0))}


def test_p6_minus_two_chain_is_a4():
    chain = [c.cls for c in minus_two_curves(P["P6"])]
    assert len(chain) == 4
    pairings = sorted(intersect(a, b) for a, b in itertools.combinations(chain, 2))
    assert pairings == [0, 0, 0, 1, 1, 1]
    degrees = [
        sum(1 for other in chain if other != c and intersect(c, other) == 1) for c in chain
    ]
    assert sorted(degrees) == [1, 1, 2, 2]  # a path, not a cycle or star


def test_p2_minus_two_curves_disjoint():
    a, b = [c.cls for c in minus_two_curves(P["P2"])]
    assert intersect(a, b) == 0


def test_general_ten_lines_three_regular():
    lines = [c.cls for c in minus_one_curves(GENERAL)]
    assert len(lines) == 10
    for c in lines:
        meets = sum(1 for other in lines if other != c and intersect(c, other) > 0)
        assert meets == 3


def test_p1_minus_one_curves():
    expected = {E[0], E[1], E[2], E[3]} | {L - E[i] - E[3] for i in range(3)}
    assert classes(minus_one_curves(P["P1"])) == expected


MINUS_ONE_COUNTS = {
    "GENERAL": 10,
    "P1": 7,
    "P2": 5,
    "P3": 3,
    "P4": 4,
    "P5": 2,
    "P6": 1,
}


@pytest.mark.parametrize("name, count", sorted(MINUS_ONE_COUNTS.items()))
def test_minus_one_counts(name, count):
    assert len(minus_one_curves(P[name])) == count


@pytest.mark.parametrize("name", sorted(CONFIGURATIONS))
def test_negative_curves_pair_nonnegatively(name):
    cfg = P[name]
    curves = [c.cls for c in negative_curves(cfg)]
    for a, b in itertools.combinations(curves, 2):
        assert intersect(a, b) >= 0


@pytest.mark.parametrize("name", sorted(CONFIGURATIONS))
def test_negative_curve_classes_span_the_lattice(name):
    curves = [c.cls for c in negative_curves(P[name])]
    vectors = {c.coeffs for c in curves}
    assert len(vectors) == len(curves)
    assert len(curves) >= 5


@pytest.mark.parametrize("name", sorted(CONFIGURATIONS))
def test_root_sweep_confirms_minus_two_inventory(name):
    # Safety net: no (-2)-class beyond the declared inventory survives the
    # irreducibility filter.
    cfg = P[name]
    declared = classes(minus_two_curves(cfg))
    survivors = {root for root in lattice_roots() if is_irreducible(root, cfg)}
    assert survivors == declared


@pytest.mark.parametrize("name", sorted(CONFIGURATIONS))
def test_minus_one_sweep_matches_filter(name):
    cfg = P[name]
    declared = classes(minus_one_curves(cfg))
    survivors = {c for c in ALL_MINUS_ONE_CLASSES if is_irreducible(c, cfg)}
    assert survivors == declared


def test_is_irreducible_examples():
    assert is_irreducible(L - E[0] - E[1], GENERAL)
    assert not is_irreducible(L - E[0] - E[1], P["P1"])  # splits off the collinear class
    assert is_irreducible(E[2], P["P2"])


def test_is_irreducible_rejects_other_squares():
    with pytest.raises(ValueError):
        is_irreducible(L, GENERAL)
    with pytest.raises(ValueError):
        is_irreducible(2 * L, GENERAL)


def test_incidence_graph_diagonal_and_symmetry():
    for cfg in P.values():
        curves, matrix = incidence_graph(cfg)
        for i in range(len(curves)):
            assert matrix[i][i] in (-1, -2)
            for j in range(len(curves)):
                assert matrix[i][j] == matrix[j][i]


def test_ruling_candidates_are_the_five_conic_classes():
    assert {c.coeffs for c in ruling_candidates()} == {
        (1, -1, 0, 0, 0),
        (1, 0, -1, 0, 0),
        (1, 0, 0, -1, 0),
        (1, 0, 0, 0, -1),
        (2, -1, -1, -1, -1),
    }


def test_ruling_classes_general():
    assert len(ruling_classes(GENERAL, False)) == 5
    assert ruling_classes(GENERAL, True) == ruling_classes(GENERAL, False)


RULING_ANSWERS = {
    "P1": {(1, -1, 0, 0, 0), (1, 0, -1, 0, 0), (1, 0, 0, -1, 0)},
    "P2": {(1, -1, 0, 0, 0)},
    "P3": set(),
    "P4": {(1, -1, 0, 0, 0), (1, 0, -1, 0, 0)},
    "P5": {(1, -1, 0, 0, 0)},
    "P6": set(),
}


@pytest.mark.parametrize("name, expected", sorted(RULING_ANSWERS.items()))
def test_ruling_classification_with_orthogonality(name, expected):
    cfg = P[name]
    got = {to_curve_basis(f, cfg) for f in ruling_classes(cfg, True)}
    assert got == expected


@pytest.mark.parametrize("name", sorted(CONFIGURATIONS))
def test_ruling_invariants(name):
    cfg = P[name]
    rulings = ruling_classes(cfg, False)
    for f in rulings:
        assert intersect(K, f) == -2
        for g in rulings:
            assert intersect(f, g) in (0, 1, 2)


def test_negative_curve_kind_validation():
    with pytest.raises(ValueError):
        from delpezzo.curves import NegativeCurve

        NegativeCurve(L, CurveKind.MINUS_ONE)
