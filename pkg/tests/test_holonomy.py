from __future__ import annotations

import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flatclasses import (GroupPresentation, MatrixRep, conjugate_rep, get_space, holonomy,
                         presentation_from_2complex, verify_representation)
from flatclasses.catalog import standard_spaces
from flatclasses.holonomy import (FamilySampler, PresentationError, RepresentationError,
                                  SampleError, TwoComplex, abelianization, adjacent_distances,
                                  deviation, exact_matrix, family_residual, free_reduce,
                                  identity, inverse_word, parse_entry, parse_presentation,
                                  parse_representation, parse_word, sample_family)

import oracles

TORUS = TwoComplex(1, (("a", 0, 0), ("b", 0, 0)), ((1, 2, -1, -2),))
GENUS2 = TwoComplex(1, tuple((n, 0, 0) for n in "abcd"), ((1, 2, -1, -2, 3, 4, -3, -4),))
RP2 = TwoComplex(1, (("a", 0, 0),), ((1, 1),))

ROT = [["3/5", "-4/5"], ["4/5", "3/5"]]  # exact rational rotation
DIAG_A = [["i", 0], [0, 1]]
DIAG_B = [[-1, 0], [0, "i"]]


def torus():
    return presentation_from_2complex(TORUS)


def rand_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_torus_presentation():
    P = torus()
    assert P.generators == 2 and P.relators == ((1, 2, -1, -2),)
    assert P.format_word(P.relators[0]) == "aba-b-"


def test_genus_two_presentation():
    P = presentation_from_2complex(GENUS2)
    assert P.generators == 4 and len(P.relators) == 1 and len(P.relators[0]) == 8
    assert abelianization(P) == (4, [])
    assert oracles.abelian_rank(P.generators, list(P.relators)) == 4


def test_rp2_presentation():
    P = presentation_from_2complex(RP2)
    assert P.relators == ((1, 1),)
    assert abelianization(P) == (0, [2])


def test_spanning_tree_removes_edges():
    # square subdivided: two vertices joined by edges a (0->1), b (1->0), c (0->1)
    cx = TwoComplex(2, (("a", 0, 1), ("b", 1, 0), ("c", 0, 1)), ((1, 2),))
    P = presentation_from_2complex(cx)
    assert P.generators == 2
    assert oracles.abelian_rank(P.generators, list(P.relators)) == 1


def test_bad_complexes_rejected():
    with pytest.raises(PresentationError):
        presentation_from_2complex(TwoComplex(2, (("a", 0, 0),), ()))
    with pytest.raises(PresentationError):
        presentation_from_2complex(TwoComplex(2, (("a", 0, 1), ("b", 0, 1)), ((1, 2),)))
    with pytest.raises(PresentationError):
        presentation_from_2complex(TwoComplex(1, (("a", 0, 0),), ((1, 3),)))


@pytest.mark.parametrize("space", standard_spaces(), ids=lambda s: s.name)
def test_catalog_abelianization_matches_first_betti(space):
    P = space.pi1
    assert abelianization(P)[0] == space.betti(1)
    assert oracles.abelian_rank(P.generators, list(P.relators)) == space.betti(1)


def test_word_parsing():
    names = ("a", "b")
    assert parse_word("aba-b-", names) == (1, 2, -1, -2)
    assert parse_word("", names) == ()
    with pytest.raises(PresentationError):
        parse_word("abz", names)
    assert free_reduce((1, 2, -2, -1, 2)) == (2,)
    assert inverse_word((1, -2)) == (2, -1)


def test_parse_entry_forms():
    assert parse_entry("3/5+4/5i") == parse_entry(["3/5", "4/5"])
    assert parse_entry("-i") == parse_entry([0, -1])
    assert parse_entry(2) == parse_entry("2")


def test_commuting_diagonals_verify_exactly():
    rho = MatrixRep("U", (DIAG_A, DIAG_B))
    v = verify_representation(rho, torus())
    assert v.ok and v.residual == 0
    assert deviation(holonomy(rho, (1, 2, -1, -2)), identity(2, True), True) == 0


def test_noncommuting_unitaries_fail():
    rho = MatrixRep("U", (ROT, DIAG_A))
    v = verify_representation(rho, torus())
    assert not v.ok and v.residual > 0
    g = np.random.default_rng(1)
    frho = MatrixRep("U", (rand_unitary(g, 3), rand_unitary(g, 3)), "float", 1e-9)
    assert not verify_representation(frho, torus()).ok


def test_free_group_any_unitaries():
    g = np.random.default_rng(2)
    rho = MatrixRep("U", (rand_unitary(g, 2), rand_unitary(g, 2)), "float", 1e-9)
    assert verify_representation(rho, GroupPresentation(2, ())).ok


def test_family_membership():
    assert family_residual(exact_matrix(ROT), "SO", True) == 0
    assert family_residual(exact_matrix(DIAG_A), "SU", True) != 0
    assert family_residual(exact_matrix(DIAG_A), "U", True) == 0
    assert not verify_representation(MatrixRep("O", (DIAG_A, DIAG_B)), torus()).ok


def test_spin_matrix_model_rejected():
    with pytest.raises(RepresentationError):
        MatrixRep("Spin", (ROT,))


def test_holonomy_trivial_words():
    rho = MatrixRep("SO", (ROT, ROT))
    assert holonomy(rho, ()) == identity(2, True)
    assert holonomy(rho, (1,)) == exact_matrix(ROT)


def test_conjugation():
    rho = MatrixRep("U", (DIAG_A, DIAG_B))
    same = conjugate_rep(rho, [[1, 0], [0, 1]])
    assert all(x == y for x, y in zip(same.images, rho.images))
    moved = conjugate_rep(rho, ROT)
    assert verify_representation(moved, torus()).residual == 0
    h = exact_matrix(ROT)
    w = (1, 2, 2, -1, 1)
    assert holonomy(moved, w) == h.inv() * holonomy(rho, w) * h


def test_conjugation_rejects_outside_group():
    rho = MatrixRep("SO", (ROT,))
    with pytest.raises(RepresentationError):
        conjugate_rep(rho, [[2, 0], [0, 1]])


@given(seed=st.integers(0, 10**6))
def test_homomorphism_law_exact(seed):
    rng = random.Random(seed)
    rho = MatrixRep("U", (ROT, DIAG_A, DIAG_B))
    w1 = tuple(rng.choice([1, 2, 3, -1, -2, -3]) for _ in range(rng.randint(0, 6)))
    w2 = tuple(rng.choice([1, 2, 3, -1, -2, -3]) for _ in range(rng.randint(0, 6)))
    assert holonomy(rho, w1 + w2) == holonomy(rho, w1) * holonomy(rho, w2)
    assert holonomy(rho, w1) * holonomy(rho, inverse_word(w1)) == identity(2, True)


@given(seed=st.integers(0, 10**6))
def test_products_stay_unitary_float(seed):
    g = np.random.default_rng(seed)
    rng = random.Random(seed)
    rho = MatrixRep("U", tuple(rand_unitary(g, 3) for _ in range(3)), "float", 1e-9)
    w = tuple(rng.choice([1, 2, 3, -1, -2, -3]) for _ in range(rng.randint(1, 30)))
    assert family_residual(holonomy(rho, w), "U", False) <= 1e-9 * max(1, len(w))


def circle_family(bad_point=None):
    def images(p):
        th = 2 * math.pi * p[0]
        a = np.diag([np.exp(1j * th), 1.0])
        b = np.diag([1.0, np.exp(-2j * th)])
        if bad_point is not None and math.isclose(p[0], bad_point):
            b = np.array([[0, 1], [1, 0]], dtype=complex)
        return a, b
    return FamilySampler(torus(), "U", images, dim=1, points=8, endpoint=False)


def test_circle_family_samples_and_continuity():
    F = circle_family()
    for p in F.grid():
        assert verify_representation(sample_family(F, p), torus()).ok
    # |e^{i 2 pi s} - e^{i 2 pi t}| <= 2 pi |s - t|
    d = adjacent_distances(F, (1,))
    assert len(d) == 7 and max(d) <= 2 * math.pi * F.spacing + 1e-12


def test_constant_family():
    F = FamilySampler(torus(), "U", lambda p: (np.eye(2), np.eye(2)), points=4)
    reps = [sample_family(F, p) for p in F.grid()]
    assert all(np.array_equal(r.images[0], reps[0].images[0]) for r in reps)


def test_perturbed_family_names_point():
    F = circle_family(bad_point=0.375)
    with pytest.raises(SampleError) as e:
        for p in F.grid():
            sample_family(F, p)
    assert e.value.point == (0.375,) and e.value.residual > 0
    assert "0.375" in str(e.value)


def test_off_grid_point_rejected():
    with pytest.raises(RepresentationError):
        sample_family(circle_family(), (0.1,))


def test_file_formats():
    P = parse_presentation("2\n1 2 -1 -2\n")
    assert P.relators == ((1, 2, -1, -2),)
    P2 = parse_presentation('{"generators": 2, "names": ["x", "y"], "relators": [[1, 2, -1, -2]]}')
    assert P2.names == ("x", "y")
    rho = parse_representation('{"family": "U", "n": 2, "mode": "exact", '
                               '"matrices": [[["i", 0], [0, 1]], [[-1, 0], [0, "i"]]]}')
    assert verify_representation(rho, P).ok
    with pytest.raises(RepresentationError):
        parse_representation('{"family": "U", "n": 3, "matrices": [[[1]]]}')
    with pytest.raises(PresentationError):
        parse_presentation("two\n1 2")
