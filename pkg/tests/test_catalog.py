from __future__ import annotations

import textwrap

import pytest

from flatclasses import Coefficients, betti_vector, get_space
from flatclasses.catalog import (UnknownSpace, check_poincare_duality, euler_characteristic,
                                 split_descriptor, standard_spaces)
from flatclasses.holonomy import abelianization

import oracles

SPACES = standard_spaces()


def test_sphere_five():
    S = get_space("S5")
    assert S.dim == 5 and betti_vector(S) == (1, 0, 0, 0, 0, 1)


def test_rp9_rational_and_mod2():
    S = get_space("RP9")
    assert betti_vector(S) == oracles.rp_cellular_betti(9, None) == (1,) + (0,) * 8 + (1,)
    assert betti_vector(S, Coefficients.F2) == oracles.rp_cellular_betti(9, 2) == (1,) * 10


@pytest.mark.parametrize("n", range(1, 10))
def test_rp_against_cellular_cochains(n):
    S = get_space(f"RP{n}")
    assert betti_vector(S) == oracles.rp_cellular_betti(n, None)
    assert betti_vector(S, Coefficients.F2) == oracles.rp_cellular_betti(n, 2)
    assert S.orientable == (n % 2 == 1)


def test_torus_three():
    S = get_space("T3")
    assert betti_vector(S) == oracles.convolve(oracles.convolve((1, 1), (1, 1)), (1, 1))
    assert S.pi1.generators == 3 and len(S.pi1.relators) == 3
    assert abelianization(S.pi1) == (3, [])


def test_surface_and_projective_examples():
    assert betti_vector(get_space("Sigma2")) == (1, 4, 1)
    assert betti_vector(get_space("CP2")) == oracles.monomial_betti([2], [2], 4)
    assert betti_vector(get_space("S2xS3")) == (1, 0, 1, 1, 0, 1)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_duality_and_euler(space):
    if space.orientable:
        assert check_poincare_duality(space, Coefficients.Q)
    assert check_poincare_duality(space, Coefficients.F2)
    assert euler_characteristic(space, Coefficients.Q) == euler_characteristic(space, Coefficients.F2)
    assert len(betti_vector(space)) == space.dim + 1


@pytest.mark.parametrize("a,b", [("S1", "S2"), ("T2", "CP1"), ("RP2", "S1"), ("Sigma2", "S3"),
                                 ("RP3", "RP2")])
def test_product_betti_is_convolution(a, b):
    A, B = get_space(a), get_space(b)
    P = get_space(f"{a}x{b}")
    for co in (Coefficients.Q, Coefficients.F2):
        assert betti_vector(P, co) == oracles.convolve(betti_vector(A, co), betti_vector(B, co))
    assert P.dim == A.dim + B.dim
    assert abelianization(P.pi1)[0] == P.betti(1)


def test_even_projective_spaces_flagged():
    assert not get_space("RP4").orientable
    assert get_space("RP4").flags


def test_descriptor_splitting():
    assert split_descriptor("S2xS3") == ["S2", "S3"]
    assert split_descriptor("T2xCP1xSigma2") == ["T2", "CP1", "Sigma2"]


@pytest.mark.parametrize("bad", ["", "Q7", "S0", "S2x", "RPx"])
def test_unknown_descriptors(bad):
    with pytest.raises(UnknownSpace):
        get_space(bad)


def test_extension_models(tmp_path, monkeypatch):
    (tmp_path / "Lens3.yaml").write_text(textwrap.dedent("""
        name: Lens3
        dim: 3
        orientable: true
        ring_Q: {coefficients: Q, top_degree: 3, generators: {x: 3}}
        ring_F2: {coefficients: F2, top_degree: 3, generators: {x: 3}}
        pi1: {generators: 1, relators: [[1, 1, 1]]}
    """))
    monkeypatch.setenv("FLATCLASSES_CATALOG_PATH", str(tmp_path))
    S = get_space("Lens3")
    assert betti_vector(S) == (1, 0, 0, 1)
    assert abelianization(S.pi1) == (0, [3])
    assert betti_vector(get_space("Lens3xS1")) == (1, 1, 0, 1, 1)


def test_extension_missing_field(tmp_path, monkeypatch):
    (tmp_path / "Broken.yaml").write_text("dim: 2\n")
    monkeypatch.setenv("FLATCLASSES_CATALOG_PATH", str(tmp_path))
    with pytest.raises(UnknownSpace):
        get_space("Broken")


def test_to_json():
    data = get_space("RP2").to_json()
    assert data["betti_Q"] == [1, 0, 0] and data["betti_F2"] == [1, 1, 1]
    assert data["orientable"] is False
