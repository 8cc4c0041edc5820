"""Built-in families: data values, F-symbol identities, mutation controls."""

import math
from fractions import Fraction

import numpy as np
import pytest

import baxcat as bx
from baxcat.category import FSymbolTable
from baxcat.errors import DomainError


def test_su2_2_data():
    cat = bx.build_su2k(2)
    assert cat.n_objects == 3
    assert [l.display for l in cat.labels] == ["0", "1/2", "1"]
    assert np.allclose(cat.dims.d, [1, math.sqrt(2), 1], atol=1e-14)
    assert cat.twists.Delta == (Fraction(0), Fraction(3, 16), Fraction(1, 2))


def test_su2_1_fusion():
    cat = bx.build_su2k(1)
    assert cat.n_objects == 2
    assert bx.fusion_product(cat, 1, 1) == [0]


def test_su2_4_d1():
    cat = bx.build_su2k(4)
    # d_1 = 1 + 2 cos(pi/3) = 2
    assert abs(cat.dims.d[2] - 2.0) < 1e-14


def test_su2_nu_values():
    cat = bx.build_su2k(3)
    # nu_a^{bc} = (-1)^{b+c-a}
    assert cat.twists.nu[(0, 1, 1)] == -1
    assert cat.twists.nu[(2, 1, 1)] == 1
    assert cat.twists.nu[(2, 2, 2)] == -1


def test_minimal_A_k2_spins():
    cat = bx.build_minimal_A(2)
    assert cat.twists.Delta[1] == Fraction(1, 16)      # Ising sigma weight
    assert cat.twists.Delta[2] == Fraction(1, 2)
    assert cat.twists.Delta[0] == 0
    assert all(s == 1 for s in cat.twists.nu.values())


def test_minimal_A_shares_fusion_and_dims():
    su2 = bx.build_su2k(3)
    mini = bx.build_minimal_A(3)
    assert np.array_equal(su2.rules.N, mini.rules.N)
    assert np.array_equal(su2.dims.d, mini.dims.d)
    assert su2.f.blocks.keys() == mini.f.blocks.keys()
    assert su2.twists.Delta != mini.twists.Delta


def test_ty_2_data():
    ty = bx.build_tambara_yamagami(2)
    assert ty.twists.Delta[1] == Fraction(1, 2)
    assert abs(ty.dims.d[2] - math.sqrt(2)) < 1e-14


def test_ty_6_spins():
    ty = bx.build_tambara_yamagami(6)
    expect = (Fraction(0), Fraction(5, 6), Fraction(4, 3), Fraction(3, 2),
              Fraction(4, 3), Fraction(5, 6))
    assert ty.twists.Delta[:6] == expect


def test_ty_duality():
    ty = bx.build_tambara_yamagami(5)
    assert ty.rules.dual == (0, 4, 3, 2, 1, 5)


def test_lie_so5():
    so5 = bx.build_family("so", n=5, k=2)
    assert so5.twists.Delta[1] == Fraction(3, 5)       # Delta_A at n=5, k=2
    assert so5.twists.Delta[2] == Fraction(1)          # Delta_S
    assert so5.twists.nu == {(0, 3, 3): 1, (1, 3, 3): -1, (2, 3, 3): 1}
    assert not so5.representable and so5.baxterisable


def test_lie_sp4():
    sp4 = bx.build_family("sp", m=2, k=1)
    assert sp4.twists.Delta[1] == Fraction(1, 2)       # m/(m+k+1) = 2/4
    assert sp4.twists.Delta[2] == Fraction(3, 4)
    assert sp4.twists.nu[(0, 3, 3)] == -1


def test_lie_g2():
    g2 = bx.build_family("g2", k=1)
    assert g2.twists.Delta[3] == Fraction(14, 15)
    assert g2.rho_declared == 1                        # V is a channel
    assert g2.tp_adjacency == {2: ((0, 2), (2, 3), (3, 1))}


@pytest.mark.parametrize("family, kwargs", [
    ("su2", {"k": 0}), ("minimal", {"k": -1}), ("ty", {"M": 1}),
    ("so", {"n": 2, "k": 2}), ("sp", {"m": 1, "k": 2}), ("g2", {"k": 0}),
])
def test_param_validation(family, kwargs):
    with pytest.raises(DomainError):
        bx.build_family(family, **kwargs)


def test_unknown_family():
    with pytest.raises(DomainError):
        bx.build_family("e8", k=1)


@pytest.mark.parametrize("build, arg", [
    (bx.build_su2k, 1), (bx.build_su2k, 2), (bx.build_su2k, 3), (bx.build_su2k, 4),
    (bx.build_su2k, 5), (bx.build_minimal_A, 2), (bx.build_minimal_A, 4),
    (bx.build_tambara_yamagami, 2), (bx.build_tambara_yamagami, 3),
    (bx.build_tambara_yamagami, 4), (bx.build_tambara_yamagami, 6),
])
def test_builtin_passes_all_checks(build, arg):
    cat = build(arg)
    assert bx.check_fusion_ring(cat.rules).passed
    dims = bx.compute_quantum_dims(cat.rules)
    assert np.max(np.abs(dims.d - cat.dims.d)) < 1e-10
    rep = bx.check_f_identities(cat, tol=1e-10)
    assert rep.passed, [c.to_dict() for c in rep.checks if not c.passed]


def test_f_identities_k3_residuals():
    rep = bx.check_f_identities(bx.build_su2k(3))
    for c in rep.checks:
        assert c.residual < 1e-10


def test_f_identities_ty4_residuals():
    rep = bx.check_f_identities(bx.build_tambara_yamagami(4))
    for c in rep.checks:
        assert c.residual < 1e-10


def test_f_identities_larger_tables():
    assert bx.check_f_identities(bx.build_su2k(6)).passed
    assert bx.check_f_identities(bx.build_tambara_yamagami(8)).passed


def test_f_mutation_breaks_pentagon():
    cat = bx.build_su2k(2)
    blocks = {k: (us, vs, m.copy()) for k, (us, vs, m) in cat.f.blocks.items()}
    us, vs, m = blocks[(1, 1, 1, 1)]
    m[0, 0] = -m[0, 0]
    mutated = bx.CategoryData(cat.name, cat.labels, cat.twists, rules=cat.rules,
                              dims=cat.dims, f=FSymbolTable(blocks))
    rep = bx.check_f_identities(mutated)
    pent = rep.check("pentagon")
    assert pent.residual > 0.1
    assert "worst_tuple" in pent.details


def test_catalog_rows_cover_families():
    rows = bx.catalog_rows()
    assert {r["family"] for r in rows} == {"su2", "minimal", "ty", "so", "sp", "g2"}
