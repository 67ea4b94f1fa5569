"""Simplicial complexes: construction, boundaries, orientability, mesh I/O."""

from fractions import Fraction

import numpy as np
import pytest

from formcalc import meshes
from formcalc.parity import Parity
from formcalc.simplicial import (
    Chain,
    MeshFormatError,
    boundary,
    build_complex,
    mesh_to_text,
    parse_mesh,
)


def test_single_triangle_counts():
    cx = meshes.single_triangle()
    assert [cx.num_simplices(k) for k in range(3)] == [3, 3, 1]
    assert cx.euler_characteristic() == 1


def test_faces_are_generated_sorted():
    cx = build_complex([(0, 0), (1, 0), (0, 1)], [(2, 0, 1)])
    assert cx.simplices[1] == [(0, 1), (0, 2), (1, 2)]


def test_boundary_of_boundary_is_zero():
    for builder in (meshes.solid_tetrahedron, meshes.sphere_octahedron,
                    meshes.torus, meshes.mobius_minimal):
        cx = builder()
        for k in range(2, cx.dim + 1):
            prod = cx.boundary_matrix(k - 1) @ cx.boundary_matrix(k)
            assert prod.nnz == 0


def test_boundary_matrix_signs_on_triangle():
    cx = meshes.single_triangle()
    d2 = cx.boundary_matrix(2).toarray()
    # faces of (0,1,2): +(1,2) -(0,2) +(0,1)
    col = {cx.simplices[1][i]: d2[i, 0] for i in range(3)}
    assert col[(1, 2)] == 1
    assert col[(0, 2)] == -1
    assert col[(0, 1)] == 1


def test_chain_boundary_matches_matrix():
    cx = meshes.disk()
    fund = cx.fundamental_chain(Parity.TWISTED)
    rim = boundary(fund, cx)
    vec = np.zeros(cx.num_simplices(2))
    for i, c in fund.coefficients.items():
        vec[i] = float(c)
    expected = cx.boundary_matrix(2) @ vec
    got = np.zeros(cx.num_simplices(1))
    for i, c in rim.coefficients.items():
        got[i] = float(c)
    assert np.array_equal(expected, got)


def test_orientability():
    assert meshes.sphere_octahedron().orientable()
    assert meshes.torus().orientable()
    assert meshes.annulus().orientable()
    assert not meshes.mobius_minimal().orientable()
    assert not meshes.mobius_strip().orientable()


def test_orientation_signs_are_coherent():
    cx = meshes.torus()
    ok, signs = cx.orientability()
    assert ok
    vec = np.array(signs, dtype=float)
    assert np.all(cx.boundary_matrix(2) @ vec == 0)


def test_fundamental_chain_twisted_always_exists():
    for builder in (meshes.torus, meshes.mobius_minimal):
        cx = builder()
        fund = cx.fundamental_chain(Parity.TWISTED)
        assert len(fund.coefficients) == cx.num_simplices(cx.dim)
        assert all(abs(c) == 1 for c in fund.coefficients.values())


def test_fundamental_chain_straight_requires_orientability():
    with pytest.raises(ValueError, match="twisted top-form"):
        meshes.mobius_minimal().fundamental_chain(Parity.STRAIGHT)
    chain = meshes.torus().fundamental_chain(Parity.STRAIGHT)
    assert chain.parity is Parity.STRAIGHT


def test_pseudo_manifold_check():
    assert meshes.torus().is_pseudo_manifold()
    # three triangles sharing one edge: not a pseudo-manifold
    cx = build_complex([(0, 0), (1, 0), (0, 1), (1, 1), (-1, 1)],
                       [(0, 1, 2), (0, 1, 3), (0, 1, 4)])
    assert not cx.is_pseudo_manifold()


def test_build_complex_rejects_bad_cells():
    with pytest.raises(ValueError):
        build_complex([(0, 0), (1, 0)], [(0, 0, 1)])
    with pytest.raises(ValueError):
        build_complex([(0, 0), (1, 0)], [(0, 1, 2)])
    with pytest.raises(ValueError):
        build_complex([(0, 0), (1, 0), (0, 1, 0)], [(0, 1, 2)])


def test_mesh_round_trip():
    cx = meshes.annulus()
    text = mesh_to_text(cx)
    back = parse_mesh(text)
    assert back.vertices == cx.vertices
    assert back.simplices == cx.simplices
    assert mesh_to_text(back) == text


def test_parse_mesh_reports_line_numbers():
    with pytest.raises(MeshFormatError, match="line 2"):
        parse_mesh("dim 2\nbogus record\n")


def test_uniform_refine_preserves_topology():
    cx = meshes.annulus()
    fine = meshes.uniform_refine(cx)
    assert fine.euler_characteristic() == cx.euler_characteristic()
    assert fine.num_simplices(2) == 4 * cx.num_simplices(2)
    assert fine.orientable() == cx.orientable()


def test_chain_algebra():
    a = Chain(1, {0: Fraction(2), 1: Fraction(-1)})
    b = Chain(1, {1: Fraction(1)})
    assert (a + b).coefficients == {0: Fraction(2)}
    assert (-a).coefficients == {0: Fraction(-2), 1: Fraction(1)}
    assert a.scale(Fraction(1, 2)).coefficients == {0: Fraction(1),
                                                    1: Fraction(-1, 2)}
