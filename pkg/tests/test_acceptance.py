"""Acceptance gate: one test per criterion, in order.

Each criterion owns exactly one test function so a verbose run prints one
pass/fail line per criterion.  The sweeps are exhaustive over the stated
universes and all arithmetic is exact unless a tolerance is part of the
criterion itself.
"""

import random
from fractions import Fraction

import oracles
from graphcoh.canonical import canonicalize
from graphcoh.coboundary import cocycle_basis, delta
from graphcoh.decorated import (
    decorate_uniform,
    delta_decorated,
    evaluate,
    ihx_check,
    ihx_violation,
    is_cocycle_decorated,
)
from graphcoh.enumeration import enumerate_grading, enumerate_trivalent
from graphcoh.graphs import (
    SymmetryMode,
    grading,
    new_graph,
    permutation_parity,
    relabel_vertices,
    renumber_edges,
    reverse_edges,
    theta_graph,
)
from graphcoh.reps import SpinRep, tensor_decompose, trivial_multiplicity, lie_data
from graphcoh.tensors import (
    catalogue_tensor,
    direct_sum,
    eps_tensor,
    pairing,
    parse_tensor,
    symmetry_profile,
)

DELTA2_VMAX = {SymmetryMode.LITERAL: 4, SymmetryMode.EDGE_RENUMBERING: 6}


def _nonpositive_degree_cells(mode):
    """Every grading with deg <= 0 realizable with V <= DELTA2_VMAX[mode]."""
    for v in range(2, DELTA2_VMAX[mode] + 1):
        for e in range((v + 1) // 2, (3 * v) // 2 + 1):
            yield e - v, 2 * e - 3 * v


def test_criterion_01_delta_squared_is_zero():
    checked = 0
    for mode in SymmetryMode:
        for order, degree in _nonpositive_degree_cells(mode):
            for cls in enumerate_grading(order, degree, mode=mode):
                assert delta(delta(cls)).is_zero, (mode, order, degree, cls.skeleton)
                checked += 1
    assert checked == 2179 + 1208


def test_criterion_02_coboundary_shifts_degree_by_one():
    for mode in SymmetryMode:
        for order, degree in _nonpositive_degree_cells(mode):
            for cls in enumerate_grading(order, degree, mode=mode):
                image = delta(cls)
                for target in image.support():
                    assert grading(target.skeleton) == (order, degree + 1)


def test_criterion_03_trivial_multiplicities_of_irreducible_cubes():
    for j2 in range(0, 13):
        j = Fraction(j2, 2)
        expected = 1 if j2 % 2 == 0 else 0
        assert trivial_multiplicity(SpinRep.of(j), 3) == expected, j


def test_criterion_04_trivial_multiplicity_of_the_half_plus_one_cube():
    rep = SpinRep((Fraction(1, 2), Fraction(1)))
    count = trivial_multiplicity(rep, 3)
    assert count == 3, f"trivial multiplicity of the cube came out as {count}"


def test_criterion_05_spin_one_cube_decomposition():
    counts = tensor_decompose([1, 1, 1])
    assert counts == {
        Fraction(0): 1,
        Fraction(1): 3,
        Fraction(2): 2,
        Fraction(3): 1,
    }
    assert sum(m * (int(2 * j) + 1) for j, m in counts.items()) == 27


def test_criterion_06_eps_pairing_and_algebra_dimension():
    assert pairing(eps_tensor(), eps_tensor()) == 6
    assert lie_data("su2").dimension == 3


def test_criterion_07_jacobi_contraction_checks():
    eps = eps_tensor()
    assert ihx_check(eps)
    assert ihx_check(direct_sum(eps, eps))
    import importlib.resources as resources

    text = (
        resources.files("graphcoh").joinpath("data/perturbed_jacobi.txt").read_text()
    )
    perturbed = parse_tensor(text, label="perturbed")
    assert not ihx_check(perturbed)
    assert ihx_violation(perturbed) == (2, 3, 4, 5)


def test_criterion_08_symmetry_profiles():
    assert symmetry_profile(eps_tensor()) == {(1, 2): -1, (1, 3): -1, (2, 3): -1}
    hho = catalogue_tensor("half-half-one")
    assert symmetry_profile(hho)[(1, 2)] == 1


def test_criterion_09_theta_class_facts():
    for mode in SymmetryMode:
        theta = canonicalize(theta_graph(), mode)
        assert not theta.is_zero
        assert delta(theta).is_zero
        basis = cocycle_basis(1, 0, connected=True, mode=mode)
        assert len(basis) == 1


def _random_symmetry(rng, g, mode):
    perm = list(range(1, g.vertex_count + 1))
    rng.shuffle(perm)
    reversals = [k for k in range(1, g.edge_count + 1) if rng.random() < 0.5]
    h = reverse_edges(relabel_vertices(g, perm), reversals)
    sign = permutation_parity(perm) * (-1) ** len(reversals)
    if mode is SymmetryMode.EDGE_RENUMBERING:
        eperm = list(range(1, g.edge_count + 1))
        rng.shuffle(eperm)
        h = renumber_edges(h, eperm)
    return h, sign


def test_criterion_10_canonicalization_suite():
    rng = random.Random(5189)
    for mode in SymmetryMode:
        skeletons = [
            cls.skeleton
            for m in (1, 2)
            for cls in enumerate_trivalent(m, connected=False, mode=mode)
        ]
        for g in skeletons:
            base = canonicalize(g, mode)
            assert base.skeleton == g and base.sign_state == 1
            for _ in range(1000):
                h, sign = _random_symmetry(rng, g, mode)
                got = canonicalize(h, mode)
                assert got.skeleton == g, (mode, g, h)
                assert got.sign_state == sign, (mode, g, h)
        double = new_graph(2, [(1, 2), (1, 2)])
        assert canonicalize(double, mode).is_zero


def test_criterion_11_decorated_delta_squared_is_zero():
    eps = eps_tensor()
    for m in (1, 2):
        for cls in enumerate_trivalent(m, connected=False, mode=SymmetryMode.LITERAL):
            chain = delta_decorated(decorate_uniform(cls.skeleton, eps))
            assert is_cocycle_decorated(chain), cls.skeleton


def test_criterion_12_theta_evaluation():
    eps = eps_tensor()
    theta = theta_graph()
    value = evaluate(decorate_uniform(theta, eps))
    assert value == 6
    assert value == oracles.evaluate_loops(
        theta.vertex_count, theta.edges, [eps.array, eps.array]
    )
    two = new_graph(4, [(1, 2), (1, 2), (1, 2), (3, 4), (3, 4), (3, 4)])
    assert evaluate(decorate_uniform(two, eps)) == 36
