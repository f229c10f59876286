"""Acceptance gate: one test per criterion, each printing a single
pass/fail line with the worst residual against its tolerance."""

import pytest

from lorlab import acceptance


def _check(result):
    print(result.line())
    failing = [c for c in result.checks if not c.passed]
    assert not failing, "; ".join(
        f"{c.label}: {c.value:.6e} > tol {c.tolerance:.1e}" for c in failing)


def test_criterion_01_conservation():
    _check(acceptance.criterion_conservation())


def test_criterion_02_defining_r_trichotomy():
    _check(acceptance.criterion_trichotomy())


def test_criterion_03_michel_graph_identity():
    _check(acceptance.criterion_michel())


def test_criterion_04_linearization_of_r():
    _check(acceptance.criterion_linearize())


def test_criterion_05_light_ray_kernel():
    _check(acceptance.criterion_kernel())


def test_criterion_06_stationary_to_magnetic():
    _check(acceptance.criterion_projection())


def test_criterion_07_length_action_identities():
    _check(acceptance.criterion_reduction_identities())


def test_criterion_08_magnetic_action_graph():
    _check(acceptance.criterion_magnetic_michel())


def test_criterion_09_linearized_equivalence():
    result = acceptance.criterion_linearized_equivalence()
    print(result.line())
    print("   diagnostic: relative error against 2*l*magnetic =",
          result.notes["relative_error_against_2l"])
    _check(result)


def test_criterion_10_scattering_invariance():
    _check(acceptance.criterion_invariance())


def test_criterion_11_conformal_reparametrization():
    _check(acceptance.criterion_reparam())


def test_criterion_12_boundary_normal_gauge():
    _check(acceptance.criterion_normal_coords())


def test_criterion_13_convergence_orders():
    _check(acceptance.criterion_orders())
