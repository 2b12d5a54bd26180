"""Block diagonalization of the Hessian and the critical frequency set."""

import math

import numpy as np
import pytest

from equivibe import (
    DomainError,
    PotentialParams,
    SolverError,
    critical_set,
    find_equilibrium,
    hessian,
    isotypical_blocks,
    report_from_labeled_eigenvalues,
)
from equivibe.spectrum import fourier_coefficients

from conftest import (
    REFERENCE_CRITICAL_SET,
    REFERENCE_EIGENVALUES,
    REFERENCE_LIMIT_PERIODS,
)


def test_block_structure_and_labels(report6):
    labels = [(rec.j, rec.tag) for rec in report6.eigenvalues]
    assert labels == [(0, ""), (1, ""), (2, "+"), (2, "-"), (3, "+"), (3, "-")]
    assert sum(rec.real_multiplicity for rec in report6.eigenvalues) == 9
    assert report6.diagnostics["max_cross_projection"] <= 1e-8


def test_closed_form_matches_projection_oracle(report6):
    assert report6.diagnostics["closed_vs_oracle_rel_err"] <= 1e-8


def test_closed_form_matches_oracle_across_sizes():
    for n in (3, 4, 5, 7, 8):
        p = PotentialParams(n=n, A=0.2, B=80.0, sigma=0.2)
        eq = find_equilibrium(p)
        rep = isotypical_blocks(eq, p)
        assert rep.diagnostics["closed_vs_oracle_rel_err"] <= 1e-8
        assert sum(rec.real_multiplicity for rec in rep.eigenvalues) == 2 * n - 3


def test_projected_blocks_exhaust_slice_spectrum(eq6, params6, report6):
    # eigenvalues of the dense Hessian restricted to the slice equal the
    # union of the block eigenvalues with multiplicity
    H = hessian(eq6.u0, params6)
    block_vals = []
    for blk in report6.oracle_blocks:
        block_vals.extend(np.linalg.eigvalsh(blk))
    dense = np.linalg.eigvalsh(H)
    # remove the three zero modes (translations and rotation)
    nonzero = [v for v in dense if abs(v) > 1e-7]
    assert len(nonzero) == len(block_vals) == 9
    assert np.allclose(sorted(block_vals), sorted(nonzero), atol=1e-7)


def test_fourier_coefficients_are_symmetric(eq6, params6):
    A, B = fourier_coefficients(eq6, params6)
    n = params6.n
    for m in range(n):
        assert A[m] == pytest.approx(A[(-m) % n], abs=1e-12)


def test_critical_set_ordering_and_scaling(reference_report):
    cs = critical_set(reference_report, 6)
    lams = [c.lam for c in cs]
    assert lams == sorted(lams)
    by_label = {(c.j, c.l, c.sign): c.lam for c in cs}
    for (j, l, sign), lam in by_label.items():
        if l == 1 and (j, 2, sign) in by_label:
            assert by_label[(j, 2, sign)] == pytest.approx(2.0 * lam, rel=1e-14)
    # negative eigenvalue contributes nothing
    assert all(c.mu > 0 for c in cs)
    assert not any(c.j == 0 for c in cs)


def test_critical_set_matches_reference_values(reference_report):
    cs = critical_set(reference_report, 6)
    got = [(c.j, c.l, c.sign, c.lam) for c in cs[: len(REFERENCE_CRITICAL_SET)]]
    expected = sorted(REFERENCE_CRITICAL_SET, key=lambda t: t[3])
    for (j, l, s, lam), (ej, el, es, elam) in zip(got, expected):
        assert (j, l, s) == (ej, el, es)
        assert lam == pytest.approx(elam, abs=1e-6)
    by_label = {(c.j, c.l, c.sign): c.limit_period for c in cs}
    for key, period in REFERENCE_LIMIT_PERIODS.items():
        assert by_label[key] == pytest.approx(period, abs=1e-6)


def test_labeled_report_round_trip(reference_report):
    assert reference_report.eigenvalue_map() == pytest.approx(REFERENCE_EIGENVALUES)
    mults = {
        (rec.j, rec.tag): rec.real_multiplicity for rec in reference_report.eigenvalues
    }
    assert mults == {(0, ""): 1, (1, ""): 2, (2, "+"): 2, (2, "-"): 2, (3, ""): 1}


def test_critical_set_input_validation(reference_report):
    with pytest.raises(DomainError):
        critical_set(reference_report, 0)
    degenerate = report_from_labeled_eigenvalues(6, {(1, ""): 1e-12})
    with pytest.raises(SolverError):
        critical_set(degenerate, 3)
