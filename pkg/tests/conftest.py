"""Shared fixtures: the canonical n=6 configuration and reference data."""

import numpy as np
import pytest

from equivibe import (
    PotentialParams,
    find_equilibrium,
    isotypical_blocks,
    report_from_labeled_eigenvalues,
)

# reference slice spectrum used to drive the critical set and invariants
# independently of the computed equilibrium
REFERENCE_EIGENVALUES = {
    (0, ""): -10.36657914,
    (1, ""): 43.00585474,
    (2, "+"): 11.42339623,
    (2, "-"): 7.633501334,
    (3, ""): 19.58406142,
}

REFERENCE_R0 = 1.836545792

# reference critical set (j, l, sign, lambda), first 15 entries at l_max = 6
REFERENCE_CRITICAL_SET = [
    (1, 1, "", 0.15248819),
    (3, 1, "", 0.22596887),
    (2, 1, "+", 0.29587099),
    (1, 2, "", 0.30497638),
    (2, 1, "-", 0.36194127),
    (3, 2, "", 0.45193775),
    (1, 3, "", 0.45746457),
    (2, 2, "+", 0.59174197),
    (1, 4, "", 0.60995276),
    (3, 3, "", 0.67790662),
    (2, 2, "-", 0.72388254),
    (1, 5, "", 0.76244095),
    (2, 3, "+", 0.88761296),
    (3, 4, "", 0.90387549),
    (1, 6, "", 0.91492914),
]

REFERENCE_LIMIT_PERIODS = {
    (1, 1, ""): 0.95811155,
    (3, 1, ""): 1.41980428,
    (2, 1, "+"): 1.85901226,
    (1, 2, ""): 1.91622311,
}

# twisted basic degrees for n = 6 as {(family_id, param): coefficient};
# family 101 is the full group, param tracks the temporal mode l
GOLDEN_TWISTED_DEGREES = {
    0: {(101, 1): 1, (57, "l"): -1},
    1: {(101, 1): 1, (47, "l"): -1, (61, "l"): -1, (63, "l"): -1,
        (39, "l"): 2, (59, "l"): 1},
    2: {(101, 1): 1, (46, "l"): -1, (62, "l"): -1, (53, "l"): -1,
        (30, "l"): 2, (50, "l"): 1},
    3: {(101, 1): 1, (69, "l"): -1},
}

# 15-term expansion of omega at the (2,1,+) crossing of the reference spectrum
GOLDEN_OMEGA_21P = {
    (26, 1): -2, (27, 1): -1, (28, 1): -2, (29, 1): 1, (30, 1): 2,
    (40, 1): 1, (44, 1): 1, (45, 1): 1, (46, 1): -1, (48, 1): -1,
    (49, 1): 1, (50, 1): 1, (53, 1): -1, (60, 1): 1, (62, 1): -1,
}


def twisted_degree_expected(j: int, l: int):
    return {
        (fid, l if param == "l" else param): c
        for (fid, param), c in GOLDEN_TWISTED_DEGREES[j].items()
    }


def as_id_map(element):
    """BurnsideElement as {(family_id, param): coefficient}."""
    return {(cls.family_id, cls.param): c for cls, c in element.items_sorted()}


@pytest.fixture(scope="session")
def params6():
    return PotentialParams(n=6, A=0.2, B=350.0, sigma=0.25)


@pytest.fixture(scope="session")
def eq6(params6):
    return find_equilibrium(params6)


@pytest.fixture(scope="session")
def report6(eq6, params6):
    return isotypical_blocks(eq6, params6)


@pytest.fixture(scope="session")
def reference_report():
    return report_from_labeled_eigenvalues(6, REFERENCE_EIGENVALUES)


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)
