"""Exception hierarchy shared by all modules.

Each class maps to a CLI exit code: configuration problems exit 2,
numerical failures exit 3, algebraic consistency failures exit 4.
"""


class EquivibeError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class DomainError(EquivibeError):
    """Invalid input (coincident points, bad parameters, out-of-range argument)."""

    exit_code = 2


class UnsupportedError(EquivibeError):
    """Requested configuration is outside the supported range."""

    exit_code = 2


class SolverError(EquivibeError):
    """A numerical routine failed to converge; carries diagnostics."""

    exit_code = 3

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConsistencyError(EquivibeError):
    """An exact algebraic identity failed (lattice or ring bug, bad division)."""

    exit_code = 4
