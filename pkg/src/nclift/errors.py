"""Exception types shared across the package.

Plain misuse (bad arguments, mismatched alphabets or moduli) raises the
builtin ValueError; the classes here mark conditions the command line
maps to dedicated exit codes.
"""


class NCLiftError(Exception):
    """Base class for package-specific failures."""


class FormatError(NCLiftError):
    """A text file does not conform to one of the on-disk formats."""


class BudgetError(NCLiftError):
    """A hard resource budget (degree, term count, state count) was hit.

    Budgets are errors, never silent truncation: a computation that
    would exceed its budget is abandoned with this exception.
    """
