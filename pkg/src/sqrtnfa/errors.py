"""Exception types shared across the package."""


class BudgetExceededError(RuntimeError):
    """A construction or search would exceed its configured size budget.

    The message always names the budget that was hit, so callers (and the
    CLI, which maps this to exit code 3) can report it without guessing.
    """

    def __init__(self, what: str, needed: int, budget: int):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: needs {needed}, exceeds budget {budget}")


class FormatError(ValueError):
    """Malformed automaton text or letter name.

    Carries the 1-based line and column of the offending token where known
    (column 0 means "whole line").
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}" if line else "input"
        if column:
            where += f", column {column}"
        super().__init__(f"{where}: {message}")


class VerificationError(RuntimeError):
    """A check that must hold for the build to be sound came back negative."""
