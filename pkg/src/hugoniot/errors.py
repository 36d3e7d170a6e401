"""Exception types shared across the solver kit."""


class SolverError(Exception):
    """Base class for all errors raised by this package."""


class NonPhysicalState(SolverError):
    """A state with non-positive density or pressure was produced.

    Carries enough context (cell index, block, step) for the benchmark
    harness to report where a run broke down instead of crashing opaquely.
    """

    def __init__(self, message, cell=None, block=None, step=None):
        super().__init__(message)
        self.cell = cell
        self.block = block
        self.step = step

    def __str__(self):
        msg = super().__str__()
        ctx = []
        if self.block is not None:
            ctx.append(f"block {self.block}")
        if self.cell is not None:
            ctx.append(f"cell {self.cell}")
        if self.step is not None:
            ctx.append(f"step {self.step}")
        if ctx:
            return f"{msg} ({', '.join(ctx)})"
        return msg


class DegenerateCell(SolverError):
    """A grid cell or gradient co-volume has non-positive area."""


class UnknownCase(SolverError):
    """A benchmark case name is not present in the registry."""


class GridMismatch(SolverError):
    """Two fields being compared do not live on the same grid."""


class Diverged(SolverError):
    """The iteration residual grew beyond the divergence guard."""


class ConvergenceFailure(SolverError):
    """An iterative solve (e.g. the star-state root find) did not converge."""


class ConfigError(SolverError):
    """A run configuration (CLI flags or config file) is invalid."""
