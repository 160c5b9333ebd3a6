from __future__ import annotations


class NBubbleError(Exception):
    exit_code = 1

    def __init__(self, message: str | None = None) -> None:
        super().__init__(message or "An unexpected nbubble error occurred.")


class ParameterError(NBubbleError):
    """A precondition on the caller's input was violated."""

    exit_code = 2

    def __init__(self, message: str | None = None) -> None:
        super().__init__(message or "Invalid parameter.")


class NumericalError(NBubbleError):
    """A named numerical failure: the inputs were valid but the computation was not."""

    exit_code = 1

    def __init__(self, message: str | None = None) -> None:
        super().__init__(message or "Numerical failure.")


class InvalidParameterError(ParameterError): ...


class InvalidResolutionError(ParameterError):
    def __init__(self, message: str | None = None) -> None:
        super().__init__(message or "Target mesh size must not exceed the domain radius.")


class ChartRadiusError(ParameterError):
    def __init__(self, radius: float, message: str | None = None) -> None:
        self.radius = radius
        super().__init__(
            message or f"Boundary is not a graph over the tangent line within radius {radius:g}.",
        )


class OutOfChartError(ParameterError):
    def __init__(self, norm: float, radius: float) -> None:
        self.norm = norm
        self.radius = radius
        super().__init__(f"Point at chart distance {norm:g} lies outside chart radius {radius:g}.")


class NegativeFieldError(ParameterError):
    def __init__(self, node: int) -> None:
        self.node = node
        super().__init__(f"Field must be nonnegative, node {node} is negative.")


class ZeroFieldError(ParameterError):
    def __init__(self, message: str | None = None) -> None:
        super().__init__(message or "Field vanishes identically.")


class ResolutionError(ParameterError):
    def __init__(self, h_local: float, h_required: float) -> None:
        self.h_local = h_local
        self.h_required = h_required
        super().__init__(
            f"Mesh too coarse near the chart base point: h={h_local:.3g}, "
            f"required h<={h_required:.3g}.",
        )


class BracketingError(NumericalError):
    def __init__(self, message: str | None = None) -> None:
        super().__init__(message or "No sign change found while bracketing.")


class BracketRangeError(ParameterError):
    """r_max too short for the amplitude scan to see any trajectory turn up or cross zero."""

    def __init__(self, r_max: float, required: float) -> None:
        self.r_max = r_max
        self.required = required
        super().__init__(
            f"Cannot bracket the ground-state amplitude with r_max={r_max:g}: shots stop "
            f"before their tails turn up or cross zero, need r_max >= {required:g}.",
        )


class OverflowNumericalError(NumericalError):
    def __init__(self, value: float, message: str | None = None) -> None:
        self.value = value
        super().__init__(message or f"Exponential overflow at value {value:.6g}.")


class FitError(NumericalError):
    def __init__(self, message: str | None = None) -> None:
        super().__init__(message or "Least-squares fit is not defined on this window.")


class AssemblyError(NumericalError):
    def __init__(self, triangle: int, area: float) -> None:
        self.triangle = triangle
        self.area = area
        super().__init__(f"Degenerate triangle {triangle} with signed area {area:.3g}.")


class SolverError(NumericalError):
    def __init__(self, message: str | None = None) -> None:
        super().__init__(message or "Sparse linear solve failed.")


class LineSearchError(NumericalError):
    def __init__(self, iteration: int) -> None:
        self.iteration = iteration
        super().__init__(f"Energy did not decrease after backtracking at iteration {iteration}.")


class ConvergenceError(NumericalError):
    def __init__(self, iterations: int, grad_norm: float) -> None:
        self.iterations = iterations
        self.grad_norm = grad_norm
        super().__init__(
            f"Descent stopped after {iterations} iterations with gradient norm {grad_norm:.3g}.",
        )


class DegenerateAxisError(NumericalError):
    def __init__(self, message: str | None = None) -> None:
        super().__init__(message or "Peak sits at the origin; the symmetry axis is undefined.")


class FormatError(NBubbleError):
    exit_code = 2

    def __init__(self, kind: str, line: int, message: str) -> None:
        self.kind = kind
        self.line = line
        self.detail = message
        super().__init__(f"{kind} file, line {line}: {message}")
