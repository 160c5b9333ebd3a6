from __future__ import annotations

from os import getenv

from .environment import worker_cap


class Settings:
    __slots__ = (
        "LOG_LEVEL",
        "NB_THREADS",
        "OUTPUT_ROOT",
        "BOUNDARY_TOL",
        "CURVATURE_STEP_FRACTION",
        "CHART_RADIUS_FRACTION",
        "TEST_CHART_RADIUS_FRACTION",
        "CONCENTRATION_CHART_FRACTION",
        "K_FRACTION",
        "JACOBIAN_STEP_FRACTION",
        "SHOOT_RTOL",
        "SHOOT_SCAN_OFFSET",
        "SHOOT_SCAN_TOP",
        "SHOOT_SCAN_POINTS",
        "SERIES_START",
        "DECAY_FLOOR",
        "SEPARATION_TOL",
        "TAIL_TOL",
        "PROFILE_STEP",
        "OVERFLOW_THRESHOLD",
        "NEHARI_RTOL",
        "DESCENT_MAX_ITER",
        "DESCENT_GRAD_TOL",
        "ARMIJO_ALPHA",
        "ARMIJO_FACTOR",
        "ARMIJO_SLOPE",
        "ARMIJO_MAX_BACKTRACKS",
        "RAY_SCAN_POINTS",
        "LOCAL_MAX_THRESHOLD",
        "PATCH_RADIUS",
        "SWEEP_H_FACTOR",
        "SWEEP_REFINE_LEVELS",
        "SOLVE_H",
        "MOSER_DELTA",
        "PLOT_HASH_SALT",
    )

    def __init__(self) -> None:
        # application
        self.LOG_LEVEL = getenv("LOG_LEVEL") or "INFO"
        self.NB_THREADS = worker_cap(getenv("NB_THREADS"))
        self.OUTPUT_ROOT = getenv("NB_OUTPUT_ROOT") or "runs"

        # geometry
        self.BOUNDARY_TOL = 1e-8
        self.CURVATURE_STEP_FRACTION = 1e-4  # of the perimeter
        self.CHART_RADIUS_FRACTION = 0.2  # of the radius of curvature at the chart point
        self.TEST_CHART_RADIUS_FRACTION = 0.9  # same, for test-function charts
        self.CONCENTRATION_CHART_FRACTION = 0.6  # same, for rescaled-solution charts
        self.K_FRACTION = 0.5  # of the chart radius, so that 2k fills the chart
        self.JACOBIAN_STEP_FRACTION = 1e-6  # of the chart radius

        # radial profile
        self.SHOOT_RTOL = 1e-12
        self.SHOOT_SCAN_OFFSET = 0.01  # above sqrt(ln 2)
        self.SHOOT_SCAN_TOP = 6.0
        self.SHOOT_SCAN_POINTS = 60
        self.SERIES_START = 1e-4
        self.DECAY_FLOOR = 1e-8
        self.SEPARATION_TOL = 1e-3
        self.TAIL_TOL = 1e-8
        self.PROFILE_STEP = 0.005

        # finite elements and descent
        self.OVERFLOW_THRESHOLD = 26.0
        self.NEHARI_RTOL = 1e-12
        self.DESCENT_MAX_ITER = int(getenv("NB_DESCENT_MAX_ITER", "5000"))
        self.DESCENT_GRAD_TOL = float(getenv("NB_DESCENT_GRAD_TOL", "1e-8"))
        self.ARMIJO_ALPHA = 1.0
        self.ARMIJO_FACTOR = 0.5
        self.ARMIJO_SLOPE = 1e-4
        self.ARMIJO_MAX_BACKTRACKS = 30
        self.RAY_SCAN_POINTS = 1000
        self.LOCAL_MAX_THRESHOLD = 0.5

        # asymptotics
        self.PATCH_RADIUS = 5.0
        self.SWEEP_H_FACTOR = 1.0 / 24.0  # local h = sqrt(d) * factor
        self.SWEEP_REFINE_LEVELS = 3
        self.SOLVE_H = 0.05

        # trudinger-moser
        self.MOSER_DELTA = 0.5

        # plots
        self.PLOT_HASH_SALT = "nbubble"


settings = Settings()
