#!/usr/bin/env python3
"""
Registry of the Burgers initial-boundary value problems on (-1, 1)

All three cases share the left datum l(t) = t - 0.5
"""
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from wbpinn.solver.fv_reference import BoundaryData

DOMAIN = (-1.0, 1.0)


class InitialProfile:
    """
    Initial data u0 with an optional exact antiderivative and cell average\n
    The finite volume projection prefers cell_average(lo, hi), then the antiderivative
    """

    def __init__(self, name: str, func: Callable, antiderivative: Optional[Callable] = None,
                 cell_average: Optional[Callable] = None):
        self.name = name
        self.func = func
        self.antiderivative = antiderivative
        self.cell_average = cell_average

    def __call__(self, x):
        return self.func(np.asarray(x, dtype=float))

    def __repr__(self):
        return f"InitialProfile({self.name})"


def piecewise_constant(left, right, jump_at=0.0):
    """u0 = left on x < jump_at, right on x > jump_at"""
    def func(x):
        return np.where(x < jump_at, float(left), float(right))

    def antiderivative(x):
        shifted = np.asarray(x, dtype=float) - jump_at
        return left * np.minimum(shifted, 0.0) + right * np.maximum(shifted, 0.0)

    def cell_average(lo, hi):
        lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
        # only a cell straddling the jump mixes the two states
        inside = np.clip(jump_at, lo, hi)
        mixed = (left * (inside - lo) + right * (hi - inside)) / (hi - lo)
        return np.where(hi <= jump_at, float(left), np.where(lo >= jump_at, float(right), mixed))

    return InitialProfile(f"step({left},{right})", func, antiderivative, cell_average)


def negative_sine():
    """u0 = -sin(pi x)"""
    def func(x):
        return -np.sin(np.pi * x)

    def antiderivative(x):
        return np.cos(np.pi * np.asarray(x, dtype=float)) / np.pi

    return InitialProfile("-sin(pi x)", func, antiderivative)


def constant(value):
    """u0 = value everywhere"""
    def func(x):
        return np.full(np.shape(x), float(value))

    def antiderivative(x):
        return float(value) * np.asarray(x, dtype=float)

    def cell_average(lo, hi):
        return np.full(np.shape(lo), float(value))

    return InitialProfile(f"const({value})", func, antiderivative, cell_average)


def constant_datum(value):
    """Boundary datum t -> value, vectorised over t"""
    def datum(t):
        return np.full(np.shape(t), float(value)) if np.ndim(t) else float(value)
    return datum


def ramp_datum(t):
    """The shared left datum l(t) = t - 0.5"""
    return np.asarray(t, dtype=float) - 0.5 if np.ndim(t) else float(t) - 0.5


@dataclass(frozen=True)
class TestCase:
    """One initial-boundary value problem; id determines every other field"""
    case_id: int
    u0: InitialProfile
    left_datum: Callable
    right_datum: Callable
    domain: Tuple[float, float] = DOMAIN
    description: str = ""

    @property
    def boundary_data(self):
        return BoundaryData(self.left_datum, self.right_datum)


CASES = {
    1: TestCase(1, piecewise_constant(1.0, 0.0), ramp_datum, constant_datum(0.0),
                description="step 1 | 0, right datum 0"),
    2: TestCase(2, negative_sine(), ramp_datum, constant_datum(0.0),
                description="-sin(pi x), right datum 0"),
    3: TestCase(3, piecewise_constant(-1.0, 1.0), ramp_datum, constant_datum(1.0),
                description="step -1 | 1, right datum 1"),
}


def get_case(case_id):
    """Return the registered test case or raise ValueError"""
    try:
        return CASES[int(case_id)]
    except (KeyError, ValueError) as error:
        raise ValueError(f"Unknown test case {case_id!r}, expected one of {sorted(CASES)}") from error
