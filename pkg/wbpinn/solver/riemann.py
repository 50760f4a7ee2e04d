#!/usr/bin/env python3
"""
Exact self-similar Riemann solution W(xi; uL, uR) for a convex scalar flux,
the Godunov interface flux and the weak (Riemann based) boundary residuals.

Every function accepts scalars or numpy arrays. Scalars in give floats out.
"""
import logging
from enum import Enum, IntEnum

import numpy as np


class NonFiniteStateError(ValueError):
    """Raised when a Riemann problem or a finite volume update meets NaN or inf states.

    Attributes:
        message: the explanation of the error
    """

    def __init__(self, where):
        self.message = f"Non-finite state passed to {where}"
        logging.error(self.message)
        super().__init__(self.message)


class Side(Enum):
    """One-sided limit xi -> 0- (FROM_LEFT) or xi -> 0+ (FROM_RIGHT)"""
    FROM_LEFT = "from_left"
    FROM_RIGHT = "from_right"


class Branch(IntEnum):
    """Which state the fan returns at the queried speed"""
    LEFT = 0
    RIGHT = 1
    FAN = 2


def _prepare(where, *values):
    arrays = np.broadcast_arrays(*(np.asarray(value, dtype=float) for value in values))
    for array in arrays:
        if not np.all(np.isfinite(array)):
            raise NonFiniteStateError(where)
    return arrays


def _result(array, scalar):
    return float(array) if scalar else array


def shock_speed(flux, u_left, u_right):
    """
    Rankine-Hugoniot speed (f(uL) - f(uR)) / (uL - uR)\n
    Falls back to a(u) for equal states
    """
    ul, ur = _prepare("shock_speed", u_left, u_right)
    jump = ul - ur
    equal = jump == 0.0
    safe_jump = np.where(equal, 1.0, jump)
    speed = np.where(equal, flux.speed(ul), (flux.eval(ul) - flux.eval(ur)) / safe_jump)
    return _result(speed, ul.ndim == 0)


def fan_value_branch(flux, xi, u_left, u_right, side=Side.FROM_RIGHT):
    """
    Evaluate W(xi; uL, uR) and report which branch produced the value\n
    :param flux: ConvexFlux
    :param xi: similarity variable x/t
    :param u_left: left state
    :param u_right: right state
    :param side: one-sided convention at a discontinuity sitting exactly at xi
    :return: (value, Branch codes) as arrays, 0-d for scalar input
    """
    xi, ul, ur = _prepare("fan_value", xi, u_left, u_right)
    shock = ul > ur
    rarefaction = ul < ur

    s = np.asarray(shock_speed(flux, ul, ur))
    if side is Side.FROM_LEFT:
        shock_keeps_left = s >= xi
    else:
        shock_keeps_left = s > xi

    fan_left = xi <= flux.speed(ul)
    fan_right = ~fan_left & (xi >= flux.speed(ur))
    inside = rarefaction & ~fan_left & ~fan_right

    branch = np.full(xi.shape, int(Branch.LEFT))
    branch = np.where(shock & ~shock_keeps_left, int(Branch.RIGHT), branch)
    branch = np.where(rarefaction & fan_right, int(Branch.RIGHT), branch)
    branch = np.where(inside, int(Branch.FAN), branch)

    fan = flux.rarefaction_state(np.where(inside, xi, flux.speed(ul)))
    value = np.select([branch == Branch.LEFT, branch == Branch.RIGHT], [ul, ur], default=fan)
    return value, branch


def fan_value(flux, xi, u_left, u_right, side=Side.FROM_RIGHT):
    """Value of the self-similar Riemann solution W(xi; uL, uR) on the given side"""
    value, _ = fan_value_branch(flux, xi, u_left, u_right, side)
    return _result(value, value.ndim == 0)


def godunov_flux(flux, u_left, u_right):
    """
    Godunov flux f(W(0; uL, uR)) in extremal form\n
    max of f over [uR, uL] when uL >= uR, min of f over [uL, uR] otherwise
    """
    ul, ur = _prepare("godunov_flux", u_left, u_right)
    f_left = flux.eval(ul)
    f_right = flux.eval(ur)
    omega = flux.sonic_point
    transonic = (ul <= omega) & (omega <= ur)
    f_min = np.where(transonic, flux.eval(np.full(ul.shape, omega)), np.minimum(f_left, f_right))
    g = np.where(ul >= ur, np.maximum(f_left, f_right), f_min)
    return _result(g, ul.ndim == 0)


def left_boundary_trace(flux, datum, trace):
    """W(0+; l, v) with its branch; v is the right state of the boundary Riemann problem"""
    return fan_value_branch(flux, 0.0, datum, trace, Side.FROM_RIGHT)


def right_boundary_trace(flux, datum, trace):
    """W(0-; v, r) with its branch; v is the left state of the boundary Riemann problem"""
    return fan_value_branch(flux, 0.0, trace, datum, Side.FROM_LEFT)


def left_boundary_residual(flux, datum, trace):
    """
    Fixed point residual W(0+; l, v) - v at the left boundary\n
    Zero exactly when v is an admissible trace for the datum l
    """
    value, _ = left_boundary_trace(flux, datum, trace)
    residual = value - np.asarray(trace, dtype=float)
    return _result(residual, residual.ndim == 0)


def right_boundary_residual(flux, datum, trace):
    """
    Fixed point residual W(0-; v, r) - v at the right boundary\n
    Zero exactly when v is an admissible trace for the datum r
    """
    value, _ = right_boundary_trace(flux, datum, trace)
    residual = value - np.asarray(trace, dtype=float)
    return _result(residual, residual.ndim == 0)
