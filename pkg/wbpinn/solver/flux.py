#!/usr/bin/env python3
"""
Scalar convex flux functions f, their characteristic speed a = f' and sonic point
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

# Range on which convexity is checked and rarefaction states are searched
WORKING_RANGE = (-3.0, 3.0)
BISECTION_STEPS = 80


@dataclass(frozen=True)
class ConvexFlux:
    """
    Strictly convex scalar flux\n
    eval and speed must accept numpy arrays; for training they are also applied to
    autodiff values and input jets, so they should be written with plain arithmetic
    """
    name: str
    eval: Callable
    speed: Callable
    sonic_point: float
    inverse_speed: Optional[Callable] = None

    def rarefaction_state(self, xi):
        """
        Return the state v with a(v) = xi\n
        Uses the closed form when registered, bisection on WORKING_RANGE otherwise
        """
        if self.inverse_speed is not None:
            return self.inverse_speed(xi)
        xi = np.asarray(xi, dtype=float)
        low = np.full(xi.shape, WORKING_RANGE[0])
        high = np.full(xi.shape, WORKING_RANGE[1])
        # a is increasing, so the bracket always halves towards the root
        for _ in range(BISECTION_STEPS):
            mid = 0.5 * (low + high)
            below = self.speed(mid) < xi
            low = np.where(below, mid, low)
            high = np.where(below, high, mid)
        return 0.5 * (low + high)


def _burgers_eval(u):
    return 0.5 * u * u


def _burgers_speed(u):
    return u


def _identity(xi):
    return xi


def burgers():
    """Inviscid Burgers flux f(u) = u^2/2, a(u) = u, sonic point 0"""
    return ConvexFlux("burgers", _burgers_eval, _burgers_speed, 0.0, _identity)


def custom(name, f, a, sonic_point, inverse_speed=None):
    """
    Build a convex flux from user callables and check it on the working range\n
    :param name: label used in logs
    :param f: flux u -> f(u)
    :param a: speed u -> f'(u)
    :param sonic_point: state where a vanishes
    :param inverse_speed: optional closed form of a^-1
    :return: ConvexFlux
    """
    flux = ConvexFlux(name, f, a, float(sonic_point), inverse_speed)
    if not check_convexity(flux):
        raise ValueError(f"Flux {name} is not strictly convex on {WORKING_RANGE}")
    if abs(float(a(flux.sonic_point))) > 1e-12:
        raise ValueError(f"Flux {name}: a({sonic_point}) = {a(flux.sonic_point)} is not zero")
    logging.debug(f"Registered custom flux {name} with sonic point {sonic_point}")
    return flux


def check_convexity(flux, samples=601):
    """Strictly increasing speed on a sample grid of the working range"""
    u = np.linspace(WORKING_RANGE[0], WORKING_RANGE[1], samples)
    return bool(np.all(np.diff(flux.speed(u)) > 0.0))


def check_derivative(flux, samples=61, rel_tol=1e-7):
    """Central differences of eval match speed on a sample grid"""
    u = np.linspace(WORKING_RANGE[0], WORKING_RANGE[1], samples)
    h = 1e-6 * np.maximum(1.0, np.abs(u))
    numeric = (flux.eval(u + h) - flux.eval(u - h)) / (2.0 * h)
    exact = flux.speed(u)
    scale = np.maximum(np.abs(exact), 1.0)
    return bool(np.all(np.abs(numeric - exact) / scale < rel_tol))
