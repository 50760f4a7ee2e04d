#!/usr/bin/env python3
"""
Fast in-process property checks, run by the selftest command without a test runner
"""
import logging

import numpy as np

from wbpinn.solver import autodiff as ad
from wbpinn.solver import fv_reference, network, pinn, riemann
from wbpinn.solver.cases import get_case
from wbpinn.solver.flux import burgers, check_convexity, check_derivative
from wbpinn.solver.utils import console

SHRUNK_LAYERS = (2, 2, 2, 2, 1)
# gradient entries smaller than this are compared in absolute terms
GRADIENT_FLOOR = 1e-3


def check_flux():
    flux = burgers()
    return check_convexity(flux) and check_derivative(flux)


def check_riemann_consistency():
    flux = burgers()
    u = np.linspace(-2.0, 2.0, 41)
    ok = True
    for xi in (-1.5, -0.3, 0.0, 0.7):
        for side in riemann.Side:
            ok &= bool(np.all(riemann.fan_value(flux, xi, u, u, side) == u))
    return ok


def check_rankine_hugoniot():
    flux = burgers()
    rng = np.random.default_rng(7)
    u_left = rng.uniform(0.0, 2.0, 500)
    u_right = u_left - rng.uniform(0.01, 2.0, 500)
    s = riemann.shock_speed(flux, u_left, u_right)
    return bool(np.all(np.abs(flux.eval(u_left) - flux.eval(u_right) - s * (u_left - u_right)) < 1e-12))


def check_godunov_brute_force(pairs=500, spacing=1e-4):
    """Godunov flux against extremization of f over the state interval"""
    flux = burgers()
    rng = np.random.default_rng(11)
    u_left, u_right = rng.uniform(-1.5, 1.5, (2, pairs))
    g = riemann.godunov_flux(flux, u_left, u_right)
    for index in range(pairs):
        low, high = sorted((u_left[index], u_right[index]))
        states = np.append(np.arange(low, high, spacing), [low, high, np.clip(flux.sonic_point, low, high)])
        values = flux.eval(states)
        expected = values.max() if u_left[index] >= u_right[index] else values.min()
        if abs(g[index] - expected) > 1e-8:
            logging.error(f"Godunov flux mismatch at ({u_left[index]}, {u_right[index]}): {g[index]} != {expected}")
            return False
    return True


def check_boundary_admissibility():
    """Residual zero exactly when some outer state produces the trace"""
    flux = burgers()
    data = np.arange(-10, 11) / 10
    traces = np.arange(-20, 21) / 10
    outer = np.arange(-400, 401) / 100
    for datum in data:
        reachable_left = riemann.fan_value(flux, 0.0, datum, outer, riemann.Side.FROM_RIGHT)
        reachable_right = riemann.fan_value(flux, 0.0, outer, datum, riemann.Side.FROM_LEFT)
        for trace in traces:
            left_zero = abs(riemann.left_boundary_residual(flux, datum, trace)) < 1e-12
            right_zero = abs(riemann.right_boundary_residual(flux, datum, trace)) < 1e-12
            if left_zero != bool(np.min(np.abs(reachable_left - trace)) < 1e-9):
                logging.error(f"Left admissibility mismatch at l={datum}, v={trace}")
                return False
            if right_zero != bool(np.min(np.abs(reachable_right - trace)) < 1e-9):
                logging.error(f"Right admissibility mismatch at r={datum}, v={trace}")
                return False
    return True


def check_fv_conservation():
    """Total mass changes by exactly dt times the net boundary flux"""
    flux = burgers()
    case = get_case(1)
    grid = fv_reference.Grid1D(case.domain[0], case.domain[1], 200)
    field = fv_reference.project_initial(grid, case.u0)
    for _ in range(20):
        g = fv_reference.interface_fluxes(flux, field, case.boundary_data)
        dt = fv_reference.stable_dt(flux, grid, field, case.boundary_data)
        new = fv_reference.advance(flux, grid, field, case.boundary_data, dt)
        change = grid.dx * (np.sum(new.values) - np.sum(field.values))
        if abs(change + dt * (g[-1] - g[0])) > 1e-12:
            return False
        field = new
    return True


def check_jet_derivatives(points=20):
    """Input jet against central differences of forward on the full network"""
    params = network.init(42)
    rng = np.random.default_rng(3)
    x = rng.uniform(-1.0, 1.0, points)
    t = rng.uniform(0.0, 1.0, points)
    jet = network.forward_jet(params, ad.seed_x(x), ad.seed_t(t))
    h = 1e-5
    u_dx = (network.forward(params, x + h, t) - network.forward(params, x - h, t)) / (2.0 * h)
    u_dt = (network.forward(params, x, t + h) - network.forward(params, x, t - h)) / (2.0 * h)
    u_dxx = (network.forward_jet(params, ad.seed_x(x + h), ad.seed_t(t)).dx
             - network.forward_jet(params, ad.seed_x(x - h), ad.seed_t(t)).dx) / (2.0 * h)
    return (np.allclose(jet.dx, u_dx, rtol=1e-5, atol=1e-7) and np.allclose(jet.dt, u_dt, rtol=1e-5, atol=1e-7)
            and np.allclose(jet.dxx, u_dxx, rtol=1e-5, atol=1e-7))


def check_loss_gradient(seeds=10):
    """Tape gradient of the full loss against central differences on a small network, per parameter"""
    case = get_case(2)
    flux = burgers()
    h = 1e-6
    worst = 0.0
    for seed in range(seeds):
        cfg = pinn.TrainConfig(n_interior=5, n_initial=5, n_boundary=5, seed=seed)
        colloc = pinn.sample_collocation(case, cfg)
        params = network.init(seed, SHRUNK_LAYERS)
        _, grads = pinn.loss_and_gradient(params, flux, case, colloc, cfg)
        flat = params.flatten()
        numeric = np.zeros_like(flat)
        for index in range(flat.size):
            shifted = []
            for sign in (1.0, -1.0):
                trial = flat.copy()
                trial[index] += sign * h
                trial_params = network.NetworkParameters.from_flat(trial, SHRUNK_LAYERS)
                shifted.append(pinn.assemble_loss(trial_params, flux, case, colloc, cfg).total)
            numeric[index] = (shifted[0] - shifted[1]) / (2.0 * h)
        errors = np.abs(grads - numeric) / np.maximum(np.abs(numeric), GRADIENT_FLOOR)
        worst = max(worst, float(np.max(errors)))
    logging.debug(f"Loss gradient max relative error {worst:.3e} over {seeds} seeds")
    return worst < 1e-5


CHECKS = [
    ("Flux convexity and derivative", check_flux),
    ("Riemann consistency", check_riemann_consistency),
    ("Rankine-Hugoniot speed", check_rankine_hugoniot),
    ("Godunov flux extremization", check_godunov_brute_force),
    ("Weak boundary admissibility", check_boundary_admissibility),
    ("Finite volume conservation", check_fv_conservation),
    ("Input jet derivatives", check_jet_derivatives),
    ("Loss gradient", check_loss_gradient),
]


def run_selftest(checks=None):
    """
    Run every property check and print one status line each\n
    :param checks: list of (label, callable) pairs, CHECKS when None
    :return: number of failed checks
    """
    failures = 0
    for label, check in checks or CHECKS:
        try:
            ok = bool(check())
        except Exception as error:
            logging.error(f"{label} raised {error}", exc_info=True)
            ok = False
        logging.info(f"Selftest {label}: {'ok' if ok else 'failed'}")
        console(label, error=not ok)
        failures += 0 if ok else 1
    return failures
