#!/usr/bin/env python3
"""
Godunov finite volume reference solver with weak (Riemann based) boundary fluxes

The boundary datum is used as the exterior state of the Godunov flux at both ends
of the mesh, so boundary data only enters where the Riemann problem lets it.
"""
import csv
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from wbpinn.solver.riemann import NonFiniteStateError, godunov_flux

DEFAULT_CFL = 0.9
DEFAULT_CELLS = 2000
MIN_SPEED = 1e-12


class GridError(ValueError):
    """Raised for an invalid mesh, CFL number or target time.

    Attributes:
        message: the explanation of the error
    """

    def __init__(self, message):
        self.message = message
        logging.error(self.message)
        super().__init__(self.message)


@dataclass(frozen=True)
class Grid1D:
    """Uniform mesh of n_cells cells on (a, b)"""
    a: float
    b: float
    n_cells: int

    def __post_init__(self):
        if not self.a < self.b:
            raise GridError(f"Grid needs a < b, got a={self.a} b={self.b}")
        if int(self.n_cells) < 1:
            raise GridError(f"Grid needs at least one cell, got {self.n_cells}")

    @property
    def dx(self):
        return (self.b - self.a) / self.n_cells

    @property
    def centers(self):
        return self.a + (np.arange(self.n_cells) + 0.5) * self.dx

    @property
    def edges(self):
        return self.a + np.arange(self.n_cells + 1) * self.dx


@dataclass(frozen=True)
class CellField:
    """Cell averages at a given time"""
    values: np.ndarray
    time: float = 0.0


@dataclass(frozen=True)
class BoundaryData:
    """Boundary data l(t) at a and r(t) at b"""
    left: Callable
    right: Callable


def project_initial(grid, u0):
    """
    Cell averages of u0 on the grid\n
    Exact when u0 carries a cell_average or an antiderivative, 3 point Gauss quadrature per cell otherwise\n
    :param grid: Grid1D
    :param u0: callable x -> u0(x), optionally with cell_average or antiderivative attributes
    :return: CellField at time 0
    """
    cell_average = getattr(u0, "cell_average", None)
    antiderivative = getattr(u0, "antiderivative", None)
    if cell_average is not None:
        values = np.asarray(cell_average(grid.edges[:-1], grid.edges[1:]), dtype=float)
    elif antiderivative is not None:
        primitive = np.asarray(antiderivative(grid.edges), dtype=float)
        values = np.diff(primitive) / grid.dx
    else:
        nodes, weights = np.polynomial.legendre.leggauss(3)
        points = grid.centers[:, None] + 0.5 * grid.dx * nodes[None, :]
        values = 0.5 * (np.asarray(u0(points), dtype=float) @ weights)
    if not np.all(np.isfinite(values)):
        raise NonFiniteStateError("project_initial")
    return CellField(values, 0.0)


def _boundary_states(field, bd):
    return float(bd.left(field.time)), float(bd.right(field.time))


def interface_fluxes(flux, field, bd):
    """
    Godunov fluxes at all n_cells + 1 interfaces, boundary data sampled at field.time\n
    Entry 0 is the left boundary flux g(l(t), u_0), the last entry g(u_{n-1}, r(t))
    """
    left, right = _boundary_states(field, bd)
    states = np.concatenate(([left], field.values, [right]))
    return godunov_flux(flux, states[:-1], states[1:])


def stable_dt(flux, grid, field, bd, cfl=DEFAULT_CFL):
    """
    CFL time step cfl * dx / max |a(u)|\n
    The speed bound includes the boundary states; it never drops below MIN_SPEED
    """
    if not 0.0 < cfl <= 1.0:
        raise GridError(f"CFL number must lie in (0, 1], got {cfl}")
    left, right = _boundary_states(field, bd)
    speeds = np.abs(flux.speed(np.concatenate(([left], field.values, [right]))))
    return cfl * grid.dx / max(float(np.max(speeds)), MIN_SPEED)


def advance(flux, grid, field, bd, dt):
    """One conservative forward Euler update with a given dt"""
    g = interface_fluxes(flux, field, bd)
    values = field.values - (dt / grid.dx) * (g[1:] - g[:-1])
    if not np.all(np.isfinite(values)):
        raise NonFiniteStateError("fv_reference.advance")
    return CellField(values, field.time + dt)


def step(flux, grid, field, bd, cfl=DEFAULT_CFL):
    """
    One Godunov step with the largest stable dt\n
    :return: CellField at field.time + dt
    """
    if len(field.values) != grid.n_cells:
        raise GridError(f"Field has {len(field.values)} values for a grid of {grid.n_cells} cells")
    if not np.all(np.isfinite(field.values)):
        raise NonFiniteStateError("fv_reference.step")
    dt = stable_dt(flux, grid, field, bd, cfl)
    return advance(flux, grid, field, bd, dt)


def advance_to(flux, grid, field, bd, t_end, cfl=DEFAULT_CFL):
    """
    Step from field.time to t_end, shortening the final step to land exactly on t_end
    """
    if t_end < field.time:
        raise GridError(f"Cannot step backwards from t={field.time} to t={t_end}")
    steps = 0
    while field.time < t_end:
        if not np.all(np.isfinite(field.values)):
            raise NonFiniteStateError("fv_reference.advance_to")
        dt = stable_dt(flux, grid, field, bd, cfl)
        if field.time + dt >= t_end:
            field = advance(flux, grid, field, bd, t_end - field.time)
            field = CellField(field.values, float(t_end))
        else:
            field = advance(flux, grid, field, bd, dt)
        steps += 1
    logging.debug(f"Reference reached t={t_end} after {steps} steps on {grid.n_cells} cells")
    return field


def solve_to(flux, grid, u0, bd, t_end, cfl=DEFAULT_CFL):
    """
    Project u0 and step to t_end\n
    :return: CellField with time == t_end
    """
    if not t_end > 0.0:
        raise GridError(f"t_end must be positive, got {t_end}")
    return advance_to(flux, grid, project_initial(grid, u0), bd, t_end, cfl)


def write_profile_csv(path, grid, field):
    """Write x,u rows at the cell centers with 17 significant digits"""
    with open(path, "w", newline="") as csv_file:
        writer = csv.writer(csv_file)
        writer.writerow(["x", "u"])
        for x, u in zip(grid.centers, field.values):
            writer.writerow([f"{x:.17g}", f"{u:.17g}"])
    logging.info(f"Wrote reference profile at t={field.time} to {path}")


def read_profile_csv(path):
    """Read an x,u profile back as two arrays"""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return data[:, 0], data[:, 1]
