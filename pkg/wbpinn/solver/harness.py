#!/usr/bin/env python3
"""
Experiment runner: train the network for one test case, solve the Godunov reference,
compare both at t = 0.5 and t = 0.75 and write every artifact to disk
"""
import csv
import logging
import os
from dataclasses import dataclass, replace

import numpy as np

from wbpinn.config import config as cfg_module
from wbpinn.solver import fv_reference, network, pinn
from wbpinn.solver.cases import get_case
from wbpinn.solver.flux import burgers

EVAL_TIMES = (0.5, 0.75)
MASK_RADIUS = 0.05
SUMMARY_HEADER = ["t_eval", "l1", "linf", "linf_smooth", "x_shock_pinn", "x_shock_ref"]


class OutputDirectoryError(FileNotFoundError):
    """Raised when the output directory of a run does not exist.

    Attributes:
        message: the explanation of the error
    """

    def __init__(self, path):
        self.message = f"Output directory {path} does not exist"
        logging.error(self.message)
        super().__init__(self.message)


@dataclass(frozen=True)
class ErrorReport:
    """Distances between network and reference on the reference cell centers"""
    t_eval: float
    l1: float
    linf: float
    linf_smooth: float
    x_shock_pinn: float = float("nan")
    x_shock_ref: float = float("nan")


def discontinuity_mask(ref, grid, threshold, radius=MASK_RADIUS):
    """
    Indices of cells next to a jump larger than threshold, dilated by radius/dx cells\n
    :param ref: reference CellField
    :param grid: Grid1D of the reference
    :param threshold: jump per cell treated as a discontinuity
    :param radius: dilation radius in space units
    :return: sorted numpy array of cell indices
    """
    if not threshold > 0.0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    values = np.asarray(ref.values, dtype=float)
    jumps = np.abs(np.diff(values)) > threshold
    flagged = np.zeros(values.size, dtype=bool)
    flagged[:-1] |= jumps
    flagged[1:] |= jumps
    cells = int(np.ceil(radius / grid.dx - 1e-9))
    if cells > 0 and flagged.any():
        flagged = np.convolve(flagged.astype(float), np.ones(2 * cells + 1), mode="same") > 0.5
    return np.flatnonzero(flagged)


def mask_regions(mask):
    """Number of contiguous runs in a sorted index set"""
    mask = np.asarray(mask)
    if mask.size == 0:
        return 0
    return int(1 + np.count_nonzero(np.diff(mask) > 1))


def error_report(grid, u_pinn, ref, threshold):
    """
    L1 (midpoint rule), Linf and Linf away from reference discontinuities\n
    :param grid: Grid1D of the reference
    :param u_pinn: network values at grid.centers
    :param ref: reference CellField
    :param threshold: jump threshold used by discontinuity_mask
    :return: ErrorReport
    """
    diff = np.abs(np.asarray(u_pinn, dtype=float) - ref.values)
    smooth = np.ones(diff.size, dtype=bool)
    smooth[discontinuity_mask(ref, grid, threshold)] = False
    linf_smooth = float(np.max(diff[smooth])) if smooth.any() else 0.0
    return ErrorReport(float(ref.time), float(np.sum(diff) * grid.dx), float(np.max(diff)), linf_smooth)


def shock_location(x, u):
    """Midpoint of the steepest downward step of a profile"""
    index = int(np.argmin(np.diff(u)))
    return 0.5 * (x[index] + x[index + 1])


def has_shock(u, threshold):
    """True when the profile drops by more than threshold across one cell"""
    return bool(np.min(np.diff(u)) < -threshold)


def analytic_rarefaction(x, t):
    """Entropy solution of the -1 | 1 Riemann problem before boundary data matters"""
    return np.clip(np.asarray(x, dtype=float) / t, -1.0, 1.0)


def write_comparison_csv(path, x, u_pinn, u_ref):
    with open(path, "w", newline="") as csv_file:
        writer = csv.writer(csv_file)
        writer.writerow(["x", "u_pinn", "u_ref"])
        for row in zip(x, u_pinn, u_ref):
            writer.writerow([f"{value:.17g}" for value in row])


def write_panel(path, case_id, t_eval, x, u_pinn, u_ref):
    """Whitespace separated plot data under a caption comment"""
    header = f"Solution to test case {case_id} at t = {t_eval:g}\nx u_pinn u_ref"
    np.savetxt(path, np.column_stack([x, u_pinn, u_ref]), fmt="%.17g", header=header)


def write_summary_csv(path, reports):
    with open(path, "w", newline="") as csv_file:
        writer = csv.writer(csv_file)
        writer.writerow(SUMMARY_HEADER)
        for report in reports:
            writer.writerow([f"{getattr(report, name):.17g}" for name in SUMMARY_HEADER])


def run_case(case_id, cfg, ref_cells, out_dir, cfl=fv_reference.DEFAULT_CFL,
             jump_threshold=cfg_module.DEFAULTS["jump_threshold"], plot_data=False, config_values=None):
    """
    Train, solve the reference and compare at t = 0.5 and t = 0.75\n
    :param case_id: 1, 2 or 3
    :param cfg: TrainConfig
    :param ref_cells: cells of the reference mesh
    :param out_dir: existing directory receiving every artifact
    :param cfl: CFL number of the reference
    :param jump_threshold: jump per cell used to mask reference discontinuities
    :param plot_data: also write one panel file per evaluation time
    :param config_values: resolved config dict saved as config.yaml when given
    :return: (ErrorReport at t=0.5, ErrorReport at t=0.75, dict of artifact paths)
    """
    if not os.path.isdir(out_dir):
        raise OutputDirectoryError(out_dir)
    case = get_case(case_id)
    flux = burgers()
    artifacts = {}

    params, history = pinn.train(flux, case, cfg)
    artifacts["history"] = os.path.join(out_dir, f"case{case_id}_loss_history.csv")
    pinn.write_history_csv(artifacts["history"], history)
    artifacts["checkpoint"] = os.path.join(out_dir, f"case{case_id}_params.txt")
    network.save_checkpoint(artifacts["checkpoint"], params)

    grid = fv_reference.Grid1D(case.domain[0], case.domain[1], ref_cells)
    field = fv_reference.project_initial(grid, case.u0)
    reports = []
    for t_eval in EVAL_TIMES:
        field = fv_reference.advance_to(flux, grid, field, case.boundary_data, t_eval, cfl)
        u_pinn = network.forward(params, grid.centers, np.full(grid.n_cells, t_eval))
        report = error_report(grid, u_pinn, field, jump_threshold)
        if has_shock(field.values, jump_threshold):
            report = replace(report, x_shock_pinn=shock_location(grid.centers, u_pinn),
                             x_shock_ref=shock_location(grid.centers, field.values))
        reports.append(report)
        logging.info(f"Case {case_id} t={t_eval}: L1={report.l1:.4e} Linf={report.linf:.4e} "
                     f"Linf smooth={report.linf_smooth:.4e}")

        key = f"profile_t{t_eval:.2f}"
        artifacts[key] = os.path.join(out_dir, f"case{case_id}_t{t_eval:.2f}_profile.csv")
        write_comparison_csv(artifacts[key], grid.centers, u_pinn, field.values)
        if plot_data:
            key = f"panel_t{t_eval:.2f}"
            artifacts[key] = os.path.join(out_dir, f"panel_case{case_id}_t{t_eval:.2f}.dat")
            write_panel(artifacts[key], case_id, t_eval, grid.centers, u_pinn, field.values)

    artifacts["summary"] = os.path.join(out_dir, f"case{case_id}_summary.csv")
    write_summary_csv(artifacts["summary"], reports)
    if config_values is not None:
        artifacts["config"] = os.path.join(out_dir, "config.yaml")
        cfg_module.write_config(artifacts["config"], config_values)
    return reports[0], reports[1], artifacts


def viscosity_sweep(case_id, epsilons, cfg, ref_cells, out_dir, t_eval=EVAL_TIMES[0], cfl=fv_reference.DEFAULT_CFL,
                    jump_threshold=cfg_module.DEFAULTS["jump_threshold"]):
    """
    Rerun one case for each viscosity and compare against the same inviscid reference\n
    Each run writes its artifacts to <out_dir>/eps_<epsilon>; the sweep table goes to
    <out_dir>/case<N>_viscosity_sweep.csv\n
    :param case_id: 1, 2 or 3
    :param epsilons: viscosities in run order
    :param cfg: TrainConfig, epsilon is replaced per run
    :param ref_cells: cells of the reference mesh
    :param out_dir: existing directory
    :param t_eval: one of EVAL_TIMES
    :return: list of (epsilon, ErrorReport at t_eval)
    """
    if not os.path.isdir(out_dir):
        raise OutputDirectoryError(out_dir)
    if t_eval not in EVAL_TIMES:
        raise ValueError(f"t_eval must be one of {EVAL_TIMES}, got {t_eval}")
    results = []
    for epsilon in epsilons:
        run_dir = os.path.join(out_dir, f"eps_{epsilon:g}")
        os.makedirs(run_dir, exist_ok=True)
        reports = run_case(case_id, replace(cfg, epsilon=float(epsilon)), ref_cells, run_dir, cfl, jump_threshold)
        report = reports[EVAL_TIMES.index(t_eval)]
        logging.info(f"Case {case_id} eps={epsilon:g} t={t_eval}: L1={report.l1:.4e}")
        results.append((float(epsilon), report))

    sweep_path = os.path.join(out_dir, f"case{case_id}_viscosity_sweep.csv")
    with open(sweep_path, "w", newline="") as csv_file:
        writer = csv.writer(csv_file)
        writer.writerow(["epsilon"] + SUMMARY_HEADER)
        for epsilon, report in results:
            writer.writerow([f"{epsilon:.17g}"] + [f"{getattr(report, name):.17g}" for name in SUMMARY_HEADER])
    return results
