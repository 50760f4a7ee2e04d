#!/usr/bin/env python3
"""
Physics-informed training of u_theta on the viscous problem
    u_t + a(u) u_x = eps u_xx
with initial data and weak Riemann based boundary conditions.
"""
import csv
import logging
from dataclasses import dataclass, fields

import numpy as np

from wbpinn.config.config import DEFAULTS, ConfigError
from wbpinn.solver import autodiff as ad
from wbpinn.solver import network, riemann

RESIDUAL_FORMS = ("nonconservative", "conservative")
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8
HISTORY_HEADER = ["epoch", "residual", "initial", "boundary_left", "boundary_right", "total"]


class TrainingDivergedError(RuntimeError):
    """Raised when the loss or its gradient stops being finite.

    Attributes:
        epoch: index of the offending epoch
        breakdown: the LossBreakdown of that epoch
        message: the explanation of the error
    """

    def __init__(self, epoch, breakdown):
        self.epoch = epoch
        self.breakdown = breakdown
        self.message = f"Training diverged at epoch {epoch}: {breakdown}"
        logging.error(self.message)
        super().__init__(self.message)


class ShapeMismatchError(ValueError):
    """Raised when parameters, gradients and Adam moments disagree in shape.

    Attributes:
        message: the explanation of the error
    """

    def __init__(self, message):
        self.message = message
        logging.error(self.message)
        super().__init__(self.message)


@dataclass(frozen=True)
class TrainConfig:
    epsilon: float = DEFAULTS["epsilon"]
    learning_rate: float = DEFAULTS["learning_rate"]
    epochs: int = DEFAULTS["epochs"]
    w_res: float = DEFAULTS["w_res"]
    w_ic: float = DEFAULTS["w_ic"]
    w_bc: float = DEFAULTS["w_bc"]
    n_interior: int = DEFAULTS["n_interior"]
    n_initial: int = DEFAULTS["n_initial"]
    n_boundary: int = DEFAULTS["n_boundary"]
    seed: int = DEFAULTS["seed"]
    t_final: float = DEFAULTS["t_final"]
    residual_form: str = DEFAULTS["residual_form"]
    log_every: int = DEFAULTS["log_every"]

    @classmethod
    def from_mapping(cls, values):
        """Build from a merged config dict; harness and logging keys are ignored"""
        names = {field.name for field in fields(cls)}
        return cls(**{key: value for key, value in dict(values).items() if key in names})

    def validate(self):
        if not self.epsilon > 0.0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        if self.epochs < 0:
            raise ConfigError(f"epochs must not be negative, got {self.epochs}")
        weights = (self.w_res, self.w_ic, self.w_bc)
        if min(weights) < 0.0 or max(weights) == 0.0:
            raise ConfigError(f"loss weights must be >= 0 and not all zero, got {weights}")
        if min(self.n_interior, self.n_initial, self.n_boundary) < 1:
            raise ConfigError("collocation counts must be positive")
        if not self.t_final > 0.0:
            raise ConfigError(f"t_final must be positive, got {self.t_final}")
        if self.residual_form not in RESIDUAL_FORMS:
            raise ConfigError(f"residual_form must be one of {RESIDUAL_FORMS}, got {self.residual_form!r}")
        return self


@dataclass(frozen=True)
class CollocationSet:
    interior_x: np.ndarray
    interior_t: np.ndarray
    initial_x: np.ndarray
    boundary_t: np.ndarray


@dataclass(frozen=True)
class LossBreakdown:
    residual: float
    initial: float
    boundary_left: float
    boundary_right: float
    total: float

    def is_finite(self):
        return bool(np.all(np.isfinite([self.residual, self.initial, self.boundary_left,
                                        self.boundary_right, self.total])))


@dataclass(frozen=True)
class AdamState:
    m: np.ndarray
    v: np.ndarray
    step: int = 0

    @classmethod
    def zeros(cls, size):
        return cls(np.zeros(size), np.zeros(size), 0)


def sample_collocation(case, cfg):
    """
    Fixed full-batch collocation points drawn uniformly from the seed\n
    x in (a, b), t in (0, T]
    """
    rng = np.random.default_rng((cfg.seed, 1))
    a, b = case.domain
    low = np.nextafter(a, b)
    interior_x = rng.uniform(low, b, cfg.n_interior)
    interior_t = cfg.t_final * (1.0 - rng.random(cfg.n_interior))
    initial_x = rng.uniform(low, b, cfg.n_initial)
    boundary_t = cfg.t_final * (1.0 - rng.random(cfg.n_boundary))
    return CollocationSet(interior_x, interior_t, initial_x, boundary_t)


def pde_residual(params, flux, epsilon, x, t):
    """u_t + a(u) u_x - eps u_xx from the network input jet"""
    jet = network.forward_jet(params, ad.seed_x(x), ad.seed_t(t))
    return jet.dt + flux.speed(jet.v) * jet.dx - epsilon * jet.dxx


def pde_residual_conservative(params, flux, epsilon, x, t):
    """u_t + f(u)_x - eps u_xx, the flux applied to the jet itself"""
    jet = network.forward_jet(params, ad.seed_x(x), ad.seed_t(t))
    flux_jet = flux.eval(jet)
    return jet.dt + flux_jet.dx - epsilon * jet.dxx


def weak_boundary_residual(flux, data, trace, side):
    """
    Fixed point residual W - v with the exact piecewise derivative dW/dv - 1\n
    W is held constant except where it returns the trace itself\n
    :param data: boundary datum at each boundary time
    :param trace: network values at the boundary (array or recorded Var)
    :param side: Side.FROM_RIGHT at the left boundary, Side.FROM_LEFT at the right boundary
    """
    values = ad.value_of(trace)
    if side is riemann.Side.FROM_RIGHT:
        fan, branch = riemann.left_boundary_trace(flux, data, values)
        follows_trace = branch == riemann.Branch.RIGHT
    else:
        fan, branch = riemann.right_boundary_trace(flux, data, values)
        follows_trace = branch == riemann.Branch.LEFT
    mask = follows_trace.astype(float)
    return (fan - mask * values) + (mask - 1.0) * trace


def _loss_terms(params, flux, case, colloc, cfg):
    residual_fn = pde_residual_conservative if cfg.residual_form == "conservative" else pde_residual
    res = residual_fn(params, flux, cfg.epsilon, colloc.interior_x, colloc.interior_t)
    residual = ad.mean(res * res)

    mismatch = network.forward(params, colloc.initial_x, 0.0) - case.u0(colloc.initial_x)
    initial = ad.mean(mismatch * mismatch)

    a, b = case.domain
    times = colloc.boundary_t
    left = weak_boundary_residual(flux, case.left_datum(times), network.forward(params, a, times), riemann.Side.FROM_RIGHT)
    right = weak_boundary_residual(flux, case.right_datum(times), network.forward(params, b, times), riemann.Side.FROM_LEFT)
    boundary_left = ad.mean(left * left)
    boundary_right = ad.mean(right * right)

    total = cfg.w_res * residual + cfg.w_ic * initial + cfg.w_bc * (boundary_left + boundary_right)
    return residual, initial, boundary_left, boundary_right, total


def _breakdown(terms):
    return LossBreakdown(*(float(ad.value_of(term)) for term in terms))


def assemble_loss(params, flux, case, colloc, cfg):
    """Evaluate every loss term at the current parameters"""
    return _breakdown(_loss_terms(params, flux, case, colloc, cfg))


def loss_and_gradient(params, flux, case, colloc, cfg):
    """
    Loss breakdown and the exact gradient of the total\n
    :return: (LossBreakdown, flat gradient in parameter order)
    """
    with ad.GradientTape() as tape:
        terms = _loss_terms(params.watch(tape), flux, case, colloc, cfg)
    return _breakdown(terms), ad.loss_gradient(terms[-1], params)


def adam_step(params, grads, state, lr, beta1=ADAM_BETA1, beta2=ADAM_BETA2, eps=ADAM_EPS):
    """
    One bias-corrected Adam update\n
    :param params: flat parameter array or NetworkParameters
    :param grads: flat gradient aligned with the parameters
    :param state: AdamState
    :param lr: learning rate
    :return: (updated params of the same kind, new AdamState)
    """
    flat = params.flatten() if isinstance(params, network.NetworkParameters) else np.asarray(params, dtype=float)
    grads = np.asarray(grads, dtype=float)
    if not flat.shape == grads.shape == state.m.shape == state.v.shape:
        raise ShapeMismatchError(f"Adam shapes differ: params {flat.shape}, grads {grads.shape}, "
                                 f"moments {state.m.shape}/{state.v.shape}")
    step = state.step + 1
    m = beta1 * state.m + (1.0 - beta1) * grads
    v = beta2 * state.v + (1.0 - beta2) * (grads * grads)
    m_hat = m / (1.0 - beta1 ** step)
    v_hat = v / (1.0 - beta2 ** step)
    updated = flat - lr * m_hat / (np.sqrt(v_hat) + eps)
    new_state = AdamState(m, v, step)
    if isinstance(params, network.NetworkParameters):
        return network.NetworkParameters.from_flat(updated, params.layers, params.seed), new_state
    return updated, new_state


def _log_epoch(epoch, breakdown):
    logging.info(f"Epoch {epoch}: total={breakdown.total:.4e} residual={breakdown.residual:.4e} "
                 f"initial={breakdown.initial:.4e} left={breakdown.boundary_left:.4e} "
                 f"right={breakdown.boundary_right:.4e}")


def train(flux, case, cfg, layers=network.DEFAULT_LAYERS, params=None):
    """
    Full-batch Adam on a fixed collocation set\n
    history[k] is the loss before update k; the last entry is the loss of the returned parameters\n
    :param flux: ConvexFlux
    :param case: TestCase
    :param cfg: TrainConfig
    :param layers: network layer sizes
    :param params: starting parameters, network.init(cfg.seed, layers) when None
    :return: (NetworkParameters, list of LossBreakdown)
    """
    cfg.validate()
    if params is None:
        params = network.init(cfg.seed, layers)
    colloc = sample_collocation(case, cfg)
    state = AdamState.zeros(params.count)
    history = []
    logging.info(f"Training case {case.case_id} for {cfg.epochs} epochs, eps={cfg.epsilon}, lr={cfg.learning_rate}")

    for epoch in range(cfg.epochs):
        breakdown, grads = loss_and_gradient(params, flux, case, colloc, cfg)
        if not breakdown.is_finite() or not np.all(np.isfinite(grads)):
            raise TrainingDivergedError(epoch, breakdown)
        history.append(breakdown)
        if cfg.log_every > 0 and epoch % cfg.log_every == 0:
            _log_epoch(epoch, breakdown)
        params, state = adam_step(params, grads, state, cfg.learning_rate)

    final = assemble_loss(params, flux, case, colloc, cfg)
    if not final.is_finite():
        raise TrainingDivergedError(cfg.epochs, final)
    history.append(final)
    _log_epoch(cfg.epochs, final)
    return params, history


def write_history_csv(path, history):
    """epoch,residual,initial,boundary_left,boundary_right,total with 17 significant digits"""
    with open(path, "w", newline="") as csv_file:
        writer = csv.writer(csv_file)
        writer.writerow(HISTORY_HEADER)
        for epoch, breakdown in enumerate(history):
            writer.writerow([epoch] + [f"{getattr(breakdown, name):.17g}" for name in HISTORY_HEADER[1:]])
    logging.info(f"Wrote {len(history)} loss history rows to {path}")
