#!/usr/bin/env python3
"""
Feedforward approximator u_theta(x, t): tanh multilayer perceptron with a linear scalar output
"""
import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from wbpinn.solver import autodiff as ad

# 2 inputs, three hidden layers of 20, scalar output
DEFAULT_LAYERS = (2, 20, 20, 20, 1)


class CheckpointError(ValueError):
    """Raised when a checkpoint header or payload does not describe a network.

    Attributes:
        message: the explanation of the error
    """

    def __init__(self, message):
        self.message = message
        logging.error(self.message)
        super().__init__(self.message)


@dataclass
class NetworkParameters:
    """
    Weights W_l (fan_out x fan_in) and biases b_l per layer\n
    Entries are numpy arrays, or Var values while a loss is being recorded
    """
    weights: List
    biases: List
    seed: Optional[int] = None

    @property
    def layers(self):
        sizes = [np.shape(ad.value_of(self.weights[0]))[1]]
        sizes += [np.shape(ad.value_of(w))[0] for w in self.weights]
        return tuple(int(size) for size in sizes)

    @property
    def count(self):
        return int(sum(np.size(ad.value_of(array)) for array in self.arrays()))

    def arrays(self):
        """Parameter arrays in flattening order: W1, b1, W2, b2, ..."""
        ordered = []
        for weight, bias in zip(self.weights, self.biases):
            ordered.extend([weight, bias])
        return ordered

    def flatten(self):
        return np.concatenate([np.ravel(ad.value_of(array)) for array in self.arrays()])

    @classmethod
    def from_flat(cls, flat, layers=DEFAULT_LAYERS, seed=None):
        flat = np.asarray(flat, dtype=float)
        expected = parameter_count(layers)
        if flat.size != expected:
            raise CheckpointError(f"Expected {expected} parameters for layers {layers}, got {flat.size}")
        weights, biases = [], []
        offset = 0
        for fan_in, fan_out in zip(layers[:-1], layers[1:]):
            weights.append(flat[offset:offset + fan_in * fan_out].reshape(fan_out, fan_in).copy())
            offset += fan_in * fan_out
            biases.append(flat[offset:offset + fan_out].copy())
            offset += fan_out
        return cls(weights, biases, seed)

    def watch(self, tape):
        """Same parameters with every array watched on the tape"""
        return NetworkParameters([tape.watch(w) for w in self.weights], [tape.watch(b) for b in self.biases], self.seed)


def parameter_count(layers=DEFAULT_LAYERS):
    return int(sum(fan_in * fan_out + fan_out for fan_in, fan_out in zip(layers[:-1], layers[1:])))


def init(seed, layers=DEFAULT_LAYERS):
    """
    Glorot uniform weights in +-sqrt(6/(fan_in+fan_out)) and zero biases\n
    :param seed: integer seed, same seed gives identical parameters
    :param layers: layer sizes including the 2 inputs and the scalar output
    :return: NetworkParameters
    """
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(layers[:-1], layers[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    logging.debug(f"Initialised network {tuple(layers)} with seed {seed}")
    return NetworkParameters(weights, biases, seed)


def _hidden_then_output(params, h, affine, activation):
    for weight, bias in zip(params.weights[:-1], params.biases[:-1]):
        h = activation(affine(h, weight, bias))
    return affine(h, params.weights[-1], params.biases[-1])


def forward(params, x, t):
    """
    u_theta(x, t); scalars give a float, arrays give an array\n
    With watched parameters the result is a Var recorded on their tape
    """
    scalar = np.ndim(x) == 0 and np.ndim(t) == 0
    xs, ts = np.broadcast_arrays(np.atleast_1d(np.asarray(x, dtype=float)), np.atleast_1d(np.asarray(t, dtype=float)))
    inputs = np.column_stack([xs, ts])
    out = ad.ravel(_hidden_then_output(params, inputs, ad.affine, ad.tanh))
    if scalar and not isinstance(out, ad.Var):
        return float(out[0])
    return out


def _stack(x_component, t_component, n_points):
    return np.column_stack([np.broadcast_to(np.asarray(x_component, dtype=float), (n_points,)),
                            np.broadcast_to(np.asarray(t_component, dtype=float), (n_points,))])


def forward_jet(params, x_jet, t_jet):
    """
    u_theta and its exact x, t and xx derivatives at the seeded inputs\n
    The value component repeats the operation order of forward exactly
    """
    scalar = np.ndim(x_jet.v) == 0 and np.ndim(t_jet.v) == 0
    n_points = np.broadcast(np.atleast_1d(x_jet.v), np.atleast_1d(t_jet.v)).shape[0]
    jet = ad.InputJet(_stack(x_jet.v, t_jet.v, n_points),
                      _stack(x_jet.dx, t_jet.dx, n_points),
                      _stack(x_jet.dt, t_jet.dt, n_points),
                      _stack(x_jet.dxx, t_jet.dxx, n_points))
    out = ad.jet_ravel(_hidden_then_output(params, jet, ad.jet_affine, ad.jet_tanh))
    if scalar and not isinstance(out.v, ad.Var):
        return ad.InputJet(float(out.v[0]), float(out.dx[0]), float(out.dt[0]), float(out.dxx[0]))
    return out


def save_checkpoint(path, params):
    """Write the flat parameters in layer order under a seed/layers header"""
    layers = ",".join(str(size) for size in params.layers)
    header = f"seed={params.seed} layers={layers}"
    np.savetxt(path, params.flatten(), fmt="%.17g", header=header)
    logging.info(f"Saved {params.count} parameters to {path}")


def load_checkpoint(path):
    """Read a checkpoint written by save_checkpoint"""
    with open(path, "r") as checkpoint:
        header = checkpoint.readline().lstrip("#").strip()
    try:
        fields = dict(item.split("=", 1) for item in header.split())
        layers = tuple(int(size) for size in fields["layers"].split(","))
        seed = None if fields["seed"] == "None" else int(fields["seed"])
    except (KeyError, ValueError) as error:
        raise CheckpointError(f"Malformed checkpoint header in {path}: {header!r}") from error
    flat = np.loadtxt(path, ndmin=1)
    return NetworkParameters.from_flat(flat, layers, seed)
