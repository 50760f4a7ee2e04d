#!/usr/bin/env python3
"""
Exact differentiation for the training path

InputJet carries (value, d/dx, d/dt, d2/dx2) forward through elementwise arithmetic.
GradientTape records numpy operations on Var values and sweeps them backwards for
parameter gradients. Jets whose components are Var values give reverse-over-forward
derivatives: input derivatives travel forward, parameter derivatives come back.
"""
import logging
from dataclasses import dataclass
from typing import Any

import numpy as np


class AutodiffError(RuntimeError):
    """Raised for an empty recording, a non scalar loss, or unwatched/mutated parameters.

    Attributes:
        message: the explanation of the error
    """

    def __init__(self, message):
        self.message = message
        logging.error(self.message)
        super().__init__(self.message)


class GradientTape:
    """
    Records operations on Var values in creation order\n
    One tape serves a single backward sweep; it is not shared between threads
    """

    def __init__(self):
        self.records = []
        self.watched = []

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        return False

    def watch(self, array):
        """Start tracking a parameter array; the array must not change until the sweep"""
        array = np.asarray(array, dtype=float)
        var = Var(array, self)
        self.watched.append((var, array, array.copy()))
        return var

    def record(self, value, parents, vjps):
        out = Var(value, self)
        self.records.append((out, tuple(parents), tuple(vjps)))
        return out

    def lookup(self, array):
        """Return the Var watching this exact array object"""
        for var, source, _ in self.watched:
            if source is array:
                return var
        raise AutodiffError("Parameter array was not watched on this tape")

    def check_unchanged(self):
        for _, source, snapshot in self.watched:
            if not np.array_equal(source, snapshot):
                raise AutodiffError("Parameters were mutated while the loss was being recorded")

    def gradient(self, loss, variables):
        """
        Reverse sweep from a scalar loss\n
        :param loss: Var recorded on this tape
        :param variables: Var values to differentiate with respect to
        :return: list of gradient arrays shaped like each variable
        """
        if not isinstance(loss, Var) or loss.tape is not self:
            raise AutodiffError("Loss was not recorded on this tape")
        if not self.records:
            raise AutodiffError("Recording is empty, nothing to differentiate")
        if loss.value.size != 1:
            raise AutodiffError(f"Loss must be scalar, got shape {loss.value.shape}")

        grads = {id(loss): np.ones_like(loss.value)}
        for output, parents, vjps in reversed(self.records):
            g = grads.pop(id(output), None)
            if g is None:
                continue
            for parent, vjp in zip(parents, vjps):
                contribution = vjp(g)
                key = id(parent)
                grads[key] = grads[key] + contribution if key in grads else contribution
        return [grads.get(id(var), np.zeros_like(var.value)) for var in variables]


def _value(operand):
    return operand.value if isinstance(operand, Var) else operand


def _tape_of(*operands):
    for operand in operands:
        if isinstance(operand, Var):
            return operand.tape
    return None


def _unbroadcast(grad, shape):
    """Sum a broadcast gradient back to the operand shape"""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _record(value, operands_and_vjps):
    tape = None
    parents, vjps = [], []
    for operand, vjp in operands_and_vjps:
        if isinstance(operand, Var):
            tape = tape or operand.tape
            shape = operand.value.shape
            parents.append(operand)
            vjps.append(lambda g, vjp=vjp, shape=shape: _unbroadcast(np.asarray(vjp(g)), shape))
    return tape.record(np.asarray(value), parents, vjps)


class Var:
    """A numpy value recorded on a GradientTape"""
    __slots__ = ("value", "tape")
    # numpy must defer to the reflected operators below
    __array_ufunc__ = None

    def __init__(self, value, tape):
        self.value = np.asarray(value, dtype=float)
        self.tape = tape

    @property
    def shape(self):
        return self.value.shape

    def __repr__(self):
        return f"Var({self.value!r})"

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __neg__(self):
        return mul(-1.0, self)


def add(a, b):
    av, bv = _value(a), _value(b)
    if _tape_of(a, b) is None:
        return av + bv
    return _record(av + bv, [(a, lambda g: g), (b, lambda g: g)])


def sub(a, b):
    av, bv = _value(a), _value(b)
    if _tape_of(a, b) is None:
        return av - bv
    return _record(av - bv, [(a, lambda g: g), (b, lambda g: -g)])


def mul(a, b):
    av, bv = _value(a), _value(b)
    if _tape_of(a, b) is None:
        return av * bv
    return _record(av * bv, [(a, lambda g: g * bv), (b, lambda g: g * av)])


def div(a, b):
    av, bv = _value(a), _value(b)
    if _tape_of(a, b) is None:
        return av / bv
    return _record(av / bv, [(a, lambda g: g / bv), (b, lambda g: -g * av / (bv * bv))])


def tanh(x):
    xv = _value(x)
    s = np.tanh(xv)
    if _tape_of(x) is None:
        return s
    return _record(s, [(x, lambda g: g * (1.0 - s * s))])


def affine(x, weight, bias):
    """x @ weight.T + bias for a batch of row vectors"""
    xv, wv, bv = _value(x), _value(weight), _value(bias)
    value = xv @ wv.T + bv
    if _tape_of(x, weight, bias) is None:
        return value
    return _record(value, [(x, lambda g: g @ wv),
                           (weight, lambda g: g.T @ np.broadcast_to(xv, (g.shape[0], wv.shape[1]))),
                           (bias, lambda g: g.sum(axis=0))])


def linear(x, weight):
    """x @ weight.T without a bias"""
    xv, wv = _value(x), _value(weight)
    value = xv @ wv.T
    if _tape_of(x, weight) is None:
        return value
    return _record(value, [(x, lambda g: g @ wv),
                           (weight, lambda g: g.T @ np.broadcast_to(xv, (g.shape[0], wv.shape[1])))])


def ravel(x):
    xv = _value(x)
    if _tape_of(x) is None:
        return np.ravel(xv)
    return _record(np.ravel(xv), [(x, lambda g: np.reshape(g, xv.shape))])


def mean(x):
    xv = _value(x)
    if _tape_of(x) is None:
        return np.mean(xv)
    size = xv.size
    return _record(np.mean(xv), [(x, lambda g: np.full(xv.shape, g / size))])


def total(x):
    xv = _value(x)
    if _tape_of(x) is None:
        return np.sum(xv)
    return _record(np.sum(xv), [(x, lambda g: np.full(xv.shape, g))])


def value_of(x):
    """Plain numpy value of a Var or passthrough"""
    return np.asarray(_value(x))


def loss_gradient(loss, params):
    """
    Exact gradient of a recorded scalar loss, flattened in parameter order\n
    :param loss: Var recorded on a GradientTape
    :param params: NetworkParameters or a sequence of watched arrays
    :return: 1-d numpy array aligned with the parameter flattening
    """
    if not isinstance(loss, Var):
        raise AutodiffError("Loss was not recorded on a tape")
    tape = loss.tape
    if not tape.records:
        raise AutodiffError("Recording is empty, nothing to differentiate")
    arrays = params.arrays() if hasattr(params, "arrays") else list(params)
    variables = [tape.lookup(array) for array in arrays]
    tape.check_unchanged()
    grads = tape.gradient(loss, variables)
    return np.concatenate([np.ravel(g) for g in grads])


@dataclass(frozen=True)
class InputJet:
    """Value with exact d/dx, d/dt and d2/dx2; components may be floats, arrays or Var"""
    v: Any
    dx: Any = 0.0
    dt: Any = 0.0
    dxx: Any = 0.0

    def __add__(self, other):
        return jet_add(self, other)

    def __radd__(self, other):
        return jet_add(other, self)

    def __sub__(self, other):
        return jet_add(self, jet_scale(other, -1.0))

    def __rsub__(self, other):
        return jet_add(other, jet_scale(self, -1.0))

    def __mul__(self, other):
        return jet_mul(self, other)

    def __rmul__(self, other):
        return jet_mul(other, self)

    def __neg__(self):
        return jet_scale(self, -1.0)


def constant_jet(c):
    return InputJet(c, 0.0, 0.0, 0.0)


def _as_jet(value):
    return value if isinstance(value, InputJet) else constant_jet(value)


def seed_x(x):
    """Jet of the space coordinate: (x, 1, 0, 0)"""
    x = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
    return InputJet(x, np.ones_like(x), np.zeros_like(x), np.zeros_like(x))


def seed_t(t):
    """Jet of the time coordinate: (t, 0, 1, 0)"""
    t = np.asarray(t, dtype=float) if np.ndim(t) else float(t)
    return InputJet(t, np.zeros_like(t), np.ones_like(t), np.zeros_like(t))


def jet_scale(a, c):
    a = _as_jet(a)
    return InputJet(a.v * c, a.dx * c, a.dt * c, a.dxx * c)


def jet_add(a, b):
    a, b = _as_jet(a), _as_jet(b)
    return InputJet(a.v + b.v, a.dx + b.dx, a.dt + b.dt, a.dxx + b.dxx)


def jet_mul(a, b):
    a, b = _as_jet(a), _as_jet(b)
    return InputJet(a.v * b.v,
                    a.v * b.dx + a.dx * b.v,
                    a.v * b.dt + a.dt * b.v,
                    a.v * b.dxx + 2.0 * a.dx * b.dx + a.dxx * b.v)


def jet_tanh(a):
    a = _as_jet(a)
    s = tanh(a.v)
    d1 = 1.0 - s * s
    d2 = -2.0 * s * d1
    return InputJet(s, d1 * a.dx, d1 * a.dt, d2 * a.dx * a.dx + d1 * a.dxx)


def jet_affine(a, weight, bias):
    """Affine map of a batch of row jets; derivative components skip the bias"""
    return InputJet(affine(a.v, weight, bias), linear(a.dx, weight), linear(a.dt, weight), linear(a.dxx, weight))


def jet_ravel(a):
    return InputJet(ravel(a.v), ravel(a.dx), ravel(a.dt), ravel(a.dxx))
