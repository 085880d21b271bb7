"""Dense statevector simulation for qubit and qutrit circuits.

Wire 0 is the most significant digit of the basis index. States are numpy
complex128 vectors of length radix**width; batched simulation over many basis
inputs shares one (batch, dim) buffer so exhaustive verification sweeps stay
fast. Hot kernels are numba-compiled when numba is importable (set
SYMFN_NO_NUMBA=1 to force the pure-numpy path).
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import GateKind, QubitCircuit
from .qutrit import PERM, QutritCircuit

MAX_AMPLITUDES_DEFAULT = 1 << 26


def _max_amplitudes() -> int:
    return int(os.environ.get("SYMFN_MAX_AMPLITUDES", MAX_AMPLITUDES_DEFAULT))


_USE_NUMBA = os.environ.get("SYMFN_NO_NUMBA", "") == ""
if _USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        _USE_NUMBA = False

if _USE_NUMBA:

    @njit(cache=True)
    def _k_2x2(buf, stride, m00, m01, m10, m11):
        B, D = buf.shape
        step = 2 * stride
        for b in range(B):
            for base in range(0, D, step):
                for i in range(base, base + stride):
                    a0 = buf[b, i]
                    a1 = buf[b, i + stride]
                    buf[b, i] = m00 * a0 + m01 * a1
                    buf[b, i + stride] = m10 * a0 + m11 * a1

    @njit(cache=True)
    def _k_phase1(buf, stride, phase):
        B, D = buf.shape
        step = 2 * stride
        for b in range(B):
            for base in range(stride, D, step):
                for i in range(base, base + stride):
                    buf[b, i] = buf[b, i] * phase

    @njit(cache=True)
    def _k_cx(buf, sc, st):
        B, D = buf.shape
        s_hi = sc if sc > st else st
        s_lo = st if sc > st else sc
        off = s_hi if sc > st else s_lo
        for b in range(B):
            for base in range(0, D, 2 * s_hi):
                for mid in range(0, s_hi, 2 * s_lo):
                    for lo in range(0, s_lo):
                        i = base + mid + lo + off
                        j = i + st
                        tmp = buf[b, i]
                        buf[b, i] = buf[b, j]
                        buf[b, j] = tmp

    @njit(cache=True)
    def _k_perm3(buf, stride, p0, p1, p2):
        B, D = buf.shape
        step = 3 * stride
        for b in range(B):
            for base in range(0, D, step):
                for i in range(base, base + stride):
                    a0 = buf[b, i]
                    a1 = buf[b, i + stride]
                    a2 = buf[b, i + 2 * stride]
                    buf[b, i + p0 * stride] = a0
                    buf[b, i + p1 * stride] = a1
                    buf[b, i + p2 * stride] = a2

    @njit(cache=True)
    def _k_cperm3(buf, sc, v, st, p0, p1, p2):
        B, D = buf.shape
        s_hi = sc if sc > st else st
        s_lo = st if sc > st else sc
        off = v * sc
        for b in range(B):
            for base in range(0, D, 3 * s_hi):
                for mid in range(0, s_hi, 3 * s_lo):
                    for lo in range(0, s_lo):
                        i = base + mid + lo + off
                        a0 = buf[b, i]
                        a1 = buf[b, i + st]
                        a2 = buf[b, i + 2 * st]
                        buf[b, i + p0 * st] = a0
                        buf[b, i + p1 * st] = a1
                        buf[b, i + p2 * st] = a2


_SQ2 = 1.0 / math.sqrt(2.0)
_T_PHASE = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))


def _np_axes(buf: np.ndarray, radix: int, width: int) -> np.ndarray:
    return buf.reshape((buf.shape[0],) + (radix,) * width)


def _np_slice(width: int, wire: int, digit: int) -> tuple:
    idx: list = [slice(None)] * (width + 1)
    idx[1 + wire] = digit
    return tuple(idx)


def _apply_qubit_gate(buf: np.ndarray, width: int, g, use_numba: bool) -> None:
    k = g.kind
    if use_numba:
        stride = 1 << (width - 1 - g.wires[-1])
        if k is GateKind.H:
            _k_2x2(buf, stride, _SQ2 + 0j, _SQ2 + 0j, _SQ2 + 0j, -_SQ2 + 0j)
        elif k is GateKind.X:
            _k_2x2(buf, stride, 0j, 1 + 0j, 1 + 0j, 0j)
        elif k is GateKind.T:
            _k_phase1(buf, stride, _T_PHASE)
        elif k is GateKind.TDG:
            _k_phase1(buf, stride, _T_PHASE.conjugate())
        elif k is GateKind.ZROT:
            ang = math.pi * float(g.angle)
            _k_phase1(buf, stride, complex(math.cos(ang), math.sin(ang)))
        else:
            sc = 1 << (width - 1 - g.wires[0])
            _k_cx(buf, sc, stride)
        return
    view = _np_axes(buf, 2, width)
    if k is GateKind.CX:
        v1 = view[_np_slice(width, g.wires[0], 1)]
        t_axis = g.wires[1] - (1 if g.wires[1] > g.wires[0] else 0)
        sl0 = [slice(None)] * v1.ndim
        sl1 = [slice(None)] * v1.ndim
        sl0[1 + t_axis] = 0
        sl1[1 + t_axis] = 1
        tmp = v1[tuple(sl0)].copy()
        v1[tuple(sl0)] = v1[tuple(sl1)]
        v1[tuple(sl1)] = tmp
        return
    w = g.wires[0]
    s0 = view[_np_slice(width, w, 0)]
    s1 = view[_np_slice(width, w, 1)]
    if k is GateKind.H:
        t0 = s0.copy()
        s0[...] = (t0 + s1) * _SQ2
        s1[...] = (t0 - s1) * _SQ2
    elif k is GateKind.X:
        t0 = s0.copy()
        s0[...] = s1
        s1[...] = t0
    elif k is GateKind.T:
        s1 *= _T_PHASE
    elif k is GateKind.TDG:
        s1 *= _T_PHASE.conjugate()
    else:
        ang = math.pi * float(g.angle)
        s1 *= complex(math.cos(ang), math.sin(ang))


def _apply_qutrit_gate(buf: np.ndarray, width: int, g, use_numba: bool) -> None:
    p = PERM[g.action]
    if use_numba:
        st = 3 ** (width - 1 - g.target)
        if g.control is None:
            _k_perm3(buf, st, p[0], p[1], p[2])
        else:
            sc = 3 ** (width - 1 - g.control)
            _k_cperm3(buf, sc, g.control_value, st, p[0], p[1], p[2])
        return
    view = _np_axes(buf, 3, width)
    if g.control is not None:
        view = view[_np_slice(width, g.control, g.control_value)]
        t_axis = 1 + g.target - (1 if g.target > g.control else 0)
    else:
        t_axis = 1 + g.target
    moved = np.moveaxis(view, t_axis, 0)
    src = [moved[0].copy(), moved[1].copy(), moved[2]]
    for d in range(3):
        moved[p[d]] = src[d]


@dataclass
class StateVector:
    radix: int
    width: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def digit(self, index: int, wire: int) -> int:
        return (index // self.radix ** (self.width - 1 - wire)) % self.radix


def _check_budget(radix: int, width: int) -> int:
    dim = radix**width
    if dim > _max_amplitudes():
        raise ValueError(
            f"statevector of {dim} amplitudes exceeds budget {_max_amplitudes()} "
            "(override with SYMFN_MAX_AMPLITUDES)"
        )
    return dim


def simulate_batch(circuit: QubitCircuit | QutritCircuit, initials: Sequence[int]) -> np.ndarray:
    """Run the circuit on several basis states at once; rows are final states."""
    radix = 2 if isinstance(circuit, QubitCircuit) else 3
    dim = _check_budget(radix, circuit.width)
    buf = np.zeros((len(initials), dim), dtype=np.complex128)
    for row, idx in enumerate(initials):
        if not 0 <= idx < dim:
            raise ValueError(f"initial basis index {idx} out of range")
        buf[row, idx] = 1.0
    use_numba = _USE_NUMBA
    if radix == 2:
        for g in circuit.gates:
            _apply_qubit_gate(buf, circuit.width, g, use_numba)
    else:
        for g in circuit.gates:
            _apply_qutrit_gate(buf, circuit.width, g, use_numba)
    return buf


def simulate(circuit: QubitCircuit | QutritCircuit, initial: int = 0) -> StateVector:
    """Apply the gate list in order to one basis state."""
    radix = 2 if isinstance(circuit, QubitCircuit) else 3
    buf = simulate_batch(circuit, [initial])
    return StateVector(radix, circuit.width, buf[0])


def extract_basis(state: StateVector, tol: float = 1e-9) -> tuple[int, float] | None:
    """Basis index whose amplitude magnitude is >= 1 - tol, with its phase."""
    idx = int(np.argmax(np.abs(state.amplitudes)))
    amp = state.amplitudes[idx]
    if abs(amp) < 1.0 - tol:
        return None
    return idx, float(np.angle(amp))


def _basis_of_row(row: np.ndarray, tol: float) -> tuple[int, complex] | None:
    idx = int(np.argmax(np.abs(row)))
    amp = row[idx]
    if abs(amp) < 1.0 - tol:
        return None
    return idx, complex(amp)


def digits_of(index: int, wires: Sequence[int], width: int, radix: int) -> tuple[int, ...]:
    return tuple((index // radix ** (width - 1 - w)) % radix for w in wires)


def pack_digits(values: Sequence[int], wires: Sequence[int], width: int, radix: int) -> int:
    idx = 0
    for v, w in zip(values, wires):
        idx += v * radix ** (width - 1 - w)
    return idx


def truth_table_of(
    circuit: QubitCircuit | QutritCircuit,
    read_wires: Sequence[int],
    input_wires: Sequence[int],
    tol: float = 1e-9,
) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Sweep basis values of input_wires (others |0>), read out read_wires.

    Raises if any output state is not basis-concentrated: the circuit was
    expected to permute the computational basis on the tested subspace.
    """
    radix = 2 if isinstance(circuit, QubitCircuit) else 3
    width = circuit.width
    cases = []
    n_in = len(input_wires)
    for v in range(radix**n_in):
        digs = [(v // radix ** (n_in - 1 - i)) % radix for i in range(n_in)]
        cases.append(pack_digits(digs, input_wires, width, radix))
    states = simulate_batch(circuit, cases)
    table: dict[tuple[int, ...], tuple[int, ...]] = {}
    for v, row in enumerate(states):
        got = _basis_of_row(row, tol)
        if got is None:
            raise ValueError(f"output for input {v} is not a computational basis state")
        idx, _amp = got
        key = digits_of(cases[v], input_wires, width, radix)
        table[key] = digits_of(idx, read_wires, width, radix)
    return table
