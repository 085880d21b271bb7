"""Reusable qubit sub-circuit generators.

Fan-out and parity fan-in are the log-depth doubling cascades; the QFT is
emitted in the CNOT + PhaseZ + H basis with every controlled phase expanded
into two CNOTs and three rotations; shared-control Toffoli blocks parallelize
k Toffolis with one common control through four fan-outs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .circuit import (
    GateKind,
    QubitCircuit,
    QubitGate,
    cx,
    h,
    inverse,
    t,
    tdg,
    zrot,
)


@dataclass(frozen=True)
class FanoutSpec:
    control: int
    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        wires = (self.control, *self.targets)
        if len(set(wires)) != len(wires):
            raise ValueError("fan-out wires must be distinct")
        if not self.targets:
            raise ValueError("fan-out needs at least one target")


def _cascade_layers(k: int) -> list[list[tuple[int, int]]]:
    """Doubling-cascade layers over 1-based wires 1..k, ascending stride.

    At step s, wire i copies onto wire i + 2**(s-1) for i = 1 (mod 2**s);
    emission within a layer is lowest index first.
    """
    layers = []
    s = 1
    while (1 << (s - 1)) < k:
        stride = 1 << (s - 1)
        layer = [(i, i + stride) for i in range(1, k + 1, 1 << s) if i + stride <= k]
        layers.append(layer)
        s += 1
    return layers


def fanout_gates(control: int, targets: Sequence[int]) -> list[QubitGate]:
    """XOR the control onto every target: |a>|b_i> -> |a>|b_i ^ a>."""
    tg = list(targets)
    spec = FanoutSpec(control, tuple(tg))
    n = len(tg)
    if n == 1:
        return [cx(control, tg[0])]
    layers = _cascade_layers(n)
    gates: list[QubitGate] = []
    for layer in layers:
        gates.extend(cx(tg[u - 1], tg[v - 1]) for u, v in layer)
    gates.append(cx(spec.control, tg[0]))
    for layer in reversed(layers):
        gates.extend(cx(tg[u - 1], tg[v - 1]) for u, v in layer)
    return gates


def synth_fanout(spec: FanoutSpec) -> QubitCircuit:
    """Fan-out gate; depth 2*ceil(log2 n) + 1 over n targets."""
    width = max(spec.control, *spec.targets) + 1
    return QubitCircuit(width, tuple(fanout_gates(spec.control, spec.targets)))


def parity_fanin_gates(controls: Sequence[int], target: int) -> list[QubitGate]:
    """Fold XOR of the controls onto the target.

    Hadamard-conjugated fan-out (depth 2*ceil(log2 k) + 3); plain CNOTs for
    k <= 2 where the cascade would not help.
    """
    ctl = list(controls)
    if not ctl:
        raise ValueError("need at least one control")
    wires = (*ctl, target)
    if len(set(wires)) != len(wires):
        raise ValueError("parity wires must be distinct")
    if len(ctl) <= 2:
        return [cx(c, target) for c in ctl]
    gates = [h(w) for w in (target, *ctl)]
    gates.extend(fanout_gates(target, ctl))
    gates.extend(h(w) for w in (target, *ctl))
    return gates


def synth_parity_fanin(controls: Sequence[int], target: int) -> QubitCircuit:
    width = max(*controls, target) + 1
    return QubitCircuit(width, tuple(parity_fanin_gates(controls, target)))


# ---------------------------------------------------------------------------
# QFT
# ---------------------------------------------------------------------------


def _cp_block(control: int, target: int, angle: Fraction) -> list[QubitGate]:
    """Exact controlled-phase(pi*angle): rotation halves around two CNOTs."""
    half = angle / 2
    return [
        zrot(control, half),
        cx(control, target),
        zrot(target, -half),
        cx(control, target),
        zrot(target, half),
    ]


def qft_gates(m: int, wires: Sequence[int] | None = None) -> list[QubitGate]:
    """Standard QFT on m wires, wire 0 most significant, no terminal swaps.

    Controlled phases are emitted per control wire as a wavefront (all blocks
    sharing control k interleave), with each wire's control-side rotations
    merged into a single rotation placed right before its Hadamard. This
    emission order measures depth 5m - 4 under ASAP layering.
    """
    if m < 1:
        raise ValueError("m >= 1")
    w = list(range(m)) if wires is None else list(wires)
    if len(w) != m or len(set(w)) != m:
        raise ValueError("need m distinct wires")
    gates: list[QubitGate] = [h(w[0])]
    for k in range(1, m):
        halves = [Fraction(1, 1 << (k - j + 1)) for j in range(k)]
        for j in range(k):
            gates.append(cx(w[k], w[j]))
        for j in range(k):
            gates.append(zrot(w[j], -halves[j]))
        for j in range(k):
            gates.append(cx(w[k], w[j]))
        for j in range(k):
            gates.append(zrot(w[j], halves[j]))
        gates.append(zrot(w[k], sum(halves)))
        gates.append(h(w[k]))
    return gates


def synth_qft(m: int, wires: Sequence[int] | None = None) -> QubitCircuit:
    width = m if wires is None else max(wires) + 1
    return QubitCircuit(width, tuple(qft_gates(m, wires)))


def synth_iqft(m: int, wires: Sequence[int] | None = None) -> QubitCircuit:
    """Inverse QFT: the adjoint of synth_qft's gate list."""
    return inverse(synth_qft(m, wires))


# ---------------------------------------------------------------------------
# shared-control Toffoli
# ---------------------------------------------------------------------------


def shared_control_toffoli_gates(shared: int, pairs: Sequence[tuple[int, int]]) -> list[QubitGate]:
    """k Toffolis sharing one control, parallelized through four fan-outs.

    Equals the k sequential Toffolis exactly (no relative phase); the shared
    control's T rotations merge into one T**k.
    """
    k = len(pairs)
    if k == 0:
        raise ValueError("need at least one (control, target) pair")
    ctls = [p for p, _ in pairs]
    tgts = [q for _, q in pairs]
    wires = (shared, *ctls, *tgts)
    if len(set(wires)) != len(wires):
        raise ValueError("wire collision in shared-control block")
    gates: list[QubitGate] = []
    gates.extend(h(q) for q in tgts)
    gates.extend(cx(p, q) for p, q in pairs)
    gates.extend(tdg(q) for q in tgts)
    gates.extend(fanout_gates(shared, tgts))
    gates.extend(t(q) for q in tgts)
    gates.extend(cx(p, q) for p, q in pairs)
    gates.extend(tdg(q) for q in tgts)
    gates.extend(t(p) for p in ctls)
    gates.extend(fanout_gates(shared, tgts))
    gates.extend(fanout_gates(shared, ctls))
    gates.extend(tdg(p) for p in ctls)
    gates.extend(t(q) for q in tgts)
    if k == 1:
        gates.append(t(shared))
    else:
        gates.append(zrot(shared, Fraction(k, 4)))
    gates.extend(fanout_gates(shared, ctls))
    gates.extend(h(q) for q in tgts)
    return gates


def synth_shared_control_toffoli(shared: int, pairs: Sequence[tuple[int, int]]) -> QubitCircuit:
    width = max(shared, *(w for p in pairs for w in p)) + 1
    return QubitCircuit(width, tuple(shared_control_toffoli_gates(shared, pairs)))


def toffoli_gates(c1: int, c2: int, target: int) -> list[QubitGate]:
    """Single Toffoli in the 6-CNOT, depth-11 T ladder."""
    return shared_control_toffoli_gates(c1, [(c2, target)])
