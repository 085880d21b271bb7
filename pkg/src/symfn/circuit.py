"""Qubit circuit IR: gate set, wire roles, depth accounting, text format.

Circuits are flat ordered gate lists over integer wire indices. Depth is
greedy as-soon-as-possible layering over the emitted list: a gate lands on
layer 1 + max(layer of the last prior gate on each of its wires). Rotation
angles are exact rational multiples of pi (``Fraction``), materialized to
floats only at simulation time, so emitted circuits and their text form are
bit-exact and reproducible.

Wire 0 is the most significant bit wherever a binary register is produced.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class GateKind(Enum):
    H = "h"
    X = "x"
    T = "t"
    TDG = "tdg"
    ZROT = "zrot"
    CX = "cx"


class WireRole(Enum):
    INPUT = "input"
    OUTPUT = "output"
    CLEAN = "clean"
    BORROWED = "borrowed"
    TARGET = "target"


_SINGLE_KINDS = (GateKind.H, GateKind.X, GateKind.T, GateKind.TDG, GateKind.ZROT)


def canonical_angle(angle: Fraction) -> Fraction:
    """Reduce an angle (in units of pi) into (-1, 1], mod 2."""
    a = Fraction(angle) % 2
    if a > 1:
        a -= 2
    return a


@dataclass(frozen=True)
class QubitGate:
    """One gate: single-qubit kinds carry one wire, CX carries (control, target).

    ``angle`` is the ZROT angle as an exact multiple of pi; None otherwise.
    """

    kind: GateKind
    wires: tuple[int, ...]
    angle: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind is GateKind.CX:
            if len(self.wires) != 2 or self.wires[0] == self.wires[1]:
                raise ValueError(f"cx needs two distinct wires, got {self.wires}")
            if self.angle is not None:
                raise ValueError("cx carries no angle")
        else:
            if len(self.wires) != 1:
                raise ValueError(f"{self.kind.value} acts on one wire, got {self.wires}")
            if self.kind is GateKind.ZROT:
                if self.angle is None:
                    raise ValueError("zrot needs an angle")
                object.__setattr__(self, "angle", canonical_angle(self.angle))
            elif self.angle is not None:
                raise ValueError(f"{self.kind.value} carries no angle")

    def adjoint(self) -> "QubitGate":
        if self.kind is GateKind.T:
            return QubitGate(GateKind.TDG, self.wires)
        if self.kind is GateKind.TDG:
            return QubitGate(GateKind.T, self.wires)
        if self.kind is GateKind.ZROT:
            assert self.angle is not None
            return QubitGate(GateKind.ZROT, self.wires, -self.angle)
        return self


def h(wire: int) -> QubitGate:
    return QubitGate(GateKind.H, (wire,))


def x(wire: int) -> QubitGate:
    return QubitGate(GateKind.X, (wire,))


def t(wire: int) -> QubitGate:
    return QubitGate(GateKind.T, (wire,))


def tdg(wire: int) -> QubitGate:
    return QubitGate(GateKind.TDG, (wire,))


def zrot(wire: int, angle: Fraction | int | str) -> QubitGate:
    return QubitGate(GateKind.ZROT, (wire,), Fraction(angle))


def cx(control: int, target: int) -> QubitGate:
    return QubitGate(GateKind.CX, (control, target))


@dataclass(frozen=True)
class QubitCircuit:
    """Ordered gate list over ``width`` wires with per-wire roles.

    Immutable after construction; all synthesis routines build gate lists and
    construct a circuit once.
    """

    width: int
    gates: tuple[QubitGate, ...] = ()
    roles: tuple[WireRole, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.roles is None:
            object.__setattr__(self, "roles", (WireRole.INPUT,) * self.width)
        if len(self.roles) != self.width:
            raise ValueError("one role per wire required")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            for w in g.wires:
                if not 0 <= w < self.width:
                    raise IndexError(f"wire {w} out of range for width {self.width}")

    def __len__(self) -> int:
        return len(self.gates)


def append(circuit: QubitCircuit, gate: QubitGate) -> QubitCircuit:
    """Return a new circuit with ``gate`` appended."""
    for w in gate.wires:
        if not 0 <= w < circuit.width:
            raise IndexError(f"wire {w} out of range for width {circuit.width}")
    return QubitCircuit(circuit.width, circuit.gates + (gate,), circuit.roles)


def compose(a: QubitCircuit, b: QubitCircuit, wire_map: Sequence[int] | Mapping[int, int] | None = None) -> QubitCircuit:
    """Append ``b`` after ``a``, relabeling b's wires through ``wire_map``.

    ``wire_map[i]`` is the wire of the result that b's wire ``i`` lands on;
    identity when omitted. The map must be injective. Width extends as needed;
    extended wires take b's roles.
    """
    if wire_map is None:
        mapping = list(range(b.width))
    elif isinstance(wire_map, Mapping):
        mapping = [wire_map[i] for i in range(b.width)]
    else:
        mapping = list(wire_map)
        if len(mapping) != b.width:
            raise ValueError("wire map must cover every wire of b")
    if len(set(mapping)) != len(mapping):
        raise ValueError("wire map must be injective")
    width = max([a.width] + [m + 1 for m in mapping])
    roles = list(a.roles) + [WireRole.INPUT] * (width - a.width)
    for i, m in enumerate(mapping):
        if m >= a.width:
            roles[m] = b.roles[i]
    gates = list(a.gates)
    for g in b.gates:
        gates.append(QubitGate(g.kind, tuple(mapping[w] for w in g.wires), g.angle))
    return QubitCircuit(width, tuple(gates), tuple(roles))


def inverse(circuit: QubitCircuit) -> QubitCircuit:
    """Reversed gate list with every gate replaced by its adjoint."""
    return QubitCircuit(
        circuit.width,
        tuple(g.adjoint() for g in reversed(circuit.gates)),
        circuit.roles,
    )


@dataclass(frozen=True)
class DepthReport:
    depth: int
    width: int
    counts: dict[str, int]
    clean_ancillas: int
    borrowed_ancillas: int


def gate_layers(circuit: QubitCircuit) -> list[int]:
    """ASAP layer (1-based) of each gate in list order."""
    frontier = [0] * circuit.width
    layers = []
    for g in circuit.gates:
        layer = 1 + max(frontier[w] for w in g.wires)
        for w in g.wires:
            frontier[w] = layer
        layers.append(layer)
    return layers


def compute_depth(circuit: QubitCircuit) -> DepthReport:
    """Deterministic depth/width/ancilla accounting for an emitted circuit."""
    frontier = [0] * circuit.width
    counts: dict[str, int] = {}
    for g in circuit.gates:
        layer = 1 + max(frontier[w] for w in g.wires)
        for w in g.wires:
            frontier[w] = layer
        counts[g.kind.value] = counts.get(g.kind.value, 0) + 1
    return DepthReport(
        depth=max(frontier) if circuit.gates else 0,
        width=circuit.width,
        counts=counts,
        clean_ancillas=sum(r is WireRole.CLEAN for r in circuit.roles),
        borrowed_ancillas=sum(r is WireRole.BORROWED for r in circuit.roles),
    )


_ROLE_TEXT = {
    WireRole.INPUT: "input",
    WireRole.OUTPUT: "output",
    WireRole.CLEAN: "clean",
    WireRole.BORROWED: "borrowed",
    WireRole.TARGET: "target",
}
_TEXT_ROLE = {v: k for k, v in _ROLE_TEXT.items()}


def to_text(circuit: QubitCircuit) -> str:
    """Circuit text: `width N` and `role q<i> <role>` headers, one gate per line."""
    lines = [f"width {circuit.width}"]
    for i, r in enumerate(circuit.roles):
        lines.append(f"role q{i} {_ROLE_TEXT[r]}")
    for g in circuit.gates:
        if g.kind is GateKind.CX:
            lines.append(f"cx q{g.wires[0]} q{g.wires[1]}")
        elif g.kind is GateKind.ZROT:
            assert g.angle is not None
            lines.append(f"zrot q{g.wires[0]} {g.angle.numerator}/{g.angle.denominator}")
        else:
            lines.append(f"{g.kind.value} q{g.wires[0]}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> QubitCircuit:
    width = None
    roles: dict[int, WireRole] = {}
    gates: list[QubitGate] = []

    def wire(tok: str) -> int:
        if not tok.startswith("q"):
            raise ValueError(f"bad wire token {tok!r}")
        return int(tok[1:])

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "width":
            width = int(parts[1])
        elif parts[0] == "role":
            roles[wire(parts[1])] = _TEXT_ROLE[parts[2]]
        elif parts[0] == "cx":
            gates.append(cx(wire(parts[1]), wire(parts[2])))
        elif parts[0] == "zrot":
            num, den = parts[2].split("/")
            gates.append(zrot(wire(parts[1]), Fraction(int(num), int(den))))
        elif parts[0] in ("h", "x", "t", "tdg"):
            gates.append(QubitGate(GateKind(parts[0]), (wire(parts[1]),)))
        else:
            raise ValueError(f"unknown line {raw!r}")
    if width is None:
        raise ValueError("missing width header")
    role_tuple = tuple(roles.get(i, WireRole.INPUT) for i in range(width))
    return QubitCircuit(width, tuple(gates), role_tuple)


def build(width: int, gates: Iterable[QubitGate], roles: Sequence[WireRole] | None = None) -> QubitCircuit:
    return QubitCircuit(width, tuple(gates), tuple(roles) if roles is not None else None)
