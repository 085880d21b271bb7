"""Qutrit circuit IR and the fixed small blocks used by the counting circuits.

Elementary gates are the level swaps X01/X02/X12, the cycles X+1/X-1, and
singly-controlled versions firing on one control value. Every block here is a
permutation of the computational basis (no phases). Doubly-controlled effects
are obtained by the level-promotion trick: shift a wire into level 2 with one
control, fire on |2>, shift back.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .circuit import DepthReport, WireRole

_ROLE_TEXT = {
    WireRole.INPUT: "input",
    WireRole.OUTPUT: "output",
    WireRole.CLEAN: "clean",
    WireRole.BORROWED: "borrowed",
    WireRole.TARGET: "target",
}
_TEXT_ROLE = {v: k for k, v in _ROLE_TEXT.items()}


class QutritAxis(Enum):
    X01 = "x01"
    X02 = "x02"
    X12 = "x12"
    XP1 = "xp1"
    XM1 = "xm1"


# images: PERM[axis][d] is where basis level d goes
PERM = {
    QutritAxis.X01: (1, 0, 2),
    QutritAxis.X02: (2, 1, 0),
    QutritAxis.X12: (0, 2, 1),
    QutritAxis.XP1: (1, 2, 0),
    QutritAxis.XM1: (2, 0, 1),
}

_ADJOINT_AXIS = {
    QutritAxis.X01: QutritAxis.X01,
    QutritAxis.X02: QutritAxis.X02,
    QutritAxis.X12: QutritAxis.X12,
    QutritAxis.XP1: QutritAxis.XM1,
    QutritAxis.XM1: QutritAxis.XP1,
}


@dataclass(frozen=True)
class QutritGate:
    """Single qutrit action, optionally fired by one control value."""

    action: QutritAxis
    target: int
    control: int | None = None
    control_value: int | None = None

    def __post_init__(self) -> None:
        if (self.control is None) != (self.control_value is None):
            raise ValueError("control wire and control value come together")
        if self.control is not None:
            if self.control == self.target:
                raise ValueError("control must differ from target")
            if self.control_value not in (0, 1, 2):
                raise ValueError("control value must be 0, 1 or 2")

    @property
    def wires(self) -> tuple[int, ...]:
        if self.control is None:
            return (self.target,)
        return (self.control, self.target)

    def adjoint(self) -> "QutritGate":
        return QutritGate(_ADJOINT_AXIS[self.action], self.target, self.control, self.control_value)


def gate(action: QutritAxis, target: int) -> QutritGate:
    return QutritGate(action, target)


def cgate(control: int, value: int, action: QutritAxis, target: int) -> QutritGate:
    return QutritGate(action, target, control, value)


@dataclass(frozen=True)
class QutritCircuit:
    width: int
    gates: tuple[QutritGate, ...] = ()
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


def append(circuit: QutritCircuit, g: QutritGate) -> QutritCircuit:
    return QutritCircuit(circuit.width, circuit.gates + (g,), circuit.roles)


def compose(a: QutritCircuit, b: QutritCircuit, wire_map: Sequence[int] | Mapping[int, int] | None = None) -> QutritCircuit:
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
        ctrl = mapping[g.control] if g.control is not None else None
        gates.append(QutritGate(g.action, mapping[g.target], ctrl, g.control_value))
    return QutritCircuit(width, tuple(gates), tuple(roles))


def inverse(circuit: QutritCircuit) -> QutritCircuit:
    return QutritCircuit(circuit.width, tuple(g.adjoint() for g in reversed(circuit.gates)), circuit.roles)


def compute_depth(circuit: QutritCircuit) -> DepthReport:
    frontier = [0] * circuit.width
    counts: dict[str, int] = {}
    for g in circuit.gates:
        layer = 1 + max(frontier[w] for w in g.wires)
        for w in g.wires:
            frontier[w] = layer
        key = g.action.value if g.control is None else "c" + g.action.value
        counts[key] = counts.get(key, 0) + 1
    return DepthReport(
        depth=max(frontier) if circuit.gates else 0,
        width=circuit.width,
        counts=counts,
        clean_ancillas=sum(r is WireRole.CLEAN for r in circuit.roles),
        borrowed_ancillas=sum(r is WireRole.BORROWED for r in circuit.roles),
    )


def to_text(circuit: QutritCircuit) -> str:
    """Qutrit circuit text, e.g. ``xp1 q0`` and ``cx v=1 q0 -> xp1 q3``."""
    lines = [f"width {circuit.width}"]
    for i, r in enumerate(circuit.roles):
        lines.append(f"role q{i} {_ROLE_TEXT[r]}")
    for g in circuit.gates:
        if g.control is None:
            lines.append(f"{g.action.value} q{g.target}")
        else:
            lines.append(f"cx v={g.control_value} q{g.control} -> {g.action.value} q{g.target}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> QutritCircuit:
    width = None
    roles: dict[int, WireRole] = {}
    gates: list[QutritGate] = []

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
            if parts[3] != "->" or not parts[1].startswith("v="):
                raise ValueError(f"bad controlled gate line {raw!r}")
            gates.append(cgate(wire(parts[2]), int(parts[1][2:]), QutritAxis(parts[4]), wire(parts[5])))
        else:
            gates.append(gate(QutritAxis(parts[0]), wire(parts[1])))
    if width is None:
        raise ValueError("missing width header")
    role_tuple = tuple(roles.get(i, WireRole.INPUT) for i in range(width))
    return QutritCircuit(width, tuple(gates), role_tuple)


def build(width: int, gates: Iterable[QutritGate], roles: Sequence[WireRole] | None = None) -> QutritCircuit:
    return QutritCircuit(width, tuple(gates), tuple(roles) if roles is not None else None)


# ---------------------------------------------------------------------------
# fixed blocks
# ---------------------------------------------------------------------------


def full_adder_gates(a: int, b: int, c: int) -> list[QutritGate]:
    """Full adder on binary-valued qutrits: a -> a^b^c, b -> maj(a,b,c), c -> garbage.

    Left-to-right reading of the published adder; its two doubly-controlled
    gates are lowered with the level-promotion trick. The garbage values on c
    are deterministic: 2 when a^b^c = popcount parity 0 branch (see tests).
    """
    if len({a, b, c}) != 3:
        raise ValueError("adder wires must be distinct")
    gs = [
        cgate(b, 0, QutritAxis.XM1, c),
        cgate(b, 1, QutritAxis.XP1, c),
        # (a=0 and c=1) -> b -= 1, promoted through level 2 of wire a
        cgate(c, 1, QutritAxis.XM1, a),
        cgate(a, 2, QutritAxis.XM1, b),
        cgate(c, 1, QutritAxis.XP1, a),
        # (a=1 and c=0) -> b += 1
        cgate(c, 0, QutritAxis.XP1, a),
        cgate(a, 2, QutritAxis.XP1, b),
        cgate(c, 0, QutritAxis.XM1, a),
        gate(QutritAxis.X01, a),
        cgate(c, 2, QutritAxis.X01, a),
    ]
    return gs


def synth_qutrit_full_adder(a: int, b: int, c: int) -> QutritCircuit:
    width = max(a, b, c) + 1
    return QutritCircuit(width, tuple(full_adder_gates(a, b, c)))


def and2_gates(a: int, b: int) -> list[QutritGate]:
    """(a, b) -> (2a+b mod 3, a AND b) for binary inputs."""
    return [
        gate(QutritAxis.X12, a),
        cgate(b, 1, QutritAxis.XP1, a),
        cgate(a, 1, QutritAxis.XM1, b),
    ]


def synth_2and(a: int, b: int) -> QutritCircuit:
    return QutritCircuit(max(a, b) + 1, tuple(and2_gates(a, b)))


def uap2_gates(a: int, b: int) -> list[QutritGate]:
    """Un-And-and-Parity: undoes and2 and leaves (a, a XOR b)."""
    return [
        cgate(a, 1, QutritAxis.XP1, b),
        cgate(b, 1, QutritAxis.XM1, a),
        gate(QutritAxis.X12, a),
        cgate(a, 1, QutritAxis.X01, b),
    ]


def synth_2uap(a: int, b: int) -> QutritCircuit:
    return QutritCircuit(max(a, b) + 1, tuple(uap2_gates(a, b)))


def _ccx01_gates(c1: int, c2: int, target: int) -> list[QutritGate]:
    # X01 on target iff c1 = c2 = 1; c2 must be binary, promoted via level 2
    return [
        cgate(c1, 1, QutritAxis.XP1, c2),
        cgate(c2, 2, QutritAxis.X01, target),
        cgate(c1, 1, QutritAxis.XM1, c2),
    ]


def maj3_gates(a: int, b: int, c: int) -> list[QutritGate]:
    """(a, b, c) -> (a^c, b^c, maj(a,b,c)) for binary inputs."""
    return [
        cgate(c, 1, QutritAxis.X01, a),
        cgate(c, 1, QutritAxis.X01, b),
        *_ccx01_gates(a, b, c),
    ]


def synth_3maj(a: int, b: int, c: int) -> QutritCircuit:
    if len({a, b, c}) != 3:
        raise ValueError("wires must be distinct")
    return QutritCircuit(max(a, b, c) + 1, tuple(maj3_gates(a, b, c)))


def uma3_gates(a: int, b: int, c: int) -> list[QutritGate]:
    """Inverse of maj3 followed by the add: (a^c, b^c, maj) -> (a, a^b^c, c)."""
    return [
        *_ccx01_gates(a, b, c),
        cgate(c, 1, QutritAxis.X01, a),
        cgate(a, 1, QutritAxis.X01, b),
    ]


def synth_3uma(a: int, b: int, c: int) -> QutritCircuit:
    if len({a, b, c}) != 3:
        raise ValueError("wires must be distinct")
    return QutritCircuit(max(a, b, c) + 1, tuple(uma3_gates(a, b, c)))


def _cascade_edges(k: int) -> tuple[list[list[tuple[int, int]]], list[list[tuple[int, int]]]]:
    """Doubling-cascade edge layers over k wires indexed 1..k (anchor 1).

    Returns (ascending-stride layers, descending mirror). At step s, wire i
    copies onto wire i + 2**(s-1) for i = 1 mod 2**s.
    """
    steps = 0
    while (1 << steps) < k:
        steps += 1
    left = []
    for s in range(1, steps + 1):
        layer = [(i, i + (1 << (s - 1))) for i in range(1, k + 1, 1 << s) if i + (1 << (s - 1)) <= k]
        left.append(layer)
    return left, list(reversed(left))


def qutrit_fanout_gates(control: int, targets: Sequence[int], direction: int = +1) -> list[QutritGate]:
    """If control is |1>, apply X+1 (direction=+1) or X-1 to every target.

    Doubling cascade: v -= u edges out, controlled shift of the anchor, then
    v += u edges back; every target picks up the anchor's shift.
    """
    if direction not in (+1, -1):
        raise ValueError("direction is +1 or -1")
    tg = list(targets)
    if control in tg or len(set(tg)) != len(tg):
        raise ValueError("wires must be distinct")
    if not tg:
        return []
    left, right = _cascade_edges(len(tg))
    gs: list[QutritGate] = []
    for layer in left:
        for u, v in layer:
            gs.append(cgate(tg[u - 1], 1, QutritAxis.XM1, tg[v - 1]))
            gs.append(cgate(tg[u - 1], 2, QutritAxis.XP1, tg[v - 1]))
    gs.append(cgate(control, 1, QutritAxis.XP1 if direction == +1 else QutritAxis.XM1, tg[0]))
    for layer in right:
        for u, v in layer:
            gs.append(cgate(tg[u - 1], 1, QutritAxis.XP1, tg[v - 1]))
            gs.append(cgate(tg[u - 1], 2, QutritAxis.XM1, tg[v - 1]))
    return gs


def synth_qutrit_fanout(control: int, targets: Sequence[int], direction: int = +1) -> QutritCircuit:
    width = max([control, *targets]) + 1
    return QutritCircuit(width, tuple(qutrit_fanout_gates(control, targets, direction)))


def shared_control_gates(
    shared: int,
    pairs: Sequence[tuple[int, int]],
    action: QutritAxis = QutritAxis.XP1,
    control_value: int = 1,
) -> list[QutritGate]:
    """k gates (shared=1 AND pair-control=control_value) -> action(target), in parallel.

    Promotes every pair control by the shared wire through a qutrit fan-out,
    fires each action on the shifted level, then un-promotes. Works for pair
    controls in any basis state; the fire condition reads the original value.
    """
    if action not in (QutritAxis.XP1, QutritAxis.XM1):
        raise ValueError("action is XP1 or XM1")
    if control_value not in (1, 2):
        raise ValueError("fire value is 1 or 2")
    ctrls = [p for p, _ in pairs]
    tgts = [t for _, t in pairs]
    wires = [shared, *ctrls, *tgts]
    if len(set(wires)) != len(wires):
        raise ValueError("wires must be distinct")
    if not pairs:
        return []
    promote = +1 if control_value == 1 else -1
    fire_level = control_value + promote  # 1 -> 2, 2 -> 1
    gs = qutrit_fanout_gates(shared, ctrls, promote)
    for (p, t) in pairs:
        gs.append(cgate(p, fire_level, action, t))
    gs.extend(qutrit_fanout_gates(shared, ctrls, -promote))
    return gs


def synth_shared_control_qutrit(
    shared: int,
    pairs: Sequence[tuple[int, int]],
    action: QutritAxis = QutritAxis.XP1,
    control_value: int = 1,
) -> QutritCircuit:
    width = max([shared, *(w for p in pairs for w in p)]) + 1
    return QutritCircuit(width, tuple(shared_control_gates(shared, pairs, action, control_value)))
