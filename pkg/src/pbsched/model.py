"""Instances, packets, schedules and the metrics shared by every solver.

Transmitters and receivers are numbered from 1.  All times are integers.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

Edge = tuple[int, int, int]


class InstanceError(ValueError):
    """Raised when an instance violates the model constraints."""


@dataclass(frozen=True)
class Instance:
    """Bipartite demand graph: ``edges`` holds ``(v, u, w)`` triples."""

    n_transmitters: int
    n_receivers: int
    d: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n_transmitters < 1 or self.n_receivers < 1:
            raise InstanceError("station counts must be positive")
        if self.d < 1:
            raise InstanceError("overhead d must be >= 1")
        seen = set()
        for v, u, w in self.edges:
            if not 1 <= v <= self.n_transmitters:
                raise InstanceError(f"transmitter id {v} out of range")
            if not 1 <= u <= self.n_receivers:
                raise InstanceError(f"receiver id {u} out of range")
            if w < 1:
                raise InstanceError(f"weight of ({v},{u}) must be >= 1")
            if (v, u) in seen:
                raise InstanceError(f"duplicate edge ({v},{u})")
            seen.add((v, u))
        object.__setattr__(
            self, "edges", tuple(sorted((int(v), int(u), int(w)) for v, u, w in self.edges))
        )

    @classmethod
    def from_matrix(cls, weights, d: int) -> Instance:
        """Build an instance from an ``n x m`` matrix; zeros mean no message."""
        weights = np.asarray(weights, dtype=np.int64)
        n, m = weights.shape
        rows, cols = np.nonzero(weights)
        edges = tuple((int(i) + 1, int(j) + 1, int(weights[i, j])) for i, j in zip(rows, cols))
        return cls(n, m, d, edges)

    def weight_map(self) -> dict[tuple[int, int], int]:
        return {(v, u): w for v, u, w in self.edges}

    def weight_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n_transmitters, self.n_receivers), dtype=np.int64)
        for v, u, w in self.edges:
            mat[v - 1, u - 1] = w
        return mat

    def transpose(self) -> Instance:
        return Instance(
            self.n_receivers, self.n_transmitters, self.d, tuple((u, v, w) for v, u, w in self.edges)
        )


@dataclass(frozen=True)
class Packet:
    """One switch configuration held for ``duration`` time units."""

    duration: int
    items: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(tuple(it) for it in self.items)))

    @classmethod
    def of(cls, items: Iterable[Edge]) -> Packet:
        """Packet whose duration is the largest amount it carries."""
        items = tuple(items)
        return cls(max((a for _, _, a in items), default=0), items)


@dataclass(frozen=True)
class Schedule:
    packets: tuple[Packet, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "packets", tuple(self.packets))

    def __len__(self):
        return len(self.packets)

    @property
    def durations(self) -> list[int]:
        return [p.duration for p in self.packets]


@dataclass(frozen=True)
class NodeMetrics:
    tx_loads: Mapping[int, int]
    rx_loads: Mapping[int, int]
    tx_degrees: Mapping[int, int]
    rx_degrees: Mapping[int, int]
    W: int
    Delta: int


def node_metrics(instance: Instance) -> NodeMetrics:
    tx_loads = {v: 0 for v in range(1, instance.n_transmitters + 1)}
    rx_loads = {u: 0 for u in range(1, instance.n_receivers + 1)}
    tx_deg = dict.fromkeys(tx_loads, 0)
    rx_deg = dict.fromkeys(rx_loads, 0)
    for v, u, w in instance.edges:
        tx_loads[v] += w
        rx_loads[u] += w
        tx_deg[v] += 1
        rx_deg[u] += 1
    W = max(max(tx_loads.values()), max(rx_loads.values()))
    Delta = max(max(tx_deg.values()), max(rx_deg.values()))
    return NodeMetrics(tx_loads, rx_loads, tx_deg, rx_deg, W, Delta)


def matrix_load_and_degree(weights: np.ndarray) -> tuple[int, int]:
    """``(W, Delta)`` of a weight matrix; 0-weight cells are not edges."""
    if weights.size == 0:
        return 0, 0
    W = int(max(weights.sum(axis=1).max(), weights.sum(axis=0).max()))
    present = weights > 0
    Delta = int(max(present.sum(axis=1).max(), present.sum(axis=0).max()))
    return W, Delta


def lower_bound(instance: Instance) -> int:
    """``W + d * Delta``: durations sum to at least W and at least Delta packets are needed."""
    metrics = node_metrics(instance)
    return metrics.W + instance.d * metrics.Delta


def makespan(schedule: Schedule, d: int) -> int:
    return sum(p.duration + d for p in schedule.packets)


@dataclass(frozen=True)
class Violation:
    kind: str
    packet: int | None
    where: tuple[int, ...]
    detail: str = ""

    def __str__(self):
        loc = f"packet {self.packet}" if self.packet is not None else "schedule"
        return f"{self.kind} at {loc} {self.where}: {self.detail}".rstrip(": ")


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def validate_schedule(instance: Instance, schedule: Schedule) -> ValidationReport:
    """Check matching constraints, durations and exact per-edge coverage."""
    weights = instance.weight_map()
    sent: Counter = Counter()
    out = []
    for p_idx, packet in enumerate(schedule.packets):
        tx = defaultdict(int)
        rx = defaultdict(int)
        top = 0
        for v, u, amount in packet.items:
            tx[v] += 1
            rx[u] += 1
            if amount < 1:
                out.append(Violation("bad_amount", p_idx, (v, u), f"amount {amount}"))
            if amount > packet.duration:
                out.append(
                    Violation("duration_mismatch", p_idx, (v, u),
                              f"amount {amount} exceeds duration {packet.duration}")
                )
            top = max(top, amount)
            if (v, u) not in weights:
                out.append(Violation("unknown_edge", p_idx, (v, u)))
            else:
                sent[v, u] += amount
        for v, count in sorted(tx.items()):
            if count > 1:
                out.append(Violation("transmitter_conflict", p_idx, (v,), f"{count} items"))
        for u, count in sorted(rx.items()):
            if count > 1:
                out.append(Violation("receiver_conflict", p_idx, (u,), f"{count} items"))
        if not packet.items:
            out.append(Violation("empty_packet", p_idx, ()))
        elif top != packet.duration:
            out.append(
                Violation("duration_mismatch", p_idx, (),
                          f"duration {packet.duration} but largest amount {top}")
            )
    for (v, u), w in sorted(weights.items()):
        got = sent.get((v, u), 0)
        if got < w:
            out.append(Violation("under_coverage", None, (v, u), f"short by {w - got}"))
        elif got > w:
            out.append(Violation("over_coverage", None, (v, u), f"excess {got - w}"))
    return ValidationReport(tuple(out))
