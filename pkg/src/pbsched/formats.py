"""Plain-text instance and schedule files.

Instance::

    pbs-instance 1
    n m d
    E
    v u w        (E lines, 1-based ids)

Schedule::

    pbs-schedule 1
    P
    D k          (per packet, followed by k lines "v u amount")
"""

from __future__ import annotations

from .model import Instance, InstanceError, Packet, Schedule

INSTANCE_HEADER = "pbs-instance 1"
SCHEDULE_HEADER = "pbs-schedule 1"


class FormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"{message}, line {line}")
        self.line = line


class _Lines:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        if self.lines and self.lines[-1] == "":
            self.lines.pop()
        self.pos = 0

    def next(self, what: str) -> tuple[str, int]:
        if self.pos >= len(self.lines):
            raise FormatError(f"unexpected end of file, expected {what}", self.pos + 1)
        self.pos += 1
        return self.lines[self.pos - 1], self.pos

    def ints(self, what: str, arity: int) -> tuple[list[int], int]:
        line, no = self.next(what)
        parts = line.split(" ")
        if len(parts) != arity:
            raise FormatError(f"expected {arity} integers for {what}, got {len(parts)}", no)
        try:
            return [int(p) for p in parts], no
        except ValueError:
            raise FormatError(f"bad integer in {what}", no) from None

    def finish(self):
        if self.pos != len(self.lines):
            raise FormatError("trailing content", self.pos + 1)


def emit_instance(instance: Instance) -> str:
    out = [
        INSTANCE_HEADER,
        f"{instance.n_transmitters} {instance.n_receivers} {instance.d}",
        str(len(instance.edges)),
    ]
    out += [f"{v} {u} {w}" for v, u, w in instance.edges]
    return "\n".join(out) + "\n"


def parse_instance(text: str) -> Instance:
    lines = _Lines(text)
    header, no = lines.next("header")
    if header != INSTANCE_HEADER:
        raise FormatError(f"malformed header {header!r}", no)
    (n, m, d), no = lines.ints("dimensions", 3)
    if n < 1 or m < 1:
        raise FormatError("station counts must be >= 1", no)
    if d < 1:
        raise FormatError("d must be >= 1", no)
    (count,), no = lines.ints("edge count", 1)
    if count < 0:
        raise FormatError("edge count must be >= 0", no)
    edges = []
    seen = set()
    for _ in range(count):
        (v, u, w), no = lines.ints("edge", 3)
        if not 1 <= v <= n:
            raise FormatError(f"transmitter id {v} out of range", no)
        if not 1 <= u <= m:
            raise FormatError(f"receiver id {u} out of range", no)
        if w < 1:
            raise FormatError("weight must be ≥ 1", no)
        if (v, u) in seen:
            raise FormatError(f"duplicate edge ({v},{u})", no)
        seen.add((v, u))
        edges.append((v, u, w))
    lines.finish()
    try:
        return Instance(n, m, d, tuple(edges))
    except InstanceError as exc:  # pragma: no cover - checked above
        raise FormatError(str(exc), no) from None


def emit_schedule(schedule: Schedule) -> str:
    out = [SCHEDULE_HEADER, str(len(schedule.packets))]
    for p in schedule.packets:
        out.append(f"{p.duration} {len(p.items)}")
        out += [f"{v} {u} {a}" for v, u, a in p.items]
    return "\n".join(out) + "\n"


def parse_schedule(text: str) -> Schedule:
    """Parse a schedule file.  Only syntax is checked here."""
    lines = _Lines(text)
    header, no = lines.next("header")
    if header != SCHEDULE_HEADER:
        raise FormatError(f"malformed header {header!r}", no)
    (count,), no = lines.ints("packet count", 1)
    if count < 0:
        raise FormatError("packet count must be >= 0", no)
    packets = []
    for _ in range(count):
        (duration, k), no = lines.ints("packet header", 2)
        if duration < 0 or k < 0:
            raise FormatError("negative duration or item count", no)
        items = [tuple(lines.ints("packet item", 3)[0]) for _ in range(k)]
        packets.append(Packet(duration, tuple(items)))
    lines.finish()
    return Schedule(tuple(packets))
