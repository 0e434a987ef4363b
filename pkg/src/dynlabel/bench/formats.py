"""Instance, trace and record file formats.

Instance::

    # dynlabel-instance v1 scale=3 mode=squares model=gaussian seed=1
    0,12.345,3.210
    1,4.000,17.500

Trace::

    # dynlabel-trace v1 scale=3 updates=mixed seed=7
    I,1000,2.500,3.500
    D,17

Coordinates are decimals in unit-square coordinates; ``scale`` is the number
of decimal digits kept when converting to integers.  Rect rows carry a fourth
column with the width.  Files without a header line are read as square
instances at the default scale, after skipping one textual column header.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import FormatError
from ..geometry import DEFAULT_PRECISION, Rect, Square, from_units, scale_factor, to_units

INSTANCE_MAGIC = "# dynlabel-instance v1"
TRACE_MAGIC = "# dynlabel-trace v1"
MODES = ("squares", "rects")


@dataclass
class Instance:
    shapes: list
    precision: int = DEFAULT_PRECISION
    mode: str = "squares"
    meta: dict = field(default_factory=dict)

    @property
    def unit(self) -> int:
        return scale_factor(self.precision)


@dataclass(frozen=True)
class Event:
    op: str  # "I" or "D"
    id: int
    shape: object = None


@dataclass
class Trace:
    events: list
    precision: int = DEFAULT_PRECISION
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.events)


def _parse_header(line, magic):
    rest = line[len(magic):].split()
    meta = {}
    for tok in rest:
        if "=" not in tok:
            raise FormatError(f"bad header token {tok!r}")
        k, v = tok.split("=", 1)
        meta[k] = v
    return meta


def _precision(meta):
    try:
        p = int(meta.pop("scale", DEFAULT_PRECISION))
    except ValueError:
        raise FormatError("scale must be an integer") from None
    if not 0 <= p <= 9:
        raise FormatError(f"scale {p} out of range")
    return p


def _header(magic, meta):
    return " ".join([magic] + [f"{k}={v}" for k, v in meta.items()])


def _shape(fields, precision, mode, lineno):
    unit = scale_factor(precision)
    if len(fields) < 3:
        raise FormatError(f"line {lineno}: expected id,x,y")
    try:
        sid = int(fields[0])
    except ValueError:
        raise FormatError(f"line {lineno}: bad id {fields[0]!r}") from None
    x = to_units(fields[1], precision)
    y = to_units(fields[2], precision)
    if mode == "rects":
        if len(fields) != 4:
            raise FormatError(f"line {lineno}: rect rows need id,x,y,w")
        w = to_units(fields[3], precision)
        if w <= 0:
            raise FormatError(f"line {lineno}: width must be positive")
        return Rect(sid, x, y, w, unit)
    if len(fields) != 3:
        raise FormatError(f"line {lineno}: square rows need id,x,y")
    return Square(sid, x, y, unit)


def _shape_fields(s, precision):
    row = [str(s.id), from_units(s.cx, precision), from_units(s.cy, precision)]
    if isinstance(s, Rect):
        row.append(from_units(s.width, precision))
    return row


def parse_instance(text: str) -> Instance:
    lines = text.splitlines()
    meta = {}
    start = 0
    if lines and lines[0].startswith(INSTANCE_MAGIC):
        meta = _parse_header(lines[0], INSTANCE_MAGIC)
        start = 1
    elif lines and lines[0].startswith("#"):
        raise FormatError("unknown instance header")
    precision = _precision(meta)
    mode = meta.pop("mode", "squares")
    if mode not in MODES:
        raise FormatError(f"unknown mode {mode!r}")
    shapes, seen = [], set()
    for lineno, fields in enumerate(csv.reader(lines[start:]), start + 1):
        if not fields or fields[0].startswith("#"):
            continue
        if not shapes and not start and not fields[0].strip().lstrip("-").isdigit():
            continue  # column header of a bare point file
        s = _shape([f.strip() for f in fields], precision, mode, lineno)
        if s.id in seen:
            raise FormatError(f"line {lineno}: duplicate id {s.id}")
        seen.add(s.id)
        shapes.append(s)
    return Instance(shapes, precision, mode, meta)


def format_instance(inst: Instance) -> str:
    meta = {"scale": inst.precision, "mode": inst.mode, **inst.meta}
    buf = io.StringIO()
    buf.write(_header(INSTANCE_MAGIC, meta) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    for s in inst.shapes:
        w.writerow(_shape_fields(s, inst.precision))
    return buf.getvalue()


def parse_trace(text: str, mode: str = "squares") -> Trace:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(TRACE_MAGIC):
        raise FormatError("missing trace header")
    meta = _parse_header(lines[0], TRACE_MAGIC)
    precision = _precision(meta)
    mode = meta.get("mode", mode)
    events = []
    for lineno, fields in enumerate(csv.reader(lines[1:]), 2):
        if not fields or fields[0].startswith("#"):
            continue
        op = fields[0].strip()
        if op == "I":
            s = _shape(fields[1:], precision, mode, lineno)
            events.append(Event("I", s.id, s))
        elif op == "D":
            if len(fields) != 2:
                raise FormatError(f"line {lineno}: delete rows are D,id")
            try:
                events.append(Event("D", int(fields[1])))
            except ValueError:
                raise FormatError(f"line {lineno}: bad id {fields[1]!r}") from None
        else:
            raise FormatError(f"line {lineno}: unknown op {op!r}")
    return Trace(events, precision, meta)


def format_trace(trace: Trace) -> str:
    buf = io.StringIO()
    buf.write(_header(TRACE_MAGIC, {"scale": trace.precision, **trace.meta}) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    for ev in trace.events:
        if ev.op == "I":
            w.writerow(["I"] + _shape_fields(ev.shape, trace.precision))
        else:
            w.writerow(["D", str(ev.id)])
    return buf.getvalue()


def read_instance(path) -> Instance:
    return parse_instance(Path(path).read_text())


def write_instance(inst: Instance, path) -> None:
    Path(path).write_text(format_instance(inst))


def read_trace(path, mode="squares") -> Trace:
    return parse_trace(Path(path).read_text(), mode)


def write_trace(trace: Trace, path) -> None:
    Path(path).write_text(format_trace(trace))
