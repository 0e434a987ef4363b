"""Integer-scaled label boxes and the exact predicates the solvers rely on.

Input decimals are multiplied by ``S = 10**p`` so that a unit square has side
``S`` integer units.  Every predicate below is an integer comparison; boxes
are open, so two labels that merely touch do not conflict.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, InvalidOperation

from .errors import CoordinateRangeError, FormatError

DEFAULT_PRECISION = 3
UNIT = 10 ** DEFAULT_PRECISION
COORD_LIMIT = 1 << 40


def scale_factor(precision: int = DEFAULT_PRECISION) -> int:
    return 10 ** precision


def check_coord(value: int) -> int:
    if not -COORD_LIMIT < value < COORD_LIMIT:
        raise CoordinateRangeError(f"coordinate {value} outside +-2^40")
    return value


def to_units(text, precision: int = DEFAULT_PRECISION) -> int:
    """Parse a decimal string into scaled integer units (round half to even)."""
    try:
        d = Decimal(str(text).strip())
    except InvalidOperation as exc:
        raise FormatError(f"not a decimal: {text!r}") from exc
    if not d.is_finite():
        raise FormatError(f"not a finite decimal: {text!r}")
    return check_coord(int(d.scaleb(precision).to_integral_value(ROUND_HALF_EVEN)))


def from_units(value: int, precision: int = DEFAULT_PRECISION) -> str:
    if precision == 0:
        return str(value)
    sign = "-" if value < 0 else ""
    whole, frac = divmod(abs(value), 10 ** precision)
    return f"{sign}{whole}.{frac:0{precision}d}"


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True, slots=True)
class Box:
    """Open axis-parallel box ``(xmin, xmax) x (ymin, ymax)``."""

    xmin: int
    xmax: int
    ymin: int
    ymax: int

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError(f"degenerate box {self}")

    def contains(self, x: int, y: int) -> bool:
        return self.xmin < x < self.xmax and self.ymin < y < self.ymax


@dataclass(frozen=True, slots=True)
class Square:
    id: int
    cx: int
    cy: int
    side: int = UNIT

    @property
    def w(self) -> int:
        return self.side

    @property
    def h(self) -> int:
        return self.side


@dataclass(frozen=True, slots=True)
class Rect:
    """Unit-height rectangle; ``height`` is the unit ``S`` and ``width`` is free."""

    id: int
    cx: int
    cy: int
    width: int
    height: int = UNIT

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError(f"rect {self.id} has non-positive width")

    @property
    def w(self) -> int:
        return self.width

    @property
    def h(self) -> int:
        return self.height


def intersects(a: Square, b: Square) -> bool:
    return abs(a.cx - b.cx) < a.side and abs(a.cy - b.cy) < a.side


def intersects_rect(a: Rect, b: Rect) -> bool:
    return 2 * abs(a.cx - b.cx) < a.width + b.width and abs(a.cy - b.cy) < a.height


def overlaps(a, b) -> bool:
    """Open-interior overlap for any mix of squares and rects."""
    return 2 * abs(a.cx - b.cx) < a.w + b.w and 2 * abs(a.cy - b.cy) < a.h + b.h


def scaled_box(s: Square, a: int) -> Box:
    """Open box of side ``a * S`` concentric with ``s`` (``a`` is 2 or 4)."""
    if a not in (2, 4):
        raise ValueError("scale must be 2 or 4")
    half = a * s.side // 2
    return Box(s.cx - half, s.cx + half, s.cy - half, s.cy + half)


def grid_index(c: int, unit: int = UNIT) -> int:
    """Index of the unique grid line in the half-open span ``[c - S/2, c + S/2)``."""
    return _ceil_div(2 * c - unit, 2 * unit)


def grid_point_of(s) -> tuple[int, int]:
    """Return ``(row, col)`` of the grid point covered by ``s``."""
    return grid_index(s.cy, s.h), grid_index(s.cx, s.h)


def line_of(r) -> int:
    """Stabbing line (row) of a unit-height shape."""
    return grid_index(r.cy, r.h)


def interval_of(r) -> tuple[int, int]:
    """Horizontal extent in doubled units, so odd widths stay integral."""
    return 2 * r.cx - r.w, 2 * r.cx + r.w
