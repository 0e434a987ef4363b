"""Small result records returned by solver updates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Diff:
    """Change of a maintained MIS caused by one update."""

    added: frozenset = frozenset()
    removed: frozenset = frozenset()

    @property
    def empty(self) -> bool:
        return not self.added and not self.removed


@dataclass(frozen=True)
class SizeReport:
    """Outcome of one update of a line-based approximation.

    ``line`` is the stabbing line the update touched; ``parity`` is the
    winning line parity (0 for even lines) after the update.
    """

    size: int
    line: Optional[int] = None
    parity: int = 0
