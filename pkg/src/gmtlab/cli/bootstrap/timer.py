"""Wall-clock timing of the phases of a run (``--timer``)."""

import time
from dataclasses import dataclass, field

from gmtlab.cli.theme import console


@dataclass
class PhaseTimer:
    """Times one phase; an enabled timer prints and records its duration."""

    phase: str
    enabled: bool
    elapsed: float | None = None
    _start: float = field(default=0.0, repr=False)

    def __enter__(self) -> "PhaseTimer":
        if self.enabled:
            self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        if not self.enabled:
            return
        self.elapsed = time.perf_counter() - self._start
        _phases.append((self.phase, self.elapsed))
        console.console.print(
            f"[muted]⏱  {self.phase}:[/muted] [value]{self.elapsed:.3f}s[/value]"
        )


_enabled = False
_phases: list[tuple[str, float]] = []


def enable_timer(enabled: bool = True) -> None:
    """Switch timing on or off and forget previously recorded phases."""
    global _enabled
    _enabled = enabled
    _phases.clear()


def timer(phase: str) -> PhaseTimer:
    return PhaseTimer(phase, _enabled)


def recorded_phases() -> list[tuple[str, float]]:
    return list(_phases)


def print_total() -> None:
    """Print the summed duration of the recorded phases."""
    if not _phases:
        return
    total = sum(elapsed for _, elapsed in _phases)
    console.console.print(
        f"[muted]⏱  total ({len(_phases)} phases):[/muted] [value]{total:.3f}s[/value]"
    )
