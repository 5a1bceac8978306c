"""Console palettes: semantic styles for verdicts, measured values and written files."""

from dataclasses import dataclass

from rich.style import Style
from rich.theme import Theme


@dataclass(frozen=True)
class Palette:
    """Colors by role; ``None`` leaves the terminal default."""

    text: str | None = None
    muted: str | None = None
    value: str | None = None
    accent: str | None = None
    path: str | None = None
    passed: str | None = None
    failed: str | None = None
    warned: str | None = None

    def rich_theme(self) -> Theme:
        return Theme(
            {
                "default": Style(color=self.text),
                "muted": Style(color=self.muted, dim=self.muted is None),
                "accent": Style(color=self.accent, bold=True),
                "value": Style(color=self.value),
                "path": Style(color=self.path, italic=True),
                "success": Style(color=self.passed),
                "warning": Style(color=self.warned),
                "error": Style(color=self.failed, bold=self.failed is None),
            }
        )


PALETTES: dict[str, Palette] = {
    "tokyo-night": Palette(
        text="#c0caf5",
        muted="#565f89",
        value="#7dcfff",
        accent="#7aa2f7",
        path="#9aa5ce",
        passed="#8be4e1",
        failed="#e48be4",
        warned="#e4e38b",
    ),
    # Redirected runs and CI logs
    "plain": Palette(),
}


def get_palette(name: str) -> Palette:
    if name not in PALETTES:
        raise ValueError(f"Unknown theme '{name}'. Available: {', '.join(sorted(PALETTES))}")
    return PALETTES[name]
