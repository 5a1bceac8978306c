"""Rich console that prints run verdicts and written files."""

from pathlib import Path

from rich.console import Console

from gmtlab.cli.theme.palettes import Palette


class ThemedConsole:
    def __init__(self, palette: Palette):
        self.palette = palette
        self.console = Console(theme=palette.rich_theme(), highlight=False)

    def print(self, *args, style: str = "default", **kwargs):
        self.console.print(*args, style=style, **kwargs)

    def print_error(self, content: str):
        self.console.print(f"[error]✗[/error] {content}")

    def print_warning(self, content: str):
        self.console.print(f"[warning]⚠︎[/warning] {content}")

    def print_success(self, content: str):
        self.console.print(f"[success]✓[/success] {content}")

    def print_verdict(self, passed: bool, content: str):
        """One line per threshold check: ✓ when it holds, ✗ otherwise."""
        if passed:
            self.print_success(content)
        else:
            self.print_error(content)

    def print_written(self, path: Path) -> None:
        self.console.print(f"  [muted]wrote[/muted] [path]{path}[/path]")
