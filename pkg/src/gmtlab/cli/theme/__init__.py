from gmtlab.cli.theme.console import ThemedConsole
from gmtlab.cli.theme.palettes import PALETTES, Palette, get_palette
from gmtlab.core.settings import settings

console = ThemedConsole(get_palette(settings.cli.theme))

__all__ = ["PALETTES", "Palette", "ThemedConsole", "console", "get_palette"]
