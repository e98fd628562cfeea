"""Console and logging setup shared by the whole package."""

import logging

import rich.console
import rich.logging
import rich.progress

console = rich.console.Console(stderr=True)

_configured = False


def get_logger(name: str) -> logging.Logger:
    """Return a module logger whose records are rendered by `rich`."""
    global _configured
    if not _configured:
        handler = rich.logging.RichHandler(console=console, show_path=False)
        handler.setFormatter(logging.Formatter("%(message)s"))
        root = logging.getLogger("cyclord")
        root.addHandler(handler)
        root.setLevel(logging.WARNING)
        _configured = True
    return logging.getLogger(name)


def set_verbosity(verbose: int) -> None:
    """Lower the package log level: 0 warnings, 1 info, 2 or more debug."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    get_logger("cyclord").setLevel(level)


def progress_bar() -> rich.progress.Progress:
    """Create the progress bar used by long-running verification suites."""
    return rich.progress.Progress(
        rich.progress.TextColumn("[progress.description]{task.description}"),
        rich.progress.SpinnerColumn(),
        rich.progress.BarColumn(),
        rich.progress.TaskProgressColumn(),
        rich.progress.MofNCompleteColumn(),
        rich.progress.TimeRemainingColumn(elapsed_when_finished=True),
        console=console,
    )
