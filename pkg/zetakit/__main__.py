#!/usr/bin/env python3
"""
zetakit - multiple zeta-star values with 2-3-1 indices

Run with: zetakit <command> [options] (or python -m zetakit)
Without a command, prints the command table.
"""

import sys
from pathlib import Path

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from zetakit.config import CONFIG_FILE, DEFAULTS, JOBS_ENV, env_jobs, load_config

console = Console()

COMMANDS = {
    "compute": {
        "label": "Compute",
        "description": "Print a truncated (exact) or limiting (numeric) zeta / zeta-star value",
        "module": "zetakit.compute",
    },
    "verify": {
        "label": "Verify",
        "description": "Check one identity instance and print its report",
        "module": "zetakit.verify",
    },
    "scan": {
        "label": "Scan",
        "description": "Check an identity family over a parameter grid",
        "module": "zetakit.scan",
    },
    "config": {
        "label": "Config",
        "description": "Show the effective configuration and where it comes from",
        "module": None,
    },
}


def shorten_path(path: Path) -> str:
    """Shorten path for display, using ~ for home."""
    home = Path.home()
    try:
        return "~/" + str(path.relative_to(home))
    except ValueError:
        return str(path)


def show_config():
    """Display current configuration."""
    config = load_config()

    console.print(Panel("[bold]zetakit Configuration[/bold]", border_style="cyan"))

    console.print("\n[bold cyan]Config File[/bold cyan]")
    if CONFIG_FILE.exists():
        console.print(f"  {shorten_path(CONFIG_FILE)}  [green]exists[/green]")
    else:
        console.print(f"  {shorten_path(CONFIG_FILE)}  [yellow]not found (using defaults)[/yellow]")

    for section, defaults in DEFAULTS.items():
        console.print(f"\n[bold cyan]{section.capitalize()}[/bold cyan]")
        table = Table(show_header=False, box=None, padding=(0, 2))
        table.add_column("Key", style="dim")
        table.add_column("Value")
        table.add_column("Source", justify="right")
        for key, value in config[section].items():
            source = "[dim]default[/dim]" if defaults.get(key) == value else "[green]config file[/green]"
            table.add_row(key, str(value), source)
        console.print(table)

    jobs = env_jobs()
    if jobs is not None:
        console.print(f"\n[bold cyan]Environment[/bold cyan]\n  {JOBS_ENV}={jobs} [dim](overrides --jobs)[/dim]")


def show_commands():
    """Print the command table."""
    console.print(
        Panel("[bold]zetakit[/bold]\n\nMultiple zeta-star values with 2-3-1 indices", border_style="cyan")
    )
    table = Table(show_header=True, header_style="bold cyan", box=None, padding=(0, 2))
    table.add_column("Command", style="cyan")
    table.add_column("Description")
    for key, cmd in COMMANDS.items():
        table.add_row(key, cmd["description"])
    console.print(table)
    console.print("\n[dim]Run 'zetakit <command> --help' for options.[/dim]")


def run_command(command: str, args: list[str]):
    """Run the selected command's main function."""
    import importlib

    cmd_info = COMMANDS[command]
    if cmd_info["module"] is None:
        show_config()
        return
    module = importlib.import_module(cmd_info["module"])

    # Replace sys.argv so the subcommand sees correct args
    sys.argv = [command] + args
    module.main()


def main():
    """Main entry point."""
    args = sys.argv[1:]

    if args and args[0] in COMMANDS:
        run_command(args[0], args[1:])
        return

    if not args or args[0] in ("--help", "-h"):
        show_commands()
        return

    console.print(f"[red]Unknown command: {args[0]}[/red]\n")
    console.print("Available commands: " + ", ".join(COMMANDS.keys()))
    sys.exit(2)


if __name__ == "__main__":
    main()
