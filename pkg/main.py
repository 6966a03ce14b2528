"""CLI entrypoint for horocone.

Loads environment variables via python-dotenv (HOROCONE_CONFIG, HOROCONE_LOG,
...) before importing the package, then hands over to the typer app.
"""

from dotenv import load_dotenv

load_dotenv()

# ruff: noqa: E402
from src.cli.app import app

if __name__ == "__main__":
    app()
