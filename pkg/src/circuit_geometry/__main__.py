"""Module entry point: ``python -m circuit_geometry``."""

from .cli import main

if __name__ == "__main__":
    main(prog_name="cgeo")
