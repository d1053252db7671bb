"""Entry point for conformal-forge."""

from conformal_forge.cli import main


if __name__ == "__main__":
    main()
