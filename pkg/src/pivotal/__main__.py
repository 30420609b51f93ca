"""Module entry point: `python -m pivotal`."""

from .cli import entrypoint

if __name__ == "__main__":
    entrypoint()
