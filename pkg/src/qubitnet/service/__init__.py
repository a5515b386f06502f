"""HTTP service wrapping the simulator: pydantic models, handlers, app."""

from .app import create_app

__all__ = ["create_app"]
