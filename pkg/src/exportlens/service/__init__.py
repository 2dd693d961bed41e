"""Local HTTP service exposing the engine to the web UI and API clients."""

from .app import create_app

__all__ = ["create_app"]
