"""HTTP service wrapping the formreduce core."""

from .app import app, create_app

__all__ = ["app", "create_app"]
