"""HTTP service wrapping the test procedures and study runner.

Run it with ``hdrank serve`` or directly via uvicorn:
``uvicorn hdrank.service:app``.
"""

from .app import create_app

app = create_app()

__all__ = ["app", "create_app"]
