"""Entry point for ``python -m d4mod``."""

from .cli import main

raise SystemExit(main())
