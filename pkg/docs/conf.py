"""Sphinx configuration for pyD4Mod."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

project = "pyD4Mod"
author = "pyD4Mod contributors"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx_autodoc_typehints",
]

napoleon_google_docstring = True
autodoc_member_order = "bysource"
html_theme = "sphinx_rtd_theme"
