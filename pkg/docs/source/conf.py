# Configuration file for the Sphinx documentation builder.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys
from importlib.metadata import version as package_version

sys.path.insert(0, os.path.abspath("../../src"))

# -- Project information -----------------------------------------------------

project = "hypercauchy"
copyright = "2024, hypercauchy developers"
author = "hypercauchy developers"
version = package_version("hypercauchy")
release = version

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "myst_parser",
]

# Docstrings use reST field lists (:param:, :returns:, :raises:)
autodoc_member_order = "bysource"
autodoc_typehints = "description"

templates_path = ["_templates"]
exclude_patterns = []

# -- Options for HTML output -------------------------------------------------

html_theme = "alabaster"
html_static_path = ["_static"]
html_theme_options = {
    "show_powered_by": False,
    "github_user": "hypercauchy",
    "github_repo": "hypercauchy",
    "github_banner": False,
    "show_related": False,
}

html_show_sourcelink = False
html_show_sphinx = False
add_function_parentheses = False
