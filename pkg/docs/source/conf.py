# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Project information -----------------------------------------------------
# https://www.sphinx-doc.org/en/master/usage/configuration.html#project-information

import os
import sys

import setuptools_scm

# Used when building API docs, put the dependencies
# of any class you are documenting here
autodoc_mock_imports = []

# Add the module path to sys.path here.
# If the directory is relative to the documentation root,
# use os.path.abspath to make it absolute, like shown here.
sys.path.insert(0, os.path.abspath("../.."))

project = "betahalton"
copyright = "2026, betahalton developers"
author = "betahalton developers"

try:
    release = setuptools_scm.get_version(root="../..", relative_to=__file__)
    release = release.split("+")[0]  # remove git hash
except LookupError:
    # if git is not initialised, still allow local build
    # with a dummy version
    release = "0.0.0"

# -- General configuration ---------------------------------------------------
# https://www.sphinx-doc.org/en/master/usage/configuration.html#general-configuration

extensions = [
    "sphinx.ext.napoleon",
    "sphinx.ext.autodoc",
    "sphinx_autodoc_typehints",
    "sphinx.ext.autosummary",
    "sphinx.ext.viewcode",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "myst_parser",
    "sphinx_design",
    "sphinx_gallery.gen_gallery",
    "sphinx.ext.autosectionlabel",
]

myst_enable_extensions = [
    "amsmath",
    "colon_fence",
    "deflist",
    "dollarmath",
    "fieldlist",
    "substitution",
]
# Automatically add anchors to markdown headings
myst_heading_anchors = 4

templates_path = ["_templates"]

# Automatically generate stub pages for API
autosummary_generate = True
autodoc_member_order = "bysource"

autodoc_default_options = {
    "members": True,
    "undoc-members": False,
    "show-inheritance": True,
}

# Prefix section labels with the document name
autosectionlabel_prefix_document = True

exclude_patterns = [
    "**.ipynb_checkpoints",
    "**/includes/**",
    # exclude .py and .ipynb files in examples generated by sphinx-gallery
    "**/README.rst",
    "gallery_builds/get_started/*.ipynb",
    "gallery_builds/how_to/*.ipynb",
]

# Configure Sphinx gallery
sphinx_gallery_conf = {
    "examples_dirs": ["galleries/get_started", "galleries/how_to"],
    "filename_pattern": "/*.py",  # which files to execute before inclusion
    "gallery_dirs": ["gallery_builds/get_started", "gallery_builds/how_to"],
    "run_stale_examples": True,
    "reference_url": {"betahalton": None},
    "within_subsection_order": "FileNameSortKey",
}

# -- Options for HTML output -------------------------------------------------
# https://www.sphinx-doc.org/en/master/usage/configuration.html#options-for-html-output
html_theme = "pydata_sphinx_theme"
html_title = "betahalton"
html_show_sourcelink = False

html_theme_options = {
    "logo": {
        "text": f"{project} v{release}",
    },
    "external_links": [],
    "show_toc_level": 2,  # sidebar levels that are expanded before scrolling, needed for API docs
}

intersphinx_mapping = {
    "numpy": ("https://numpy.org/doc/stable/", None),
    "mpmath": ("https://mpmath.org/doc/current/", None),
}
