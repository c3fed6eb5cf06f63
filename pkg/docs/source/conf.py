# Sphinx configuration of the qmlab documentation: API pages, command schemas, test notes and tutorial
import os
import sys

project = 'qmlab'
copyright = '2024, qmlab developers'
author = 'qmlab developers'
release = 'v0.1'
html_title = 'qmlab: quadrature mirror filters, Cuntz operators and dyadic measures'

# packages live at the repository root, next to docs/
sys.path.insert(0, os.path.abspath('../..'))

extensions = [
    'myst_parser',
    'sphinx.ext.autodoc',
    'sphinx-jsonschema',
]

source_suffix = {
    '.rst': 'restructuredtext',
    '.md': 'markdown',
}

myst_enable_extensions = [
    "deflist",
    "dollarmath",
]

autodoc_member_order = 'bysource'
autodoc_typehints = 'description'
autodoc_default_options = {
    'members': True,
    'undoc-members': False,
    'show-inheritance': True,
    'exclude-members': '__init__, __weakref__, __dict__',
}

exclude_patterns = ['**/test_*.py', '**/__pycache__', '_build']

html_theme = 'alabaster'
html_theme_options = {
    'description': 'Filter banks, restricted Cuntz operators, spectral scans and wavelet packets',
}
