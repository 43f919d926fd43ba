# Sphinx configuration of the pyVLC documentation
import os
import sys
sys.path.insert(0, os.path.abspath('..'))

from pyVLC import __version__

project = 'pyVLC'
copyright = '2020, pyVLC developers'
author = 'pyVLC developers'
release = __version__

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              'sphinx_autodoc_typehints',
              'sphinx_rtd_theme']

autodoc_member_order = 'bysource'

templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
