"""
This is the CLI package of NewtonLab. Here, you'll find the following:

- ``nlcli.py`` - The ``newtonlab`` command line, with one subcommand per stage and JSON reports.
"""

from . import nlcli

__all__ = ['nlcli', ]
