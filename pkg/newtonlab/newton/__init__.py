"""
This is the Newton map package of NewtonLab. Here, you'll find the following:

- ``model`` - the ``NewtonMapSpec`` and ``FixedPointInfo`` types and the analysis functions.
- ``controller.py`` - Contains the ``NewtonController`` class which runs the analysis in stages.

"""

from . import model
from . import controller

__all__ = ['model', 'controller', ]
