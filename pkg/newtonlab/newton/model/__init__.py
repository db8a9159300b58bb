"""
This is the model of the Newton map package. Here, you'll find the following:

- ``newtonmap.py`` - Contains the ``NewtonMapSpec`` class, the map construction and critical points.
- ``fixedpoint.py`` - Contains the ``FixedPointInfo`` class, fixed point classification, multipliers and the Newton
  character test.

"""

from . import newtonmap, fixedpoint

__all__ = ['newtonmap', 'fixedpoint', ]
