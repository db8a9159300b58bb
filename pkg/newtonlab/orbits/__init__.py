"""
This is the orbits package of NewtonLab. Here, you'll find the following:

- ``model`` - orbit classification, basin grids and the postcritically-minimal check.
- ``controller.py`` - Contains the ``OrbitController`` class.

"""

from . import model
from . import controller

__all__ = ['model', 'controller', ]
