"""
This is the surgery package of NewtonLab. Here, you'll find the following:

- ``model`` - The disk and sector models, their dilatation and the area condition.
- ``controller.py`` - Contains the ``SurgeryController`` class.

"""

from . import model
from . import controller

__all__ = ['model', 'controller', ]
