"""
This is the Blaschke package of NewtonLab. Here, you'll find the following:

- ``model`` - the disk models used by the surgery and the Moebius transforms that factor them.
- ``controller.py`` - Contains the ``BlaschkeController`` class.

"""

from . import model
from . import controller

__all__ = ['model', 'controller', ]
