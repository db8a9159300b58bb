"""
This is the model of the Blaschke package. Here, you'll find the following:

- ``moebius.py`` - Contains the ``MoebiusTransform`` class.
- ``blaschkemodel.py`` - Contains the ``BlaschkeModel`` class, the parabolic product, the multiplier solver and the
  triple-root check.

"""

from . import moebius, blaschkemodel

__all__ = ['moebius', 'blaschkemodel', ]
