"""Entanglement harvesting with Unruh-DeWitt detectors.

Numerical core (``specfun``, ``quad``, ``wightman``, ``harvest``,
``asymptotics``, ``analysis``) plus the management commands that drive
sweeps and figure reproduction. All quantities are expressed in units of
the switching width, σ = 1.
"""
