"""Heat content asymptotics for spectral boundary conditions on the unit ball."""

__version__ = "0.1.0"
