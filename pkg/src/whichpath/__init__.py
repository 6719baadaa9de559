"""Single-photon which-path interference: fringes, markers, and uncertainty checks."""

__version__ = "0.1.0"
