"""Modified Leray-alpha laboratory: torus spectral solver, Kolmogorov-flow
stability analysis, and global-attractor dimension bounds."""

__version__ = "0.1.0"
