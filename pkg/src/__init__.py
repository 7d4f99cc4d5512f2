"""SiegelTheta - theta series on the Siegel-Jacobi space."""

__version__ = "1.0.0"
