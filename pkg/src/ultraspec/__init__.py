"""Exact spectra and pseudospectra of matrices and pencils over Q_p."""

__version__ = "0.1.0"
