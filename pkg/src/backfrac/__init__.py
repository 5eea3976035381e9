"""Sobolev-type regularization of backward time-fractional diffusion."""
__version__ = "0.1.0"
