"""Numerical evaluation and Monte Carlo validation of Bernstein and Bennett
type tail bounds for matrix martingales with Orlicz-bounded differences."""

__version__ = "0.1.0"
