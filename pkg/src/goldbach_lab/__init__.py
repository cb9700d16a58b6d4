"""Numerical workbench for Goldbach representation functions and their explicit formulas."""

__version__ = "0.1.0"
