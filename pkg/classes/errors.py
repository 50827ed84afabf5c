#!/usr/bin/env python3
"""Exceptions raised by the orthogonal polynomial classes."""

from __future__ import annotations


class DomainError(ValueError):
    """A parameter lies outside the domain where a construction is defined."""


class ConfigError(ValueError):
    """A run configuration value could not be parsed or is invalid."""


class InvalidSystemError(ValueError):
    """Recurrence coefficients do not describe a positive-definite measure."""


class PrecisionExhaustedError(ArithmeticError):
    """Cancellation destroyed a quantity that must be strictly positive."""
