"""
unitfit - maximum-likelihood fitting of unit-interval distributions
"""

__version__ = "1.0.0"
