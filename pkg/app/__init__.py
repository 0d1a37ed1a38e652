"""
cp-estimator

On-line estimation of the power-coefficient curve of a wind turbine.
"""

__version__ = "1.0.0"
