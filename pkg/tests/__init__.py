"""
Test package for cp-estimator.
"""
