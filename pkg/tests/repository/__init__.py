"""
Repository layer tests.
"""

