"""
Fixed-step classical Runge-Kutta integration.
"""

from typing import Any, Callable


def rk4_step(f: Callable[[float, Any], Any], t: float, x, h: float):
    """Advance x' = f(t, x) by one step of size h.

    Works for floats and numpy arrays alike.
    """
    half = 0.5 * h
    k1 = f(t, x)
    k2 = f(t + half, x + half * k1)
    k3 = f(t + half, x + half * k2)
    k4 = f(t + h, x + h * k3)
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_step_sampled(f: Callable[[Any, Any], Any], x, h: float, u_start, u_mid, u_end):
    """Advance x' = f(x, u) by one step when u is only known at the step's start, midpoint and end."""
    half = 0.5 * h
    k1 = f(x, u_start)
    k2 = f(x + half * k1, u_mid)
    k3 = f(x + half * k2, u_mid)
    k4 = f(x + h * k3, u_end)
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
