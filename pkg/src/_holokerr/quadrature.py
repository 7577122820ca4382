import numpy as np
from scipy import special

DEFAULT_ORDER = 32


def gauss_legendre(order, low, high):
    """
    Gauss-Legendre nodes and weights mapped onto [low, high].

    >>> nodes, weights = gauss_legendre(2, 0.0, 1.0)
    >>> float(weights.sum())
    1.0
    """
    if order < 1:
        raise ValueError(f"Quadrature order must be positive, got {order}")
    nodes, weights = special.roots_legendre(order)
    half = 0.5 * (high - low)
    return low + half * (nodes + 1.0), half * weights


def integrate_1d(function, low, high, order=DEFAULT_ORDER):
    nodes, weights = gauss_legendre(order, low, high)
    return sum(w * function(t) for t, w in zip(nodes, weights))


def integrate_2d(function, bounds, order=DEFAULT_ORDER):
    """
    Tensor-product Gauss-Legendre rule over a rectangle.

    :param function: Callable f(s, t), may return arrays.
    :param bounds: ((s_low, s_high), (t_low, t_high)).
    """
    (s_low, s_high), (t_low, t_high) = bounds
    s_nodes, s_weights = gauss_legendre(order, s_low, s_high)
    t_nodes, t_weights = gauss_legendre(order, t_low, t_high)
    total = 0.0
    for s, ws in zip(s_nodes, s_weights):
        for t, wt in zip(t_nodes, t_weights):
            total = total + ws * wt * function(s, t)
    return total
