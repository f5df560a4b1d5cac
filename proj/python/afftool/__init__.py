"""Affine transformations of F_p^d: orders, cycle structure, and the
classification tables, backed by the C++ core."""

try:
    from ._afftool import (
        catalog,
        classify,
        construct,
        cycles,
        meo,
        order,
        properties,
        verify_cycles,
        verify_orders,
    )
except ImportError:  # in-tree test runs put the extension on sys.path directly
    from _afftool import (
        catalog,
        classify,
        construct,
        cycles,
        meo,
        order,
        properties,
        verify_cycles,
        verify_orders,
    )

__all__ = [
    "catalog",
    "classify",
    "construct",
    "cycles",
    "meo",
    "order",
    "properties",
    "verify_cycles",
    "verify_orders",
]
