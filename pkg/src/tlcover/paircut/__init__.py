"""Digraph pair cut: instance types, the arc-to-vertex reduction and exact solvers."""

from ._kernels import BACKEND
from .instances import CdpcInstance, InstanceError, VdpcInstance
from .solver import (
    NEW_SOURCE,
    ArcVertex,
    Copy,
    SearchStats,
    cdpc_to_vdpc,
    reachable_from_source,
    solve_cdpc,
    solve_vdpc,
)

__all__ = [
    "BACKEND",
    "ArcVertex",
    "CdpcInstance",
    "Copy",
    "InstanceError",
    "NEW_SOURCE",
    "SearchStats",
    "VdpcInstance",
    "cdpc_to_vdpc",
    "reachable_from_source",
    "solve_cdpc",
    "solve_vdpc",
]
