"""Longitudinal car-speed control lab.

Simulates a mid-size sedan on a suite of test roads, drives it with a
baseline PI speed controller, trains feed-forward networks to imitate the
PI with an N-step-ahead target, wraps them into a neural predictive
functional controller, and scores PI vs. PFC on tracking error and fuel
consumption.
"""

__version__ = "0.1.0"

from .vehicle import VehicleParams, VehicleState, PedalCommand, default_params
from .roads import RoadProfile, RoadSegment, builtin_suite

__all__ = [
    "VehicleParams",
    "VehicleState",
    "PedalCommand",
    "default_params",
    "RoadProfile",
    "RoadSegment",
    "builtin_suite",
    "__version__",
]
