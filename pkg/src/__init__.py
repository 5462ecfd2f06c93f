"""oortlift: exact arithmetic for ramification, KGB obstructions, lifts and Hurwitz trees."""

__version__ = "0.4.0"
__description__ = "Exact computations for the local lifting problem"
