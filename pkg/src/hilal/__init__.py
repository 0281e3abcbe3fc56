"""Lunar crescent visibility and Hijri month starts for Morocco."""
__version__ = "0.1.0"
