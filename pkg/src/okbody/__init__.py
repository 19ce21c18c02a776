"""Exact Okounkov bodies of projectivized rank-two toric vector bundles.

Given a smooth complete fan and per-ray rank-two filtration data, this package
builds the global Okounkov cone of the projectivized bundle, slices it into
per-class bodies with exact vertices, volumes and lattice points, and checks
every output against an independent section-counting oracle.
"""

__version__ = "0.1.0"
