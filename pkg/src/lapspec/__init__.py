"""Laplacian spectral characterization tools: graph generators, exact
Laplacian polynomials, exhaustive cospectral search and executable checks
for path-friendship graphs."""

from __future__ import annotations

from .graph import Graph, PathFriendshipSpec, StarlikeSpec
from .spectral import CharPoly, Spectrum, char_poly, eigenvalues

__version__ = "0.1.0"

__all__ = ["Graph", "PathFriendshipSpec", "StarlikeSpec", "CharPoly", "Spectrum", "char_poly", "eigenvalues"]
