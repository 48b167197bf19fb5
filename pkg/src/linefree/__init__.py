"""Freeness and near freeness of complex projective line arrangements."""

from __future__ import annotations

from .arrangement import (
    Arrangement,
    IncidenceStructure,
    LineProfile,
    MultiplicityVector,
    ProjLine,
    classify_profile_13,
    intersect,
    line_profile,
    line_profiles,
    multiple_points,
)
from .certify import (
    Certificate,
    analyze,
    certify_nearly_free_le12,
    certify_terao_13,
    reduce_terao_14,
)
from .diophantine import LinearSystem, SolutionSet, enumerate_nonneg, predefined
from .errors import LinefreeError, ParseError
from .invariants import (
    CharPoly,
    ExponentPair,
    Kind,
    char_poly,
    exponents_from_chi,
    hirzebruch_check,
    tjurina_combinatorial,
)
from .io import load, parse
from .isomorphism import lattice_isomorphic
from .kernels import BACKEND
from .restriction import exponents_2multi, nearly_free_sufficiency, ziegler
from .syzygy import FreenessVerdict, JacobianEngine, mdr, nf_dims, tau_algebraic, verdict

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "IncidenceStructure", "LineProfile", "MultiplicityVector", "ProjLine",
    "classify_profile_13", "intersect", "line_profile", "line_profiles", "multiple_points",
    "Certificate", "analyze", "certify_nearly_free_le12", "certify_terao_13", "reduce_terao_14",
    "LinearSystem", "SolutionSet", "enumerate_nonneg", "predefined",
    "LinefreeError", "ParseError",
    "CharPoly", "ExponentPair", "Kind", "char_poly", "exponents_from_chi", "hirzebruch_check",
    "tjurina_combinatorial",
    "load", "parse", "lattice_isomorphic", "BACKEND",
    "exponents_2multi", "nearly_free_sufficiency", "ziegler",
    "FreenessVerdict", "JacobianEngine", "mdr", "nf_dims", "tau_algebraic", "verdict",
]
