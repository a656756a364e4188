"""Cayley graphs of PGL_2(F_q) generated by reductions of integral quaternions of prime norm."""

from .basis import GeneratorSet, PrimeBasis, build_basis, select_generators
from .family import FamilyQuery, c_table, list_family, run_grid
from .graph import CayleyGraph, GraphReport, build, girth_bfs, verify_report
from .primes import FamilyParams, family_params
from .projective import GraphSpec, image_generators
from .quaternion import Quaternion
from .wordgirth import girth_words
from .words import factor

__version__ = "0.1.0"

__all__ = [
    "Quaternion",
    "PrimeBasis",
    "GeneratorSet",
    "build_basis",
    "select_generators",
    "factor",
    "FamilyParams",
    "family_params",
    "GraphSpec",
    "image_generators",
    "CayleyGraph",
    "GraphReport",
    "build",
    "girth_bfs",
    "girth_words",
    "verify_report",
    "FamilyQuery",
    "list_family",
    "run_grid",
    "c_table",
]
