"""Exact computations with bound quiver algebras: Gorenstein-projective
modules, stable Hom and Ext, and deformation rings."""

from .errors import (AlgebraError, AlgebraMismatch, DimensionMismatch, FieldError, HypothesisFails,
                     InvalidLift, InvalidModule, MalformedRelation, NotAdmissible, NotMonomial, NotPerfect,
                     ParseError, PrerequisiteFails, UnsupportedField, ZeroGenerator, ZeroModule)
from .exactlin import QQ, Matrix, PrimeField, field_from_spec
from .quiver import BoundQuiverAlgebra, Path, Quiver, Relation, build_algebra, make_relation
from .repmod import (Decomp, Iso, Morphism, Representation, cyclic_module, direct_sum, hom, is_indecomposable,
                     is_isomorphic, projective, projective_cover, regular_module, strip_projectives, syzygy)
from .homology import (Verdict, ext, ext1, ext_via_syzygy, injective_dimension, is_cohen_macaulay,
                       is_gorenstein, is_gorenstein_projective, stable_hom)
from .monomial import gproj_indecomposables, is_perfect_pair, overlaps, perfect_paths, syzygy_of_perfect
from .deformation import (LiftOrderN, RingTag, canonical_selfext_lift, classify_defo_ring, compare_with_syzygy,
                          extend_lift, tangent_space)
from .transport import Bimodule, regular_bimodule, tensor, transport_check, twisted_regular
from .fixtures import fixture

__version__ = "0.1.0"
