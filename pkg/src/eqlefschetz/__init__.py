"""Refined equivariant Lefschetz invariants for finite simplicial G-complexes."""

from .groups import FiniteGroup, Subgroup, WeylGroup, conjugacy_classes_of_subgroups, small_groups
from .gcw import GComplex, EquivariantMap, FixedSubcomplex
from .burnside import BurnsideRing, LinearSphereMap, ch0, ch0_inverse, equivariant_degree
from .fundamental import Analysis, Frame
from .twisted import TwistedChainEndo, TwistedClassSum, refined_lefschetz, incidence_lefschetz
from .lefschetz import (LambdaElement, cover_chain, lambda_, lambda_local, augment, character,
                        character_inverse, verify_fixed_point_theorem, canonical_report)
from .splitting import FilteredModule, split_components, splitting_roundtrip

__version__ = "0.1.0"
