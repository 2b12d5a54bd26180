"""Dihedral and O(2) group structure: actions, isotypical bases, subgroup classes."""

from .group import DihedralElement, O2Element, GroupElement, act, diagonal_embedding
from .isotypic import IsotypicalComponent, isotypical_basis
from .subgroups import Subgroup, are_conjugate, weyl_order
from .classes import (
    SubgroupClass,
    classify,
    class_at,
    full_class,
    make_class,
    n_pairs,
    subconjugate,
    subgroup_classes,
)

__all__ = [
    "DihedralElement",
    "O2Element",
    "GroupElement",
    "act",
    "diagonal_embedding",
    "IsotypicalComponent",
    "isotypical_basis",
    "Subgroup",
    "are_conjugate",
    "weyl_order",
    "SubgroupClass",
    "classify",
    "class_at",
    "full_class",
    "make_class",
    "n_pairs",
    "subconjugate",
    "subgroup_classes",
]
