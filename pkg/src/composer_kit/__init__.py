"""Composer models over the simplicial set of relations."""
from .scomplex import Relation, SSimplex
from .modelgen import ConditionSet, DetCondition, SurCondition

__all__ = ["Relation", "SSimplex", "ConditionSet", "DetCondition", "SurCondition"]
