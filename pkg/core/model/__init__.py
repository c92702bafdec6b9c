from .fuzzy import LogicFamily, FuzzyDatatype, DatatypeKind, AggregationChoice, aggregate_star, eval_membership
from .concept import Concept, Top, Atomic, SomeObject, SomeData, And, TOP, conjunct_count, role_depth, render
from .knowledge_base import KnowledgeBase, PropertyKind
from .task import LearningTask, Label, FuzzificationMethod
from .hypothesis import WeightedRule, Hypothesis
from .fuzzy_set_family import FuzzySetFamily, CMeansConfig
from .metrics import FoldMetrics, MetricsReport, TargetSummary
from .evaluation_run import EvaluationRun
from .fold_result import FoldResult
