import logging
from dataclasses import dataclass, field
from typing import Mapping

from core.model.concept import (
    TOP, And, Atomic, Concept, SomeData, SomeObject, Top,
    make_and, max_width, render, role_depth,
)
from core.model.fuzzy import FuzzyDatatype
from core.model.fuzzy_set_family import FuzzySetFamily
from core.model.knowledge_base import KnowledgeBase


@dataclass(frozen=True)
class RefinementContext:
    kb: KnowledgeBase
    families: Mapping[str, FuzzySetFamily] = field(default_factory=dict)
    max_conjuncts: int = 5
    max_role_depth: int = 1

    def fits(self, concept: Concept) -> bool:
        return max_width(concept) <= self.max_conjuncts and role_depth(concept) <= self.max_role_depth


class RefinementOperator:
    """Нисходящий оператор уточнения ρ над концептами EL(D).

    Каждый результат структурно не шире исходного концепта: либо заменён
    один конъюнкт на его уточнение, либо добавлен новый конъюнкт из ρ(⊤).
    Конъюнкции с повторяющимися конъюнктами отбрасываются.
    """

    def __init__(self, ctx: RefinementContext):
        self.ctx = ctx
        self.logger = logging.getLogger("Refinement")
        self._top_refinements = self._build_top()
        self._memo: dict = {}

    def _build_top(self) -> tuple:
        kb = self.ctx.kb
        candidates: list = [Atomic(name=cls) for cls in kb.classes]
        candidates += [SomeObject(role=role, filler=TOP) for role in kb.object_properties]
        for prop in kb.numeric_properties:
            family = self.ctx.families.get(prop)
            if family is not None:
                candidates += [SomeData(prop=prop, datatype=d) for d in family.sets]
        for prop in kb.boolean_properties:
            candidates += [SomeData(prop=prop, datatype=FuzzyDatatype.equals_bool(v)) for v in (True, False)]
        return tuple(sorted((c for c in candidates if self.ctx.fits(c)), key=render))

    def refine(self, concept: Concept) -> list:
        """ρ(C), отфильтрованное по ограничениям контекста, в каноническом порядке"""
        cached = self._memo.get(concept)
        if cached is None:
            unique = {c for c in self._raw(concept) if c is not None and c != concept and self.ctx.fits(c)}
            cached = tuple(sorted(unique, key=render))
            self._memo[concept] = cached
        return list(cached)

    def _raw(self, concept: Concept):
        if isinstance(concept, Top):
            yield from self._top_refinements
        elif isinstance(concept, Atomic):
            for sub in sorted(self.ctx.kb.subsumees(concept.name)):
                yield Atomic(name=sub)
            yield from self._extensions(concept)
        elif isinstance(concept, SomeObject):
            for filler in self._unbounded(concept.filler):
                yield SomeObject(role=concept.role, filler=filler)
            yield from self._extensions(concept)
        elif isinstance(concept, SomeData):
            yield from self._extensions(concept)
        elif isinstance(concept, And):
            parts = concept.conjuncts
            for i, part in enumerate(parts):
                for replacement in self._raw(part):
                    if replacement is not None:
                        yield make_and(parts[:i] + (replacement,) + parts[i + 1:])

    def _unbounded(self, concept: Concept):
        # наполнитель уточняется рекурсивно; ограничения проверяются на внешнем концепте
        return [c for c in self._raw(concept) if c is not None and c != concept]

    def _extensions(self, concept: Concept):
        for extra in self._top_refinements:
            yield make_and((concept, extra))


def refine(ctx: RefinementContext, concept: Concept) -> list:
    return RefinementOperator(ctx).refine(concept)
