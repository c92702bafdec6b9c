import logging
from functools import reduce
from threading import Lock
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from core.errors import KnowledgeBaseError
from core.model.concept import And, Atomic, Concept, SomeData, SomeObject, Top
from core.model.fuzzy import AggregationOperator, LogicFamily, aggregate_max, combine
from core.model.hypothesis import Hypothesis, WeightedRule
from core.model.knowledge_base import KnowledgeBase


class Reasoner:
    """Структурный вычислитель степеней выводимости bed(a:C) для EL(D)-концептов.

    Для каждого концепта вычисляется вектор степеней по всем индивидам базы
    (в порядке KnowledgeBase.individual_order) и кэшируется по структурному
    равенству концепта. База неизменяема, поэтому кэш не инвалидируется.
    """

    def __init__(self, kb: KnowledgeBase,
                 conjunction: LogicFamily = LogicFamily.GOEDEL,
                 implication: LogicFamily = LogicFamily.LUKASIEWICZ):
        self.kb = kb
        self.conjunction = conjunction
        self.implication = implication
        self.logger = logging.getLogger("Reasoner")
        self._size = len(kb.individual_order)
        self._cache: dict = {}
        self._cache_lock = Lock()

        index = kb.individual_index
        closure = kb.subclass_closure()
        self._class_vectors = {cls: np.zeros(self._size) for cls in kb.classes}
        for ind, cls in kb.class_assertions:
            for sup in closure[cls]:
                self._class_vectors[sup][index[ind]] = 1.0

        self._roles = {}
        for role in kb.object_properties:
            edges = sorted((index[s], index[o]) for s, r, o in kb.role_assertions if r == role)
            self._roles[role] = (np.array([e[0] for e in edges], dtype=np.intp),
                                 np.array([e[1] for e in edges], dtype=np.intp))

        self._values = {}
        for prop in kb.data_properties:
            rows = sorted((index[i], float(v)) for i, p, v in kb.data_assertions if p == prop)
            self._values[prop] = (np.array([r[0] for r in rows], dtype=np.intp),
                                  np.array([r[1] for r in rows], dtype=float))

        self._all = np.ones(self._size, dtype=bool)
        self.logger.debug(f"Подготовлены индексы: {self._size} индивидов, {len(kb.classes)} классов")

    @classmethod
    def for_hypothesis(cls, kb: KnowledgeBase, hypothesis: Hypothesis) -> "Reasoner":
        return cls(kb, conjunction=hypothesis.conjunction, implication=hypothesis.implication)

    def degrees(self, concept: Concept) -> np.ndarray:
        """Вектор bed(a:C) по всем индивидам (только для чтения)"""
        cached = self._cache.get(concept)
        if cached is not None:
            return cached
        result = self._compute(concept)
        result.setflags(write=False)
        with self._cache_lock:
            return self._cache.setdefault(concept, result)

    def _compute(self, concept: Concept) -> np.ndarray:
        if isinstance(concept, Top):
            return np.ones(self._size)
        if isinstance(concept, Atomic):
            vector = self._class_vectors.get(concept.name)
            return vector.copy() if vector is not None else np.zeros(self._size)
        if isinstance(concept, SomeObject):
            out = np.zeros(self._size)
            subjects, objects = self._roles.get(concept.role, (np.empty(0, np.intp), np.empty(0, np.intp)))
            if subjects.size:
                # степени ролевых утверждений чёткие (1), t-норма с ними опускается
                np.maximum.at(out, subjects, self.degrees(concept.filler)[objects])
            return out
        if isinstance(concept, SomeData):
            out = np.zeros(self._size)
            subjects, values = self._values.get(concept.prop, (np.empty(0, np.intp), np.empty(0)))
            if subjects.size:
                np.maximum.at(out, subjects, concept.datatype.membership_array(values))
            return out
        if isinstance(concept, And):
            parts = [self.degrees(c) for c in concept.conjuncts]
            return np.array(reduce(self.conjunction.tnorm, parts), dtype=float)
        raise TypeError(f"неизвестный тип концепта: {type(concept).__name__}")

    def index_of(self, individual: str) -> int:
        try:
            return self.kb.individual_index[individual]
        except KeyError:
            raise KnowledgeBaseError(f"индивид {individual} не объявлен") from None

    def mask(self, individuals: Optional[Iterable[str]]) -> np.ndarray:
        """Булева маска множества индивидов; None означает всех"""
        if individuals is None:
            return self._all
        mask = np.zeros(self._size, dtype=bool)
        for ind in individuals:
            mask[self.index_of(ind)] = True
        return mask

    def names(self, mask: np.ndarray) -> frozenset:
        order = self.kb.individual_order
        return frozenset(order[i] for i in np.flatnonzero(mask))

    def bed(self, individual: str, concept: Concept) -> float:
        return float(self.degrees(concept)[self.index_of(individual)])

    def fuzzy_cardinality(self, concept: Concept, individuals: Union[Iterable[str], np.ndarray, None]) -> float:
        """|C| по множеству индивидов: сумма степеней"""
        return float(self.degrees(concept)[self.as_mask(individuals)].sum())

    def crisp_cardinality(self, concept: Concept, individuals: Union[Iterable[str], np.ndarray, None]) -> int:
        return int(np.count_nonzero(self.degrees(concept)[self.as_mask(individuals)] > 0.0))

    def confidence(self, body: Concept, positives: Union[Iterable[str], np.ndarray]) -> float:
        """Степень включения: доля покрытия тела, приходящаяся на положительные примеры"""
        denominator = self.fuzzy_cardinality(body, None)
        if denominator == 0.0:
            return 0.0
        return self.fuzzy_cardinality(body, positives) / denominator

    def support(self, body: Concept, individuals: Union[Iterable[str], np.ndarray]) -> float:
        mask = self.as_mask(individuals)
        count = int(np.count_nonzero(mask))
        if count == 0:
            return 0.0
        return self.fuzzy_cardinality(body, mask) / count

    def rule_values(self, rule: WeightedRule, implication: Optional[LogicFamily] = None) -> np.ndarray:
        """Нечёткий modus ponens: bed(a:C) ⊗ α для t-нормы, чьим резидуумом является импликация аксиом"""
        family = implication or self.implication
        return np.asarray(family.tnorm(self.degrees(rule.body), rule.degree), dtype=float)

    def rule_value(self, rule: WeightedRule, individual: str) -> float:
        return float(self.rule_values(rule)[self.index_of(individual)])

    def stage_values(self, rules: Sequence[WeightedRule], implication: Optional[LogicFamily] = None,
                     operator: AggregationOperator = AggregationOperator.MAX) -> np.ndarray:
        """Агрегат правил одной стадии (по умолчанию max)"""
        values = [self.rule_values(rule, implication) for rule in rules]
        if not values:
            return np.zeros(self._size)
        if operator is AggregationOperator.MAX:
            return np.asarray(aggregate_max(values), dtype=float)
        return np.asarray(reduce(lambda x, y: combine(operator, x, y), values), dtype=float)

    def hypothesis_values(self, hypothesis: Hypothesis) -> np.ndarray:
        aggregation = hypothesis.aggregation
        positive = self.stage_values(hypothesis.p_rules, hypothesis.implication, aggregation.positive)
        negative = self.stage_values(hypothesis.n_rules, hypothesis.implication, aggregation.negative)
        return np.asarray(combine(aggregation.final, positive, negative), dtype=float)

    def hypothesis_value(self, hypothesis: Hypothesis, individual: str) -> float:
        return float(self.hypothesis_values(hypothesis)[self.index_of(individual)])

    def coverage(self, hypothesis: Union[Hypothesis, Sequence[WeightedRule]], theta: Optional[float] = None) -> frozenset:
        """Cov(h) = {a | h(a) > 0}; при заданном θ θ-покрытие {a | h(a) ≥ θ}"""
        if not isinstance(hypothesis, Hypothesis):
            values = self.stage_values(list(hypothesis))
        else:
            values = self.hypothesis_values(hypothesis)
        covered = values > 0.0 if theta is None else values >= theta
        return self.names(covered)

    def as_mask(self, individuals) -> np.ndarray:
        if isinstance(individuals, np.ndarray) and individuals.dtype == bool:
            return individuals
        return self.mask(individuals)


def bed(kb: KnowledgeBase, individual: str, concept: Concept,
        family: LogicFamily = LogicFamily.GOEDEL) -> float:
    return Reasoner(kb, conjunction=family).bed(individual, concept)
