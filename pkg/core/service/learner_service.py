import logging
import math
from dataclasses import dataclass, replace
from typing import Mapping, Optional

import numpy as np

from core.errors import LearningError
from core.model.concept import TOP, Concept, conjunct_count, render
from core.model.fuzzy_set_family import FuzzySetFamily
from core.model.hypothesis import Hypothesis, WeightedRule
from core.model.knowledge_base import KnowledgeBase
from core.model.task import LearningTask
from core.service.fuzzification_service import FuzzificationService
from core.service.reasoner import Reasoner
from core.service.refinement_service import RefinementContext, RefinementOperator


@dataclass(frozen=True)
class StageInputs:
    """Входные данные одной стадии; неположительные примеры NP = N ∪ U"""

    target: str
    pos: frozenset
    positives: frozenset
    negatives: frozenset
    unlabelled: frozenset
    theta: float
    eta: float
    max_conjuncts: int
    max_role_depth: int
    backtrack: int = 5

    def __post_init__(self):
        if not self.pos <= self.positives:
            raise LearningError("Pos должно быть подмножеством P")
        if (self.positives & self.negatives) or (self.positives & self.unlabelled) or (self.negatives & self.unlabelled):
            raise LearningError("множества P, N и U должны быть попарно непересекающимися")

    @property
    def non_positives(self) -> frozenset:
        return self.negatives | self.unlabelled


@dataclass
class _Candidate:
    concept: Concept
    gain: float
    confidence: float

    @property
    def rank(self) -> tuple:
        # больший прирост, затем большая уверенность, меньше конъюнктов, канонический порядок
        return -self.gain, -self.confidence, conjunct_count(self.concept), render(self.concept)


class Learner:
    """Двухстадийный индуктивный learner: P-стадия покрывает положительные примеры,
    N-стадия учится распознавать ложноположительные"""

    def __init__(self, kb: KnowledgeBase, families: Mapping[str, FuzzySetFamily],
                 reasoner: Optional[Reasoner] = None):
        self.kb = kb
        self.families = dict(families)
        self.reasoner = reasoner or Reasoner(kb)
        self.logger = logging.getLogger("Learner")
        self._operators: dict = {}

    def _operator(self, inputs: StageInputs) -> RefinementOperator:
        key = (inputs.max_conjuncts, inputs.max_role_depth)
        if key not in self._operators:
            self._operators[key] = RefinementOperator(RefinementContext(
                kb=self.kb, families=self.families,
                max_conjuncts=inputs.max_conjuncts, max_role_depth=inputs.max_role_depth,
            ))
        return self._operators[key]

    def gain(self, candidate: Concept, current: Concept, pos_remaining) -> float:
        """p · (log2 cf′ − log2 cf), уверенности считаются относительно Pos"""
        pos = self.reasoner.as_mask(pos_remaining)
        return self._gain(candidate, current, pos, self.reasoner.confidence(current, pos))

    def _gain(self, candidate: Concept, current: Concept, pos: np.ndarray, cf_current: float) -> float:
        reasoner = self.reasoner
        both = reasoner.conjunction.tnorm(reasoner.degrees(candidate), reasoner.degrees(current))
        p = float(np.asarray(both)[pos].sum())
        cf_candidate = reasoner.confidence(candidate, pos)
        if p == 0.0 or cf_candidate == 0.0 or cf_current == 0.0:
            return 0.0
        return p * (math.log2(cf_candidate) - math.log2(cf_current))

    def _accepts(self, body: Concept, positives: np.ndarray, non_positives: np.ndarray, inputs: StageInputs) -> bool:
        confidence = self.reasoner.confidence(body, positives)
        support = self.reasoner.support(body, non_positives)
        return confidence >= inputs.theta and support <= inputs.eta

    def learn_one_axiom(self, inputs: StageInputs) -> Optional[Concept]:
        """Жадный поиск тела аксиомы C ⊑ T от ⊤ с возвратом по стеку top-k уточнений.

        Возвращает тело аксиомы или None, если ничего выучить нельзя.
        """
        operator = self._operator(inputs)
        reasoner = self.reasoner
        pos = reasoner.mask(inputs.pos)
        positives = reasoner.mask(inputs.positives)
        non_positives = reasoner.mask(inputs.non_positives)

        current: Concept = TOP
        visited = {current}
        stack: list[_Candidate] = []
        backtracks = 0

        while True:
            cf_current = reasoner.confidence(current, pos)
            scored = []
            for candidate in operator.refine(current):
                if candidate in visited:
                    continue
                scored.append(_Candidate(
                    concept=candidate,
                    gain=self._gain(candidate, current, pos, cf_current),
                    confidence=reasoner.confidence(candidate, pos),
                ))
            improving = [c for c in scored if c.gain > 0.0]

            if improving:
                best = min(improving, key=lambda c: c.rank)
                self.logger.debug(f"{inputs.target}: {render(current)} → {render(best.concept)} (gain {best.gain:.4f})")
                stack = self._merge_stack(stack, [c for c in scored if c is not best and c.confidence > 0.0],
                                          inputs.backtrack)
                current = best.concept
                visited.add(current)
                continue

            if self._accepts(current, positives, non_positives, inputs):
                return current

            stack = [c for c in stack if c.concept not in visited]
            if not stack or backtracks >= inputs.backtrack:
                return None
            popped = stack.pop(0)
            backtracks += 1
            self.logger.debug(f"{inputs.target}: возврат к {render(popped.concept)}")
            current = popped.concept
            visited.add(current)

    @staticmethod
    def _merge_stack(stack: list, fresh: list, size: int) -> list:
        merged = {c.concept: c for c in stack}
        for c in fresh:
            merged.setdefault(c.concept, c)
        ordered = sorted(merged.values(), key=lambda c: (-c.confidence, render(c.concept)))
        return ordered[:size]

    def pn_foil_dl(self, inputs: StageInputs) -> list[WeightedRule]:
        """Стадийный learner: индуцирует аксиомы, пока остаются непокрытые положительные"""
        rules: list[WeightedRule] = []
        bodies = set()
        pos = inputs.pos
        while pos:
            body = self.learn_one_axiom(replace(inputs, pos=pos))
            if body is None:
                break
            if body in bodies:
                self.logger.debug(f"{inputs.target}: аксиома {render(body)} уже выучена")
                break
            degree = self.reasoner.confidence(body, inputs.positives)
            rule = WeightedRule(body=body, head=inputs.target, degree=min(max(degree, 0.0), 1.0))
            rules.append(rule)
            bodies.add(body)

            covered = self.reasoner.names(self.reasoner.rule_values(rule) > 0.0) & pos
            pos = pos - covered
            self.logger.info(f"Выучено правило {rule}; покрыто {len(covered)}, осталось {len(pos)}")
        return rules

    def pn_owl(self, task: LearningTask) -> Hypothesis:
        """Строит итоговый ансамбль: правила P-стадии и, при наличии ложноположительных, N-стадии"""
        task.validate_against(self.kb)
        individuals = self.kb.individuals
        positives = task.positives & individuals
        negatives = task.negatives & individuals
        hypothesis = Hypothesis(target=task.target, conjunction=task.conjunction, implication=task.implication)

        self.logger.info(f"P-стадия для {task.target}: {len(positives)} положительных, {len(negatives)} отрицательных")
        p_rules = self.pn_foil_dl(StageInputs(
            target=task.target, pos=positives, positives=positives, negatives=negatives,
            unlabelled=individuals - positives - negatives,
            theta=task.theta_p, eta=task.eta_p,
            max_conjuncts=task.max_conjuncts_p, max_role_depth=task.max_depth_p, backtrack=task.backtrack,
        ))
        if not p_rules:
            self.logger.warning(f"{task.target}: ничего не выучено")
            return hypothesis
        hypothesis = hypothesis.model_copy(update={"p_rules": tuple(p_rules)})
        if not task.n_stage:
            return hypothesis

        covered = self.reasoner.coverage(p_rules, theta=task.theta_p)
        false_positives = covered - positives
        self.logger.info(f"{task.target}: покрыто {len(covered)}, TP={len(covered & positives)}, FP={len(false_positives)}")
        if not false_positives:
            return hypothesis

        n_rules = self.pn_foil_dl(StageInputs(
            target=task.false_positive_target, pos=false_positives, positives=false_positives,
            negatives=positives, unlabelled=individuals - false_positives - positives,
            theta=task.theta_n, eta=task.eta_n,
            max_conjuncts=task.max_conjuncts_n, max_role_depth=task.max_depth_n, backtrack=task.backtrack,
        ))
        if not n_rules:
            self.logger.info(f"{task.target}: N-стадия ничего не выучила")
            return hypothesis
        return hypothesis.model_copy(update={"n_rules": tuple(n_rules)})

    def classify(self, hypothesis: Hypothesis, individual: str) -> tuple[float, bool]:
        value = self.reasoner.hypothesis_value(hypothesis, individual)
        return value, value > 0.0


def learn(kb: KnowledgeBase, task: LearningTask,
          families: Optional[Mapping[str, FuzzySetFamily]] = None) -> tuple[Hypothesis, dict]:
    """Полный прогон PN-OWL: нечёткие множества по базе, затем обе стадии"""
    if families is None:
        families = FuzzificationService.from_task(task).build_families(kb)
    reasoner = Reasoner(kb, conjunction=task.conjunction, implication=task.implication)
    return Learner(kb, families, reasoner).pn_owl(task), dict(families)


def classify(kb: KnowledgeBase, hypothesis: Hypothesis, individual: str) -> tuple[float, bool]:
    value = Reasoner.for_hypothesis(kb, hypothesis).hypothesis_value(hypothesis, individual)
    return value, value > 0.0
