import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
from sklearn.model_selection import StratifiedKFold

from core.errors import LearningError
from core.model.hypothesis import Hypothesis
from core.model.knowledge_base import KnowledgeBase
from core.model.metrics import FoldMetrics, MetricsReport
from core.model.task import FuzzificationMethod, Label, LearningTask
from core.service.learner_service import learn
from core.service.reasoner import Reasoner


@dataclass(frozen=True)
class FoldPlan:
    folds: tuple[frozenset, ...]
    seed: int
    stratified: bool = True

    @property
    def k(self) -> int:
        return len(self.folds)


def make_folds(task: LearningTask, k: int, seed: int) -> FoldPlan:
    """Стратифицированное разбиение размеченных индивидов на k фолдов"""
    if k < 2:
        raise LearningError(f"число фолдов должно быть не меньше 2, получено {k}")
    individuals = sorted(task.labelled)
    y = np.array([1 if task.labels[ind] is Label.POSITIVE else 0 for ind in individuals])
    positives = int(y.sum())
    if positives < k:
        raise LearningError(f"{task.target}: положительных примеров ({positives}) меньше числа фолдов ({k})")
    if len(individuals) - positives == 0:
        # все примеры положительные: стратифицировать нечего
        order = np.random.default_rng(seed).permutation(len(individuals))
        folds = [frozenset(individuals[i] for i in order[j::k]) for j in range(k)]
        return FoldPlan(folds=tuple(folds), seed=seed)
    splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
    folds = [frozenset(individuals[i] for i in test) for _, test in splitter.split(np.zeros(len(y)), y)]
    return FoldPlan(folds=tuple(folds), seed=seed)


def train_view(kb: KnowledgeBase, test_fold: Iterable[str]) -> KnowledgeBase:
    """База без утверждений о тестовых индивидах; объявления сохраняются"""
    return kb.without_individuals(test_fold)


def compute_metrics(kb_full: KnowledgeBase, hypothesis: Hypothesis, test_labels: dict, fold: int = 0,
                    reasoner: Optional[Reasoner] = None, **extra) -> FoldMetrics:
    """TP и FP: чёткое число покрытых (h(a) > 0) положительных и неположительных тестовых примеров"""
    reasoner = reasoner or Reasoner.for_hypothesis(kb_full, hypothesis)
    values = reasoner.hypothesis_values(hypothesis)
    tp = fp = positives = 0
    for ind, label in test_labels.items():
        covered = values[reasoner.index_of(ind)] > 0.0
        if label is Label.POSITIVE:
            positives += 1
            tp += int(covered)
        else:
            fp += int(covered)
    return FoldMetrics.from_counts(hypothesis.target, fold, tp, fp, positives,
                                   p_rules=len(hypothesis.p_rules), n_rules=len(hypothesis.n_rules),
                                   hypothesis_size=hypothesis.size, **extra)


class EvaluationService:
    """Стратифицированная кросс-валидация PN-OWL"""

    def __init__(self, workers: int = 1, record_timings: bool = False):
        self.workers = max(1, workers)
        self.record_timings = record_timings
        self.logger = logging.getLogger("Evaluation")

    def run_fold(self, kb: KnowledgeBase, task: LearningTask, test_fold: frozenset, fold: int) -> FoldMetrics:
        started = time.perf_counter()
        train_kb = train_view(kb, test_fold)
        train_task = task.with_unlabelled(test_fold)
        hypothesis, _ = learn(train_kb, train_task)
        seconds = time.perf_counter() - started

        test_labels = {ind: task.labels[ind] for ind in sorted(test_fold)}
        row = compute_metrics(kb, hypothesis, test_labels, fold=fold,
                              seconds=round(seconds, 3) if self.record_timings else 0.0)
        self.logger.info(
            f"{task.target}, фолд {fold}: TP={row.tp} FP={row.fp} "
            f"P={row.precision:.3f} R={row.recall:.3f} F1={row.f1:.3f} ({seconds:.1f} с)"
        )
        return row

    def cross_validate(self, kb: KnowledgeBase, task: LearningTask, k: int = 5,
                       seed: Optional[int] = None) -> MetricsReport:
        seed = task.seed if seed is None else seed
        task.validate_against(kb)
        plan = make_folds(task, k, seed)
        self.logger.info(f"Кросс-валидация {task.target}: {plan.k} фолдов, seed={seed}")

        jobs = [(kb, task, test_fold, i + 1) for i, test_fold in enumerate(plan.folds)]
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers, thread_name_prefix="FoldWorker") as executor:
                rows = list(executor.map(lambda job: self.run_fold(*job), jobs))
        else:
            rows = [self.run_fold(*job) for job in jobs]
        return MetricsReport(folds=tuple(rows))

    def cross_validate_targets(self, kb: KnowledgeBase, tasks: Iterable[LearningTask], k: int = 5,
                               seed: Optional[int] = None) -> MetricsReport:
        report = MetricsReport()
        for task in tasks:
            report = report.merge(self.cross_validate(kb, task, k=k, seed=seed))
        return report


def cross_validate(kb: KnowledgeBase, task: LearningTask, k: int = 5, seed: Optional[int] = None) -> MetricsReport:
    return EvaluationService().cross_validate(kb, task, k=k, seed=seed)


SWEEP_GRID = tuple((method, sets) for method in FuzzificationMethod for sets in (3, 5, 7))


def sweep(service: EvaluationService, kb: KnowledgeBase, tasks: list[LearningTask], k: int = 5,
          seed: Optional[int] = None) -> dict[tuple[FuzzificationMethod, int], MetricsReport]:
    """Прогон по всем способам фаззификации (равномерно / c-means × 3, 5, 7 множеств)"""
    reports = {}
    for method, sets in SWEEP_GRID:
        configured = [task.model_copy(update={"fuzzification": method, "fuzzy_sets": sets}) for task in tasks]
        service.logger.info(f"Конфигурация {method.value}/{sets}")
        reports[(method, sets)] = service.cross_validate_targets(kb, configured, k=k, seed=seed)
    return reports


def best_per_target(reports: dict) -> dict[str, tuple[tuple[FuzzificationMethod, int], float]]:
    """Лучшая конфигурация и её макро-F1 для каждой цели"""
    best: dict = {}
    for config, report in reports.items():
        for summary in report.summaries():
            current = best.get(summary.target)
            if current is None or summary.f1 > current[1]:
                best[summary.target] = (config, summary.f1)
    return best
