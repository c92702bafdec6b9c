import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from core.model.fuzzy import FuzzyDatatype
from core.model.fuzzy_set_family import CMeansConfig, FuzzySetFamily, set_labels
from core.model.knowledge_base import KnowledgeBase
from core.model.task import FuzzificationMethod

logger = logging.getLogger("Fuzzification")


@dataclass
class CMeansResult:
    centroids: np.ndarray
    memberships: np.ndarray
    iterations: int
    objective_history: list = field(default_factory=list)
    row_sum_history: list = field(default_factory=list)


def _value_range(values: Sequence[float]) -> tuple[float, float]:
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        raise ValueError("нет значений для построения нечётких множеств")
    low, high = float(data.min()), float(data.max())
    if low == high:
        raise ValueError(f"вырожденный диапазон значений [{low}, {high}]")
    return low, high


def _family_from_peaks(prop: str, peaks: Sequence[float], value_range: tuple[float, float]) -> FuzzySetFamily:
    k = len(peaks)
    labels = set_labels(k)
    sets = []
    for i, peak in enumerate(peaks):
        label = f"{prop}_{labels[i]}"
        if i == 0:
            sets.append(FuzzyDatatype.left_shoulder(peaks[0], peaks[1], range=value_range, label=label))
        elif i == k - 1:
            sets.append(FuzzyDatatype.right_shoulder(peaks[-2], peaks[-1], range=value_range, label=label))
        else:
            sets.append(FuzzyDatatype.triangular(peaks[i - 1], peak, peaks[i + 1], range=value_range, label=label))
    return FuzzySetFamily(prop=prop, sets=tuple(sets), range=value_range)


def uniform_partition(values: Sequence[float], k: int, prop: str = "s") -> FuzzySetFamily:
    """Равномерное разбиение: вершины в min + i·(max−min)/(k−1), плечи по краям"""
    if k < 3:
        raise ValueError(f"равномерное разбиение требует k >= 3, получено {k}")
    low, high = _value_range(values)
    step = (high - low) / (k - 1)
    peaks = [low + i * step for i in range(k - 1)] + [high]
    return _family_from_peaks(prop, peaks, (low, high))


def _fcm_memberships(points: np.ndarray, centroids: np.ndarray, m: float) -> np.ndarray:
    distances = np.abs(points[:, None] - centroids[None, :])
    zero = distances == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        inverse = distances ** (-2.0 / (m - 1.0))
        memberships = inverse / inverse.sum(axis=1, keepdims=True)
    exact_rows = zero.any(axis=1)
    if exact_rows.any():
        # точка совпадает с центром: принадлежность делится между совпавшими центрами
        memberships[exact_rows] = zero[exact_rows] / zero[exact_rows].sum(axis=1, keepdims=True)
    return memberships


def _fcm_objective(points, weights, centroids, memberships, m) -> float:
    distances = (points[:, None] - centroids[None, :]) ** 2
    return float((weights[:, None] * memberships ** m * distances).sum())


def cmeans(values: Sequence[float], cfg: CMeansConfig) -> CMeansResult:
    """Нечёткая кластеризация c-means над одномерными значениями.

    Повторяющиеся значения схлопываются и учитываются с весом кратности.
    Начальные центры — k различных значений, взятых по квантилям.
    """
    points, counts = np.unique(np.asarray(values, dtype=float), return_counts=True)
    weights = counts.astype(float)
    if points.size < cfg.k:
        raise ValueError(f"различных значений ({points.size}) меньше числа кластеров ({cfg.k})")

    picks = np.round(np.linspace(0, points.size - 1, cfg.k)).astype(int)
    centroids = points[picks].copy()
    previous: Optional[np.ndarray] = None
    result = CMeansResult(centroids=centroids, memberships=np.empty((points.size, cfg.k)), iterations=0)

    for iteration in range(1, cfg.max_iterations + 1):
        memberships = _fcm_memberships(points, centroids, cfg.m)
        result.objective_history.append(_fcm_objective(points, weights, centroids, memberships, cfg.m))
        result.row_sum_history.append(memberships.sum(axis=1))

        powered = weights[:, None] * memberships ** cfg.m
        centroids = (powered * points[:, None]).sum(axis=0) / powered.sum(axis=0)

        result.iterations = iteration
        if previous is not None and np.abs(memberships - previous).max() < cfg.epsilon:
            break
        previous = memberships

    result.centroids = np.sort(centroids)
    result.memberships = memberships
    logger.debug(f"c-means: k={cfg.k}, итераций {result.iterations}, центры {result.centroids.round(3).tolist()}")
    return result


def cmeans_centroids(values: Sequence[float], cfg: CMeansConfig) -> list[float]:
    return cmeans(values, cfg).centroids.tolist()


def centroids_to_family(centroids: Sequence[float], value_range: tuple[float, float], prop: str) -> FuzzySetFamily:
    """Треугольники вокруг центров кластеров, плечи на крайних центрах"""
    centroids = [float(c) for c in centroids]
    if len(centroids) < 2:
        raise ValueError("для семейства нужны хотя бы два центра")
    if len(set(centroids)) != len(centroids):
        raise ValueError(f"центры кластеров совпадают: {centroids}")
    return _family_from_peaks(prop, sorted(centroids), (float(value_range[0]), float(value_range[1])))


class FuzzificationService:
    """Строит нечёткие типы данных для всех числовых свойств базы знаний"""

    def __init__(self, method: FuzzificationMethod = FuzzificationMethod.UNIFORM, fuzzy_sets: int = 3,
                 cmeans_m: float = 2.0, cmeans_epsilon: float = 0.05, cmeans_max_iterations: int = 100):
        self.method = FuzzificationMethod(method)
        self.fuzzy_sets = fuzzy_sets
        self.cmeans_config = CMeansConfig(k=fuzzy_sets, m=cmeans_m, epsilon=cmeans_epsilon,
                                          max_iterations=cmeans_max_iterations)
        self.logger = logging.getLogger("Fuzzification")

    @classmethod
    def from_task(cls, task) -> "FuzzificationService":
        return cls(method=task.fuzzification, fuzzy_sets=task.fuzzy_sets, cmeans_m=task.cmeans_m,
                   cmeans_epsilon=task.cmeans_epsilon, cmeans_max_iterations=task.cmeans_max_iterations)

    def build_family(self, prop: str, values: Sequence[float]) -> FuzzySetFamily:
        if self.method is FuzzificationMethod.UNIFORM:
            return uniform_partition(values, self.fuzzy_sets, prop=prop)
        value_range = _value_range(values)
        return centroids_to_family(cmeans_centroids(values, self.cmeans_config), value_range, prop)

    def build_families(self, kb: KnowledgeBase) -> dict[str, FuzzySetFamily]:
        families = {}
        for prop in kb.numeric_properties:
            values = kb.datatype_values(prop)
            try:
                families[prop] = self.build_family(prop, values)
            except ValueError as e:
                self.logger.warning(f"Свойство {prop} пропущено: {e}")
        self.logger.info(
            f"Построены нечёткие множества ({self.method.value}, k={self.fuzzy_sets}) "
            f"для {len(families)} из {len(kb.numeric_properties)} числовых свойств"
        )
        return families
