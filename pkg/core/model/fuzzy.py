import enum
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

Degree = Union[float, np.ndarray]


def _as_result(value) -> Degree:
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


class LogicFamily(str, enum.Enum):
    """Семейства функций истинности: Лукасевич, Гёдель, произведение.

    Все операции принимают как числа, так и массивы numpy одинаковой формы.
    """

    LUKASIEWICZ = "lukasiewicz"
    GOEDEL = "goedel"
    PRODUCT = "product"

    def tnorm(self, x: Degree, y: Degree) -> Degree:
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        if self is LogicFamily.LUKASIEWICZ:
            return _as_result(np.maximum(x + y - 1.0, 0.0))
        if self is LogicFamily.GOEDEL:
            return _as_result(np.minimum(x, y))
        return _as_result(x * y)

    def tconorm(self, x: Degree, y: Degree) -> Degree:
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        if self is LogicFamily.LUKASIEWICZ:
            return _as_result(np.minimum(x + y, 1.0))
        if self is LogicFamily.GOEDEL:
            return _as_result(np.maximum(x, y))
        return _as_result(x + y - x * y)

    def implication(self, x: Degree, y: Degree) -> Degree:
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        if self is LogicFamily.LUKASIEWICZ:
            return _as_result(np.minimum(1.0 - x + y, 1.0))
        if self is LogicFamily.GOEDEL:
            return _as_result(np.where(x <= y, 1.0, y))
        x, y = np.broadcast_arrays(x, y)
        ratio = np.divide(y, x, out=np.ones(x.shape), where=x > y)
        return _as_result(ratio)

    def negation(self, x: Degree) -> Degree:
        x = np.asarray(x, dtype=float)
        if self is LogicFamily.LUKASIEWICZ:
            return _as_result(1.0 - x)
        return _as_result(np.where(x == 0.0, 1.0, 0.0))


def tnorm(family: LogicFamily, x: Degree, y: Degree) -> Degree:
    return family.tnorm(x, y)


def tconorm(family: LogicFamily, x: Degree, y: Degree) -> Degree:
    return family.tconorm(x, y)


def implication(family: LogicFamily, x: Degree, y: Degree) -> Degree:
    return family.implication(x, y)


def negation(family: LogicFamily, x: Degree) -> Degree:
    return family.negation(x)


class DatatypeKind(str, enum.Enum):
    LEFT_SHOULDER = "left-shoulder"
    RIGHT_SHOULDER = "right-shoulder"
    TRIANGULAR = "triangular"
    TRAPEZOIDAL = "trapezoidal"
    EQUALS_BOOL = "equals"
    AT_LEAST = "at-least"
    AT_MOST = "at-most"


_ARITY = {
    DatatypeKind.LEFT_SHOULDER: 2,
    DatatypeKind.RIGHT_SHOULDER: 2,
    DatatypeKind.TRIANGULAR: 3,
    DatatypeKind.TRAPEZOIDAL: 4,
    DatatypeKind.EQUALS_BOOL: 1,
    DatatypeKind.AT_LEAST: 1,
    DatatypeKind.AT_MOST: 1,
}

FUZZY_KINDS = frozenset({
    DatatypeKind.LEFT_SHOULDER,
    DatatypeKind.RIGHT_SHOULDER,
    DatatypeKind.TRIANGULAR,
    DatatypeKind.TRAPEZOIDAL,
})


class FuzzyDatatype(BaseModel):
    """Функция принадлежности над числовым (или булевым) диапазоном"""

    model_config = ConfigDict(frozen=True)

    kind: DatatypeKind
    params: tuple[float, ...]
    range: Optional[tuple[float, float]] = None
    label: str = ""

    @model_validator(mode="after")
    def _check_params(self) -> "FuzzyDatatype":
        if len(self.params) != _ARITY[self.kind]:
            raise ValueError(f"{self.kind.value}: ожидается {_ARITY[self.kind]} параметров, получено {len(self.params)}")
        p = self.params
        if self.kind in (DatatypeKind.LEFT_SHOULDER, DatatypeKind.RIGHT_SHOULDER) and not p[0] < p[1]:
            raise ValueError(f"{self.kind.value}: требуется a < b, получено {p}")
        if self.kind is DatatypeKind.TRIANGULAR and not p[0] < p[1] < p[2]:
            raise ValueError(f"triangular: требуется a < b < c, получено {p}")
        if self.kind is DatatypeKind.TRAPEZOIDAL and not p[0] < p[1] <= p[2] < p[3]:
            raise ValueError(f"trapezoidal: требуется a < b <= c < d, получено {p}")
        if self.kind is DatatypeKind.EQUALS_BOOL and p[0] not in (0.0, 1.0):
            raise ValueError(f"equals: значение должно быть булевым, получено {p[0]}")
        if self.range is not None:
            low, high = self.range
            if low > high:
                raise ValueError(f"некорректный диапазон {self.range}")
            if self.kind in FUZZY_KINDS and not all(low <= v <= high for v in p):
                raise ValueError(f"параметры {p} выходят за диапазон {self.range}")
        return self

    @classmethod
    def left_shoulder(cls, a: float, b: float, **kwargs) -> "FuzzyDatatype":
        return cls(kind=DatatypeKind.LEFT_SHOULDER, params=(a, b), **kwargs)

    @classmethod
    def right_shoulder(cls, a: float, b: float, **kwargs) -> "FuzzyDatatype":
        return cls(kind=DatatypeKind.RIGHT_SHOULDER, params=(a, b), **kwargs)

    @classmethod
    def triangular(cls, a: float, b: float, c: float, **kwargs) -> "FuzzyDatatype":
        return cls(kind=DatatypeKind.TRIANGULAR, params=(a, b, c), **kwargs)

    @classmethod
    def trapezoidal(cls, a: float, b: float, c: float, d: float, **kwargs) -> "FuzzyDatatype":
        return cls(kind=DatatypeKind.TRAPEZOIDAL, params=(a, b, c, d), **kwargs)

    @classmethod
    def equals_bool(cls, value: bool, **kwargs) -> "FuzzyDatatype":
        return cls(kind=DatatypeKind.EQUALS_BOOL, params=(1.0 if value else 0.0,), **kwargs)

    @classmethod
    def at_least(cls, value: float, **kwargs) -> "FuzzyDatatype":
        return cls(kind=DatatypeKind.AT_LEAST, params=(value,), **kwargs)

    @classmethod
    def at_most(cls, value: float, **kwargs) -> "FuzzyDatatype":
        return cls(kind=DatatypeKind.AT_MOST, params=(value,), **kwargs)

    @property
    def is_fuzzy(self) -> bool:
        return self.kind in FUZZY_KINDS

    @property
    def peak(self) -> float:
        """Точка, где функция достигает 1 (для плеч и треугольника)"""
        if self.kind is DatatypeKind.LEFT_SHOULDER:
            return self.params[0]
        if self.kind in (DatatypeKind.RIGHT_SHOULDER, DatatypeKind.TRIANGULAR, DatatypeKind.TRAPEZOIDAL):
            return self.params[1]
        return self.params[0]

    def membership_array(self, values: np.ndarray) -> np.ndarray:
        """Векторная степень принадлежности; результат всегда в [0,1]"""
        x = np.asarray(values, dtype=float)
        p = self.params
        kind = self.kind
        if kind is DatatypeKind.LEFT_SHOULDER:
            a, b = p
            return np.clip((b - x) / (b - a), 0.0, 1.0)
        if kind is DatatypeKind.RIGHT_SHOULDER:
            a, b = p
            return np.clip((x - a) / (b - a), 0.0, 1.0)
        if kind is DatatypeKind.TRIANGULAR:
            a, b, c = p
            return np.clip(np.minimum((x - a) / (b - a), (c - x) / (c - b)), 0.0, 1.0)
        if kind is DatatypeKind.TRAPEZOIDAL:
            a, b, c, d = p
            rising = np.minimum((x - a) / (b - a), 1.0)
            return np.clip(np.minimum(rising, (d - x) / (d - c)), 0.0, 1.0)
        if kind is DatatypeKind.EQUALS_BOOL:
            return (x == p[0]).astype(float)
        if kind is DatatypeKind.AT_LEAST:
            return (x >= p[0]).astype(float)
        return (x <= p[0]).astype(float)

    def membership(self, value: Union[float, bool]) -> float:
        return float(self.membership_array(np.asarray([float(value)]))[0])


def eval_membership(datatype: FuzzyDatatype, value: Union[float, bool]) -> float:
    return datatype.membership(value)


class AggregationOperator(str, enum.Enum):
    MAX = "max"
    STAR = "star"


class AggregationChoice(BaseModel):
    """@+ и @- агрегируют правила стадий, @ сводит P и N в итог"""

    model_config = ConfigDict(frozen=True)

    positive: AggregationOperator = AggregationOperator.MAX
    negative: AggregationOperator = AggregationOperator.MAX
    final: AggregationOperator = AggregationOperator.STAR


def aggregate_star(p: Degree, n: Degree) -> Degree:
    # ничья не считается положительной
    return _as_result(np.where(np.asarray(p) > np.asarray(n), p, 0.0))


def aggregate_max(values) -> Degree:
    values = list(values)
    if not values:
        return 0.0
    return _as_result(np.maximum.reduce([np.asarray(v, dtype=float) for v in values]))


def combine(operator: AggregationOperator, x: Degree, y: Degree) -> Degree:
    """Двуместное применение агрегата: max или ★"""
    if operator is AggregationOperator.MAX:
        return _as_result(np.maximum(x, y))
    return aggregate_star(x, y)
