from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.model.fuzzy import DatatypeKind, FuzzyDatatype

SET_LABELS = {
    2: ("low", "high"),
    3: ("low", "medium", "high"),
    5: ("veryLow", "low", "medium", "high", "veryHigh"),
    7: ("extremelyLow", "veryLow", "low", "medium", "high", "veryHigh", "extremelyHigh"),
}


def set_labels(k: int) -> tuple:
    return SET_LABELS.get(k) or tuple(f"set{i + 1}" for i in range(k))


class FuzzySetFamily(BaseModel):
    """Упорядоченное разбиение значений числового свойства на нечёткие множества"""

    model_config = ConfigDict(frozen=True)

    prop: str
    sets: tuple[FuzzyDatatype, ...]
    range: tuple[float, float]

    @model_validator(mode="after")
    def _check_layout(self) -> "FuzzySetFamily":
        if len(self.sets) < 2:
            raise ValueError(f"{self.prop}: семейство должно содержать не менее двух множеств")
        if self.sets[0].kind is not DatatypeKind.LEFT_SHOULDER:
            raise ValueError(f"{self.prop}: первое множество должно быть левым плечом")
        if self.sets[-1].kind is not DatatypeKind.RIGHT_SHOULDER:
            raise ValueError(f"{self.prop}: последнее множество должно быть правым плечом")
        if any(d.kind is not DatatypeKind.TRIANGULAR for d in self.sets[1:-1]):
            raise ValueError(f"{self.prop}: внутренние множества должны быть треугольными")
        peaks = [d.peak for d in self.sets]
        if any(a >= b for a, b in zip(peaks, peaks[1:])):
            raise ValueError(f"{self.prop}: вершины множеств должны строго возрастать: {peaks}")
        return self

    @property
    def labels(self) -> tuple:
        return tuple(d.label for d in self.sets)


class CMeansConfig(BaseModel):
    """Параметры c-means; начальные центры берутся по квантилям, поэтому seed не нужен"""

    model_config = ConfigDict(frozen=True)

    k: int = Field(3, ge=2)
    m: float = Field(2.0, gt=1.0)
    epsilon: float = Field(0.05, gt=0.0)
    max_iterations: int = Field(100, ge=1)
