import enum
from typing import Iterable

from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.errors import LearningError
from core.model.fuzzy import LogicFamily
from core.model.knowledge_base import KnowledgeBase


class Label(enum.IntEnum):
    POSITIVE = 1
    NEGATIVE = -1
    UNLABELLED = 0


class FuzzificationMethod(str, enum.Enum):
    UNIFORM = "uniform"
    CMEANS = "cmeans"


class LearningTask(BaseModel):
    """Постановка задачи: целевой класс, разметка примеров и параметры обеих стадий"""

    model_config = ConfigDict(frozen=True)

    target: str
    labels: dict[str, Label] = Field(default_factory=dict)

    theta_p: float = Field(0.1, ge=0.0, le=1.0)
    theta_n: float = Field(0.3, ge=0.0, le=1.0)
    eta_p: float = Field(1.0, ge=0.0, le=1.0)
    eta_n: float = Field(0.2, ge=0.0, le=1.0)
    max_conjuncts_p: int = Field(5, ge=1)
    max_conjuncts_n: int = Field(10, ge=1)
    max_depth_p: int = Field(1, ge=0)
    max_depth_n: int = Field(1, ge=0)

    fuzzy_sets: int = 3
    fuzzification: FuzzificationMethod = FuzzificationMethod.UNIFORM
    cmeans_m: float = Field(2.0, gt=1.0)
    cmeans_epsilon: float = Field(0.05, gt=0.0)
    cmeans_max_iterations: int = Field(100, ge=1)

    conjunction: LogicFamily = LogicFamily.GOEDEL
    implication: LogicFamily = LogicFamily.LUKASIEWICZ
    backtrack: int = Field(5, ge=0)
    n_stage: bool = True
    seed: int = 42

    @field_validator("fuzzy_sets")
    @classmethod
    def _check_fuzzy_sets(cls, value: int) -> int:
        if value not in (3, 5, 7):
            raise ValueError(f"число нечётких множеств должно быть 3, 5 или 7, получено {value}")
        return value

    @property
    def false_positive_target(self) -> str:
        return f"FALSEP_{self.target}"

    def individuals_with(self, label: Label) -> frozenset:
        return frozenset(ind for ind, value in self.labels.items() if value is label)

    @property
    def positives(self) -> frozenset:
        return self.individuals_with(Label.POSITIVE)

    @property
    def negatives(self) -> frozenset:
        return self.individuals_with(Label.NEGATIVE)

    @property
    def labelled(self) -> frozenset:
        return frozenset(ind for ind, value in self.labels.items() if value is not Label.UNLABELLED)

    def with_unlabelled(self, individuals: Iterable[str]) -> "LearningTask":
        """Копия задачи, в которой указанные индивиды считаются неразмеченными"""
        hidden = frozenset(individuals)
        labels = {ind: (Label.UNLABELLED if ind in hidden else value) for ind, value in self.labels.items()}
        return self.model_copy(update={"labels": labels})

    def validate_against(self, kb: KnowledgeBase):
        if self.target in kb.classes:
            raise LearningError(f"целевой класс {self.target} уже объявлен в базе знаний")
        unknown = sorted(ind for ind in self.labels if ind not in kb.individuals)
        if unknown:
            raise LearningError(f"размеченные индивиды отсутствуют в базе знаний: {', '.join(unknown[:5])}")
        if not self.positives:
            raise LearningError(f"для {self.target} нет ни одного положительного примера")
