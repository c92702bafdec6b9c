from pydantic import BaseModel, ConfigDict, Field

from core.model.concept import Concept, conjunct_count, render
from core.model.fuzzy import AggregationChoice, LogicFamily


class WeightedRule(BaseModel):
    """Нечёткая аксиома ⟨body ⊑ head, degree⟩"""

    model_config = ConfigDict(frozen=True)

    body: Concept
    head: str
    degree: float = Field(ge=0.0, le=1.0)

    def __str__(self) -> str:
        return f"{render(self.body)} ⊑ {self.head} [{self.degree:.6f}]"


class Hypothesis(BaseModel):
    """Ансамбль двух стадий: правила P агрегируются через @+, правила N через @-, итог через @"""

    model_config = ConfigDict(frozen=True)

    target: str
    p_rules: tuple[WeightedRule, ...] = ()
    n_rules: tuple[WeightedRule, ...] = ()
    aggregation: AggregationChoice = AggregationChoice()
    conjunction: LogicFamily = LogicFamily.GOEDEL
    implication: LogicFamily = LogicFamily.LUKASIEWICZ

    @property
    def is_empty(self) -> bool:
        return not self.p_rules

    @property
    def size(self) -> int:
        """Суммарное число конъюнктов во всех правилах"""
        return sum(conjunct_count(rule.body) for rule in self.p_rules + self.n_rules)
