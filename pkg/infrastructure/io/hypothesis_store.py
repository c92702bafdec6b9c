import json
from pathlib import Path

from pydantic import BaseModel, ConfigDict, ValidationError

from core.errors import FormatError
from core.model.fuzzy_set_family import FuzzySetFamily
from core.model.hypothesis import Hypothesis


class StoredHypothesis(BaseModel):
    """Гипотеза вместе с семействами нечётких множеств, по которым она обучена"""

    model_config = ConfigDict(frozen=True)

    hypothesis: Hypothesis
    families: tuple[FuzzySetFamily, ...] = ()


def dump_hypothesis(hypothesis: Hypothesis, families=()) -> str:
    stored = StoredHypothesis(hypothesis=hypothesis, families=tuple(sorted(families, key=lambda f: f.prop)))
    # sort_keys даёт одинаковый текст при одинаковой гипотезе
    return json.dumps(stored.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_hypothesis(path: str, hypothesis: Hypothesis, families=()):
    Path(path).write_text(dump_hypothesis(hypothesis, families), encoding="utf-8")


def load_hypothesis(path: str) -> StoredHypothesis:
    try:
        return StoredHypothesis.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise FormatError(f"некорректный файл гипотезы: {e.error_count()} ошибок, первая: {e.errors()[0]['msg']}",
                          path=path) from None
