from typing import Annotated, Iterable, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.model.fuzzy import DatatypeKind, FuzzyDatatype


class _Node(BaseModel):
    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        return render(self)


class Top(_Node):
    type: Literal["top"] = "top"


class Atomic(_Node):
    type: Literal["atomic"] = "atomic"
    name: str


class SomeObject(_Node):
    type: Literal["some_object"] = "some_object"
    role: str
    filler: "Concept"


class SomeData(_Node):
    type: Literal["some_data"] = "some_data"
    prop: str
    datatype: FuzzyDatatype


class And(_Node):
    type: Literal["and"] = "and"
    conjuncts: tuple["Concept", ...]

    @field_validator("conjuncts")
    @classmethod
    def _at_least_two(cls, value):
        if len(value) < 2:
            raise ValueError("конъюнкция должна содержать не менее двух конъюнктов")
        return value


Concept = Annotated[Union[Top, Atomic, SomeObject, SomeData, And], Field(discriminator="type")]

SomeObject.model_rebuild()
And.model_rebuild()

TOP = Top()


def conjuncts_of(concept: Concept) -> tuple:
    return concept.conjuncts if isinstance(concept, And) else (concept,)


def conjunct_count(concept: Concept) -> int:
    return len(conjuncts_of(concept))


def role_depth(concept: Concept) -> int:
    if isinstance(concept, SomeObject):
        return 1 + role_depth(concept.filler)
    if isinstance(concept, SomeData):
        return 1
    if isinstance(concept, And):
        return max(role_depth(c) for c in concept.conjuncts)
    return 0


def max_width(concept: Concept) -> int:
    """Наибольшее число конъюнктов на любом уровне вложенности"""
    if isinstance(concept, SomeObject):
        return max(1, max_width(concept.filler))
    if isinstance(concept, And):
        return max(len(concept.conjuncts), *(max_width(c) for c in concept.conjuncts))
    return 1


def _format_number(value: float) -> str:
    return f"{value:g}"


def render_datatype(prop: str, datatype: FuzzyDatatype) -> str:
    if datatype.kind is DatatypeKind.EQUALS_BOOL:
        return f"(= {prop} {'true' if datatype.params[0] else 'false'})"
    if datatype.kind is DatatypeKind.AT_LEAST:
        return f"(>= {prop} {_format_number(datatype.params[0])})"
    if datatype.kind is DatatypeKind.AT_MOST:
        return f"(<= {prop} {_format_number(datatype.params[0])})"
    if datatype.label:
        return f"(some {prop} {datatype.label})"
    args = ",".join(_format_number(v) for v in datatype.params)
    return f"(some {prop} {datatype.kind.value}({args}))"


def render(concept: Concept) -> str:
    """Каноническая запись концепта в синтаксисе fuzzyDL"""
    if isinstance(concept, Top):
        return "*top*"
    if isinstance(concept, Atomic):
        return concept.name
    if isinstance(concept, SomeObject):
        return f"(some {concept.role} {render(concept.filler)})"
    if isinstance(concept, SomeData):
        return render_datatype(concept.prop, concept.datatype)
    return "(and " + " ".join(render(c) for c in concept.conjuncts) + ")"


def make_and(parts: Iterable[Concept]) -> Optional[Concept]:
    """Собирает плоскую конъюнкцию в каноническом порядке.

    Возвращает None, если среди конъюнктов есть повторы.
    """
    flat = []
    for part in parts:
        flat.extend(conjuncts_of(part))
    flat = [c for c in flat if not isinstance(c, Top)]
    if len(set(flat)) != len(flat):
        return None
    if not flat:
        return TOP
    if len(flat) == 1:
        return flat[0]
    return And(conjuncts=tuple(sorted(flat, key=render)))
