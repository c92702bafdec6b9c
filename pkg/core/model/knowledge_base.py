import enum
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from core.errors import KnowledgeBaseError

Value = Union[float, bool]


class PropertyKind(str, enum.Enum):
    NUMERIC = "numeric"
    BOOLEAN = "boolean"


@dataclass(frozen=True, eq=True)
class KnowledgeBase:
    """Неизменяемая база знаний: иерархия классов, утверждения, индивиды.

    Коллекции приводятся к frozenset при создании, поэтому порядок
    добавления не влияет на равенство двух баз.
    """

    classes: frozenset = frozenset()
    subclass_axioms: frozenset = frozenset()
    object_properties: frozenset = frozenset()
    data_properties: Mapping[str, PropertyKind] = field(default_factory=dict)
    individuals: frozenset = frozenset()
    class_assertions: frozenset = frozenset()
    role_assertions: frozenset = frozenset()
    data_assertions: frozenset = frozenset()

    def __post_init__(self):
        for name in ("classes", "subclass_axioms", "object_properties", "individuals",
                     "class_assertions", "role_assertions", "data_assertions"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        kinds = {prop: PropertyKind(kind) for prop, kind in dict(self.data_properties).items()}
        object.__setattr__(self, "data_properties", MappingProxyType(kinds))
        self._validate()

    __hash__ = None

    def _validate(self):
        for sub, sup in self.subclass_axioms:
            for name in (sub, sup):
                if name not in self.classes:
                    raise KnowledgeBaseError(f"класс {name} не объявлен (аксиома {sub} ⊑ {sup})")
        for ind, cls in self.class_assertions:
            self._require_individual(ind)
            if cls not in self.classes:
                raise KnowledgeBaseError(f"класс {cls} не объявлен (утверждение {ind}:{cls})")
        for subj, role, obj in self.role_assertions:
            self._require_individual(subj)
            self._require_individual(obj)
            if role not in self.object_properties:
                raise KnowledgeBaseError(f"объектное свойство {role} не объявлено")
        for ind, prop, value in self.data_assertions:
            self._require_individual(ind)
            kind = self.data_properties.get(prop)
            if kind is None:
                raise KnowledgeBaseError(f"свойство данных {prop} не объявлено")
            check_value_kind(prop, kind, value)

    def _require_individual(self, name: str):
        if name not in self.individuals:
            raise KnowledgeBaseError(f"индивид {name} не объявлен")

    @cached_property
    def individual_order(self) -> tuple:
        """Индивиды в детерминированном порядке; индекс используется в векторах степеней"""
        return tuple(sorted(self.individuals))

    @cached_property
    def individual_index(self) -> Mapping[str, int]:
        return MappingProxyType({name: i for i, name in enumerate(self.individual_order)})

    @cached_property
    def numeric_properties(self) -> tuple:
        return tuple(sorted(p for p, k in self.data_properties.items() if k is PropertyKind.NUMERIC))

    @cached_property
    def boolean_properties(self) -> tuple:
        return tuple(sorted(p for p, k in self.data_properties.items() if k is PropertyKind.BOOLEAN))

    @cached_property
    def _closure(self) -> Mapping[str, frozenset]:
        supers = defaultdict(set)
        for sub, sup in self.subclass_axioms:
            supers[sub].add(sup)
        closure = {}
        for cls in self.classes:
            seen = {cls}
            frontier = [cls]
            while frontier:
                current = frontier.pop()
                for sup in supers.get(current, ()):
                    if sup not in seen:
                        seen.add(sup)
                        frontier.append(sup)
            closure[cls] = frozenset(seen)
        return MappingProxyType(closure)

    def subclass_closure(self) -> Mapping[str, frozenset]:
        """Рефлексивно-транзитивное замыкание аксиом A ⊑ B: класс → все его надклассы"""
        return self._closure

    def subsumees(self, cls: str) -> frozenset:
        """Строгие подклассы: без самого класса и без эквивалентных ему"""
        closure = self._closure
        return frozenset(
            other for other in self.classes
            if other != cls and cls in closure[other] and other not in closure[cls]
        )

    def datatype_values(self, prop: str) -> list:
        """Все значения свойства (мультимножество) в порядке индивидов"""
        if prop not in self.data_properties:
            raise KnowledgeBaseError(f"свойство данных {prop} не объявлено")
        rows = [(ind, value) for ind, p, value in self.data_assertions if p == prop]
        rows.sort(key=lambda row: (row[0], float(row[1])))
        return [value for _, value in rows]

    def without_individuals(self, removed: Iterable[str]) -> "KnowledgeBase":
        """Копия без утверждений, упоминающих указанных индивидов; объявления сохраняются"""
        removed = frozenset(removed)
        if not removed:
            return self
        return KnowledgeBase(
            classes=self.classes,
            subclass_axioms=self.subclass_axioms,
            object_properties=self.object_properties,
            data_properties=dict(self.data_properties),
            individuals=self.individuals,
            class_assertions={a for a in self.class_assertions if a[0] not in removed},
            role_assertions={a for a in self.role_assertions if a[0] not in removed and a[2] not in removed},
            data_assertions={a for a in self.data_assertions if a[0] not in removed},
        )


def check_value_kind(prop: str, kind: PropertyKind, value: Value):
    if kind is PropertyKind.BOOLEAN and not isinstance(value, bool):
        raise KnowledgeBaseError(f"свойство {prop} булево, получено значение {value!r}")
    if kind is PropertyKind.NUMERIC and (isinstance(value, bool) or not isinstance(value, (int, float))):
        raise KnowledgeBaseError(f"свойство {prop} числовое, получено значение {value!r}")


def subclass_closure(kb: KnowledgeBase) -> Mapping[str, frozenset]:
    return kb.subclass_closure()


def datatype_values(kb: KnowledgeBase, prop: str) -> list:
    return kb.datatype_values(prop)
