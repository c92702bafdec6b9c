import numpy as np
import pytest

from core.model.concept import TOP, And, Atomic, SomeData, SomeObject, Top, make_and
from core.model.fuzzy import FuzzyDatatype, LogicFamily
from core.model.knowledge_base import KnowledgeBase, PropertyKind
from core.model.task import Label

CLASSES = ("A", "B", "C")
ROLES = ("r", "q")
RANDOM_DATATYPES = (
    FuzzyDatatype.left_shoulder(2.0, 5.0),
    FuzzyDatatype.triangular(2.0, 5.0, 8.0),
    FuzzyDatatype.right_shoulder(5.0, 8.0),
)


def brute_bed(kb: KnowledgeBase, individual: str, concept, family: LogicFamily = LogicFamily.GOEDEL) -> float:
    """Вычисление степени перебором утверждений, без векторов и кэша"""
    if isinstance(concept, Top):
        return 1.0
    if isinstance(concept, Atomic):
        closure = kb.subclass_closure()
        return 1.0 if any(i == individual and concept.name in closure[c] for i, c in kb.class_assertions) else 0.0
    if isinstance(concept, SomeObject):
        best = 0.0
        for s, r, o in kb.role_assertions:
            if s == individual and r == concept.role:
                best = max(best, brute_bed(kb, o, concept.filler, family))
        return best
    if isinstance(concept, SomeData):
        best = 0.0
        for i, p, v in kb.data_assertions:
            if i == individual and p == concept.prop:
                best = max(best, concept.datatype.membership(v))
        return best
    value = 1.0
    for part in concept.conjuncts:
        value = family.tnorm(value, brute_bed(kb, individual, part, family))
    return float(value)


def make_random_kb(rng: np.random.Generator, max_individuals: int = 8) -> KnowledgeBase:
    n = int(rng.integers(1, max_individuals + 1))
    individuals = [f"i{k}" for k in range(n)]
    subclass = {(a, b) for a in CLASSES for b in CLASSES if a != b and rng.random() < 0.2}
    instances = {(i, c) for i in individuals for c in CLASSES if rng.random() < 0.3}
    rels = {(s, r, o) for s in individuals for r in ROLES for o in individuals if rng.random() < 0.15}
    vals = {(i, "s", float(rng.integers(0, 11))) for i in individuals if rng.random() < 0.7}
    return KnowledgeBase(
        classes=CLASSES, subclass_axioms=subclass, object_properties=ROLES,
        data_properties={"s": PropertyKind.NUMERIC}, individuals=individuals,
        class_assertions=instances, role_assertions=rels, data_assertions=vals,
    )


def make_random_concept(rng: np.random.Generator, depth: int = 2):
    choice = int(rng.integers(0, 5 if depth > 0 else 3))
    if choice == 0:
        return TOP
    if choice == 1:
        return Atomic(name=str(rng.choice(CLASSES)))
    if choice == 2:
        return SomeData(prop="s", datatype=RANDOM_DATATYPES[int(rng.integers(0, len(RANDOM_DATATYPES)))])
    if choice == 3:
        return SomeObject(role=str(rng.choice(ROLES)), filler=make_random_concept(rng, depth - 1))
    parts = [make_random_concept(rng, depth - 1) for _ in range(int(rng.integers(2, 4)))]
    return make_and(parts) or TOP


@pytest.fixture
def oracle():
    return brute_bed


@pytest.fixture
def random_kb():
    return make_random_kb


@pytest.fixture
def random_concept():
    return make_random_concept


@pytest.fixture
def chain_kb() -> KnowledgeBase:
    """a:A, (a,r,b), b:B, (b,s,70)"""
    return KnowledgeBase(
        classes={"A", "B"}, object_properties={"r"}, data_properties={"s": PropertyKind.NUMERIC},
        individuals={"a", "b"}, class_assertions={("a", "A"), ("b", "B")},
        role_assertions={("a", "r", "b")}, data_assertions={("b", "s", 70.0)},
    )


@pytest.fixture
def separable_kb() -> KnowledgeBase:
    """Положительные p1..p3 — ровно экземпляры A; n1..n3 — экземпляры B"""
    return KnowledgeBase(
        classes={"A", "B"},
        individuals={"p1", "p2", "p3", "n1", "n2", "n3"},
        class_assertions={("p1", "A"), ("p2", "A"), ("p3", "A"), ("n1", "B"), ("n2", "B"), ("n3", "B")},
    )


@pytest.fixture
def separable_labels() -> dict:
    return {"p1": Label.POSITIVE, "p2": Label.POSITIVE, "p3": Label.POSITIVE,
            "n1": Label.NEGATIVE, "n2": Label.NEGATIVE, "n3": Label.NEGATIVE}


@pytest.fixture
def overcovering_kb() -> KnowledgeBase:
    """Класс A покрывает все положительные и один отрицательный n1; n1 отличает класс X"""
    return KnowledgeBase(
        classes={"A", "X"},
        individuals={"p1", "p2", "p3", "n1", "n2", "n3"},
        class_assertions={("p1", "A"), ("p2", "A"), ("p3", "A"), ("n1", "A"), ("n1", "X")},
    )


@pytest.fixture
def overcovering_labels() -> dict:
    return {"p1": Label.POSITIVE, "p2": Label.POSITIVE, "p3": Label.POSITIVE,
            "n1": Label.NEGATIVE, "n2": Label.NEGATIVE, "n3": Label.NEGATIVE}
