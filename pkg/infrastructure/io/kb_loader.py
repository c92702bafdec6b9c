import logging
from pathlib import Path
from typing import Optional

from core.errors import FormatError, KnowledgeBaseError
from core.model.knowledge_base import KnowledgeBase, PropertyKind
from core.model.task import Label

logger = logging.getLogger("KBLoader")

_ARITY = {
    "class": 1, "subclass": 2, "objprop": 1, "dataprop": 2,
    "individual": 1, "instance": 2, "rel": 3, "val": 3,
}


def _parse_literal(text: str, kind: PropertyKind):
    if kind is PropertyKind.BOOLEAN:
        lowered = text.lower()
        if lowered not in ("true", "false"):
            raise ValueError(f"ожидается true/false, получено {text!r}")
        return lowered == "true"
    value = float(text)
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError(f"недопустимое числовое значение {text!r}")
    return value


def parse_kb(text: str, path: Optional[str] = None) -> KnowledgeBase:
    """Разбор построчного формата базы знаний; объявления должны предшествовать использованию"""
    classes, objprops, individuals = set(), set(), set()
    dataprops: dict[str, PropertyKind] = {}
    subclass, instances, rels, vals = set(), set(), set(), set()

    def fail(message: str, number: int):
        raise FormatError(message, path=path, line=number)

    def require(name: str, declared, what: str, number: int):
        if name not in declared:
            raise KnowledgeBaseError(f"{what} {name} не объявлен", line=number)

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *args = line.split()
        if keyword not in _ARITY:
            fail(f"неизвестная директива {keyword!r}", number)
        if len(args) != _ARITY[keyword]:
            fail(f"{keyword}: ожидается {_ARITY[keyword]} аргумент(а), получено {len(args)}", number)

        if keyword == "class":
            classes.add(args[0])
        elif keyword == "objprop":
            objprops.add(args[0])
        elif keyword == "individual":
            individuals.add(args[0])
        elif keyword == "dataprop":
            try:
                dataprops[args[0]] = PropertyKind(args[1])
            except ValueError:
                fail(f"тип свойства должен быть numeric или boolean, получено {args[1]!r}", number)
        elif keyword == "subclass":
            require(args[0], classes, "класс", number)
            require(args[1], classes, "класс", number)
            subclass.add((args[0], args[1]))
        elif keyword == "instance":
            require(args[0], individuals, "индивид", number)
            require(args[1], classes, "класс", number)
            instances.add((args[0], args[1]))
        elif keyword == "rel":
            require(args[0], individuals, "индивид", number)
            require(args[1], objprops, "объектное свойство", number)
            require(args[2], individuals, "индивид", number)
            rels.add((args[0], args[1], args[2]))
        elif keyword == "val":
            require(args[0], individuals, "индивид", number)
            require(args[1], dataprops, "свойство данных", number)
            try:
                vals.add((args[0], args[1], _parse_literal(args[2], dataprops[args[1]])))
            except ValueError as e:
                fail(str(e), number)

    return KnowledgeBase(
        classes=classes, subclass_axioms=subclass, object_properties=objprops,
        data_properties=dataprops, individuals=individuals,
        class_assertions=instances, role_assertions=rels, data_assertions=vals,
    )


def load_kb(path: str) -> KnowledgeBase:
    kb = parse_kb(Path(path).read_text(encoding="utf-8"), path=str(path))
    logger.info(
        f"Загружена база {path}: {len(kb.individuals)} индивидов, {len(kb.classes)} классов, "
        f"{len(kb.object_properties)} объектных и {len(kb.data_properties)} свойств данных"
    )
    return kb


def _literal(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(float(value))


def dump_kb(kb: KnowledgeBase) -> str:
    """Каноническая запись базы: одинаковые базы дают побайтно одинаковый текст"""
    lines = [f"class {c}" for c in sorted(kb.classes)]
    lines += [f"subclass {sub} {sup}" for sub, sup in sorted(kb.subclass_axioms)]
    lines += [f"objprop {r}" for r in sorted(kb.object_properties)]
    lines += [f"dataprop {p} {kind.value}" for p, kind in sorted(kb.data_properties.items())]
    lines += [f"individual {i}" for i in kb.individual_order]
    lines += [f"instance {i} {c}" for i, c in sorted(kb.class_assertions)]
    lines += [f"rel {s} {r} {o}" for s, r, o in sorted(kb.role_assertions)]
    lines += [f"val {i} {p} {_literal(v)}" for i, p, v in sorted(kb.data_assertions, key=lambda a: (a[0], a[1], float(a[2])))]
    return "\n".join(lines) + ("\n" if lines else "")


def write_kb(kb: KnowledgeBase, path: str):
    Path(path).write_text(dump_kb(kb), encoding="utf-8")


def parse_examples(text: str, path: Optional[str] = None) -> dict[str, Label]:
    """Строки `<индивид> <метка>`, метка ∈ {1, -1, 0}"""
    labels: dict[str, Label] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError("ожидается `<индивид> <метка>`", path=path, line=number)
        name, label = parts
        if label not in ("1", "-1", "0"):
            raise FormatError(f"метка должна быть 1, -1 или 0, получено {label!r}", path=path, line=number)
        if name in labels:
            raise FormatError(f"индивид {name} размечен повторно", path=path, line=number)
        labels[name] = Label(int(label))
    return labels


def load_examples(path: str) -> dict[str, Label]:
    return parse_examples(Path(path).read_text(encoding="utf-8"), path=str(path))


def dump_examples(labels: dict) -> str:
    return "".join(f"{name} {int(label)}\n" for name, label in sorted(labels.items()))
