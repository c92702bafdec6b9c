import math
import re
from typing import Iterable, Optional

from core.errors import FormatError
from core.model.concept import And, Atomic, SomeData, SomeObject, TOP, Concept, make_and, render
from core.model.fuzzy import DatatypeKind, FuzzyDatatype, LogicFamily
from core.model.fuzzy_set_family import FuzzySetFamily
from core.model.hypothesis import Hypothesis, WeightedRule

_HEADER = "% PN-OWL hypothesis"
_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_FALSEP = "FALSEP_"


def _walk(concept: Concept):
    yield concept
    if isinstance(concept, SomeObject):
        yield from _walk(concept.filler)
    elif isinstance(concept, And):
        for part in concept.conjuncts:
            yield from _walk(part)


def _rule_datatypes(rules: Iterable[WeightedRule]) -> list[FuzzyDatatype]:
    seen, out = set(), []
    for rule in rules:
        for node in _walk(rule.body):
            if isinstance(node, SomeData) and node.datatype.is_fuzzy and node.datatype.label:
                if node.datatype.label not in seen:
                    seen.add(node.datatype.label)
                    out.append(node.datatype)
    return out


def _bound(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def define_line(datatype: FuzzyDatatype) -> str:
    low, high = datatype.range if datatype.range is not None else (min(datatype.params), max(datatype.params))
    # диапазон округляется наружу до трёх знаков, печатные параметры остаются внутри него
    low, high = math.floor(low * 1000) / 1000, math.ceil(high * 1000) / 1000
    args = [_bound(low), _bound(high)] + [f"{v:.3f}" for v in datatype.params]
    return f"(define-fuzzy-concept {datatype.label} {datatype.kind.value}({','.join(args)}))"


def implies_line(rule: WeightedRule) -> str:
    return f"(implies {render(rule.body)} {rule.head} {rule.degree:.6f})"


def export_fuzzyowl(hypothesis: Hypothesis, families: Optional[Iterable[FuzzySetFamily]] = None) -> str:
    """Текстовая запись гипотезы в синтаксисе fuzzyDL"""
    lines = [
        f"{_HEADER} for {hypothesis.target}",
        f"% conjunction {hypothesis.conjunction.value}, implication {hypothesis.implication.value}",
    ]
    rules = hypothesis.p_rules + hypothesis.n_rules
    if families is not None:
        datatypes = [d for family in sorted(families, key=lambda f: f.prop) for d in family.sets]
    else:
        datatypes = _rule_datatypes(rules)
    lines += [define_line(d) for d in datatypes]
    lines += [implies_line(rule) for rule in rules]
    return "\n".join(lines) + "\n"


def _tree(tokens: list[str], number: int):
    stack = [[]]
    for token in tokens:
        if token == "(":
            stack.append([])
        elif token == ")":
            if len(stack) == 1:
                raise FormatError("лишняя закрывающая скобка", line=number)
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(token)
    if len(stack) != 1:
        raise FormatError("незакрытая скобка", line=number)
    return stack[0]


def _number(text: str, number: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise FormatError(f"ожидается число, получено {text!r}", line=number) from None


def _datatype(shape: str, args: list, label: str, number: int) -> FuzzyDatatype:
    try:
        kind = DatatypeKind(shape)
    except ValueError:
        raise FormatError(f"неизвестная форма {shape!r}", line=number) from None
    if len(args) != 1 or not isinstance(args[0], str):
        raise FormatError(f"{shape}: ожидается список параметров через запятую", line=number)
    values = [_number(v, number) for v in args[0].split(",")]
    if label:
        if len(values) < 2:
            raise FormatError(f"{shape}: не указан диапазон", line=number)
        value_range, params = (values[0], values[1]), tuple(values[2:])
    else:
        value_range, params = None, tuple(values)
    try:
        return FuzzyDatatype(kind=kind, params=params, range=value_range, label=label)
    except ValueError as e:
        raise FormatError(str(e), line=number) from None


def _concept(node, defined: dict, number: int) -> Concept:
    if isinstance(node, str):
        return TOP if node == "*top*" else Atomic(name=node)
    if not node:
        raise FormatError("пустое выражение", line=number)
    head, *rest = node
    if head == "and":
        conjunction = make_and(_concept(part, defined, number) for part in rest)
        if conjunction is None or not isinstance(conjunction, And):
            raise FormatError("некорректная конъюнкция", line=number)
        return conjunction
    if head == "some":
        if len(rest) == 3 and isinstance(rest[1], str) and isinstance(rest[2], list):
            return SomeData(prop=rest[0], datatype=_datatype(rest[1], rest[2], "", number))
        if len(rest) != 2:
            raise FormatError("some: ожидается два аргумента", line=number)
        role, filler = rest
        if isinstance(filler, str) and filler in defined:
            return SomeData(prop=role, datatype=defined[filler])
        return SomeObject(role=role, filler=_concept(filler, defined, number))
    if head in ("=", ">=", "<=") and len(rest) == 2:
        prop, literal = rest
        if head == "=":
            if literal not in ("true", "false"):
                raise FormatError(f"ожидается true/false, получено {literal!r}", line=number)
            return SomeData(prop=prop, datatype=FuzzyDatatype.equals_bool(literal == "true"))
        value = _number(literal, number)
        datatype = FuzzyDatatype.at_least(value) if head == ">=" else FuzzyDatatype.at_most(value)
        return SomeData(prop=prop, datatype=datatype)
    raise FormatError(f"неизвестная конструкция {head!r}", line=number)


def parse_fuzzyowl(text: str) -> Hypothesis:
    """Обратный разбор записи export_fuzzyowl"""
    target = None
    conjunction, implication = LogicFamily.GOEDEL, LogicFamily.LUKASIEWICZ
    defined: dict[str, FuzzyDatatype] = {}
    p_rules, n_rules = [], []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("%"):
            if line.startswith(_HEADER + " for "):
                target = line[len(_HEADER + " for "):].strip()
            match = re.match(r"% conjunction (\S+), implication (\S+)$", line)
            if match:
                try:
                    conjunction, implication = LogicFamily(match[1]), LogicFamily(match[2])
                except ValueError as e:
                    raise FormatError(str(e), line=number) from None
            continue
        tree = _tree(_TOKEN.findall(line), number)
        if len(tree) != 1 or not isinstance(tree[0], list) or not tree[0]:
            raise FormatError("ожидается одно выражение в строке", line=number)
        form, *args = tree[0]
        if form == "define-fuzzy-concept":
            if len(args) != 3 or not isinstance(args[0], str):
                raise FormatError("define-fuzzy-concept: ожидается метка и форма", line=number)
            defined[args[0]] = _datatype(args[1], [args[2]] if isinstance(args[2], str) else args[2], args[0], number)
        elif form == "implies":
            if len(args) != 3 or not isinstance(args[1], str) or not isinstance(args[2], str):
                raise FormatError("implies: ожидается тело, голова и степень", line=number)
            body, head, degree = args
            try:
                rule = WeightedRule(body=_concept(body, defined, number), head=head, degree=_number(degree, number))
            except ValueError as e:
                raise FormatError(str(e), line=number) from None
            (n_rules if head.startswith(_FALSEP) else p_rules).append(rule)
        else:
            raise FormatError(f"неизвестная форма {form!r}", line=number)

    if target is None:
        heads = [r.head for r in p_rules] or [r.head[len(_FALSEP):] for r in n_rules]
        if not heads:
            raise FormatError("не удалось определить целевой класс")
        target = heads[0]
    return Hypothesis(target=target, p_rules=tuple(p_rules), n_rules=tuple(n_rules),
                      conjunction=conjunction, implication=implication)
