import logging
import math
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

import pandas as pd

from core.errors import FormatError
from core.model.knowledge_base import KnowledgeBase, PropertyKind
from core.model.task import Label

logger = logging.getLogger("CSVConverter")

_TRUE = {"true", "1", "yes", "t", "y"}
_FALSE = {"false", "0", "no", "f", "n"}


def sanitize(name: str) -> str:
    cleaned = re.sub(r"[^0-9A-Za-z_\-.]+", "_", str(name).strip())
    return cleaned or "_"


@dataclass
class ConvertedDataset:
    kb: KnowledgeBase
    examples: dict[str, dict[str, Label]] = field(default_factory=dict)


def _infer_kind(series: pd.Series) -> str:
    values = series.dropna().str.strip()
    values = values[values != ""]
    if values.empty:
        return "categorical"
    if values.str.lower().isin(_TRUE | _FALSE).all() and not pd.to_numeric(values, errors="coerce").notna().all():
        return "boolean"
    if pd.to_numeric(values, errors="coerce").notna().all():
        return "numeric"
    return "categorical"


def csv_to_kb(path: str, target_column: str,
              positive_values: Sequence[str] = (),
              positive_min: Optional[float] = None,
              numeric: Sequence[str] = (), categorical: Sequence[str] = (), boolean: Sequence[str] = (),
              id_column: Optional[str] = None, target_name: Optional[str] = None) -> ConvertedDataset:
    """Таблица CSV → база знаний и разметка.

    Каждая строка — индивид; числовой столбец — числовое свойство данных,
    булев — булево, категориальный столбец c со значением v — класс c_v.
    """
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    if target_column not in frame.columns:
        raise FormatError(f"столбец цели {target_column!r} отсутствует", path=path, line=1)
    if id_column is not None and id_column not in frame.columns:
        raise FormatError(f"столбец идентификатора {id_column!r} отсутствует", path=path, line=1)
    if not positive_values and positive_min is None:
        raise FormatError("не задано ни одного положительного значения цели", path=path)

    features = [c for c in frame.columns if c not in (target_column, id_column)]
    schema = {}
    for column in features:
        if column in numeric:
            schema[column] = "numeric"
        elif column in boolean:
            schema[column] = "boolean"
        elif column in categorical:
            schema[column] = "categorical"
        else:
            schema[column] = _infer_kind(frame[column])

    props: dict[str, str] = {}
    for column in features:
        prop = sanitize(column)
        if prop in props:
            raise FormatError(f"столбцы {props[prop]!r} и {column!r} дают одно имя {prop}", path=path, line=1)
        props[prop] = column

    classes, individuals, instances, vals = set(), [], set(), set()
    dataprops = {}
    for column, kind in schema.items():
        if kind == "numeric":
            dataprops[sanitize(column)] = PropertyKind.NUMERIC
        elif kind == "boolean":
            dataprops[sanitize(column)] = PropertyKind.BOOLEAN

    for row_number, row in enumerate(frame.itertuples(index=False), start=1):
        record = dict(zip(frame.columns, row))
        name = sanitize(record[id_column]) if id_column else f"row{row_number}"
        individuals.append(name)
        for column, kind in schema.items():
            cell = record[column].strip()
            if cell == "":
                continue
            prop = sanitize(column)
            if kind == "numeric":
                try:
                    number = float(cell)
                except ValueError:
                    raise FormatError(f"столбец {column}: не число {cell!r}", path=path, line=row_number + 1) from None
                if not math.isfinite(number):
                    raise FormatError(f"столбец {column}: недопустимое числовое значение {cell!r}",
                                      path=path, line=row_number + 1)
                vals.add((name, prop, number))
            elif kind == "boolean":
                lowered = cell.lower()
                if lowered not in _TRUE | _FALSE:
                    raise FormatError(f"столбец {column}: не булево значение {cell!r}", path=path, line=row_number + 1)
                vals.add((name, prop, lowered in _TRUE))
            else:
                cls = f"{prop}_{sanitize(cell)}"
                classes.add(cls)
                instances.add((name, cls))

    if len(set(individuals)) != len(individuals):
        raise FormatError("идентификаторы индивидов повторяются", path=path)

    kb = KnowledgeBase(classes=classes, data_properties=dataprops, individuals=individuals,
                       class_assertions=instances, data_assertions=vals)

    targets = frame[target_column].str.strip()
    examples = {}
    for value in positive_values:
        name = target_name if target_name and len(positive_values) == 1 else sanitize(value)
        examples[name] = {ind: (Label.POSITIVE if t == value else Label.NEGATIVE)
                          for ind, t in zip(individuals, targets)}
    if positive_min is not None:
        numeric_target = pd.to_numeric(targets, errors="coerce")
        if numeric_target.isna().any():
            bad = int(numeric_target.isna().to_numpy().nonzero()[0][0])
            raise FormatError(f"столбец {target_column}: не число {targets.iloc[bad]!r}", path=path, line=bad + 2)
        name = target_name or f"{sanitize(target_column)}_ge_{positive_min:g}"
        examples[name] = {ind: (Label.POSITIVE if t >= positive_min else Label.NEGATIVE)
                          for ind, t in zip(individuals, numeric_target)}

    for name, labels in examples.items():
        if name in kb.classes:
            raise FormatError(f"имя цели {name} совпадает с именем класса", path=path)
        logger.info(f"Цель {name}: {sum(1 for v in labels.values() if v is Label.POSITIVE)} положительных из {len(labels)}")
    return ConvertedDataset(kb=kb, examples=examples)
