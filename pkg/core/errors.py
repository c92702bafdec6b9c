from typing import Optional


class KnowledgeBaseError(ValueError):
    """Нарушение целостности базы знаний (необъявленное имя, несовпадение типа значения)"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"строка {line}: {message}" if line is not None else message)


class FormatError(ValueError):
    """Синтаксическая ошибка во входном файле"""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = ":".join(str(part) for part in (path, line) if part is not None)
        super().__init__(f"{where}: {message}" if where else message)


class LearningError(ValueError):
    """Некорректная постановка задачи обучения"""
