class LegchError(Exception):
    """Базовая ошибка legch с машиночитаемым кодом"""

    code = 'LEGCH_ERROR'

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code

    @property
    def message(self):
        return self.args[0] if self.args else ''


class StructuralError(LegchError):
    """Неизвестная образующая, отсутствующая высота, битое слово"""

    code = 'STRUCTURAL'


class PreconditionError(LegchError):
    """Нарушено предусловие операции"""

    code = 'PRECONDITION'


class FiltrationError(PreconditionError):
    """Дифференциал не убывает строго по высоте"""

    code = 'FILTRATION'

    def __init__(self, message, source=None, target=None):
        super().__init__(message)
        self.source = source
        self.target = target


class KnotFileError(LegchError):
    """Ошибка во входном файле узла или баркода"""

    code = 'SCHEMA_ERROR'

    def __init__(self, message, code=None, key=None):
        super().__init__(message, code=code)
        self.key = key

    def __str__(self):
        where = f" [{self.key}]" if self.key else ''
        return f"{self.code}{where}: {self.message}"


class FloodingError(PreconditionError):
    """Алгоритм затопления не смог распределить высоты"""

    code = 'FLOODING_FAILED'

    def __init__(self, message, tiering=None):
        super().__init__(message)
        self.tiering = tiering
