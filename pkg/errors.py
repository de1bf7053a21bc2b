class CalogeroError(Exception):
    pass


class NotDivisibleError(CalogeroError):
    def __init__(self, j: int, k: int):
        self.j = j
        self.k = k
        super().__init__(f"Polynomial is not divisible by (x{j + 1} - x{k + 1})")


class NotInSpanError(CalogeroError):
    pass


class IncompatibleMethodError(CalogeroError):
    pass


class LabelError(CalogeroError):
    pass


class CacheError(CalogeroError):
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")

    def __reduce__(self):
        return type(self), (self.path, self.reason)
