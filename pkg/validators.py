from fractions import Fraction


def is_positive(val: Fraction) -> Fraction:
    assert val > 0, "Value must be positive"
    return val


def is_nonnegative(val: int) -> int:
    assert val >= 0, "Value must be non-negative"
    return val
