
class DigitOutOfRange(Exception):
    def __init__(self, digit:int, base:int):
        super().__init__(f"Digit {digit} is out of range for base {base}")

class BaseMismatch(Exception):
    def __init__(self, interval_base:int, bank_base:int):
        super().__init__(f"Interval in base {interval_base} used with a bank of N={bank_base} branches")

class NonUnitVector(Exception):
    def __init__(self, norm:float):
        super().__init__(f"Expected a unit vector, got norm {norm}")

class GridCapExceeded(Exception):
    def __init__(self, cells:int, cap:int):
        super().__init__(f"Grid with {cells} cells exceeds the configured cap of {cap}")

class LowerBoundViolated(Exception):
    def __init__(self, word:str, mass:float, bound:float):
        super().__init__(f"Mass {mass} of interval {word} is below its lower bound {bound}")

class InvalidScanLength(Exception):
    def __init__(self, n_max:int):
        super().__init__(f"Scan length must be >= 1, got {n_max}")
