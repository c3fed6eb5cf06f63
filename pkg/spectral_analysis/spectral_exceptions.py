
class SingularResolvent(Exception):
    def __init__(self, eigenvalue:complex, smallest_singular_value:float):
        super().__init__(
            f"a = {eigenvalue} lies in the spectrum of the complement block "
            f"(smallest singular value of a - G is {smallest_singular_value:.3e})")

class EigenpairMismatch(Exception):
    def __init__(self, reason:str):
        super().__init__(f"Invalid eigenpair: {reason}")

class DominanceAbsent(Exception):
    def __init__(self, operation:str, reason:str):
        super().__init__(f"{operation} needs a strictly dominant eigenvalue: {reason}")
