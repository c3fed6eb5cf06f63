
class InvalidFilterInput(Exception):
    def __init__(self, reason:str):
        super().__init__(f"Invalid filter input: {reason}")

class UnsupportedBranching(Exception):
    def __init__(self, n_branches:int, operation:str):
        super().__init__(f"{operation} is not supported for banks with N={n_branches} branches")
