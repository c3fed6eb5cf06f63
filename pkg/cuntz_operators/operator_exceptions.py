
class WindowMismatch(Exception):
    def __init__(self, what:str, window:tuple):
        super().__init__(f"{what} does not fit in the index window {window}")

class InvalidSequence(Exception):
    def __init__(self, reason:str):
        super().__init__(f"Invalid sequence: {reason}")
