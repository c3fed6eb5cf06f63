
class RunConfigError(Exception):
    def __init__(self, reason:str):
        super().__init__(f"Invalid run configuration: {reason}")

class UnknownCommand(Exception):
    def __init__(self, func_name:str):
        super().__init__(f"{func_name} is not a registered command")
