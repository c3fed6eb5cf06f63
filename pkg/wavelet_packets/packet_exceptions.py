
class HorizonCrossed(Exception):
    def __init__(self, pair:tuple, horizon:int):
        p, n = pair
        super().__init__(
            f"Interval [{2 ** p * n}, {2 ** p * (n + 1)}) of pair {pair} crosses the horizon {horizon}; enlarge the horizon")

class InvalidHorizon(Exception):
    def __init__(self, horizon:int, reason:str="must be a power of 2"):
        super().__init__(f"Invalid horizon {horizon}: {reason}")

class InvalidTilingPair(Exception):
    def __init__(self, pair, reason:str):
        super().__init__(f"Invalid tiling pair {pair}: {reason}")

class PacketDepthExceeded(Exception):
    def __init__(self, depth:int, cap:int):
        super().__init__(f"Packet depth {depth} exceeds the configured cap of {cap}")

class InvalidResolution(Exception):
    def __init__(self, resolution:int):
        super().__init__(f"Grid resolution must be a positive power of 2, got {resolution}")

class IterationsExceeded(Exception):
    def __init__(self, iterations:int, cap:int):
        super().__init__(f"Cascade iterations must lie in 0..{cap}, got {iterations}")

class InvalidPacketWord(Exception):
    def __init__(self, word, p:int):
        super().__init__(f"Word {word} is not a binary word of length {p}")

class InvalidPacketIndex(Exception):
    def __init__(self, n:int):
        super().__init__(f"Packet index must be >= 0, got {n}")
